#pragma once

#include "qvac/dimension.hpp"

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace qvac {

/// Result of parsing a unit expression: `scale` times the coherent SI unit
/// of `dimension`.
struct ParsedUnit {
  double scale = 1.0;
  Dimension dimension;
};

struct UnitEntry {
  double scale;           // relative to the coherent SI unit
  Dimension dimension;
  bool prefixable;
};

/// Immutable symbol table: base units, the supported derived units and the
/// SI prefixes y..Y.
class UnitRegistry {
 public:
  /// The built-in registry. Derived-unit dimensions are checked against
  /// their base-unit expansions on first use.
  static const UnitRegistry& standard();

  const UnitEntry* find(std::string_view symbol) const;
  std::optional<double> prefix_scale(std::string_view prefix) const;

  /// Resolves a bare word: an exact symbol first, otherwise the longest
  /// prefix whose remainder is a prefixable symbol.
  struct Resolved {
    std::string prefix;
    std::string symbol;
    double scale;
    Dimension dimension;
  };
  std::optional<Resolved> resolve(std::string_view word) const;

  const std::map<std::string, UnitEntry, std::less<>>& units() const { return units_; }

 private:
  UnitRegistry();

  std::map<std::string, UnitEntry, std::less<>> units_;
  std::vector<std::pair<std::string, double>> prefixes_;  // longest first
};

// AST for unit expressions. Positions are code-point offsets into the input.
struct UnitExpr;
using UnitExprPtr = std::unique_ptr<UnitExpr>;

struct BaseUnitNode {
  std::string prefix;
  std::string symbol;
  std::size_t position = 0;
};
struct NumberNode {
  double value = 1.0;
};
struct ProductNode {
  std::vector<UnitExprPtr> children;
};
struct QuotientNode {
  UnitExprPtr numerator;
  UnitExprPtr denominator;
};
struct PowerNode {
  UnitExprPtr base;
  Rational exponent;
};
struct GroupNode {
  UnitExprPtr child;
};

struct UnitExpr {
  std::variant<BaseUnitNode, NumberNode, ProductNode, QuotientNode, PowerNode, GroupNode> node;
};

/// Parses `text` into an AST. Whitespace, "*", "·" and "⋅" multiply; "/"
/// divides by exactly one following factor or group, so "a/b c" is
/// (a/b)·c. "^" takes an integer or rational exponent ("^-2", "^1/2",
/// "^(-1/2)"). "µ", "μ" and "u" all denote micro.
///
/// Throws EmptyInput, SyntaxError or UnknownUnit.
UnitExpr parse_unit_ast(std::string_view text,
                        const UnitRegistry& registry = UnitRegistry::standard());

ParsedUnit evaluate(const UnitExpr& expr,
                    const UnitRegistry& registry = UnitRegistry::standard());

ParsedUnit parse_unit(std::string_view text,
                      const UnitRegistry& registry = UnitRegistry::standard());

/// Canonical unit string for a dimension: base symbols in the order
/// m kg s A K mol cd, positive exponents before "/", e.g. "m^1/2",
/// "s^4 A^2 / (m^3 kg)", "1 / s". Dimensionless renders as "1".
std::string format_dimension(const Dimension& d);

}  // namespace qvac
