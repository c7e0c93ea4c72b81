#include "qvac/unit_parser.hpp"

#include "qvac/errors.hpp"

#include <cmath>

namespace qvac {

namespace {

constexpr char32_t kMiddleDot = 0x00B7;
constexpr char32_t kDotOperator = 0x22C5;
constexpr char32_t kMicroSign = 0x00B5;
constexpr char32_t kGreekMu = 0x03BC;

struct CodePoint {
  char32_t value;
  std::size_t byte;
};

std::vector<CodePoint> decode_utf8(std::string_view text) {
  std::vector<CodePoint> out;
  std::size_t i = 0;
  while (i < text.size()) {
    const auto lead = static_cast<unsigned char>(text[i]);
    std::size_t len = 1;
    char32_t cp = lead;
    if (lead >= 0xF0) {
      len = 4;
      cp = lead & 0x07;
    } else if (lead >= 0xE0) {
      len = 3;
      cp = lead & 0x0F;
    } else if (lead >= 0xC0) {
      len = 2;
      cp = lead & 0x1F;
    }
    if (i + len > text.size()) len = 1;  // truncated sequence, keep the raw byte
    for (std::size_t k = 1; k < len; ++k) {
      cp = (cp << 6) | (static_cast<unsigned char>(text[i + k]) & 0x3F);
    }
    out.push_back({len == 1 ? lead : cp, i});
    i += len;
  }
  return out;
}

bool is_word_char(char32_t c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == kMicroSign || c == kGreekMu;
}
bool is_digit(char32_t c) { return c >= '0' && c <= '9'; }
bool is_space(char32_t c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }
bool is_mul(char32_t c) { return c == '*' || c == kMiddleDot || c == kDotOperator; }

class Parser {
 public:
  Parser(std::string_view text, const UnitRegistry& registry)
      : text_(text), cps_(decode_utf8(text)), registry_(registry) {}

  UnitExpr parse() {
    skip_space();
    if (at_end()) throw EmptyInput("empty unit expression");
    auto expr = parse_product();
    skip_space();
    if (!at_end()) {
      if (peek() == ')') throw SyntaxError(pos_, {"end of input"});
      throw SyntaxError(pos_, {"*", "/", "unit", "end of input"});
    }
    return std::move(*expr);
  }

 private:
  bool at_end() const { return pos_ >= cps_.size(); }
  char32_t peek() const { return at_end() ? 0 : cps_[pos_].value; }
  void skip_space() {
    while (!at_end() && is_space(peek())) ++pos_;
  }
  std::size_t byte_at(std::size_t pos) const {
    return pos < cps_.size() ? cps_[pos].byte : text_.size();
  }

  static UnitExprPtr make(auto node) {
    return std::make_unique<UnitExpr>(UnitExpr{std::move(node)});
  }

  bool starts_factor(char32_t c) const { return is_word_char(c) || is_digit(c) || c == '('; }

  UnitExprPtr parse_product() {
    auto acc = parse_factor();
    for (;;) {
      skip_space();
      if (at_end()) break;
      const char32_t c = peek();
      if (c == '/') {
        ++pos_;
        skip_space();
        auto den = parse_factor();
        acc = make(QuotientNode{std::move(acc), std::move(den)});
      } else if (is_mul(c) || starts_factor(c)) {
        if (is_mul(c)) {
          ++pos_;
          skip_space();
        }
        auto rhs = parse_factor();
        if (auto* prod = std::get_if<ProductNode>(&acc->node)) {
          prod->children.push_back(std::move(rhs));
        } else {
          ProductNode p;
          p.children.push_back(std::move(acc));
          p.children.push_back(std::move(rhs));
          acc = make(std::move(p));
        }
      } else {
        break;
      }
    }
    return acc;
  }

  UnitExprPtr parse_factor() {
    auto base = parse_primary();
    skip_space();
    if (!at_end() && peek() == '^') {
      ++pos_;
      skip_space();
      const Rational exponent = parse_exponent();
      // In a run such as "Vm^2" the exponent belongs to the last symbol.
      if (auto* run = std::get_if<ProductNode>(&base->node)) {
        auto& last = run->children.back();
        last = make(PowerNode{std::move(last), exponent});
        return base;
      }
      return make(PowerNode{std::move(base), exponent});
    }
    return base;
  }

  UnitExprPtr parse_primary() {
    if (at_end()) throw SyntaxError(pos_, {"unit", "number", "("});
    const char32_t c = peek();
    if (c == '(') {
      ++pos_;
      skip_space();
      auto inner = parse_product();
      skip_space();
      if (at_end() || peek() != ')') throw SyntaxError(pos_, {")"});
      ++pos_;
      return make(GroupNode{std::move(inner)});
    }
    if (is_digit(c)) {
      const auto start = pos_;
      while (!at_end() && is_digit(peek())) ++pos_;
      const auto digits = text_.substr(byte_at(start), byte_at(pos_) - byte_at(start));
      return make(NumberNode{std::stod(std::string(digits))});
    }
    if (is_word_char(c)) {
      const auto start = pos_;
      while (!at_end() && is_word_char(peek())) ++pos_;
      const std::string word(text_.substr(byte_at(start), byte_at(pos_) - byte_at(start)));
      if (auto resolved = registry_.resolve(word)) {
        return make(BaseUnitNode{resolved->prefix, resolved->symbol, start});
      }
      if (auto run = split_run(start, pos_)) return run;
      throw UnknownUnit(word, start);
    }
    throw SyntaxError(pos_, {"unit", "number", "("});
  }

  // Run-together symbols such as "As" or "Vm": the split into the fewest
  // resolvable pieces, preferring a longer first piece on ties.
  UnitExprPtr split_run(std::size_t begin, std::size_t end) const {
    const std::size_t n = end - begin;
    constexpr std::size_t kNone = static_cast<std::size_t>(-1);
    std::vector<std::size_t> pieces(n + 1, kNone), next(n + 1, kNone);
    pieces[n] = 0;
    for (std::size_t i = n; i-- > 0;) {
      for (std::size_t j = n; j > i; --j) {
        if (pieces[j] == kNone || !resolve_span(begin + i, begin + j)) continue;
        if (pieces[i] == kNone || pieces[j] + 1 < pieces[i]) {
          pieces[i] = pieces[j] + 1;
          next[i] = j;
        }
      }
    }
    if (pieces[0] == kNone || pieces[0] < 2) return nullptr;
    ProductNode product;
    for (std::size_t i = 0; i < n; i = next[i]) {
      const auto r = resolve_span(begin + i, begin + next[i]);
      product.children.push_back(make(BaseUnitNode{r->prefix, r->symbol, begin + i}));
    }
    return make(std::move(product));
  }

  std::optional<UnitRegistry::Resolved> resolve_span(std::size_t from, std::size_t to) const {
    return registry_.resolve(text_.substr(byte_at(from), byte_at(to) - byte_at(from)));
  }

  std::int64_t parse_integer() {
    if (at_end() || !is_digit(peek())) throw SyntaxError(pos_, {"integer"});
    std::int64_t value = 0;
    while (!at_end() && is_digit(peek())) {
      value = value * 10 + static_cast<std::int64_t>(peek() - '0');
      if (value > 1'000'000'000) throw SyntaxError(pos_, {"smaller exponent"});
      ++pos_;
    }
    return value;
  }

  Rational parse_signed_rational() {
    std::int64_t sign = 1;
    if (!at_end() && (peek() == '-' || peek() == '+')) {
      if (peek() == '-') sign = -1;
      ++pos_;
    }
    const auto num = parse_integer();
    // "^1/2" is a rational exponent only when a digit follows the slash directly.
    if (pos_ + 1 < cps_.size() && peek() == '/' && is_digit(cps_[pos_ + 1].value)) {
      ++pos_;
      const auto den_pos = pos_;
      const auto den = parse_integer();
      if (den == 0) throw SyntaxError(den_pos, {"non-zero denominator"});
      return Rational(sign * num, den);
    }
    return Rational(sign * num);
  }

  Rational parse_exponent() {
    if (!at_end() && peek() == '(') {
      ++pos_;
      skip_space();
      const auto r = parse_signed_rational();
      skip_space();
      if (at_end() || peek() != ')') throw SyntaxError(pos_, {")"});
      ++pos_;
      return r;
    }
    if (at_end() || !(is_digit(peek()) || peek() == '-' || peek() == '+')) {
      throw SyntaxError(pos_, {"exponent"});
    }
    return parse_signed_rational();
  }

  std::string_view text_;
  std::vector<CodePoint> cps_;
  const UnitRegistry& registry_;
  std::size_t pos_ = 0;
};

struct DerivedDef {
  const char* symbol;
  double scale;
  const char* expansion;
};

}  // namespace

UnitRegistry::UnitRegistry() {
  const auto add = [this](std::string symbol, double scale, Dimension d, bool prefixable) {
    if (!units_.emplace(std::move(symbol), UnitEntry{scale, std::move(d), prefixable}).second) {
      throw Error("duplicate unit symbol in registry");
    }
  };
  add("m", 1.0, dims::length(), true);
  add("kg", 1.0, dims::mass(), false);
  add("g", 1e-3, dims::mass(), true);
  add("s", 1.0, dims::time(), true);
  add("A", 1.0, dims::current(), true);
  add("K", 1.0, Dimension::base(BaseDim::Temperature), true);
  add("mol", 1.0, Dimension::base(BaseDim::Amount), true);
  add("cd", 1.0, Dimension::base(BaseDim::Luminosity), true);

  prefixes_ = {
      {"da", 1e1},  {"\xC2\xB5", 1e-6}, {"\xCE\xBC", 1e-6}, {"y", 1e-24}, {"z", 1e-21},
      {"a", 1e-18}, {"f", 1e-15},       {"p", 1e-12},       {"n", 1e-9},  {"u", 1e-6},
      {"m", 1e-3},  {"c", 1e-2},        {"d", 1e-1},        {"h", 1e2},   {"k", 1e3},
      {"M", 1e6},   {"G", 1e9},         {"T", 1e12},        {"P", 1e15},  {"E", 1e18},
      {"Z", 1e21},  {"Y", 1e24},
  };

  // Derived units, each checked against its expansion in base units.
  static const DerivedDef kDerived[] = {
      {"V", 1.0, "kg m^2 / (A s^3)"},
      {"C", 1.0, "A s"},
      {"T", 1.0, "kg / (A s^2)"},
      {"Hz", 1.0, "1 / s"},
      {"J", 1.0, "kg m^2 / s^2"},
      {"N", 1.0, "kg m / s^2"},
      {"F", 1.0, "A^2 s^4 / (kg m^2)"},
      {"H", 1.0, "kg m^2 / (A^2 s^2)"},
      {"W", 1.0, "kg m^2 / s^3"},
      {"eV", 1.6021766208e-19, "kg m^2 / s^2"},  // CODATA 2014 elementary charge
  };
  for (const auto& d : kDerived) {
    const auto expansion = evaluate(Parser(d.expansion, *this).parse(), *this);
    if (expansion.scale != 1.0) throw Error("derived unit expansion must be coherent");
    add(d.symbol, d.scale, expansion.dimension, true);
  }
}

const UnitRegistry& UnitRegistry::standard() {
  static const UnitRegistry registry;
  return registry;
}

const UnitEntry* UnitRegistry::find(std::string_view symbol) const {
  const auto it = units_.find(symbol);
  return it == units_.end() ? nullptr : &it->second;
}

std::optional<double> UnitRegistry::prefix_scale(std::string_view prefix) const {
  for (const auto& [p, scale] : prefixes_) {
    if (p == prefix) return scale;
  }
  return std::nullopt;
}

std::optional<UnitRegistry::Resolved> UnitRegistry::resolve(std::string_view word) const {
  if (const auto* e = find(word)) {
    return Resolved{"", std::string(word), e->scale, e->dimension};
  }
  for (const auto& [prefix, scale] : prefixes_) {
    if (word.size() <= prefix.size() || !word.starts_with(prefix)) continue;
    const auto rest = word.substr(prefix.size());
    if (const auto* e = find(rest); e != nullptr && e->prefixable) {
      return Resolved{prefix, std::string(rest), scale * e->scale, e->dimension};
    }
  }
  return std::nullopt;
}

ParsedUnit evaluate(const UnitExpr& expr, const UnitRegistry& registry) {
  return std::visit(
      [&](const auto& n) -> ParsedUnit {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, BaseUnitNode>) {
          const auto* e = registry.find(n.symbol);
          if (e == nullptr) throw UnknownUnit(n.symbol, n.position);
          double scale = e->scale;
          if (!n.prefix.empty()) scale *= registry.prefix_scale(n.prefix).value_or(1.0);
          return {scale, e->dimension};
        } else if constexpr (std::is_same_v<T, NumberNode>) {
          return {n.value, Dimension::dimensionless()};
        } else if constexpr (std::is_same_v<T, ProductNode>) {
          ParsedUnit acc;
          for (const auto& child : n.children) {
            const auto c = evaluate(*child, registry);
            acc.scale *= c.scale;
            acc.dimension = acc.dimension * c.dimension;
          }
          return acc;
        } else if constexpr (std::is_same_v<T, QuotientNode>) {
          const auto num = evaluate(*n.numerator, registry);
          const auto den = evaluate(*n.denominator, registry);
          return {num.scale / den.scale, num.dimension / den.dimension};
        } else if constexpr (std::is_same_v<T, PowerNode>) {
          const auto base = evaluate(*n.base, registry);
          const double scale = n.exponent.denominator() == 1
                                   ? std::pow(base.scale, static_cast<double>(n.exponent.numerator()))
                                   : std::pow(base.scale, to_double(n.exponent));
          return {scale, base.dimension.pow(n.exponent)};
        } else {
          return evaluate(*n.child, registry);
        }
      },
      expr.node);
}

UnitExpr parse_unit_ast(std::string_view text, const UnitRegistry& registry) {
  return Parser(text, registry).parse();
}

ParsedUnit parse_unit(std::string_view text, const UnitRegistry& registry) {
  return evaluate(parse_unit_ast(text, registry), registry);
}

std::string format_dimension(const Dimension& d) {
  static constexpr const char* kSymbols[kBaseDimCount] = {"m", "kg", "s", "A", "K", "mol", "cd"};
  std::vector<std::string> num;
  std::vector<std::string> den;
  for (std::size_t i = 0; i < kBaseDimCount; ++i) {
    const Rational& e = d.exponents()[i];
    if (e == 0) continue;
    const Rational mag = e < 0 ? -e : e;
    std::string term = kSymbols[i];
    if (mag != 1) term += "^" + to_string(mag);
    (e > 0 ? num : den).push_back(std::move(term));
  }
  const auto join = [](const std::vector<std::string>& parts) {
    std::string out;
    for (const auto& p : parts) {
      if (!out.empty()) out += ' ';
      out += p;
    }
    return out;
  };
  std::string out = num.empty() ? "1" : join(num);
  if (den.size() == 1) out += " / " + den.front();
  if (den.size() > 1) out += " / (" + join(den) + ")";
  return out;
}

}  // namespace qvac
