#pragma once

#include "qvac/dimension.hpp"

#include <string>

namespace qvac {

enum class UnitSystem { SI, Gaussian };

std::string to_string(UnitSystem system);

/// A finite magnitude bound to a dimension and a unit system.
///
/// SI magnitudes are in coherent SI units (m, kg, s, A, ...). Gaussian
/// magnitudes are in coherent CGS units (cm, g, s), with charge-bearing
/// kinds carrying half-integer exponents of length and mass.
class Quantity {
 public:
  /// Throws NonFinite for NaN or infinite magnitudes.
  Quantity(double magnitude, Dimension dimension, UnitSystem system = UnitSystem::SI);

  static Quantity dimensionless(double value, UnitSystem system = UnitSystem::SI) {
    return Quantity(value, Dimension::dimensionless(), system);
  }

  double magnitude() const noexcept { return magnitude_; }
  const Dimension& dimension() const noexcept { return dimension_; }
  UnitSystem system() const noexcept { return system_; }

  /// Magnitude of a dimensionless quantity; throws DimensionMismatch otherwise.
  double value() const;

  Quantity operator-() const { return Quantity(-magnitude_, dimension_, system_); }

  friend Quantity operator+(const Quantity& a, const Quantity& b);
  friend Quantity operator-(const Quantity& a, const Quantity& b);
  friend Quantity operator*(const Quantity& a, const Quantity& b);
  friend Quantity operator/(const Quantity& a, const Quantity& b);
  friend Quantity operator*(double s, const Quantity& q);
  friend Quantity operator*(const Quantity& q, double s) { return s * q; }
  friend Quantity operator/(const Quantity& q, double s);

  friend bool operator==(const Quantity& a, const Quantity& b) = default;

 private:
  double magnitude_;
  Dimension dimension_;
  UnitSystem system_;
};

enum class ArithOp { Add, Sub, Mul, Div };

Quantity qty_arith(const Quantity& a, const Quantity& b, ArithOp op);

/// a^p. Fractional powers of negative magnitudes throw NegativeBase.
Quantity qty_pow(const Quantity& a, const Rational& p);

Quantity sqrt(const Quantity& a);
Quantity abs(const Quantity& a);

/// |a - b| <= tol * max(|a|, |b|).
bool relative_close(double a, double b, double tol);

/// Throws DimensionMismatch unless q has dimension `expected`.
void require_dimension(const Quantity& q, const Dimension& expected, const char* what);

/// Default tolerances: algebra vs. physics values chained through constants.
inline constexpr double kAlgebraTolerance = 1e-12;
inline constexpr double kPhysicsTolerance = 1e-9;

}  // namespace qvac
