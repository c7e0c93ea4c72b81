#pragma once

#include "qvac/rational.hpp"

#include <array>
#include <cstddef>
#include <string>

namespace qvac {

/// The seven SI base dimensions, in canonical order.
enum class BaseDim : std::size_t {
  Length = 0,
  Mass,
  Time,
  Current,
  Temperature,
  Amount,
  Luminosity,
};

inline constexpr std::size_t kBaseDimCount = 7;

/// Exact dimension: one rational exponent per SI base dimension.
class Dimension {
 public:
  using Exponents = std::array<Rational, kBaseDimCount>;

  Dimension() = default;
  explicit Dimension(const Exponents& exponents) : exponents_(exponents) {}

  static Dimension dimensionless() { return Dimension{}; }
  static Dimension base(BaseDim which, Rational exponent = 1);

  /// Builds from integer exponents in (L, M, T, I, Θ, N, J) order.
  static Dimension of(int length, int mass = 0, int time = 0, int current = 0,
                      int temperature = 0, int amount = 0, int luminosity = 0);

  const Rational& operator[](BaseDim which) const {
    return exponents_[static_cast<std::size_t>(which)];
  }
  const Exponents& exponents() const { return exponents_; }

  bool is_dimensionless() const;

  Dimension inverse() const;
  Dimension pow(const Rational& p) const;

  friend Dimension operator*(const Dimension& a, const Dimension& b);
  friend Dimension operator/(const Dimension& a, const Dimension& b);
  friend bool operator==(const Dimension& a, const Dimension& b) = default;

 private:
  Exponents exponents_{};
};

inline Dimension dim_mul(const Dimension& a, const Dimension& b) { return a * b; }
inline Dimension dim_div(const Dimension& a, const Dimension& b) { return a / b; }

/// Debug rendering such as "L^2 M T^-1/2"; see format_dimension for unit syntax.
std::string debug_string(const Dimension& d);

namespace dims {
// Canonical SI dimensions used throughout the model.
inline Dimension length() { return Dimension::of(1); }
inline Dimension mass() { return Dimension::of(0, 1); }
inline Dimension time() { return Dimension::of(0, 0, 1); }
inline Dimension current() { return Dimension::of(0, 0, 0, 1); }
inline Dimension charge() { return Dimension::of(0, 0, 1, 1); }
inline Dimension frequency() { return Dimension::of(0, 0, -1); }
inline Dimension speed() { return Dimension::of(1, 0, -1); }
inline Dimension area() { return Dimension::of(2); }
inline Dimension volume() { return Dimension::of(3); }
inline Dimension energy() { return Dimension::of(2, 1, -2); }
inline Dimension action() { return Dimension::of(2, 1, -1); }
inline Dimension electric_field() { return Dimension::of(1, 1, -3, -1); }
inline Dimension magnetic_field() { return Dimension::of(0, 1, -2, -1); }
inline Dimension electric_dipole() { return Dimension::of(1, 0, 1, 1); }
inline Dimension magnetic_dipole() { return Dimension::of(2, 0, 0, 1); }
inline Dimension polarization() { return Dimension::of(-2, 0, 1, 1); }
inline Dimension magnetization() { return Dimension::of(-1, 0, 0, 1); }
inline Dimension permittivity() { return Dimension::of(-3, -1, 4, 2); }
inline Dimension permeability() { return Dimension::of(1, 1, -2, -2); }
}  // namespace dims

}  // namespace qvac
