#include "qvac/dimension.hpp"

namespace qvac {

Dimension Dimension::base(BaseDim which, Rational exponent) {
  Exponents e{};
  e[static_cast<std::size_t>(which)] = exponent;
  return Dimension(e);
}

Dimension Dimension::of(int length, int mass, int time, int current, int temperature,
                        int amount, int luminosity) {
  return Dimension(Exponents{Rational(length), Rational(mass), Rational(time),
                             Rational(current), Rational(temperature), Rational(amount),
                             Rational(luminosity)});
}

bool Dimension::is_dimensionless() const {
  for (const auto& e : exponents_) {
    if (e != 0) return false;
  }
  return true;
}

Dimension Dimension::inverse() const { return pow(Rational(-1)); }

Dimension Dimension::pow(const Rational& p) const {
  Exponents out = exponents_;
  for (auto& e : out) e *= p;
  return Dimension(out);
}

Dimension operator*(const Dimension& a, const Dimension& b) {
  Dimension::Exponents out = a.exponents_;
  for (std::size_t i = 0; i < kBaseDimCount; ++i) out[i] += b.exponents_[i];
  return Dimension(out);
}

Dimension operator/(const Dimension& a, const Dimension& b) {
  Dimension::Exponents out = a.exponents_;
  for (std::size_t i = 0; i < kBaseDimCount; ++i) out[i] -= b.exponents_[i];
  return Dimension(out);
}

std::string debug_string(const Dimension& d) {
  static constexpr const char* kNames[kBaseDimCount] = {"L", "M", "T", "I", "Th", "N", "J"};
  std::string out;
  for (std::size_t i = 0; i < kBaseDimCount; ++i) {
    const auto& e = d.exponents()[i];
    if (e == 0) continue;
    if (!out.empty()) out += ' ';
    out += kNames[i];
    if (e != 1) out += "^" + to_string(e);
  }
  return out.empty() ? "1" : out;
}

}  // namespace qvac
