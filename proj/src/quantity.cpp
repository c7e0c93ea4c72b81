#include "qvac/quantity.hpp"

#include "qvac/errors.hpp"

#include <algorithm>
#include <cmath>

namespace qvac {

namespace {

void require_compatible(const Quantity& a, const Quantity& b, const char* op) {
  if (a.system() != b.system()) {
    throw DimensionMismatch(std::string(op) + " across unit systems (" +
                            to_string(a.system()) + " vs " + to_string(b.system()) + ")");
  }
  if (a.dimension() != b.dimension()) {
    throw DimensionMismatch(std::string(op) + " of [" + debug_string(a.dimension()) +
                            "] and [" + debug_string(b.dimension()) + "]");
  }
}

}  // namespace

std::string to_string(UnitSystem system) {
  return system == UnitSystem::SI ? "SI" : "Gaussian";
}

Quantity::Quantity(double magnitude, Dimension dimension, UnitSystem system)
    : magnitude_(magnitude), dimension_(std::move(dimension)), system_(system) {
  if (!std::isfinite(magnitude_)) throw NonFinite("non-finite magnitude");
}

double Quantity::value() const {
  if (!dimension_.is_dimensionless()) {
    throw DimensionMismatch("expected a dimensionless quantity, got [" +
                            debug_string(dimension_) + "]");
  }
  return magnitude_;
}

Quantity operator+(const Quantity& a, const Quantity& b) {
  require_compatible(a, b, "addition");
  return Quantity(a.magnitude_ + b.magnitude_, a.dimension_, a.system_);
}

Quantity operator-(const Quantity& a, const Quantity& b) {
  require_compatible(a, b, "subtraction");
  return Quantity(a.magnitude_ - b.magnitude_, a.dimension_, a.system_);
}

Quantity operator*(const Quantity& a, const Quantity& b) {
  if (a.system_ != b.system_) throw DimensionMismatch("multiplication across unit systems");
  return Quantity(a.magnitude_ * b.magnitude_, a.dimension_ * b.dimension_, a.system_);
}

Quantity operator/(const Quantity& a, const Quantity& b) {
  if (a.system_ != b.system_) throw DimensionMismatch("division across unit systems");
  if (b.magnitude_ == 0.0) throw DivideByZero("division by a zero quantity");
  return Quantity(a.magnitude_ / b.magnitude_, a.dimension_ / b.dimension_, a.system_);
}

Quantity operator*(double s, const Quantity& q) {
  return Quantity(s * q.magnitude_, q.dimension_, q.system_);
}

Quantity operator/(const Quantity& q, double s) {
  if (s == 0.0) throw DivideByZero("division by zero");
  return Quantity(q.magnitude_ / s, q.dimension_, q.system_);
}

Quantity qty_arith(const Quantity& a, const Quantity& b, ArithOp op) {
  switch (op) {
    case ArithOp::Add: return a + b;
    case ArithOp::Sub: return a - b;
    case ArithOp::Mul: return a * b;
    case ArithOp::Div: return a / b;
  }
  throw Error("unknown arithmetic operation");
}

Quantity qty_pow(const Quantity& a, const Rational& p) {
  if (p == 0) return Quantity::dimensionless(1.0, a.system());
  const double m = a.magnitude();
  if (m == 0.0 && p < 0) throw DivideByZero("negative power of zero");
  double result = 0.0;
  if (p.denominator() == 1) {
    result = std::pow(m, static_cast<double>(p.numerator()));
  } else {
    if (m < 0.0) throw NegativeBase("fractional power of a negative magnitude");
    if (p.denominator() == 2) {
      result = std::pow(std::sqrt(m), static_cast<double>(p.numerator()));
    } else {
      result = std::pow(m, to_double(p));
    }
  }
  return Quantity(result, a.dimension().pow(p), a.system());
}

Quantity sqrt(const Quantity& a) { return qty_pow(a, Rational(1, 2)); }

Quantity abs(const Quantity& a) {
  return Quantity(std::fabs(a.magnitude()), a.dimension(), a.system());
}

bool relative_close(double a, double b, double tol) {
  return std::fabs(a - b) <= tol * std::max(std::fabs(a), std::fabs(b));
}

void require_dimension(const Quantity& q, const Dimension& expected, const char* what) {
  if (q.dimension() != expected) {
    throw DimensionMismatch(std::string(what) + ": expected [" + debug_string(expected) +
                            "], got [" + debug_string(q.dimension()) + "]");
  }
}

}  // namespace qvac
