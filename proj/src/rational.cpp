#include "qvac/rational.hpp"

#include <charconv>
#include <numeric>
#include <stdexcept>

namespace qvac {

namespace {

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out)) throw std::overflow_error("rational overflow");
  return out;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_add_overflow(a, b, &out)) throw std::overflow_error("rational overflow");
  return out;
}

std::optional<std::int64_t> parse_int(std::string_view text) {
  if (text.empty()) return std::nullopt;
  if (text.front() == '+') text.remove_prefix(1);
  std::int64_t value = 0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end) return std::nullopt;
  return value;
}

}  // namespace

Rational::Rational(std::int64_t n, std::int64_t d) {
  if (d == 0) throw std::domain_error("rational with zero denominator");
  if (d < 0) {
    n = checked_mul(n, -1);
    d = checked_mul(d, -1);
  }
  const auto g = std::gcd(n, d);
  num_ = n / g;
  den_ = d / g;
}

Rational Rational::operator-() const { return Rational(checked_mul(num_, -1), den_); }

Rational operator+(const Rational& a, const Rational& b) {
  const auto g = std::gcd(a.den_, b.den_);
  const auto scale_a = b.den_ / g;
  const auto scale_b = a.den_ / g;
  return Rational(checked_add(checked_mul(a.num_, scale_a), checked_mul(b.num_, scale_b)),
                  checked_mul(a.den_, scale_a));
}

Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

Rational operator*(const Rational& a, const Rational& b) {
  // Cross-reduce first to keep intermediates small.
  const auto g1 = std::gcd(a.num_, b.den_);
  const auto g2 = std::gcd(b.num_, a.den_);
  const auto d1 = g1 == 0 ? 1 : g1;
  const auto d2 = g2 == 0 ? 1 : g2;
  return Rational(checked_mul(a.num_ / d1, b.num_ / d2), checked_mul(a.den_ / d2, b.den_ / d1));
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.num_ == 0) throw std::domain_error("rational division by zero");
  return a * Rational(b.den_, b.num_);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  return static_cast<__int128>(a.num_) * b.den_ <=> static_cast<__int128>(b.num_) * a.den_;
}

std::optional<Rational> parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  const auto num = parse_int(text.substr(0, slash));
  if (!num) return std::nullopt;
  if (slash == std::string_view::npos) return Rational(*num);
  const auto den_text = text.substr(slash + 1);
  if (!den_text.empty() && (den_text.front() == '-' || den_text.front() == '+')) {
    return std::nullopt;
  }
  const auto den = parse_int(den_text);
  if (!den || *den == 0) return std::nullopt;
  return Rational(*num, *den);
}

std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

}  // namespace qvac
