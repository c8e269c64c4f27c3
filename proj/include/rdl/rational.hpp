#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace rdl {

// Minimal exact rational on int64. Enough for the handful of exact constants
// (kappa, kappa2, moment exponents) where floating point would blur identities.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Rational() = default;
  Rational(std::int64_t n, std::int64_t d) : num(n), den(d) { normalize(); }
  explicit Rational(std::int64_t n) : num(n), den(1) {}

  void normalize() {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    if (den < 0) { num = -num; den = -den; }
    std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) { num /= g; den /= g; }
  }

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }

  std::string str() const {
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
  }

  friend Rational operator*(const Rational& a, const Rational& b) {
    // Cross-reduce first so intermediate products stay small.
    Rational x(a.num, b.den), y(b.num, a.den);
    return Rational(x.num * y.num, x.den * y.den);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num == 0) throw std::invalid_argument("rational division by zero");
    return a * Rational(b.den, b.num);
  }
  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num == b.num && a.den == b.den;
  }
};

}  // namespace rdl
