#pragma once

#include <cmath>
#include <cstdint>

#include "rdl/errors.hpp"

namespace rdl {

inline std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

// Signed distance to the nearest integer, in [-1/2, 1/2].
inline double fold_signed(double x) { return x - std::nearbyint(x); }

// A frequency theta = num/den + offset. The rational part is exact and stays
// exact under multiplication by the base (modular arithmetic); the offset is a
// small real perturbation folded mod 1. den = q^k gives the scale-k grid.
struct Angle {
  std::uint64_t num = 0;
  std::uint64_t den = 1;
  double offset = 0.0;

  Angle() = default;
  Angle(std::uint64_t n, std::uint64_t d, double eta = 0.0) : num(0), den(d), offset(0.0) {
    if (d == 0) throw ConfigError("angle denominator must be positive");
    num = n % d;
    offset = fold_signed(eta);
  }

  static Angle at_scale(int base, int k, std::uint64_t numerator, double eta = 0.0) {
    if (base < 2 || k < 0) throw ConfigError("angle scale requires base >= 2 and k >= 0");
    std::uint64_t den = 1;
    for (int i = 0; i < k; ++i) {
      if (den > UINT64_MAX / static_cast<std::uint64_t>(base))
        throw ResourceError("angle denominator overflows 64 bits");
      den *= static_cast<std::uint64_t>(base);
    }
    return Angle(numerator, den, eta);
  }

  static Angle real(double theta) { return Angle(0, 1, theta); }

  bool exact() const { return offset == 0.0; }

  double value() const {
    double v = static_cast<double>(num) / static_cast<double>(den) + offset;
    v -= std::floor(v);
    return v;
  }
};

// Streams the factor arguments base^i * theta, i = 0, 1, 2, ..., advancing the
// rational part by exact modular multiplication so no precision is lost even
// deep into the product.
class PhaseWalker {
 public:
  PhaseWalker(const Angle& a, int base)
      : num_(a.num % a.den), den_(a.den), offset_(fold_signed(a.offset)), base_(base) {}

  // Current argument; may lie outside [0,1), callers fold as needed.
  double current() const {
    return static_cast<double>(num_) / static_cast<double>(den_) + offset_;
  }

  void advance() {
    num_ = mulmod_u64(num_, static_cast<std::uint64_t>(base_), den_);
    offset_ = fold_signed(offset_ * static_cast<double>(base_));
  }

 private:
  std::uint64_t num_;
  std::uint64_t den_;
  double offset_;
  int base_;
};

}  // namespace rdl
