#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "rdl/rational.hpp"

namespace rdl {

// A base together with a set of excluded digits. Membership of an integer is
// decided on its natural expansion (no leading zeros; 0 itself has the single
// digit 0, so 0 is a member exactly when digit 0 is not excluded).
class DigitSystem {
 public:
  DigitSystem(int base, std::vector<int> excluded);

  // Compact form "q<base>-x<d1>,<d2>,...", e.g. "q10-x7" or "q100-x0,1,2".
  static DigitSystem parse(const std::string& text);
  std::string str() const;

  int base() const { return base_; }
  int s() const { return static_cast<int>(excluded_.size()); }
  const std::vector<int>& excluded() const { return excluded_; }
  const std::vector<int>& allowed() const { return allowed_; }
  bool digit_allowed(int d) const { return mask_[static_cast<std::size_t>(d)] != 0; }
  bool contains(std::uint64_t n) const;

  // log(q-s)/log(q), the growth exponent of the member count.
  double density_exponent() const;

  // The unique excluded digit; only meaningful when s() == 1.
  int excluded_single() const;

 private:
  int base_;
  std::vector<int> excluded_;
  std::vector<int> allowed_;
  std::vector<char> mask_;
};

// Exact count of members below limit (natural expansion reading). Runs a
// most-significant-digit walk over the digits of limit; exact in uint64.
std::uint64_t count_members(const DigitSystem& ds, std::uint64_t limit);

// Streams members below limit in increasing order. Raises ResourceError when
// count_members(ds, limit) exceeds cap.
void for_each_member(const DigitSystem& ds, std::uint64_t limit,
                     const std::function<void(std::uint64_t)>& fn,
                     std::uint64_t cap = 1000000000ULL);

std::vector<std::uint64_t> enumerate_members(const DigitSystem& ds, std::uint64_t limit,
                                             std::uint64_t cap = 1000000000ULL);

// Streams all k-digit strings over the allowed alphabet (leading zeros count
// as digit positions), in increasing numeric order. This is the index set of
// the length-k transform; it matches the member set on [0, q^k) exactly when
// digit 0 is allowed.
void for_each_fixed_length(const DigitSystem& ds, int k,
                           const std::function<void(std::uint64_t)>& fn);

struct KappaConstants {
  Rational kappa;        // asymptotic fraction of members coprime to the base
  Rational kappa2;       // base * kappa / phi(base)
  int coprime_excluded;  // t, the number of excluded digits coprime to the base
};

// Base 10 with one excluded digit uses the two-case closed form; other bases
// use the general (phi(q)-t)/(q-s) formula. Base 10 with s > 1 is rejected.
KappaConstants kappa_constants(const DigitSystem& ds);

// Exact fraction of allowed digits coprime to the base. Valid for any system;
// equals kappa for every supported kappa_constants configuration.
Rational coprime_allowed_fraction(const DigitSystem& ds);

int euler_phi(int n);

}  // namespace rdl
