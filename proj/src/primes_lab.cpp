#include "rdl/primes_lab.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "rdl/errors.hpp"

namespace rdl {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 powmod_u64(u64 b, u64 e, u64 m) {
  u64 r = 1;
  b %= m;
  while (e) {
    if (e & 1) r = static_cast<u64>(static_cast<u128>(r) * b % m);
    b = static_cast<u64>(static_cast<u128>(b) * b % m);
    e >>= 1;
  }
  return r;
}

constexpr int kSmallPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};

}  // namespace

bool is_prime_u64(u64 n) {
  if (n < 2) return false;
  for (int p : kSmallPrimes) {
    if (n == static_cast<u64>(p)) return true;
    if (n % static_cast<u64>(p) == 0) return false;
  }
  u64 d = n - 1;
  int r = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++r;
  }
  // These twelve bases decide primality for every 64-bit integer.
  for (int a : kSmallPrimes) {
    u64 x = powmod_u64(static_cast<u64>(a), d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 1; i < r; ++i) {
      x = static_cast<u64>(static_cast<u128>(x) * x % n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

void for_each_prime(u64 limit, const std::function<void(u64)>& fn) {
  if (limit <= 2) return;
  auto root = static_cast<u64>(std::sqrt(static_cast<double>(limit))) + 2;
  std::vector<char> base(root + 1, 1);
  std::vector<u64> base_primes;
  for (u64 i = 2; i <= root; ++i) {
    if (!base[i]) continue;
    base_primes.push_back(i);
    for (u64 j = i * i; j <= root; j += i) base[j] = 0;
  }

  constexpr u64 kSegment = 1ULL << 20;
  std::vector<char> seg(kSegment);
  for (u64 lo = 2; lo < limit; lo += kSegment) {
    u64 hi = std::min(lo + kSegment, limit);
    std::fill(seg.begin(), seg.begin() + static_cast<std::ptrdiff_t>(hi - lo), 1);
    for (u64 p : base_primes) {
      if (p * p >= hi) break;
      u64 start = std::max(p * p, (lo + p - 1) / p * p);
      for (u64 j = start; j < hi; j += p) seg[j - lo] = 0;
    }
    for (u64 n = lo; n < hi; ++n)
      if (seg[n - lo]) fn(n);
  }
}

u64 prime_count(u64 limit) {
  u64 count = 0;
  for_each_prime(limit, [&count](u64) { ++count; });
  return count;
}

u64 count_primes_in_set(const DigitSystem& ds, u64 limit, u64 member_cap) {
  u64 count = 0;
  for_each_member(ds, limit, [&count](u64 n) { count += is_prime_u64(n) ? 1 : 0; }, member_cap);
  return count;
}

PrimeRatioReport prime_ratio_report(const DigitSystem& ds, u64 limit) {
  if (ds.base() != 10 || ds.s() != 1)
    throw ConfigError("prime ratio prediction requires base 10 with one excluded digit");
  if (limit < 10) throw ConfigError("limit too small for a meaningful ratio");
  PrimeRatioReport rep;
  rep.digit_system = ds.str();
  rep.limit = limit;
  rep.members = count_members(ds, limit);
  rep.primes_in_set = count_primes_in_set(ds, limit, 100000000ULL);
  rep.kappa2 = kappa_constants(ds).kappa2.value();
  rep.ratio = static_cast<double>(rep.primes_in_set) * std::log(static_cast<double>(limit)) /
              (rep.kappa2 * static_cast<double>(rep.members));
  return rep;
}

TypeIDiscrepancy type_i_discrepancy(const DigitSystem& ds, u64 limit, u64 q_max) {
  if (ds.base() != 10) throw ConfigError("discrepancy scan is defined for base 10");
  if (limit > 100000000ULL) throw ResourceError("discrepancy scan limited to 1e8");
  double q_cap = std::pow(static_cast<double>(limit), 50.0 / 77.0);
  if (static_cast<double>(q_max) > q_cap + 1e-9)
    throw ConfigError("modulus bound exceeds limit^(50/77)");

  TypeIDiscrepancy rep;
  rep.limit = limit;
  rep.q_max = q_max;
  rep.kappa = coprime_allowed_fraction(ds);

  std::vector<u64> moduli{1};
  for (u64 q = 2; q < q_max; ++q)
    if (q % 2 != 0 && q % 5 != 0) moduli.push_back(q);
  std::vector<u64> counts(moduli.size(), 0);

  u64 members = 0;
  for_each_member(
      ds, limit,
      [&](u64 n) {
        ++members;
        if (n % 2 == 0 || n % 5 == 0) return;
        for (std::size_t i = 0; i < moduli.size(); ++i)
          if (n % moduli[i] == 0) ++counts[i];
      },
      100000000ULL);
  rep.members = members;

  auto num = static_cast<u64>(rep.kappa.num);
  auto den = static_cast<u64>(rep.kappa.den);
  long double total = 0.0L;
  for (std::size_t i = 0; i < moduli.size(); ++i) {
    u128 lhs = static_cast<u128>(counts[i]) * moduli[i] * den;
    u128 rhs = static_cast<u128>(num) * members;
    u128 diff = lhs > rhs ? lhs - rhs : rhs - lhs;
    double term = static_cast<double>(diff) /
                  (static_cast<double>(moduli[i]) * static_cast<double>(den));
    rep.moduli.push_back(moduli[i]);
    rep.terms.push_back(term);
    total += term;
  }
  rep.total = static_cast<double>(total);
  rep.normalized = members > 0 ? rep.total / static_cast<double>(members) : 0.0;
  return rep;
}

double prime_exp_sum(u64 limit, const Angle& theta) {
  if (limit > 100000000ULL) throw ResourceError("exponential sum limited to 1e8");
  long double re = 0.0L, im = 0.0L;
  const double two_pi = 2.0 * std::numbers::pi;
  for_each_prime(limit, [&](u64 p) {
    double frac =
        static_cast<double>(mulmod_u64(p % theta.den, theta.num, theta.den)) /
        static_cast<double>(theta.den);
    double phase = two_pi * (frac + theta.offset * static_cast<double>(p));
    re += std::cos(phase);
    im += std::sin(phase);
  });
  return static_cast<double>(std::sqrt(re * re + im * im));
}

}  // namespace rdl
