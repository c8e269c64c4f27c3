#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "rdl/angle.hpp"
#include "rdl/digitset.hpp"
#include "rdl/rational.hpp"

namespace rdl {

// Deterministic Miller-Rabin, exact for all 64-bit inputs.
bool is_prime_u64(std::uint64_t n);

// Streams primes below limit in increasing order via a segmented sieve.
void for_each_prime(std::uint64_t limit, const std::function<void(std::uint64_t)>& fn);

// Number of primes below limit (segmented sieve).
std::uint64_t prime_count(std::uint64_t limit);

// Primes below limit whose digits all lie in the allowed set. Enumerates the
// members and tests each with Miller-Rabin, a route independent of the sieve.
std::uint64_t count_primes_in_set(const DigitSystem& ds, std::uint64_t limit,
                                  std::uint64_t member_cap = 1000000000ULL);

struct PrimeRatioReport {
  std::string digit_system;
  std::uint64_t limit = 0;
  std::uint64_t primes_in_set = 0;
  std::uint64_t members = 0;
  double kappa2 = 0.0;
  // primes_in_set * log(limit) / (kappa2 * members), the observed-to-predicted
  // ratio; the prediction treats the members as having prime density
  // kappa2 / log(limit).
  double ratio = 0.0;
};

// Base 10 with one excluded digit only (the kappa2 prediction applies there).
PrimeRatioReport prime_ratio_report(const DigitSystem& ds, std::uint64_t limit);

struct TypeIDiscrepancy {
  std::uint64_t limit = 0;
  std::uint64_t q_max = 0;
  std::uint64_t members = 0;  // all members below limit
  Rational kappa;             // asymptotic fraction of members coprime to 10
  double total = 0.0;         // sum over moduli of the divisibility discrepancy
  double normalized = 0.0;    // total / members
  std::vector<std::uint64_t> moduli;  // q = 1, then q < q_max with gcd(q, 10) = 1
  std::vector<double> terms;          // matching |count_q - kappa * members / q|
};

// Distribution of members over multiples of small moduli coprime to 10. For
// each modulus q the term is | #{members a < limit: q divides a, gcd(a,10)=1}
// - kappa * members / q |, computed in exact integer arithmetic before the
// final division. Base 10 only; one pass over the members with a divisor loop.
TypeIDiscrepancy type_i_discrepancy(const DigitSystem& ds, std::uint64_t limit,
                                    std::uint64_t q_max);

// | sum over primes p < limit of e(p * theta) | with the phase held as an
// exact rational. limit is capped at 1e8.
double prime_exp_sum(std::uint64_t limit, const Angle& theta);

}  // namespace rdl
