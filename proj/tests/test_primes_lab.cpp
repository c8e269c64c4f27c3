#include <doctest.h>

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <vector>

#include "rdl/angle.hpp"
#include "rdl/digitset.hpp"
#include "rdl/errors.hpp"
#include "rdl/primes_lab.hpp"

using rdl::DigitSystem;

namespace {

bool trial_division(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::vector<bool> simple_sieve(std::uint64_t limit) {
  std::vector<bool> is(limit, limit > 2);
  if (limit > 0) is[0] = false;
  if (limit > 1) is[1] = false;
  for (std::uint64_t p = 2; p * p < limit; ++p)
    if (is[p])
      for (std::uint64_t m = p * p; m < limit; m += p) is[m] = false;
  return is;
}

}  // namespace

TEST_CASE("primality agrees with trial division on small inputs") {
  for (std::uint64_t n = 0; n < 20000; ++n) {
    CAPTURE(n);
    CHECK(rdl::is_prime_u64(n) == trial_division(n));
  }
}

TEST_CASE("primality handles Carmichael numbers and large inputs") {
  CHECK(!rdl::is_prime_u64(561));
  CHECK(!rdl::is_prime_u64(1105));
  CHECK(!rdl::is_prime_u64(1729));
  CHECK(rdl::is_prime_u64((1ULL << 61) - 1));  // Mersenne prime 2^61-1
  CHECK(rdl::is_prime_u64(18446744073709551557ULL));  // largest 64-bit prime
  CHECK(!rdl::is_prime_u64(~0ULL));
  CHECK(!rdl::is_prime_u64((1ULL << 61) + 1));
}

TEST_CASE("prime counting matches reference values") {
  CHECK(rdl::prime_count(100) == 25);
  CHECK(rdl::prime_count(2) == 0);
  CHECK(rdl::prime_count(3) == 1);
  CHECK(rdl::prime_count(1000000) == 78498);
}

TEST_CASE("prime stream is increasing and complete") {
  std::vector<bool> is = simple_sieve(30000);
  std::uint64_t last = 0, seen = 0;
  rdl::for_each_prime(30000, [&](std::uint64_t p) {
    CHECK(p > last);
    CHECK(is[p]);
    last = p;
    ++seen;
  });
  std::uint64_t expect = 0;
  for (std::uint64_t n = 0; n < 30000; ++n) expect += is[n] ? 1 : 0;
  CHECK(seen == expect);
}

TEST_CASE("restricted prime counts: hand examples and dual-route agreement") {
  CHECK(rdl::count_primes_in_set(DigitSystem(10, {7}), 10) == 3);   // 2, 3, 5
  CHECK(rdl::count_primes_in_set(DigitSystem(10, {0}), 100) == 25); // no prime below 100 has a 0
  std::vector<bool> is = simple_sieve(100000);
  for (int bad : {0, 7}) {
    std::uint64_t direct = 0;
    for (std::uint64_t n = 2; n < 100000; ++n) {
      if (!is[n]) continue;
      std::uint64_t m = n;
      bool ok = true;
      while (m) {
        if (m % 10 == static_cast<std::uint64_t>(bad)) ok = false;
        m /= 10;
      }
      if (ok) ++direct;
    }
    CAPTURE(bad);
    CHECK(rdl::count_primes_in_set(DigitSystem(10, {static_cast<int>(bad)}), 100000) == direct);
  }
  CHECK_THROWS_AS(rdl::count_primes_in_set(DigitSystem(10, {7}), 1000000, 10),
                  rdl::ResourceError);
}

TEST_CASE("prime ratio report fields are consistent") {
  rdl::PrimeRatioReport rep = rdl::prime_ratio_report(DigitSystem(10, {7}), 100000);
  CHECK(rep.limit == 100000);
  CHECK(rep.digit_system == "q10-x7");
  CHECK(rep.members == rdl::count_members(DigitSystem(10, {7}), 100000));
  CHECK(rep.primes_in_set == rdl::count_primes_in_set(DigitSystem(10, {7}), 100000));
  CHECK(rep.kappa2 == doctest::Approx(5.0 / 6.0).epsilon(1e-12));
  double predicted = rep.kappa2 * static_cast<double>(rep.members) / std::log(100000.0);
  CHECK(rep.ratio ==
        doctest::Approx(static_cast<double>(rep.primes_in_set) / predicted).epsilon(1e-12));
  CHECK(rep.ratio > 0.5);
  CHECK(rep.ratio < 2.0);
  rdl::PrimeRatioReport zero = rdl::prime_ratio_report(DigitSystem(10, {0}), 100000);
  CHECK(zero.kappa2 == doctest::Approx(10.0 / 9.0).epsilon(1e-12));
  CHECK_THROWS_AS(rdl::prime_ratio_report(DigitSystem(10, {0, 7}), 100000), rdl::ConfigError);
  CHECK_THROWS_AS(rdl::prime_ratio_report(DigitSystem(12, {5}), 100000), rdl::ConfigError);
}

TEST_CASE("type-I discrepancy structure and oracle recomputation") {
  DigitSystem ds(10, {7});
  rdl::TypeIDiscrepancy d = rdl::type_i_discrepancy(ds, 10000, 50);
  CHECK(d.limit == 10000);
  CHECK(d.q_max == 50);
  CHECK(d.members == rdl::count_members(ds, 10000));
  REQUIRE(d.moduli.size() == d.terms.size());
  REQUIRE(!d.moduli.empty());
  CHECK(d.moduli[0] == 1);
  for (std::size_t i = 1; i < d.moduli.size(); ++i) {
    CHECK(d.moduli[i] % 2 != 0);
    CHECK(d.moduli[i] % 5 != 0);
    CHECK(d.moduli[i] < 50);
    CHECK(d.moduli[i] > d.moduli[i - 1]);
  }

  // Independent recomputation by direct enumeration.
  std::vector<std::uint64_t> members = rdl::enumerate_members(ds, 10000);
  double total = 0.0;
  for (std::size_t i = 0; i < d.moduli.size(); ++i) {
    std::uint64_t q = d.moduli[i];
    std::uint64_t cnt = 0;
    for (std::uint64_t a : members)
      if (a % q == 0 && a % 2 != 0 && a % 5 != 0) ++cnt;
    double expect_term = std::fabs(static_cast<double>(cnt) -
                                   (1.0 / 3.0) * static_cast<double>(members.size()) /
                                       static_cast<double>(q));
    CHECK(d.terms[i] == doctest::Approx(expect_term).epsilon(1e-9));
    total += d.terms[i];
  }
  CHECK(d.total == doctest::Approx(total).epsilon(1e-9));
  CHECK(d.normalized ==
        doctest::Approx(d.total / static_cast<double>(d.members)).epsilon(1e-12));
  CHECK(d.kappa.num == 1);
  CHECK(d.kappa.den == 3);
}

TEST_CASE("type-I discrepancy edge cases and guards") {
  // q_max = 2 keeps only the q = 1 term: | #coprime - kappa * members |.
  rdl::TypeIDiscrepancy one = rdl::type_i_discrepancy(DigitSystem(10, {7}), 10000, 2);
  REQUIRE(one.moduli.size() == 1);
  CHECK(one.moduli[0] == 1);
  CHECK(one.total == one.terms[0]);
  // At a power of ten the coprime count is exactly kappa * members.
  CHECK(one.total == 0.0);
  // Below 12 the members are 0..6, 8..11: four coprime to 10 (1, 3, 9, 11)
  // against kappa * 11 = 11/3, so the q = 1 term is exactly 1/3.
  rdl::TypeIDiscrepancy mid = rdl::type_i_discrepancy(DigitSystem(10, {7}), 12, 2);
  CHECK(mid.total == doctest::Approx(1.0 / 3.0).epsilon(1e-12));

  CHECK_THROWS_AS(rdl::type_i_discrepancy(DigitSystem(10, {7}), 10000, 5000),
                  rdl::ConfigError);  // q_max beyond limit^(50/77)
  CHECK_THROWS_AS(rdl::type_i_discrepancy(DigitSystem(10, {7}), 200000000ULL, 10),
                  rdl::ResourceError);
  CHECK_THROWS_AS(rdl::type_i_discrepancy(DigitSystem(12, {5}), 10000, 10), rdl::ConfigError);
}

TEST_CASE("prime exponential sums at rational phases") {
  double pi_x = static_cast<double>(rdl::prime_count(100000));
  // theta = 0: every term is 1.
  CHECK(rdl::prime_exp_sum(100000, rdl::Angle(0, 1)) == doctest::Approx(pi_x).epsilon(1e-12));
  // theta = 1/2: e(p/2) = -1 except p = 2.
  CHECK(rdl::prime_exp_sum(100000, rdl::Angle(1, 2)) ==
        doctest::Approx(pi_x - 2.0).epsilon(1e-9));
  // theta = 1/3 against a direct complex accumulation.
  std::complex<double> acc{0.0, 0.0};
  rdl::for_each_prime(100000, [&](std::uint64_t p) {
    double ph = 2.0 * std::numbers::pi * static_cast<double>(p % 3) / 3.0;
    acc += std::complex<double>(std::cos(ph), std::sin(ph));
  });
  CHECK(rdl::prime_exp_sum(100000, rdl::Angle(1, 3)) ==
        doctest::Approx(std::abs(acc)).epsilon(1e-6));
  // A generic phase shows square-root-like cancellation.
  CHECK(rdl::prime_exp_sum(1000000, rdl::Angle(1, 7, 1e-4)) < 1000000.0 / 10.0);
  CHECK_THROWS_AS(rdl::prime_exp_sum(200000000ULL, rdl::Angle(1, 3)), rdl::ResourceError);
}
