#include <doctest.h>

#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "rdl/buchstab.hpp"
#include "rdl/errors.hpp"
#include "rdl/qmc.hpp"

using rdl::OmegaTable;
using rdl::RegionSpec;

namespace {

constexpr double kTh1 = 0.36, kTh2 = 0.425;
const double kTh3 = 50.0 / 77.0;
const double kD = kTh2 - kTh1;

bool outside(double s, double lo, double hi) { return s < lo || s > hi; }

// Hand-written region predicates, independent of the constraint tables.
bool in_i1(double u, double v) {
  return kD < v && v < u && u < kTh1 && v < (1.0 - u) / 2.0 && 1.0 - kTh1 < u + v;
}
bool in_i2(double u, double v) {
  return kD < v && v < u && u < kTh1 && kTh3 < 2.0 * v + u && 2.0 * v + u < 1.0 &&
         kTh2 < u + v && u + v < 1.0 - kTh2;
}
bool in_r1(double u, double v, double w, double t) {
  return kD < t && t < w && w < v && v < u && u < kTh1 && u + 2.0 * v < kTh3 &&
         u + v + 2.0 * w < 1.0 && u + v + w + 2.0 * t < 1.0 && kTh2 < u + v &&
         u + v < 1.0 - kTh2 && outside(u + v, kTh1, kTh2) && outside(u + w, kTh1, kTh2) &&
         outside(u + t, kTh1, kTh2) && outside(v + w, kTh1, kTh2) &&
         outside(v + t, kTh1, kTh2) && outside(w + t, kTh1, kTh2);
}
bool in_r2(double u, double v, double w, double t) {
  return kD < t && t < w && w < v && v < u && u < kTh1 && u + v < kTh1 &&
         outside(u + v + w + t, kTh1, kTh2) && outside(u + v + w + t, 1.0 - kTh2, 1.0 - kTh1) &&
         outside(u + v + w, kTh1, kTh2) && outside(u + v + t, kTh1, kTh2) &&
         outside(u + w + t, kTh1, kTh2) && outside(v + w + t, kTh1, kTh2);
}
bool in_i5(double u, double v) {
  return kTh2 < u && u < 0.5 && kD < v && v < (1.0 - u) / 2.0 && 1.0 - kTh1 < u + v;
}
bool in_i6(double u, double v) {
  return kTh2 < u && u < 0.5 && kD < v && v < (1.0 - u) / 2.0 && kTh3 < 2.0 * v + u &&
         kTh2 < u + v && u + v < 1.0 - kTh2;
}
bool in_r3(double u, double v, double w, double t) {
  return kD < t && t < w && w < v && kTh2 < u && u < 0.5 && u + 2.0 * v < kTh3 &&
         u + v + 2.0 * w < 1.0 && u + v + w + 2.0 * t < 1.0 && kTh2 < u + v &&
         u + v < 1.0 - kTh2 && outside(u + v, kTh1, kTh2) && outside(u + w, kTh1, kTh2) &&
         outside(u + t, kTh1, kTh2) && outside(v + w, kTh1, kTh2) &&
         outside(v + t, kTh1, kTh2) && outside(w + t, kTh1, kTh2);
}

}  // namespace

TEST_CASE("omega closed forms and continuity") {
  OmegaTable omega;
  CHECK(omega(1.5) == 2.0 / 3.0);
  CHECK(omega(1.0) == 1.0);
  CHECK(omega(2.0) == 0.5);
  CHECK(std::fabs(omega(2.5) - (1.0 + std::log(1.5)) / 2.5) <= 1e-7);
  CHECK(std::fabs(omega(2.9) - (1.0 + std::log(1.9)) / 2.9) <= 1e-7);
  // Continuity across the closed-form / marching joint at u = 2.
  CHECK(std::fabs(omega(2.0 + 1e-9) - 0.5) <= 1e-6);
}

TEST_CASE("omega band, limit value, and flatness") {
  OmegaTable omega;
  for (double u = 1.0; u <= 20.0; u += 0.01) {
    CHECK(omega(u) >= 0.5 - 1e-12);
    CHECK(omega(u) <= 1.0 + 1e-12);
  }
  for (double u : {10.0, 12.0, 15.0, 18.0, 20.0})
    CHECK(std::fabs(omega(u) - 0.5614594836) <= 1e-4);
  CHECK(std::fabs(omega(20.0) - omega(19.0)) <= 1e-5);
}

TEST_CASE("omega halving the step moves values by less than 1e-6") {
  OmegaTable coarse(20.0, 1e-4);
  OmegaTable fine(20.0, 5e-5);
  double worst = 0.0;
  for (double u = 1.0; u <= 20.0; u += 0.0107)
    worst = std::max(worst, std::fabs(coarse(u) - fine(u)));
  CHECK(worst <= 1e-6);
}

TEST_CASE("omega rejects out-of-domain lookups and bad grids") {
  OmegaTable omega;
  CHECK_THROWS_AS(omega(0.99), std::domain_error);
  CHECK_THROWS_AS(omega(20.5), std::domain_error);
  CHECK_THROWS_AS(OmegaTable(20.0, 2e-3), rdl::ConfigError);   // step too coarse
  CHECK_THROWS_AS(OmegaTable(10.0, 1e-4), rdl::ConfigError);   // table too short
  CHECK_THROWS_AS(OmegaTable(20.0, 3e-4), rdl::ConfigError);   // step not dividing 1
}

TEST_CASE("region catalog shape and validation") {
  std::vector<RegionSpec> regions = rdl::region_catalog(kTh1, kTh2, kTh3);
  REQUIRE(regions.size() == 7);
  const int dims[7] = {2, 2, 4, 4, 2, 2, 4};
  const char* names[7] = {"I1", "I2", "I3", "I4", "I5", "I6", "I7"};
  for (int i = 0; i < 7; ++i) {
    CHECK(regions[static_cast<std::size_t>(i)].dimension == dims[i]);
    CHECK(regions[static_cast<std::size_t>(i)].name == names[i]);
    CHECK(regions[static_cast<std::size_t>(i)].box_volume() > 0.0);
  }
  CHECK_THROWS_AS(rdl::region_catalog(0.425, 0.36, kTh3), rdl::ConfigError);
  CHECK_THROWS_AS(rdl::region_catalog(0.2, 0.45, kTh3), rdl::ConfigError);  // th2 - th1 > th1
  CHECK_THROWS_AS(rdl::region_catalog(0.36, 0.425, 0.45), rdl::ConfigError);
}

TEST_CASE("membership agrees with hand-written predicates on accepted samples") {
  std::vector<RegionSpec> regions = rdl::region_catalog(kTh1, kTh2, kTh3);
  using Pred = bool (*)(const double*);
  static auto p1 = [](const double* x) { return in_i1(x[0], x[1]); };
  static auto p2 = [](const double* x) { return in_i2(x[0], x[1]); };
  static auto p3 = [](const double* x) { return in_r1(x[0], x[1], x[2], x[3]); };
  static auto p4 = [](const double* x) { return in_r2(x[0], x[1], x[2], x[3]); };
  static auto p5 = [](const double* x) { return in_i5(x[0], x[1]); };
  static auto p6 = [](const double* x) { return in_i6(x[0], x[1]); };
  static auto p7 = [](const double* x) { return in_r3(x[0], x[1], x[2], x[3]); };
  Pred preds[7] = {p1, p2, p3, p4, p5, p6, p7};

  for (std::size_t r = 0; r < 7; ++r) {
    const RegionSpec& region = regions[r];
    std::uint64_t st = 0xABCDEF01ULL + r;
    std::array<std::uint32_t, rdl::SobolStream::kMaxDim> shifts{};
    for (int d = 0; d < region.dimension; ++d)
      shifts[static_cast<std::size_t>(d)] = static_cast<std::uint32_t>(rdl::splitmix64(st));
    rdl::SobolStream sob(region.dimension, shifts);
    double pt[rdl::SobolStream::kMaxDim];
    double x[4] = {0, 0, 0, 0};
    int accepted = 0, agreement_checked = 0;
    for (int n = 0; n < 200000 && accepted < 10000; ++n) {
      sob.next(pt);
      for (int d = 0; d < region.dimension; ++d) {
        const auto& b = region.box[static_cast<std::size_t>(d)];
        x[d] = b[0] + (b[1] - b[0]) * pt[d];
      }
      bool lib = region.contains(x);
      bool ref = preds[r](x);
      CAPTURE(r);
      CHECK(lib == ref);
      ++agreement_checked;
      if (lib) ++accepted;
    }
    CAPTURE(region.name);
    CHECK(accepted > 0);
    CHECK(agreement_checked > 0);
  }
}

TEST_CASE("catalog examples: explicit accept and reject points") {
  std::vector<RegionSpec> regions = rdl::region_catalog(kTh1, kTh2, kTh3);
  // No I1 point can have u+v <= 1-th1.
  double bad[2] = {0.33, 0.30};  // u+v = 0.63 < 0.64
  CHECK(!regions[0].contains(bad));
  // u > th1 rejects from R1.
  double r1_bad[4] = {0.40, 0.10, 0.09, 0.08};
  CHECK(!regions[2].contains(r1_bad));
  // An interior I1 point, cross-checked against the predicate.
  double good[2] = {0.34, 0.315};
  CHECK(in_i1(good[0], good[1]));
  CHECK(regions[0].contains(good));
}

TEST_CASE("integrand pattern and the small-omega-argument guard") {
  std::vector<RegionSpec> regions = rdl::region_catalog(kTh1, kTh2, kTh3);
  OmegaTable omega;

  double p[2] = {0.34, 0.315};
  double arg = (1.0 - p[0] - p[1]) / p[1];
  CHECK(regions[0].integrand(p, omega) ==
        doctest::Approx(omega(arg) / (p[0] * p[1] * p[1])).epsilon(1e-12));

  // A genuine R1 point whose omega argument falls below 1: integrand is 0.
  double witness[4] = {0.2164, 0.2160, 0.2155, 0.1430};
  CHECK(in_r1(witness[0], witness[1], witness[2], witness[3]));
  CHECK(regions[2].contains(witness));
  double warg = (1.0 - witness[0] - witness[1] - witness[2] - witness[3]) / witness[2];
  CHECK(warg < 1.0);
  CHECK(regions[2].integrand(witness, omega) == 0.0);

  // A 4D point with a comfortable argument uses the omega divisor w and the
  // squared final variable t.
  double q[4] = {0.12, 0.11, 0.10, 0.09};
  double qarg = (1.0 - q[0] - q[1] - q[2] - q[3]) / q[2];
  CHECK(qarg > 1.0);
  double expect = omega(qarg) / (q[0] * q[1] * q[2] * q[3] * q[3]);
  CHECK(regions[2].integrand(q, omega) == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("integration is deterministic and seed-sensitive") {
  std::vector<RegionSpec> regions = rdl::region_catalog(kTh1, kTh2, kTh3);
  OmegaTable omega;
  rdl::IntegrateResult a =
      rdl::integrate(regions[1], omega, rdl::IntegrationMethod::quasi_mc, 160000, 42, 1);
  rdl::IntegrateResult b =
      rdl::integrate(regions[1], omega, rdl::IntegrationMethod::quasi_mc, 160000, 42, 1);
  CHECK(a.value == b.value);
  CHECK(a.error == b.error);
  CHECK(a.samples == b.samples);
  rdl::IntegrateResult c =
      rdl::integrate(regions[1], omega, rdl::IntegrationMethod::quasi_mc, 160000, 43, 1);
  CHECK(a.value != c.value);
  CHECK(a.value == doctest::Approx(c.value).epsilon(0.05));
}

TEST_CASE("doubling the budget stays within the error estimates") {
  std::vector<RegionSpec> regions = rdl::region_catalog(kTh1, kTh2, kTh3);
  OmegaTable omega;
  for (std::size_t r : {1UL, 4UL}) {
    rdl::IntegrateResult small =
        rdl::integrate(regions[r], omega, rdl::IntegrationMethod::quasi_mc, 400000, 7, 1);
    rdl::IntegrateResult big =
        rdl::integrate(regions[r], omega, rdl::IntegrationMethod::quasi_mc, 800000, 7, 1);
    CAPTURE(regions[r].name);
    CHECK(std::fabs(small.value - big.value) < 3.0 * (small.error + big.error));
  }
}

TEST_CASE("empty regions integrate to exactly zero") {
  OmegaTable omega;
  RegionSpec empty;
  empty.name = "empty";
  empty.dimension = 2;
  empty.omega_divisor = 1;
  empty.squared_var = 1;
  rdl::AffineConstraint lo, hi;
  lo.coef = {1, 0, 0, 0};
  lo.rhs = 0.2;  // u < 0.2
  hi.coef = {-1, 0, 0, 0};
  hi.rhs = -0.3;  // u > 0.3
  empty.constraints = {lo, hi};
  empty.box = {{{0.1, 0.4}, {0.1, 0.4}, {0, 0}, {0, 0}}};
  rdl::IntegrateResult mc =
      rdl::integrate(empty, omega, rdl::IntegrationMethod::quasi_mc, 16000, 1, 1);
  CHECK(mc.value == 0.0);
  CHECK(mc.error == 0.0);
}

TEST_CASE("adaptive quadrature agrees with quasi-MC on the 2D regions") {
  std::vector<RegionSpec> regions = rdl::region_catalog(kTh1, kTh2, kTh3);
  OmegaTable omega;
  for (std::size_t r : {0UL, 1UL, 4UL, 5UL}) {
    rdl::IntegrateResult ad =
        rdl::integrate(regions[r], omega, rdl::IntegrationMethod::adaptive_iterated, 20000000, 0, 1);
    rdl::IntegrateResult mc =
        rdl::integrate(regions[r], omega, rdl::IntegrationMethod::quasi_mc, 2000000, 11, 1);
    CAPTURE(regions[r].name);
    CHECK(std::fabs(ad.value - mc.value) <= 4.0 * mc.error + 1e-5);
  }
  CHECK_THROWS_AS(
      rdl::integrate(regions[2], omega, rdl::IntegrationMethod::adaptive_iterated, 1000, 0, 1),
      rdl::ConfigError);
}

TEST_CASE("relaxing the forbidden list can only grow the R2 integral") {
  std::vector<RegionSpec> regions = rdl::region_catalog(kTh1, kTh2, kTh3);
  OmegaTable omega;
  RegionSpec relaxed = regions[3];
  relaxed.forbidden.clear();
  rdl::IntegrateResult with_list =
      rdl::integrate(regions[3], omega, rdl::IntegrationMethod::quasi_mc, 1600000, 3, 1);
  rdl::IntegrateResult without =
      rdl::integrate(relaxed, omega, rdl::IntegrationMethod::quasi_mc, 1600000, 3, 1);
  CHECK(without.value >= with_list.value);
}

TEST_CASE("verify_margin assembles a consistent report") {
  OmegaTable omega;
  rdl::IntegralReport rep = rdl::verify_margin({kTh1, kTh2, kTh3}, 1600000, 5, omega, 1);
  double total = 0.0;
  for (double v : rep.values) {
    CHECK(v > 0.0);
    total += v;
  }
  CHECK(rep.total == doctest::Approx(total).epsilon(1e-12));
  CHECK(rep.margin == doctest::Approx(1.0 - total).epsilon(1e-12));
  CHECK(rep.total > 0.8);
  CHECK(rep.total < 1.05);
  CHECK(rep.samples >= 7ULL * 1600000ULL);  // MC samples plus adaptive evaluations
  // Determinism of the full report.
  rdl::IntegralReport again = rdl::verify_margin({kTh1, kTh2, kTh3}, 1600000, 5, omega, 1);
  for (int i = 0; i < 7; ++i)
    CHECK(rep.values[static_cast<std::size_t>(i)] == again.values[static_cast<std::size_t>(i)]);
}
