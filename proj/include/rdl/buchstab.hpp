#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace rdl {

// Buchstab's omega on a marching grid: exact 1/u on [1,2], then cumulative
// trapezoid on (u*omega(u))' = omega(u-1), linear interpolation at lookup.
class OmegaTable {
 public:
  explicit OmegaTable(double u_max = 20.0, double h = 1e-4);

  double operator()(double u) const;
  double u_max() const { return u_max_; }
  double step() const { return h_; }

 private:
  double u_max_;
  double h_;
  int per_unit_;               // grid points per unit length, 1/h
  std::vector<double> values_; // values_[j] = omega(1 + j*h)
};

struct AffineConstraint {
  std::array<double, 4> coef{};  // coef . x < rhs, strict
  double rhs = 0.0;
};

struct ForbiddenInterval {
  std::vector<int> vars;  // sum over these variable indices
  double lo = 0.0;        // must avoid the closed interval [lo, hi]
  double hi = 0.0;
};

// A 2- or 4-dimensional integration region: affine constraints, forbidden
// sum-intervals, a bounding box, and the integrand pattern
// omega((1 - sum of vars)/x[omega_divisor]) / (prod of vars * x[squared_var]).
struct RegionSpec {
  std::string name;
  int dimension = 2;
  std::array<double, 3> theta{};
  std::vector<AffineConstraint> constraints;
  std::vector<ForbiddenInterval> forbidden;
  int omega_divisor = 1;
  int squared_var = 1;
  std::array<std::array<double, 2>, 4> box{};  // per-axis [lo, hi]

  bool contains(const double* x) const;
  // Assumes x satisfies the constraints. An omega argument below 1 means the
  // underlying rough-number count is empty, contributing 0.
  double integrand(const double* x, const OmegaTable& omega) const;
  double box_volume() const;
};

// The seven sieve-loss regions for parameters (theta1, theta2, theta3);
// defaults (9/25, 17/40, 50/77). Order: I1, I2, I3, I4, I5, I6, I7.
std::vector<RegionSpec> region_catalog(double theta1, double theta2, double theta3);

enum class IntegrationMethod { adaptive_iterated, quasi_mc };

struct IntegrateResult {
  double value = 0.0;
  double error = 0.0;
  std::uint64_t samples = 0;
};

// 2D regions accept both methods; 4D regions quasi-MC only. budget counts
// integrand evaluations (adaptive) or sample points (quasi-MC). Quasi-MC uses
// 16 digitally shifted Sobol replicates; error is the standard error of the
// replicate means.
IntegrateResult integrate(const RegionSpec& region, const OmegaTable& omega,
                          IntegrationMethod method, std::uint64_t budget, std::uint64_t seed,
                          int threads = 1);

struct IntegralReport {
  std::array<double, 3> theta{};
  std::uint64_t budget = 0;
  std::uint64_t seed = 0;
  std::array<double, 7> values{};           // quasi-MC values, I1..I7
  std::array<double, 7> error_estimates{};  // standard errors
  std::array<double, 4> adaptive_values{};  // 2D cross-checks: I1, I2, I5, I6
  std::array<double, 4> adaptive_errors{};
  std::array<bool, 4> adaptive_agree{};     // |adaptive - mc| <= 3 * stderr
  double total = 0.0;
  double margin = 0.0;  // 1 - total
  bool pass = false;    // total + 3 * sum of error estimates < 0.99
  std::uint64_t samples = 0;
};

IntegralReport verify_margin(const std::array<double, 3>& theta, std::uint64_t budget,
                             std::uint64_t seed, const OmegaTable& omega, int threads = 1);

}  // namespace rdl
