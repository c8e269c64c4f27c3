#include "rdl/buchstab.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "rdl/errors.hpp"
#include "rdl/qmc.hpp"
#include "rdl/quadrature.hpp"

namespace rdl {

OmegaTable::OmegaTable(double u_max, double h) : u_max_(u_max), h_(h) {
  if (h <= 0.0 || h > 1e-3 + 1e-12) throw ConfigError("omega step must satisfy 0 < h <= 1e-3");
  if (u_max < 16.0) throw ConfigError("omega table must extend to u_max >= 16");
  per_unit_ = static_cast<int>(std::llround(1.0 / h));
  if (std::fabs(per_unit_ * h - 1.0) > 1e-9)
    throw ConfigError("omega step must divide 1 (e.g. 1e-4)");
  double steps_d = (u_max - 1.0) / h;
  auto steps = static_cast<std::int64_t>(std::llround(steps_d));
  if (std::fabs(steps_d - static_cast<double>(steps)) > 1e-6)
    throw ConfigError("omega u_max must be a whole number of steps from 1");

  values_.resize(static_cast<std::size_t>(steps) + 1);
  for (std::int64_t j = 0; j <= std::min<std::int64_t>(per_unit_, steps); ++j)
    values_[static_cast<std::size_t>(j)] = 1.0 / (1.0 + static_cast<double>(j) * h);

  // March P = u*omega(u) with P' = omega(u-1) by cumulative trapezoid from
  // u = 2; the argument u-1 lands exactly on earlier grid points.
  double p = 1.0;  // 2 * omega(2) = 1
  for (std::int64_t j = per_unit_; j < steps; ++j) {
    p += 0.5 * h * (values_[static_cast<std::size_t>(j - per_unit_)] +
                    values_[static_cast<std::size_t>(j + 1 - per_unit_)]);
    values_[static_cast<std::size_t>(j + 1)] = p / (1.0 + static_cast<double>(j + 1) * h);
  }
}

double OmegaTable::operator()(double u) const {
  if (!(u >= 1.0 - 1e-12) || u > u_max_ + 1e-12)
    throw std::domain_error("omega argument outside [1, u_max]");
  u = std::min(std::max(u, 1.0), u_max_);
  if (u <= 2.0) return 1.0 / u;
  double x = (u - 1.0) * static_cast<double>(per_unit_);
  auto j = static_cast<std::size_t>(x);
  if (j >= values_.size() - 1) return values_.back();
  double frac = x - static_cast<double>(j);
  return values_[j] * (1.0 - frac) + values_[j + 1] * frac;
}

bool RegionSpec::contains(const double* x) const {
  for (const AffineConstraint& c : constraints) {
    double lhs = 0.0;
    for (int i = 0; i < dimension; ++i) lhs += c.coef[static_cast<std::size_t>(i)] * x[i];
    if (!(lhs < c.rhs)) return false;
  }
  for (const ForbiddenInterval& f : forbidden) {
    double s = 0.0;
    for (int i : f.vars) s += x[i];
    if (s >= f.lo && s <= f.hi) return false;
  }
  return true;
}

double RegionSpec::integrand(const double* x, const OmegaTable& omega) const {
  double sum = 0.0;
  for (int i = 0; i < dimension; ++i) sum += x[i];
  double arg = (1.0 - sum) / x[omega_divisor];
  if (arg < 1.0) return 0.0;
  double den = x[squared_var];
  for (int i = 0; i < dimension; ++i) den *= x[i];
  return omega(arg) / den;
}

double RegionSpec::box_volume() const {
  double vol = 1.0;
  for (int i = 0; i < dimension; ++i) {
    double w = box[static_cast<std::size_t>(i)][1] - box[static_cast<std::size_t>(i)][0];
    if (w <= 0.0) return 0.0;
    vol *= w;
  }
  return vol;
}

namespace {

AffineConstraint c2(double cu, double cv, double rhs) {
  AffineConstraint c;
  c.coef = {cu, cv, 0.0, 0.0};
  c.rhs = rhs;
  return c;
}

AffineConstraint c4(double cu, double cv, double cw, double ct, double rhs) {
  AffineConstraint c;
  c.coef = {cu, cv, cw, ct};
  c.rhs = rhs;
  return c;
}

}  // namespace

std::vector<RegionSpec> region_catalog(double th1, double th2, double th3) {
  double d = th2 - th1;
  if (!(0.0 < d && d < th1 && th1 < th2 && th2 < 0.5 && 0.5 < th3 && th3 < 1.0))
    throw ConfigError("theta parameters must satisfy 0 < th2-th1 < th1 < th2 < 1/2 < th3 < 1");

  std::vector<RegionSpec> regions;
  std::array<double, 3> theta{th1, th2, th3};
  auto make = [&](const std::string& name, int dim, int omega_div, int squared) {
    RegionSpec r;
    r.name = name;
    r.dimension = dim;
    r.theta = theta;
    r.omega_divisor = omega_div;
    r.squared_var = squared;
    return r;
  };
  std::vector<std::vector<int>> pairs = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
  std::vector<std::vector<int>> triples = {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}};

  {  // I1: th2-th1 < v < u < th1, v < (1-u)/2, 1-th1 < u+v
    RegionSpec r = make("I1", 2, 1, 1);
    r.constraints = {c2(0, -1, -d), c2(-1, 1, 0), c2(1, 0, th1), c2(1, 2, 1), c2(-1, -1, th1 - 1.0)};
    r.box = {{{d, th1}, {d, th1}, {0, 0}, {0, 0}}};
    regions.push_back(std::move(r));
  }
  {  // I2: th2-th1 < v < u < th1, th3 < 2v+u < 1, th2 < u+v < 1-th2
    RegionSpec r = make("I2", 2, 1, 1);
    r.constraints = {c2(0, -1, -d),  c2(-1, 1, 0),   c2(1, 0, th1),      c2(-1, -2, -th3),
                     c2(1, 2, 1),    c2(-1, -1, -th2), c2(1, 1, 1.0 - th2)};
    r.box = {{{d, th1}, {d, th1}, {0, 0}, {0, 0}}};
    regions.push_back(std::move(r));
  }
  {  // I3 over R1: th2-th1 < t < w < v < u < th1, u+2v < th3, u+v+2w < 1,
     // u+v+w+2t < 1, th2 < u+v < 1-th2, pair sums avoid [th1, th2]
    RegionSpec r = make("I3", 4, 2, 3);
    r.constraints = {c4(0, 0, 0, -1, -d),  c4(0, 0, -1, 1, 0),  c4(0, -1, 1, 0, 0),
                     c4(-1, 1, 0, 0, 0),   c4(1, 0, 0, 0, th1), c4(1, 2, 0, 0, th3),
                     c4(1, 1, 2, 0, 1),    c4(1, 1, 1, 2, 1),   c4(-1, -1, 0, 0, -th2),
                     c4(1, 1, 0, 0, 1.0 - th2)};
    for (const auto& p : pairs) r.forbidden.push_back({p, th1, th2});
    r.box = {{{d, th1}, {d, th1}, {d, th1}, {d, th1}}};
    regions.push_back(std::move(r));
  }
  {  // I4 over R2: th2-th1 < t < w < v < u < th1, u+v < th1, the 4-sum avoids
     // [th1, th2] and [1-th2, 1-th1], triple sums avoid [th1, th2]
    RegionSpec r = make("I4", 4, 3, 3);
    r.constraints = {c4(0, 0, 0, -1, -d), c4(0, 0, -1, 1, 0), c4(0, -1, 1, 0, 0),
                     c4(-1, 1, 0, 0, 0),  c4(1, 0, 0, 0, th1), c4(1, 1, 0, 0, th1)};
    r.forbidden.push_back({{0, 1, 2, 3}, th1, th2});
    r.forbidden.push_back({{0, 1, 2, 3}, 1.0 - th2, 1.0 - th1});
    for (const auto& tr : triples) r.forbidden.push_back({tr, th1, th2});
    r.box = {{{d, th1}, {d, th1}, {d, th1}, {d, th1}}};
    regions.push_back(std::move(r));
  }
  {  // I5: th2 < u < 1/2, th2-th1 < v < (1-u)/2, 1-th1 < u+v
    RegionSpec r = make("I5", 2, 1, 1);
    r.constraints = {c2(-1, 0, -th2), c2(1, 0, 0.5), c2(0, -1, -d), c2(1, 2, 1),
                     c2(-1, -1, th1 - 1.0)};
    r.box = {{{th2, 0.5}, {d, (1.0 - th2) / 2.0}, {0, 0}, {0, 0}}};
    regions.push_back(std::move(r));
  }
  {  // I6: th2 < u < 1/2, th2-th1 < v < (1-u)/2, th3 < 2v+u < 1, th2 < u+v < 1-th2
    RegionSpec r = make("I6", 2, 1, 1);
    r.constraints = {c2(-1, 0, -th2),   c2(1, 0, 0.5),  c2(0, -1, -d),       c2(1, 2, 1),
                     c2(-1, -2, -th3),  c2(-1, -1, -th2), c2(1, 1, 1.0 - th2)};
    r.box = {{{th2, 0.5}, {d, (1.0 - th2) / 2.0}, {0, 0}, {0, 0}}};
    regions.push_back(std::move(r));
  }
  {  // I7 over R3: th2-th1 < t < w < v, th2 < u < 1/2, u+2v < th3, u+v+2w < 1,
     // u+v+w+2t < 1, th2 < u+v < 1-th2, pair sums avoid [th1, th2]
    RegionSpec r = make("I7", 4, 3, 3);
    double vhi = std::max(d, (th3 - th2) / 2.0);
    r.constraints = {c4(0, 0, 0, -1, -d),  c4(0, 0, -1, 1, 0),  c4(0, -1, 1, 0, 0),
                     c4(-1, 0, 0, 0, -th2), c4(1, 0, 0, 0, 0.5), c4(1, 2, 0, 0, th3),
                     c4(1, 1, 2, 0, 1),    c4(1, 1, 1, 2, 1),   c4(-1, -1, 0, 0, -th2),
                     c4(1, 1, 0, 0, 1.0 - th2)};
    for (const auto& p : pairs) r.forbidden.push_back({p, th1, th2});
    r.box = {{{th2, 0.5}, {d, vhi}, {d, vhi}, {d, vhi}}};
    regions.push_back(std::move(r));
  }
  return regions;
}

namespace {

IntegrateResult integrate_quasi_mc(const RegionSpec& region, const OmegaTable& omega,
                                   std::uint64_t budget, std::uint64_t seed, int threads) {
  constexpr int kReps = 16;
  std::uint64_t per = budget / kReps;
  if (per == 0) throw ConfigError("quasi-MC budget must allow at least 16 points");
  double vol = region.box_volume();
  std::array<double, kReps> est{};

  auto run_rep = [&](int rep) {
    if (vol == 0.0) {
      est[static_cast<std::size_t>(rep)] = 0.0;
      return;
    }
    std::array<std::uint32_t, SobolStream::kMaxDim> shifts{};
    std::uint64_t st = seed ^ (0xD1B54A32D192ED03ULL * static_cast<std::uint64_t>(rep + 1));
    for (int i = 0; i < region.dimension; ++i)
      shifts[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(splitmix64(st));
    SobolStream sob(region.dimension, shifts);
    double pt[SobolStream::kMaxDim];
    double x[4];
    long double acc = 0.0L;
    for (std::uint64_t n = 0; n < per; ++n) {
      sob.next(pt);
      for (int i = 0; i < region.dimension; ++i) {
        const auto& b = region.box[static_cast<std::size_t>(i)];
        x[i] = b[0] + (b[1] - b[0]) * pt[i];
      }
      if (region.contains(x)) acc += static_cast<long double>(region.integrand(x, omega));
    }
    est[static_cast<std::size_t>(rep)] = vol * static_cast<double>(acc / static_cast<long double>(per));
  };

  int workers = std::min(threads, kReps);
  if (workers <= 1) {
    for (int rep = 0; rep < kReps; ++rep) run_rep(rep);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&run_rep, w, workers] {
        for (int rep = w; rep < kReps; rep += workers) run_rep(rep);
      });
    for (auto& th : pool) th.join();
  }

  IntegrateResult out;
  for (double e : est) out.value += e;
  out.value /= kReps;
  double var = 0.0;
  for (double e : est) var += (e - out.value) * (e - out.value);
  out.error = std::sqrt(var / (kReps * (kReps - 1.0)));
  out.samples = per * kReps;
  return out;
}

IntegrateResult integrate_adaptive_2d(const RegionSpec& region, const OmegaTable& omega,
                                      std::uint64_t budget) {
  if (region.dimension != 2)
    throw ConfigError("adaptive iterated quadrature supports 2D regions only");
  if (!region.forbidden.empty())
    throw ConfigError("adaptive iterated quadrature does not handle forbidden intervals");
  constexpr double kTol = 1e-6;
  double inner_tol = kTol / 50.0;

  auto section = [&region](double u, double* vlo, double* vhi) {
    double lo = region.box[1][0], hi = region.box[1][1];
    for (const AffineConstraint& c : region.constraints) {
      double cu = c.coef[0], cv = c.coef[1];
      if (cv == 0.0) {
        if (!(cu * u < c.rhs)) return false;
      } else if (cv > 0.0) {
        hi = std::min(hi, (c.rhs - cu * u) / cv);
      } else {
        lo = std::max(lo, (c.rhs - cu * u) / cv);
      }
    }
    *vlo = lo;
    *vhi = hi;
    return hi > lo;
  };

  // The v-section is an intersection of affine bounds, so the set of u with a
  // nonempty section is a single interval; solve for it exactly rather than
  // trusting the initial Simpson stencil to discover a narrow support.
  double u_lo = region.box[0][0], u_hi = region.box[0][1];
  {
    std::vector<std::array<double, 2>> lowers{{0.0, region.box[1][0]}};
    std::vector<std::array<double, 2>> uppers{{0.0, region.box[1][1]}};
    for (const AffineConstraint& c : region.constraints) {
      double cu = c.coef[0], cv = c.coef[1];
      if (cv == 0.0) {
        if (cu > 0.0)
          u_hi = std::min(u_hi, c.rhs / cu);
        else if (cu < 0.0)
          u_lo = std::max(u_lo, c.rhs / cu);
        else if (!(0.0 < c.rhs))
          u_hi = u_lo;  // constant constraint fails everywhere
      } else {
        // v bound of the form v = a*u + b
        std::array<double, 2> form{-cu / cv, c.rhs / cv};
        (cv > 0.0 ? uppers : lowers).push_back(form);
      }
    }
    for (const auto& lo : lowers)
      for (const auto& up : uppers) {
        double a = lo[0] - up[0], b = up[1] - lo[1];  // need a*u < b
        if (a > 0.0)
          u_hi = std::min(u_hi, b / a);
        else if (a < 0.0)
          u_lo = std::max(u_lo, b / a);
        else if (!(0.0 < b))
          u_hi = u_lo;
      }
  }

  std::uint64_t inner_budget = budget;
  std::uint64_t outer_budget = budget;  // counts inner-integral invocations only
  double inner_err_total = 0.0;
  auto inner = [&](double u) {
    double vlo, vhi;
    if (!section(u, &vlo, &vhi)) return 0.0;
    AdaptiveSimpson quad([&](double v) {
      double x[2] = {u, v};
      return region.integrand(x, omega);
    },
                         &inner_budget);
    return quad.integrate(vlo, vhi, inner_tol, &inner_err_total);
  };

  double outer_err = 0.0;
  AdaptiveSimpson outer(inner, &outer_budget);
  IntegrateResult out;
  if (u_hi > u_lo) out.value = outer.integrate(u_lo, u_hi, kTol, &outer_err);
  out.error = outer_err + inner_err_total;
  out.samples = budget - inner_budget;
  return out;
}

}  // namespace

IntegrateResult integrate(const RegionSpec& region, const OmegaTable& omega,
                          IntegrationMethod method, std::uint64_t budget, std::uint64_t seed,
                          int threads) {
  if (region.dimension != 2 && region.dimension != 4)
    throw ConfigError("regions must be 2- or 4-dimensional");
  if (method == IntegrationMethod::adaptive_iterated) return integrate_adaptive_2d(region, omega, budget);
  return integrate_quasi_mc(region, omega, budget, seed, threads);
}

IntegralReport verify_margin(const std::array<double, 3>& theta, std::uint64_t budget,
                             std::uint64_t seed, const OmegaTable& omega, int threads) {
  std::vector<RegionSpec> regions = region_catalog(theta[0], theta[1], theta[2]);
  IntegralReport rep;
  rep.theta = theta;
  rep.budget = budget;
  rep.seed = seed;

  std::uint64_t chain = seed;
  std::size_t adaptive_idx = 0;
  for (std::size_t i = 0; i < regions.size(); ++i) {
    std::uint64_t region_seed = splitmix64(chain);
    IntegrateResult mc = integrate(regions[i], omega, IntegrationMethod::quasi_mc, budget,
                                   region_seed, threads);
    rep.values[i] = mc.value;
    rep.error_estimates[i] = mc.error;
    rep.samples += mc.samples;
    if (regions[i].dimension == 2) {
      IntegrateResult ad =
          integrate(regions[i], omega, IntegrationMethod::adaptive_iterated, budget, 0, threads);
      rep.adaptive_values[adaptive_idx] = ad.value;
      rep.adaptive_errors[adaptive_idx] = ad.error;
      rep.adaptive_agree[adaptive_idx] = std::fabs(ad.value - mc.value) <= 3.0 * mc.error;
      ++adaptive_idx;
    }
  }
  for (double v : rep.values) rep.total += v;
  rep.margin = 1.0 - rep.total;
  double err_sum = 0.0;
  for (double e : rep.error_estimates) err_sum += e;
  rep.pass = rep.total + 3.0 * err_sum < 0.99;
  return rep;
}

}  // namespace rdl
