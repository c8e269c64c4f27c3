#include "rdl/fourier.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>

#include "rdl/errors.hpp"
#include "rdl/parallel.hpp"

namespace rdl {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;
constexpr double kTau = 2.0 * kPi;

std::complex<double> unit_pow(std::complex<double> z, int e) {
  std::complex<double> r(1.0, 0.0);
  while (e > 0) {
    if (e & 1) r *= z;
    z *= z;
    e >>= 1;
  }
  return r;
}

// Geometric digit sum by 4th-order series about x = 0, used when the ratio
// denominator |e(x)-1| drops below 1e-9. With w = 2*pi*i*x,
// sum_{j<q} e(jx) = q + w*S1 + w^2*S2/2 + w^3*S3/6 + w^4*S4/24 where S_m are
// the integer power sums. At x = 0 this gives exactly q, so the normalized
// factor is exactly 1 there.
double series_factor(int q, int a0, double x) {
  double qd = static_cast<double>(q);
  double s1 = qd * (qd - 1.0) / 2.0;
  double s2 = qd * (qd - 1.0) * (2.0 * qd - 1.0) / 6.0;
  double s3 = s1 * s1;
  double s4 = qd * (qd - 1.0) * (2.0 * qd - 1.0) * (3.0 * qd * qd - 3.0 * qd - 1.0) / 30.0;
  std::complex<double> w(0.0, kTau * x);
  std::complex<double> w2 = w * w;
  std::complex<double> sum = qd + w * s1 + w2 * (s2 / 2.0) + w2 * w * (s3 / 6.0) + w2 * w2 * (s4 / 24.0);
  double a0x = static_cast<double>(a0) * x;
  std::complex<double> za0(std::cos(kTau * a0x), std::sin(kTau * a0x));
  return std::abs(sum - za0) / (qd - 1.0);
}

}  // namespace

double digit_factor(const DigitSystem& ds, double x) {
  int q = ds.base();
  double xf = fold_signed(x);
  double sp = std::sin(kPi * xf);
  double cp = std::cos(kPi * xf);
  // e(xf) and e(xf)-1 via half-angle forms; both relative-accurate for all xf.
  std::complex<double> z(cp * cp - sp * sp, 2.0 * sp * cp);

  if (ds.s() == 1) {
    int a0 = ds.excluded_single();
    double abs_den = 2.0 * std::abs(sp);
    if (abs_den < 1e-9) return series_factor(q, a0, xf);
    std::complex<double> den(-2.0 * sp * sp, 2.0 * sp * cp);
    std::complex<double> num;
    if (abs_den >= 0.025) {
      num = unit_pow(z, q) - 1.0;
    } else {
      // Small xf: q*xf is far from nonzero integers, so the fold is exact and
      // the numerator keeps full relative accuracy where cancellation hurts.
      double yf = fold_signed(static_cast<double>(q) * xf);
      double sy = std::sin(kPi * yf);
      double cy = std::cos(kPi * yf);
      num = std::complex<double>(-2.0 * sy * sy, 2.0 * sy * cy);
    }
    std::complex<double> ratio = num / den;
    std::complex<double> za0 = unit_pow(z, a0);
    return std::abs(ratio - za0) / static_cast<double>(q - 1);
  }

  // General excluded-set factor: mean of unit vectors over allowed digits.
  // No division, so no singular branch is needed.
  std::complex<double> acc(0.0, 0.0);
  std::complex<double> zp(1.0, 0.0);
  int d = 0;
  for (int a : ds.allowed()) {
    for (; d < a; ++d) zp *= z;
    acc += zp;
  }
  return std::abs(acc) / static_cast<double>(q - ds.s());
}

double transform_product(const DigitSystem& ds, int k, const Angle& theta) {
  if (k < 0) throw ConfigError("transform scale k must be nonnegative");
  PhaseWalker walk(theta, ds.base());
  double prod = 1.0;
  for (int i = 0; i < k; ++i) {
    prod *= digit_factor(ds, walk.current());
    walk.advance();
  }
  return prod;
}

double transform_direct(const DigitSystem& ds, int k, const Angle& theta, std::uint64_t cap) {
  if (k < 0) throw ConfigError("transform scale k must be nonnegative");
  double strings = std::pow(static_cast<double>(ds.base() - ds.s()), k);
  if (strings > static_cast<double>(cap))
    throw ResourceError("direct transform at scale " + std::to_string(k) + " exceeds the oracle cap");
  std::uint64_t num = theta.num % theta.den;
  std::uint64_t den = theta.den;
  double eta = fold_signed(theta.offset);
  long double re = 0.0L, im = 0.0L;
  for_each_fixed_length(ds, k, [&](std::uint64_t n) {
    double frac = static_cast<double>(mulmod_u64(n % den, num, den)) / static_cast<double>(den);
    double phase = kTau * (frac + fold_signed(static_cast<double>(n) * eta));
    re += static_cast<long double>(std::cos(phase));
    im += static_cast<long double>(std::sin(phase));
  });
  double mag = static_cast<double>(std::sqrt(re * re + im * im));
  return mag / strings;
}

double window_sup(const DigitSystem& ds, int J, const std::vector<int>& word) {
  if (ds.base() != 10 || ds.s() != 1)
    throw ConfigError("window sup is defined for base 10 with a single excluded digit");
  if (J < 1) throw ConfigError("window length J must be at least 1");
  if (word.size() != static_cast<std::size_t>(J + 1))
    throw ConfigError("window word must have J+1 digits");
  double wv = 0.0;
  for (int d : word) {
    if (d < 0 || d > 9) throw ConfigError("window word digits must be in 0..9");
    wv = wv * 10.0 + static_cast<double>(d);
  }
  double delta = std::pow(10.0, -(J + 1));
  double x = wv * delta;  // 0.t0 t1 ... tJ

  // The supremum runs over the digit tail gamma in [0, 10^-(J+1)]: deeper
  // digits only ever add to the truncated expansion. A symmetric window would
  // overshoot the certified eigenvalue constants.
  // Coarse scan (129 points, gamma = 0 is the first point exactly), then
  // golden-section refinement of the bracketing pair to 1e-12 width.
  constexpr int kScan = 129;
  double best = -1.0;
  int best_i = 0;
  double lo = x, step = delta / (kScan - 1);
  for (int i = 0; i < kScan; ++i) {
    double v = digit_factor(ds, lo + step * static_cast<double>(i));
    if (v > best) {
      best = v;
      best_i = i;
    }
  }
  double a = lo + step * static_cast<double>(std::max(0, best_i - 1));
  double b = lo + step * static_cast<double>(std::min(kScan - 1, best_i + 1));
  const double invphi = 0.6180339887498948482;
  double x1 = b - invphi * (b - a);
  double x2 = a + invphi * (b - a);
  double f1 = digit_factor(ds, x1);
  double f2 = digit_factor(ds, x2);
  best = std::max({best, f1, f2});
  while (b - a > 1e-12) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + invphi * (b - a);
      f2 = digit_factor(ds, x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - invphi * (b - a);
      f1 = digit_factor(ds, x1);
    }
    best = std::max({best, f1, f2});
  }
  return best;
}

namespace {

// Sum over a < q^j of F^t, with the scan cut into deterministic blocks.
double scale_sum(const DigitSystem& ds, int j, double t, int threads) {
  std::uint64_t y = 1;
  for (int i = 0; i < j; ++i) y *= static_cast<std::uint64_t>(ds.base());
  bool plain = (t == 1.0);
  return block_sum(y, threads, [&, plain](std::uint64_t a) {
    double f = transform_product(ds, j, Angle(a, y));
    return plain ? f : std::pow(f, t);
  });
}

double check_scan_size(const DigitSystem& ds, int k, std::uint64_t cap) {
  double y = std::pow(static_cast<double>(ds.base()), k);
  if (y > static_cast<double>(cap))
    throw ResourceError("frequency scan at scale " + std::to_string(k) + " exceeds the cap");
  return y;
}

}  // namespace

MomentReport moment_scan(const DigitSystem& ds, int k, double t, int threads, std::uint64_t cap) {
  if (k < 0) throw ConfigError("moment scan requires k >= 0");
  if (t <= 0.0) throw ConfigError("moment order t must be positive");
  check_scan_size(ds, k, cap);
  MomentReport rep;
  rep.digit_system = ds.str();
  rep.k = k;
  rep.t = t;

  // Sums at the largest three scales; the slope over these is the reported
  // empirical exponent.
  int lo = std::max(0, k - 2);
  std::vector<double> sums;
  std::uint64_t samples = 0;
  for (int j = lo; j <= k; ++j) {
    sums.push_back(scale_sum(ds, j, t, threads));
    std::uint64_t y = 1;
    for (int i = 0; i < j; ++i) y *= static_cast<std::uint64_t>(ds.base());
    samples += y;
  }
  rep.sum = sums.back();
  rep.prev_sum = (k >= 1) ? sums[sums.size() - 2] : 0.0;
  rep.log_ratio = (k >= 1) ? std::log(rep.sum / rep.prev_sum) : 0.0;
  rep.samples = samples;
  rep.scale_lo = lo;
  rep.scale_sums = sums;

  double lnq = std::log(static_cast<double>(ds.base()));
  if (sums.size() >= 2) {
    // Least-squares slope of ln(sum_j) against j*ln(q).
    double n = static_cast<double>(sums.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < sums.size(); ++i) {
      double xj = static_cast<double>(lo + static_cast<int>(i)) * lnq;
      double yj = std::log(sums[i]);
      sx += xj;
      sy += yj;
      sxx += xj * xj;
      sxy += xj * yj;
    }
    rep.empirical_exponent = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  } else {
    rep.empirical_exponent = (k >= 1) ? std::log(rep.sum) / (k * lnq) : 0.0;
  }
  return rep;
}

MomentReport l1_scan(const DigitSystem& ds, int k, int threads, std::uint64_t cap) {
  return moment_scan(ds, k, 1.0, threads, cap);
}

ExceptionalReport exceptional_set(const DigitSystem& ds, int k, double threshold_exponent,
                                  std::size_t member_cap, std::uint64_t cap) {
  if (k < 0) throw ConfigError("exceptional scan requires k >= 0");
  check_scan_size(ds, k, cap);
  std::uint64_t y = 1;
  for (int i = 0; i < k; ++i) y *= static_cast<std::uint64_t>(ds.base());
  double cut = std::pow(static_cast<double>(y), -threshold_exponent);

  ExceptionalReport rep;
  rep.digit_system = ds.str();
  rep.k = k;
  rep.threshold_exponent = threshold_exponent;
  rep.samples = y;
  for (std::uint64_t a = 0; a < y; ++a) {
    if (transform_product(ds, k, Angle(a, y)) >= cut) {
      ++rep.size;
      if (rep.members.size() < member_cap) rep.members.push_back(a);
    }
  }
  rep.empirical_exponent =
      (y > 1) ? std::log(static_cast<double>(rep.size)) / std::log(static_cast<double>(y)) : 0.0;
  return rep;
}

LargeSieveReport large_sieve_sum(const DigitSystem& ds, int k, std::uint64_t Q, double beta,
                                 int eta_samples, std::vector<std::array<double, 3>>* pairs) {
  if (Q < 1) throw ConfigError("large sieve requires Q >= 1");
  if (Q * Q > 1000000ULL) throw ResourceError("large sieve requires Q^2 <= 1e6");
  if (eta_samples < 3) throw ConfigError("large sieve requires at least 3 eta samples");

  LargeSieveReport rep;
  rep.digit_system = ds.str();
  rep.k = k;
  rep.Q = Q;
  rep.beta = beta;
  rep.eta_samples = eta_samples;

  double delta = 1.0 / (10.0 * static_cast<double>(Q) * static_cast<double>(Q));
  long double total = 0.0L;
  for (std::uint64_t q = 1; q <= Q; ++q) {
    for (std::uint64_t a = 1; a <= q; ++a) {
      if (std::gcd(a, q) != 1) continue;
      double best = 0.0;
      for (int i = 0; i < eta_samples; ++i) {
        // equally spaced interior points of (-delta, delta)
        double eta = delta * (2.0 * static_cast<double>(i + 1) / static_cast<double>(eta_samples + 1) - 1.0);
        best = std::max(best, transform_product(ds, k, Angle(a, q, beta + eta)));
      }
      total += static_cast<long double>(best);
      ++rep.terms;
      if (pairs)
        pairs->push_back({static_cast<double>(q), static_cast<double>(a), best});
    }
  }
  rep.value = static_cast<double>(total);
  rep.q_exponent = (Q >= 2) ? std::log(rep.value) / std::log(static_cast<double>(Q)) : 0.0;
  return rep;
}

BaseQFactor base_q_l1_factor(std::uint64_t q, std::uint64_t s, bool interval_mode) {
  if (s < 1 || s > q - 2) throw ConfigError("base-q factor requires 1 <= s <= q-2");
  BaseQFactor out;
  out.q = q;
  out.s = s;
  out.interval_mode = interval_mode;
  double qd = static_cast<double>(q), sd = static_cast<double>(s);
  out.factor = interval_mode ? (qd * std::log(qd) + qd - sd) / (qd - sd)
                             : (qd * std::log(qd) + qd * sd) / (qd - sd);
  out.threshold_ok = out.factor <= std::pow(qd - sd, 23.0 / 80.0 + 1e-3);
  out.regime_ok = interval_mode ? (sd <= qd - std::pow(qd, 57.0 / 80.0))
                                : (sd <= std::pow(qd, 23.0 / 80.0));
  return out;
}

}  // namespace rdl
