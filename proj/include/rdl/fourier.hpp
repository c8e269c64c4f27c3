#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "rdl/angle.hpp"
#include "rdl/digitset.hpp"
#include "rdl/rational.hpp"

namespace rdl {

// One per-digit factor of the normalized transform at frequency x (in turns):
// with a single excluded digit a0 this is |(e(qx)-1)/(e(x)-1) - e(a0 x)|/(q-1),
// in general (1/(q-s))|sum over allowed d of e(d x)|. Always in [0, 1]; the
// removable singularity at x = 0 is evaluated by series expansion.
double digit_factor(const DigitSystem& ds, double x);

// Product of k per-digit factors at arguments q^i * theta, i = 0..k-1.
double transform_product(const DigitSystem& ds, int k, const Angle& theta);

// Direct-summation oracle: |sum of e(n theta) over all k-digit strings n with
// allowed digits| / (q-s)^k. Reference implementation for tests.
double transform_direct(const DigitSystem& ds, int k, const Angle& theta,
                        std::uint64_t cap = 100000000ULL);

// Supremum of the per-digit factor over the frequency window
// [x, x + q^{-(J+1)}] with x = 0.t0 t1 ... tJ (base q): the window absorbs the
// digit tail beyond the word, which only adds to the expansion. Base 10 with
// one excluded digit only; absolute accuracy ~1e-12 (coarse 129-point scan
// plus golden-section refinement).
double window_sup(const DigitSystem& ds, int J, const std::vector<int>& word);

struct MomentReport {
  std::string digit_system;
  int k = 0;
  double t = 1.0;
  double sum = 0.0;                // sum over a < q^k of F^t at a/q^k
  double prev_sum = 0.0;           // same sum at scale k-1 (0 when k == 0)
  double log_ratio = 0.0;          // ln(sum_k / sum_{k-1}), 0 when k == 0
  double empirical_exponent = 0.0; // least-squares slope of ln(sum) vs ln(scale)
  std::uint64_t samples = 0;       // frequencies evaluated across all scales
  int scale_lo = 0;                // first scale evaluated (max(0, k-2))
  std::vector<double> scale_sums;  // sums for scales scale_lo..k in order
};

MomentReport moment_scan(const DigitSystem& ds, int k, double t, int threads = 1,
                         std::uint64_t cap = 100000000ULL);
MomentReport l1_scan(const DigitSystem& ds, int k, int threads = 1,
                     std::uint64_t cap = 100000000ULL);

struct ExceptionalReport {
  std::string digit_system;
  int k = 0;
  double threshold_exponent = 0.0;  // qualify when F >= (q^k)^{-threshold_exponent}
  std::uint64_t size = 0;
  double empirical_exponent = 0.0;  // log(size)/log(q^k)
  std::uint64_t samples = 0;
  std::vector<std::uint64_t> members;  // first member_cap qualifying numerators
};

ExceptionalReport exceptional_set(const DigitSystem& ds, int k,
                                  double threshold_exponent = 23.0 / 80.0,
                                  std::size_t member_cap = 4096,
                                  std::uint64_t cap = 100000000ULL);

struct LargeSieveReport {
  std::string digit_system;
  int k = 0;
  std::uint64_t Q = 0;
  double beta = 0.0;
  int eta_samples = 0;
  double value = 0.0;       // sum over moduli q<=Q and residues (a,q)=1 of sup_eta F
  std::uint64_t terms = 0;  // number of (q, a) pairs
  double q_exponent = 0.0;  // log(value)/log(Q), 0 when Q < 2
};

// pairs, when given, receives one {q, a, sup value} triple per term.
LargeSieveReport large_sieve_sum(const DigitSystem& ds, int k, std::uint64_t Q,
                                 double beta = 0.0, int eta_samples = 33,
                                 std::vector<std::array<double, 3>>* pairs = nullptr);

struct BaseQFactor {
  std::uint64_t q = 0;
  std::uint64_t s = 0;
  bool interval_mode = false;
  double factor = 0.0;       // (q ln q + q s)/(q-s), or (q ln q + q - s)/(q-s)
  bool threshold_ok = false; // factor <= (q-s)^(23/80 + 1e-3)
  bool regime_ok = false;    // s <= q^{23/80}, or s <= q - q^{57/80} in interval mode
};

BaseQFactor base_q_l1_factor(std::uint64_t q, std::uint64_t s, bool interval_mode = false);

}  // namespace rdl
