#pragma once

#include <cmath>
#include <cstdint>
#include <functional>

#include "rdl/errors.hpp"

namespace rdl {

// Classic adaptive Simpson with the (S_left + S_right - S)/15 error control.
// budget counts integrand evaluations and is shared across nested calls;
// exhausting it raises ResourceError. err_acc accumulates the local error
// estimates actually accepted.
class AdaptiveSimpson {
 public:
  AdaptiveSimpson(std::function<double(double)> f, std::uint64_t* budget)
      : f_(std::move(f)), budget_(budget) {}

  double integrate(double a, double b, double tol, double* err_acc) {
    if (b <= a) return 0.0;
    double fa = eval(a), fm = eval(0.5 * (a + b)), fb = eval(b);
    double s = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return recurse(a, b, fa, fm, fb, s, tol, 0, err_acc);
  }

 private:
  double eval(double x) {
    if (*budget_ == 0) throw ResourceError("integration budget exhausted before reaching tolerance");
    --*budget_;
    return f_(x);
  }

  double recurse(double a, double b, double fa, double fm, double fb, double s, double tol,
                 int depth, double* err_acc) {
    double m = 0.5 * (a + b);
    double flm = eval(0.5 * (a + m));
    double frm = eval(0.5 * (m + b));
    double sl = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    double sr = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    double err = (sl + sr - s) / 15.0;
    if (depth >= 52 || std::fabs(err) <= tol) {
      if (err_acc) *err_acc += std::fabs(err);
      return sl + sr + err;
    }
    return recurse(a, m, fa, flm, fm, sl, 0.5 * tol, depth + 1, err_acc) +
           recurse(m, b, fm, frm, fb, sr, 0.5 * tol, depth + 1, err_acc);
  }

  std::function<double(double)> f_;
  std::uint64_t* budget_;
};

}  // namespace rdl
