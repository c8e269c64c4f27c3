#include "rdl/markov.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <utility>

#include "rdl/digitset.hpp"
#include "rdl/errors.hpp"
#include "rdl/fourier.hpp"

namespace rdl {

namespace {

std::uint64_t pow10_u64(int e) {
  std::uint64_t r = 1;
  for (int i = 0; i < e; ++i) r *= 10ULL;
  return r;
}

}  // namespace

const std::vector<double>& window_sup_table(int a0, int J) {
  if (a0 < 0 || a0 > 9) throw ConfigError("excluded digit must be in 0..9");
  if (J < 1) throw ConfigError("window length J must be at least 1");
  if (J > 5) throw ResourceError("window tables support J <= 5");

  static std::mutex mu;
  static std::map<std::pair<int, int>, std::vector<double>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find({a0, J});
  if (it != cache.end()) return it->second;

  DigitSystem ds(10, {a0});
  std::uint64_t words = pow10_u64(J + 1);
  std::vector<double> table(words);
  std::vector<int> word(static_cast<std::size_t>(J + 1));
  for (std::uint64_t w = 0; w < words; ++w) {
    // word index is least-significant-digit-first: w = sum a_l * 10^{l-1};
    // the window center reads the digits in order, a1 in the tenths place.
    std::uint64_t rest = w;
    for (int l = 0; l <= J; ++l) {
      word[static_cast<std::size_t>(l)] = static_cast<int>(rest % 10ULL);
      rest /= 10ULL;
    }
    table[w] = window_sup(ds, J, word);
  }
  return cache.emplace(std::make_pair(a0, J), std::move(table)).first->second;
}

void TransitionMatrix::apply(const std::vector<double>& v, std::vector<double>& out) const {
  std::uint64_t pj1 = states / 10ULL;  // 10^{J-1}
  out.assign(static_cast<std::size_t>(states), 0.0);
  for (std::uint64_t i = 0; i < states; ++i) {
    std::uint64_t base = (i % pj1) * 10ULL;
    std::uint64_t d = i / pj1;
    const double* val = values.data() + base + d * states;
    const double* vin = v.data() + base;
    double acc = 0.0;
    for (int r = 0; r < 10; ++r) acc += val[r] * vin[r];
    out[static_cast<std::size_t>(i)] = acc;
  }
}

void TransitionMatrix::apply_transpose(const std::vector<double>& v, std::vector<double>& out) const {
  std::uint64_t pj1 = states / 10ULL;
  out.assign(static_cast<std::size_t>(states), 0.0);
  for (std::uint64_t j = 0; j < states; ++j) {
    std::uint64_t shifted = j / 10ULL;
    double acc = 0.0;
    for (std::uint64_t d = 0; d < 10; ++d)
      acc += values[j + d * states] * v[shifted + d * pj1];
    out[static_cast<std::size_t>(j)] = acc;
  }
}

double TransitionMatrix::entry(std::uint64_t i, std::uint64_t j) const {
  std::uint64_t pj1 = states / 10ULL;
  if (i % pj1 != j / 10ULL) return 0.0;
  std::uint64_t d = i / pj1;
  return values[j + d * states];
}

TransitionMatrix build_matrix(int a0, int J, double t) {
  if (t <= 0.0) throw ConfigError("moment order t must be positive");
  const std::vector<double>& sups = window_sup_table(a0, J);
  TransitionMatrix M;
  M.J = J;
  M.t = t;
  M.a0 = a0;
  M.states = pow10_u64(J);
  M.values.resize(sups.size());
  for (std::size_t w = 0; w < sups.size(); ++w)
    M.values[w] = (t == 1.0) ? sups[w] : std::pow(sups[w], t);
  return M;
}

TransitionMatrix matrix_from_values(int J, std::vector<double> values) {
  if (J < 1 || J > 5) throw ResourceError("matrix dimension supports J in [1,5]");
  TransitionMatrix M;
  M.J = J;
  M.t = 1.0;
  M.a0 = -1;
  M.states = pow10_u64(J);
  if (values.size() != static_cast<std::size_t>(M.states * 10ULL))
    throw ConfigError("value table must have 10^{J+1} entries");
  M.values = std::move(values);
  return M;
}

namespace {

template <class Apply>
EigenReport iterate(Apply&& apply_fn, std::uint64_t n, double tol) {
  if (tol <= 0.0) throw ConfigError("eigenvalue tolerance must be positive");
  std::vector<double> v(static_cast<std::size_t>(n), 1.0 / static_cast<double>(n));
  std::vector<double> y;
  EigenReport rep;
  for (int it = 1; it <= 1000000; ++it) {
    apply_fn(v, y);
    double norm = 0.0;
    for (double x : y) norm += x;
    double resid = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) resid += std::fabs(y[i] - norm * v[i]);
    if (resid <= tol) {
      rep.lambda = norm;
      rep.residual = resid;
      rep.iterations = it;
      double up = 0.0, lo = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < y.size(); ++i) {
        double ratio = y[i] / v[i];
        up = std::max(up, ratio);
        lo = std::min(lo, ratio);
      }
      rep.cw_upper = up;
      rep.cw_lower = lo;
      return rep;
    }
    for (std::size_t i = 0; i < y.size(); ++i) v[i] = y[i] / norm;
  }
  throw ConvergenceError("power iteration failed to reach tolerance within 1e6 iterations");
}

}  // namespace

EigenReport dominant_eigenvalue(const TransitionMatrix& M, double tol) {
  EigenReport rep = iterate([&M](const std::vector<double>& v, std::vector<double>& y) { M.apply(v, y); },
                            M.states, tol);
  rep.a0 = M.a0;
  rep.J = M.J;
  rep.t = M.t;
  return rep;
}

EigenReport dominant_eigenvalue_transposed(const TransitionMatrix& M, double tol) {
  EigenReport rep = iterate(
      [&M](const std::vector<double>& v, std::vector<double>& y) { M.apply_transpose(v, y); },
      M.states, tol);
  rep.a0 = M.a0;
  rep.J = M.J;
  rep.t = M.t;
  return rep;
}

double path_sum(int a0, int J, double t, int k) {
  if (k < 1) throw ConfigError("path sum requires k >= 1");
  TransitionMatrix M = build_matrix(a0, J, t);
  std::vector<double> v(static_cast<std::size_t>(M.states), 1.0);
  std::vector<double> y;
  for (int i = 0; i < k; ++i) {
    M.apply(v, y);
    v.swap(y);
  }
  // State 0 is the all-zero padding state; reading it applies the boundary
  // convention t_j = 0 for j > k.
  return v[0];
}

}  // namespace rdl
