#pragma once

#include <cstdint>
#include <vector>

namespace rdl {

// The 10^J x 10^J nonnegative matrix whose entry (i, j) is the window
// supremum of the (J+1)-digit word (a1..aJ+1) raised to t, where j encodes
// (a1..aJ) and i encodes (a2..aJ+1), digits least-significant-first. Stored
// as the 10^{J+1} word values indexed by word = j + a_{J+1} * 10^J; the de
// Bruijn shift pattern supplies the sparsity.
struct TransitionMatrix {
  int J = 0;
  double t = 1.0;
  int a0 = 0;
  std::uint64_t states = 0;        // 10^J
  std::vector<double> values;      // size 10^{J+1}, G^t per word

  void apply(const std::vector<double>& v, std::vector<double>& out) const;
  void apply_transpose(const std::vector<double>& v, std::vector<double>& out) const;
  double entry(std::uint64_t i, std::uint64_t j) const;  // 0 off-pattern
};

// Window suprema for all 10^{J+1} words of the given excluded digit, cached
// per (a0, J) and shared by every moment order t.
const std::vector<double>& window_sup_table(int a0, int J);

TransitionMatrix build_matrix(int a0, int J, double t);

// Test seam: a matrix with the de Bruijn pattern but caller-supplied word
// values (size must be 10^{J+1}).
TransitionMatrix matrix_from_values(int J, std::vector<double> values);

struct EigenReport {
  int a0 = 0;
  int J = 0;
  double t = 1.0;
  double lambda = 0.0;    // power-iteration estimate (l1 growth factor)
  double cw_upper = 0.0;  // max_i (Mv)_i / v_i: certified upper bound on the Perron root
  double cw_lower = 0.0;  // min_i (Mv)_i / v_i: certified lower bound
  double residual = 0.0;  // ||Mv - lambda v||_1 / ||v||_1 at the reported iterate
  int iterations = 0;
};

EigenReport dominant_eigenvalue(const TransitionMatrix& M, double tol = 1e-10);

// Same iteration driven through apply_transpose; the spectrum is shared, so
// this checks orientation-independence of the reported eigenvalue.
EigenReport dominant_eigenvalue_transposed(const TransitionMatrix& M, double tol = 1e-10);

// Sum over all 10^k digit words of the product of windowed suprema raised to
// t, with zero padding beyond position k. Equals the all-zero-state entry of
// M^k applied to the ones vector.
double path_sum(int a0, int J, double t, int k);

}  // namespace rdl
