#include "rdl/qmc.hpp"

#include "rdl/errors.hpp"

namespace rdl {

namespace {

// Primitive polynomials and initial direction numbers (Bratley-Fox / Joe-Kuo
// table) for dimensions 2..6; dimension 1 is the van der Corput sequence.
struct DimInit {
  int s;                  // polynomial degree
  std::uint32_t a;        // interior polynomial coefficients
  std::uint32_t m[5];     // initial odd direction integers
};

constexpr DimInit kInit[5] = {
    {1, 0, {1, 0, 0, 0, 0}},
    {2, 1, {1, 3, 0, 0, 0}},
    {3, 1, {1, 3, 1, 0, 0}},
    {3, 2, {1, 1, 1, 0, 0}},
    {4, 1, {1, 1, 3, 3, 0}},
};

}  // namespace

SobolStream::SobolStream(int dim, const std::array<std::uint32_t, kMaxDim>& shift) : dim_(dim) {
  if (dim < 1 || dim > kMaxDim) throw ConfigError("Sobol stream supports 1..6 dimensions");
  shift_ = shift;
  for (int k = 0; k < 32; ++k) dir_[0][static_cast<std::size_t>(k)] = 1u << (31 - k);
  for (int d = 1; d < dim; ++d) {
    const DimInit& init = kInit[d - 1];
    for (int k = 0; k < init.s; ++k)
      dir_[static_cast<std::size_t>(d)][static_cast<std::size_t>(k)] = init.m[k] << (31 - k);
    for (int k = init.s; k < 32; ++k) {
      std::uint32_t v = dir_[static_cast<std::size_t>(d)][static_cast<std::size_t>(k - init.s)];
      v ^= v >> init.s;
      for (int j = 1; j < init.s; ++j)
        if ((init.a >> (init.s - 1 - j)) & 1u)
          v ^= dir_[static_cast<std::size_t>(d)][static_cast<std::size_t>(k - j)];
      dir_[static_cast<std::size_t>(d)][static_cast<std::size_t>(k)] = v;
    }
  }
}

void SobolStream::next(double* out) {
  if (index_ > 0) {
    unsigned c = static_cast<unsigned>(__builtin_ctzll(index_));
    for (int d = 0; d < dim_; ++d)
      state_[static_cast<std::size_t>(d)] ^= dir_[static_cast<std::size_t>(d)][c];
  }
  ++index_;
  for (int d = 0; d < dim_; ++d) {
    std::uint32_t bits = state_[static_cast<std::size_t>(d)] ^ shift_[static_cast<std::size_t>(d)];
    out[d] = (static_cast<double>(bits) + 0.5) * 0x1p-32;
  }
}

}  // namespace rdl
