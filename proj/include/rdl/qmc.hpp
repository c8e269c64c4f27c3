#pragma once

#include <array>
#include <cstdint>

namespace rdl {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Gray-code Sobol sequence (32-bit, up to 6 dimensions) with an optional
// per-dimension digital shift (XOR scrambling) for randomized replicates.
class SobolStream {
 public:
  static constexpr int kMaxDim = 6;

  explicit SobolStream(int dim, const std::array<std::uint32_t, kMaxDim>& shift = {});

  // Fills out[0..dim) with the next point in (0,1)^dim.
  void next(double* out);

 private:
  int dim_;
  std::uint64_t index_ = 0;
  std::array<std::uint32_t, kMaxDim> state_{};
  std::array<std::uint32_t, kMaxDim> shift_{};
  std::array<std::array<std::uint32_t, 32>, kMaxDim> dir_{};
};

}  // namespace rdl
