#pragma once
// Shared phase reduction for the scalar and SIMD kernels.

#include <cmath>
#include <cstdint>
#include <numbers>

namespace bsz::kernels::detail {

struct Octant {
  unsigned octant;         // k in 0..7, theta = k/8 + r
  std::int64_t residual;   // r * 2^64, in [-2^60, 2^60)
};

inline Octant reduce_octant(std::uint64_t phase) {
  const std::uint64_t k = ((phase + (std::uint64_t{1} << 60)) >> 61) & 7;
  return {static_cast<unsigned>(k), static_cast<std::int64_t>(phase - (k << 61))};
}

// Angle in radians per unit of (residual >> 11).
inline const double kResidualScale = std::ldexp(2.0 * std::numbers::pi, -53);

inline constexpr double kHalfSqrt2 = 0.70710678118654752440;
inline constexpr double kOctantCos[8] = {1.0, kHalfSqrt2, 0.0, -kHalfSqrt2, -1.0, -kHalfSqrt2, 0.0, kHalfSqrt2};
inline constexpr double kOctantSin[8] = {0.0, kHalfSqrt2, 1.0, kHalfSqrt2, 0.0, -kHalfSqrt2, -1.0, -kHalfSqrt2};

}  // namespace bsz::kernels::detail
