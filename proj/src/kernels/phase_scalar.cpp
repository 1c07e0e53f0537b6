#include <cmath>
#include <numbers>

#include "bsz/kernels.hpp"
#include "octant.hpp"

namespace bsz::kernels {

std::complex<double> unit_root(std::uint64_t phase) {
  const auto red = detail::reduce_octant(phase);
  const double x = static_cast<double>(red.residual >> 11) * detail::kResidualScale;
  const double c = std::cos(x);
  const double s = std::sin(x);
  const double ck = detail::kOctantCos[red.octant];
  const double sk = detail::kOctantSin[red.octant];
  return {ck * c - sk * s, sk * c + ck * s};
}

namespace scalar {

void accumulate_phases(std::span<const double> weights, std::span<const std::uint64_t> phases,
                       CompensatedComplex& acc) {
  if (weights.empty()) {
    for (std::uint64_t ph : phases) acc.add(unit_root(ph));
    return;
  }
  for (std::size_t i = 0; i < phases.size(); ++i) {
    const double w = weights[i];
    const std::complex<double> z = unit_root(phases[i]);
    acc.add(w * z.real(), w * z.imag());
  }
}

}  // namespace scalar
}  // namespace bsz::kernels
