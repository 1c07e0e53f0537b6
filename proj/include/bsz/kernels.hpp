#pragma once
// Phase accumulation kernels: sum_i w_i * e(theta_i) for theta_i given as
// 64-bit fractions of a turn.
//
// Both variants reduce theta to theta = k/8 + r with |r| <= 1/16 using exact
// integer arithmetic on the leading bits, and rotate e(r) by the exact
// eighth root of unity e(k/8). They differ only in how cos/sin of the small
// residual angle are produced: the scalar reference calls the platform
// transcendental functions, the AVX2 variant evaluates Taylor polynomials
// four lanes at a time. Phases that are multiples of 1/8 come out exact on
// both paths.

#include <complex>
#include <cstdint>
#include <span>
#include <string_view>

namespace bsz::kernels {

enum class Isa { scalar, avx2 };

std::string_view isa_name(Isa isa);
bool isa_supported(Isa isa);
// Selected on first use: BSZ_KERNEL=scalar|avx2 if set, else the best
// supported variant.
Isa active_isa();
// Throws DomainError if the ISA is not supported on this machine.
void set_active_isa(Isa isa);

// Neumaier (improved Kahan) compensated complex accumulator.
struct CompensatedComplex {
  double re = 0.0, im = 0.0, re_comp = 0.0, im_comp = 0.0;

  void add(double r, double i) {
    add_one(re, re_comp, r);
    add_one(im, im_comp, i);
  }
  void add(std::complex<double> z) { add(z.real(), z.imag()); }
  void add(const CompensatedComplex& o) {
    add(o.re, o.im);
    add(o.re_comp, o.im_comp);
  }
  std::complex<double> value() const { return {re + re_comp, im + im_comp}; }

  static void add_one(double& s, double& c, double x) {
    const double t = s + x;
    if ((s < 0 ? -s : s) >= (x < 0 ? -x : x)) {
      c += (s - t) + x;
    } else {
      c += (x - t) + s;
    }
    s = t;
  }
};

// e(theta) for theta = phase / 2^64, scalar reference.
std::complex<double> unit_root(std::uint64_t phase);

// acc += sum_i weights[i] * e(phases[i] / 2^64). Empty weights means all ones;
// otherwise weights.size() == phases.size().
void accumulate_phases(std::span<const double> weights, std::span<const std::uint64_t> phases,
                       CompensatedComplex& acc);

namespace scalar {
void accumulate_phases(std::span<const double> weights, std::span<const std::uint64_t> phases,
                       CompensatedComplex& acc);
}

namespace avx2 {
void accumulate_phases(std::span<const double> weights, std::span<const std::uint64_t> phases,
                       CompensatedComplex& acc);
}

}  // namespace bsz::kernels
