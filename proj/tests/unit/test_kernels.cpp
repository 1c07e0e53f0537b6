#include <doctest.h>

#include <cmath>
#include <random>

#include "bsz/kernels.hpp"
#include "bsz/phase.hpp"

using namespace bsz;
using namespace bsz::kernels;

namespace {

std::complex<double> run(void (*fn)(std::span<const double>, std::span<const std::uint64_t>, CompensatedComplex&),
                         const std::vector<double>& w, const std::vector<std::uint64_t>& ph) {
  CompensatedComplex acc;
  fn(w, ph, acc);
  return acc.value();
}

}  // namespace

TEST_CASE("unit_root matches the direct formula") {
  std::mt19937_64 rng(3);
  const long double two_pi = 2.0L * std::acos(-1.0L);
  for (int i = 0; i < 10000; ++i) {
    const std::uint64_t ph = rng();
    const long double t = std::ldexp(static_cast<long double>(ph), -64);
    const std::complex<double> z = unit_root(ph);
    CHECK(std::abs(z.real() - static_cast<double>(std::cos(two_pi * t))) < 1e-15);
    CHECK(std::abs(z.imag() - static_cast<double>(std::sin(two_pi * t))) < 1e-15);
  }
  CHECK(unit_root(0) == std::complex<double>(1, 0));
  CHECK(unit_root(std::uint64_t{1} << 62) == std::complex<double>(0, 1));
  CHECK(unit_root(std::uint64_t{1} << 63) == std::complex<double>(-1, 0));
}

TEST_CASE("scalar and AVX2 kernels agree") {
  if (!isa_supported(Isa::avx2)) {
    MESSAGE("AVX2 not available; equivalence test skipped");
    return;
  }
  std::mt19937_64 rng(5);
  for (std::size_t n : {0u, 1u, 3u, 4u, 5u, 17u, 1000u, 65537u}) {
    std::vector<std::uint64_t> ph(n);
    std::vector<double> w(n);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (std::size_t i = 0; i < n; ++i) {
      ph[i] = rng();
      w[i] = u(rng);
    }
    const auto s = run(scalar::accumulate_phases, w, ph);
    const auto v = run(avx2::accumulate_phases, w, ph);
    CHECK(std::abs(s - v) <= 1e-14 * (1.0 + static_cast<double>(n)));
    const auto s1 = run(scalar::accumulate_phases, {}, ph);
    const auto v1 = run(avx2::accumulate_phases, {}, ph);
    CHECK(std::abs(s1 - v1) <= 1e-14 * (1.0 + static_cast<double>(n)));
  }
}

TEST_CASE("both kernels are exact on eighth roots of unity") {
  std::vector<std::uint64_t> ph;
  for (std::uint64_t k = 0; k < 8; ++k) ph.push_back(k << 61);
  for (Isa isa : {Isa::scalar, Isa::avx2}) {
    if (!isa_supported(isa)) continue;
    auto fn = isa == Isa::scalar ? scalar::accumulate_phases : avx2::accumulate_phases;
    std::vector<std::uint64_t> quarter = {0, std::uint64_t{1} << 62, std::uint64_t{1} << 63, std::uint64_t{3} << 62};
    CHECK(run(fn, {}, quarter) == std::complex<double>(0, 0));
    CHECK(std::abs(run(fn, {}, ph)) < 1e-15);
  }
}

TEST_CASE("exp_sum is the same under either kernel") {
  if (!isa_supported(Isa::avx2)) return;
  const auto p = PhasePolynomial::parse("sqrt2,sqrt3,0.1234567");
  const RealSequence a(std::vector<double>(300000, 1.0));
  set_active_isa(Isa::scalar);
  const auto s = exp_sum(a, p, 300000);
  set_active_isa(Isa::avx2);
  const auto v = exp_sum(a, p, 300000);
  CHECK(std::abs(s - v) < 1e-9);
  CHECK_THROWS(set_active_isa(static_cast<Isa>(99)));
}
