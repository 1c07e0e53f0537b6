#include <atomic>
#include <cstdlib>
#include <string>

#include "bsz/errors.hpp"
#include "bsz/kernels.hpp"

namespace bsz::kernels {

namespace {

Isa detect() {
  if (const char* env = std::getenv("BSZ_KERNEL")) {
    const std::string v = env;
    if (v == "scalar") return Isa::scalar;
    if (v == "avx2" && isa_supported(Isa::avx2)) return Isa::avx2;
  }
  return isa_supported(Isa::avx2) ? Isa::avx2 : Isa::scalar;
}

std::atomic<int>& selected() {
  static std::atomic<int> isa{static_cast<int>(detect())};
  return isa;
}

}  // namespace

std::string_view isa_name(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

bool isa_supported(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return true;
    case Isa::avx2:
#if defined(__x86_64__) && defined(BSZ_HAVE_AVX2)
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
  }
  return false;
}

Isa active_isa() { return static_cast<Isa>(selected().load(std::memory_order_relaxed)); }

void set_active_isa(Isa isa) {
  if (!isa_supported(isa)) throw DomainError("kernel '" + std::string(isa_name(isa)) + "' not supported here");
  selected().store(static_cast<int>(isa), std::memory_order_relaxed);
}

void accumulate_phases(std::span<const double> weights, std::span<const std::uint64_t> phases,
                       CompensatedComplex& acc) {
  if (!weights.empty() && weights.size() != phases.size())
    throw DomainError("weights/phases length mismatch");
  if (active_isa() == Isa::avx2) {
    avx2::accumulate_phases(weights, phases, acc);
  } else {
    scalar::accumulate_phases(weights, phases, acc);
  }
}

}  // namespace bsz::kernels
