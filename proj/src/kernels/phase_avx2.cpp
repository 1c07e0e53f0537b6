// Compiled with -mavx2 on x86-64; only called after a runtime CPU check.

#include "bsz/kernels.hpp"
#include "octant.hpp"

#if defined(__x86_64__) && defined(__AVX2__)
#include <immintrin.h>
#endif

#include "bsz/errors.hpp"

namespace bsz::kernels::avx2 {

#if defined(__x86_64__) && defined(__AVX2__)

namespace {

// Taylor coefficients; |x| <= pi/8 keeps the truncation below 1e-21.
constexpr double kS3 = -1.0 / 6.0;
constexpr double kS5 = 1.0 / 120.0;
constexpr double kS7 = -1.0 / 5040.0;
constexpr double kS9 = 1.0 / 362880.0;
constexpr double kS11 = -1.0 / 39916800.0;
constexpr double kS13 = 1.0 / 6227020800.0;
constexpr double kS15 = -1.0 / 1307674368000.0;
constexpr double kC2 = -1.0 / 2.0;
constexpr double kC4 = 1.0 / 24.0;
constexpr double kC6 = -1.0 / 720.0;
constexpr double kC8 = 1.0 / 40320.0;
constexpr double kC10 = -1.0 / 3628800.0;
constexpr double kC12 = 1.0 / 479001600.0;
constexpr double kC14 = -1.0 / 87178291200.0;
constexpr double kC16 = 1.0 / 20922789888000.0;

struct Lanes {
  __m256d s, c;
};

inline __m256d poly(__m256d x2, std::initializer_list<double> coeffs_high_to_low) {
  auto it = coeffs_high_to_low.begin();
  __m256d r = _mm256_set1_pd(*it++);
  for (; it != coeffs_high_to_low.end(); ++it) {
    r = _mm256_add_pd(_mm256_mul_pd(r, x2), _mm256_set1_pd(*it));
  }
  return r;
}

// e(theta) for four phases: returns (cos, sin) lanes.
inline void unit_roots(__m256i ph, __m256d& out_cos, __m256d& out_sin) {
  const __m256i bias = _mm256_set1_epi64x(static_cast<long long>(std::uint64_t{1} << 60));
  const __m256i k = _mm256_and_si256(_mm256_srli_epi64(_mm256_add_epi64(ph, bias), 61), _mm256_set1_epi64x(7));
  const __m256i r = _mm256_sub_epi64(ph, _mm256_slli_epi64(k, 61));
  // (r + 2^60) >> 11 is in [0, 2^50): convert through the 2^52 mantissa trick.
  const __m256i t = _mm256_srli_epi64(_mm256_add_epi64(r, bias), 11);
  const __m256d magic = _mm256_set1_pd(4503599627370496.0);  // 2^52
  const __m256d tv = _mm256_sub_pd(_mm256_castsi256_pd(_mm256_or_si256(t, _mm256_castpd_si256(magic))), magic);
  const __m256d v = _mm256_sub_pd(tv, _mm256_set1_pd(562949953421312.0));  // 2^49
  const __m256d x = _mm256_mul_pd(v, _mm256_set1_pd(detail::kResidualScale));
  const __m256d x2 = _mm256_mul_pd(x, x);

  const __m256d sp = poly(x2, {kS15, kS13, kS11, kS9, kS7, kS5, kS3, 1.0});
  const __m256d sx = _mm256_mul_pd(x, sp);
  const __m256d cx = poly(x2, {kC16, kC14, kC12, kC10, kC8, kC6, kC4, kC2, 1.0});

  const __m256d ck = _mm256_i64gather_pd(detail::kOctantCos, k, 8);
  const __m256d sk = _mm256_i64gather_pd(detail::kOctantSin, k, 8);
  out_cos = _mm256_sub_pd(_mm256_mul_pd(ck, cx), _mm256_mul_pd(sk, sx));
  out_sin = _mm256_add_pd(_mm256_mul_pd(sk, cx), _mm256_mul_pd(ck, sx));
}

inline __m256d abs_pd(__m256d v) { return _mm256_andnot_pd(_mm256_set1_pd(-0.0), v); }

// Lane-wise Neumaier step.
inline void neumaier(__m256d& s, __m256d& c, __m256d x) {
  const __m256d t = _mm256_add_pd(s, x);
  const __m256d big_s = _mm256_cmp_pd(abs_pd(s), abs_pd(x), _CMP_GE_OQ);
  const __m256d when_s = _mm256_add_pd(_mm256_sub_pd(s, t), x);
  const __m256d when_x = _mm256_add_pd(_mm256_sub_pd(x, t), s);
  c = _mm256_add_pd(c, _mm256_blendv_pd(when_x, when_s, big_s));
  s = t;
}

}  // namespace

void accumulate_phases(std::span<const double> weights, std::span<const std::uint64_t> phases,
                       CompensatedComplex& acc) {
  const bool unit = weights.empty();
  if (!unit && weights.size() != phases.size()) throw DomainError("weights/phases length mismatch");
  __m256d sr = _mm256_setzero_pd(), cr = _mm256_setzero_pd();
  __m256d si = _mm256_setzero_pd(), ci = _mm256_setzero_pd();
  const std::size_t n = phases.size();
  std::size_t i = 0;
  auto step = [&](const std::uint64_t* ph, const double* w) {
    __m256d co, sn;
    unit_roots(_mm256_loadu_si256(reinterpret_cast<const __m256i*>(ph)), co, sn);
    if (w != nullptr) {
      const __m256d wv = _mm256_loadu_pd(w);
      co = _mm256_mul_pd(wv, co);
      sn = _mm256_mul_pd(wv, sn);
    }
    neumaier(sr, cr, co);
    neumaier(si, ci, sn);
  };
  for (; i + 4 <= n; i += 4) step(phases.data() + i, unit ? nullptr : weights.data() + i);
  if (i < n) {
    // Zero-weight padding contributes exactly nothing to a Neumaier lane.
    alignas(32) std::uint64_t ph[4] = {0, 0, 0, 0};
    alignas(32) double w[4] = {0.0, 0.0, 0.0, 0.0};
    for (std::size_t j = 0; i + j < n; ++j) {
      ph[j] = phases[i + j];
      w[j] = unit ? 1.0 : weights[i + j];
    }
    step(ph, w);
  }
  alignas(32) double lanes[4][4];
  _mm256_store_pd(lanes[0], sr);
  _mm256_store_pd(lanes[1], si);
  _mm256_store_pd(lanes[2], cr);
  _mm256_store_pd(lanes[3], ci);
  for (int l = 0; l < 4; ++l) acc.add(lanes[0][l], lanes[1][l]);
  for (int l = 0; l < 4; ++l) acc.add(lanes[2][l], lanes[3][l]);
}

#else

void accumulate_phases(std::span<const double>, std::span<const std::uint64_t>, CompensatedComplex&) {
  throw DomainError("AVX2 kernel not compiled for this target");
}

#endif

}  // namespace bsz::kernels::avx2
