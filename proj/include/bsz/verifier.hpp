#pragma once
// Empirical checks of the orthogonality criterion and the decay sweeps.

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "bsz/coefficients.hpp"
#include "bsz/phase.hpp"
#include "bsz/report.hpp"
#include "bsz/sequence.hpp"

namespace bsz {

// lhs sum_{n<=y} |a(n)|^2 with Pbar = 1 and with Pbar = prod_{z<p<=w} p.
// y = 0 means y = x; otherwise y >= x/w is required.
std::vector<BoundReport> assumption_a_report(const RealSequence& a, std::uint64_t x, std::uint64_t z,
                                             std::uint64_t w, std::uint64_t y = 0);

inline constexpr double kPairBudget = 1e10;

struct AssumptionBReport {
  std::uint64_t nu = 0;
  std::uint64_t z = 0, w = 0, y = 0;
  std::uint64_t primes = 0;
  double lhs = 0.0;       // sum over ordered pairs p != q
  double tau_est = 0.0;   // lhs log^2 z / (z y)
  double symmetry_deviation = 0.0;  // | |S(p,q)| - |S(q,p)| | on spot-checked pairs
};

// Block nu of x: z = (nu-1)^2, w = nu^2, y = floor(x / nu^2); needs nu >= 3.
// FeasibilityError if |P_nu|^2 y exceeds budget.
AssumptionBReport assumption_b_report(const PhasePolynomial& p, std::uint64_t x, std::uint64_t nu,
                                      double budget = kPairBudget);

struct Theorem1Report {
  BoundReport report;  // |S| against the envelope at tau_est
  std::complex<double> s;
  double tau_est = 0.0;
  bool tau_exceeds_one = false;
  bool regime_warning = false;
  double split_deviation = 0.0;  // |S_I + S_J - S|
  std::vector<AssumptionBReport> blocks;
};

// Blocks nu = max(H,3), then every stride-th one, and K are sampled for tau_est.
Theorem1Report theorem1_report(const RealSequence& a, const PhasePolynomial& p, std::uint64_t x, std::uint64_t H,
                               std::uint64_t K, std::uint64_t stride = 1, double budget = kPairBudget);

struct DecaySweepRow {
  std::uint64_t x = 0;
  double abs_s = 0.0;
  double envelope = 0.0;
  double ratio = 0.0;
  double sqrt_ratio = 0.0;  // |S| / sqrt(x)
};

// x loglog x / log x for one/lambda, x loglog x / sqrt(log x) for mobius/mu;
// NaN while log log x <= 0.
double theorem2_envelope(CoeffKind kind, std::uint64_t x);
std::vector<DecaySweepRow> theorem2_sweep(CoeffKind kind, const RealSequence& a, const PhasePolynomial& p,
                                          std::span<const std::uint64_t> xs);

// max over alpha = i/grid, 0 <= i < grid, of |sum_{n<=x} a(n) e(alpha n)| / sqrt(x), per x.
std::vector<double> jutila_max(const RealSequence& a, std::span<const std::uint64_t> xs, std::uint64_t grid = 1000);

}  // namespace bsz
