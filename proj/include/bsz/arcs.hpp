#pragma once
// Rational approximation of phase coefficients, major/minor arc schedules,
// and the exact progression identities behind the major-arc estimates.

#include <complex>
#include <cstdint>
#include <vector>

#include "bsz/exact_sum.hpp"
#include "bsz/fixed.hpp"
#include "bsz/phase.hpp"
#include "bsz/report.hpp"
#include "bsz/sequence.hpp"

namespace bsz {

struct RationalApprox {
  BigInt a = 1;
  BigInt q = 1;
  double err = 0.0;  // |alpha - a/q| measured mod 1
};

// Smallest-denominator continued-fraction convergent a/q of the exact
// fixed-point value with q <= Q and |alpha - a/q| <= 1/(qQ). A zero numerator
// is reported as a = q = 1. err is 0 when alpha is the fixed-point rounding of a/q.
RationalApprox best_approx(const Fraction& alpha, const BigInt& Q);

enum class ScheduleKind { power, exponential };

// power: Q_j = x^(j - c_j), R_j = x^(c'_j).
// exponential: Q_j = x^j exp(-beta_j sqrt(log x)), R_j = exp(beta'_j sqrt(log x)).
struct ArcSchedule {
  ScheduleKind kind = ScheduleKind::power;
  std::vector<double> major;  // c_j or beta_j
  std::vector<double> minor;  // c'_j or beta'_j

  static ArcSchedule power_default(int k);
  static ArcSchedule exponential_default(int k);

  int degree() const { return static_cast<int>(major.size()); }
  BigInt Q(int j, std::uint64_t x) const;
  double R(int j, std::uint64_t x) const;
};

// gamma_1, gamma_2 of the power schedule; gamma'_1 - delta_1 and
// gamma'_2 - delta_2 of the exponential one (NaN for the other kind).
struct ArcExponents {
  double gamma1, gamma2, gamma1p_minus_delta1, gamma2p_minus_delta2;
};
ArcExponents schedule_exponents(const ArcSchedule& s);

struct ArcCoefficient {
  RationalApprox approx;
  BigInt Q;
  double R = 0.0;
  bool major = true;  // q_j <= R_j
};

struct ArcClassification {
  std::vector<ArcCoefficient> coeffs;  // j = 1..k at index j-1
  int d = 0;                           // max j with q_j > R_j, 0 if none
  bool major() const { return d == 0; }
};

// DomainError when the schedule is invalid at x (R_j <= 1 or R_j >= Q_j).
ArcClassification classify(const PhasePolynomial& p, const ArcSchedule& schedule, std::uint64_t x);

// sum_j (b_j / q) n^j with integers b_j.
struct RationalPolynomial {
  std::vector<BigInt> b;  // index j-1
  BigInt q = 1;

  // e(P~(n)/q) evaluated from P~(n) mod q.
  std::uint64_t phase64(std::uint64_t n) const;
  PhasePolynomial to_phase() const;
};

struct PolynomialSplit {
  RationalPolynomial rational;  // Pbar = P~ / q with q = lcm(q_j)
  PhasePolynomial remainder;   // alpha_j - a_j/q_j in fixed point, so Pbar + R == P exactly
  std::vector<double> remainder_coeffs;  // the same, signed, as doubles
};

// OverflowError if lcm(q_j) exceeds 192 bits.
PolynomialSplit split_polynomial(const PhasePolynomial& p, const ArcClassification& cls);

inline constexpr std::uint64_t kMaxProgressionModulus = 1'000'000;

// sum_{n<=t, n = b mod q} a(n); DomainError unless 1 <= b <= q <= 10^6 and t <= N.
ExactSum progression_sum_exact(const RealSequence& a, std::uint64_t t, std::uint64_t q, std::uint64_t b);
double progression_sum(const RealSequence& a, std::uint64_t t, std::uint64_t q, std::uint64_t b);
// All residues at once: out[b-1] = S_a(t; q, b).
std::vector<double> progression_sums(const RealSequence& a, std::uint64_t t, std::uint64_t q);
// sum_b |S_a(t;q,b)| against sqrt(q t).
BoundReport progression_report(const RealSequence& a, std::uint64_t t, std::uint64_t q);

// S_a(t, Pbar) against sum_b e(P~(b)/q) S_a(t;q,b), maximized over
// checkpoints up to t. Passes when the deviation stays below 1e-9 t.
BoundReport major_identity_check(const RealSequence& a, std::uint64_t t, const RationalPolynomial& pbar);
// S_a(t, alpha_1 n + R~_1/qbar) against its additive-character expansion.
// rbar must have no linear term. Passes below 1e-8 t.
BoundReport character_expansion_check(const RealSequence& a, std::uint64_t t, const Fraction& alpha1,
                                      const RationalPolynomial& rbar);

}  // namespace bsz
