#pragma once
// Weyl-type bounds: sums of min(M, 1/||alpha n||), the differenced Weyl sum,
// divisor moments and the Weyl bound for W(y, U).

#include <cstdint>
#include <vector>

#include "bsz/arcs.hpp"
#include "bsz/fixed.hpp"
#include "bsz/phase.hpp"
#include "bsz/report.hpp"

namespace bsz {

// sum_{n<=N} min(M, 1/||alpha n||) with the value M where ||alpha n|| = 0.
// alpha is used at its leading 128 bits; the sum is exact before the final
// rounding, so both implementations return identical doubles.
double min_reciprocal_sum(const Fraction& alpha, std::uint64_t n, double m);
// Incremental walk with the saturated terms counted separately.
double min_reciprocal_sum_bucketed(const Fraction& alpha, std::uint64_t n, double m);

// Checks 1 <= a < q, gcd(a,q) = 1, C >= 1 and |alpha - a/q| <= C/q^2.
void check_rational_hypothesis(const Fraction& alpha, const BigInt& a, const BigInt& q, double c);

// lhs = sum_{n<=N} min(M, 1/||alpha n||) against C (MN/q + N log q + M + q log q).
BoundReport lemma34_report(const Fraction& alpha, const BigInt& a, const BigInt& q, double c, std::uint64_t n,
                           double m);

inline constexpr double kDifferencingBudget = 1e9;

// Number of tuples h_1..h_{d-1} with h_j in [1, y-1-h_{j-1}], h_0 = 0.
double differencing_tuple_count(int d, std::uint64_t y);
// sum over those tuples of min(y, 1/||d! h_1...h_{d-1} alpha||), alpha the
// leading coefficient of U. FeasibilityError above kDifferencingBudget tuples.
double weyl_differenced_sum(const PhasePolynomial& u, std::uint64_t y);
// lhs = |W(y,U)|^(2^(d-1)) against y^(2^(d-1)-1) + y^(2^(d-1)-d) * weyl_differenced_sum.
BoundReport weyl_differencing_report(const PhasePolynomial& u, std::uint64_t y);

// out[h-1] = tau_ell(h) for h <= limit (tau_1 = 1).
std::vector<std::uint64_t> divisor_counts(int ell, std::uint64_t limit);

// lhs = sum_{h <= d! y^(d-1)} tau_{d-1}(h)^2 against y^(d-1) (log y)^c,
// c = (d-1)^2 - 1 unless overridden.
BoundReport divisor_moment_report(int d, std::uint64_t y, double c = -1.0);

// Split of h <= d! y^(d-1) by tau_{d-1}(h) <= Z, with the weighted sums of
// tau_{d-1}(h) min(y, 1/||h alpha||) over each part.
struct DivisorSplit {
  std::uint64_t total = 0, minus_count = 0, plus_count = 0;
  double minus_sum = 0.0, plus_sum = 0.0;
};
DivisorSplit divisor_split(int d, std::uint64_t y, double z, const Fraction& alpha);

// |W(y,U)| against y (CZ/q + (CZ/y) log q + CZ q log q / y^d + log^A y / Z)^kappa,
// kappa = 2^(1-d), A = (d-1)^2 unless given; second report is the classical
// y^(1+eps) C^kappa (1/q + 1/y + q/y^d)^kappa.
std::vector<BoundReport> lemma35_report(const PhasePolynomial& u, std::uint64_t y, double z,
                                        const RationalApprox& approx, double c, double a_exp = -1.0,
                                        double eps = 0.0);

}  // namespace bsz
