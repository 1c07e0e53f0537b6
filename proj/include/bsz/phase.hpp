#pragma once
// Polynomial phases held as 192-bit fixed-point fractions mod 1, and the
// exponential-sum kernels built on them.

#include <complex>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "bsz/fixed.hpp"
#include "bsz/sequence.hpp"

namespace bsz {

// P(n) = sum_{j=1..k} alpha_j n^j with every alpha_j reduced mod 1.
// All-zero coefficient vectors are allowed (the phase is then identically 0).
class PhasePolynomial {
 public:
  static constexpr int kFractionBits = Fraction::kBits;

  explicit PhasePolynomial(std::vector<Fraction> coeffs);
  // "a1,a2,...,ak" with each entry in any format accepted by Fraction::parse.
  static PhasePolynomial parse(std::string_view csv);
  // alpha * n^degree.
  static PhasePolynomial monomial(const Fraction& alpha, int degree);

  int degree() const { return static_cast<int>(coeffs_.size()); }
  // 1-based: coeff(1) is the linear coefficient.
  const Fraction& coeff(int j) const { return coeffs_.at(static_cast<std::size_t>(j - 1)); }
  std::span<const Fraction> coeffs() const { return coeffs_; }
  PhasePolynomial negated() const;

  // Throws OverflowError unless n^k fits in 192 bits.
  void check_range(std::uint64_t n) const;

 private:
  std::vector<Fraction> coeffs_;
};

// sum_j alpha_j * (n^j mod 2^192) mod 1: exact for the stored coefficients.
Fraction eval_phase(const PhasePolynomial& p, std::uint64_t n);

// Streams P(n), P(n+1), ... through a (k+1)-entry forward-difference table
// in wrap-around 192-bit arithmetic. Reproduces eval_phase exactly.
class PhaseScanner {
 public:
  PhaseScanner(const PhasePolynomial& p, std::uint64_t start);

  std::uint64_t position() const { return n_; }
  Fraction current() const { return Fraction(diff_[0]); }
  void advance() {
    for (std::size_t i = 0; i + 1 < diff_.size(); ++i) diff_[i] += diff_[i + 1];
    ++n_;
  }
  // Writes the leading 64 bits of P(n) for the next out.size() positions.
  void fill_top64(std::span<std::uint64_t> out);

 private:
  std::vector<U192> diff_;
  std::uint64_t n_;
};

// sum_{n<=x} a(n) e(P(n)); requires x <= a.size().
std::complex<double> exp_sum(const RealSequence& a, const PhasePolynomial& p, std::uint64_t x);
// sum_{first<=n<=last} a(n) e(P(n)); a == nullptr means a == 1.
std::complex<double> exp_sum_range(const RealSequence* a, const PhasePolynomial& p, std::uint64_t first,
                                   std::uint64_t last);
// Partial sums at every x in xs (strictly increasing) in one scan.
std::vector<std::complex<double>> exp_sum_prefixes(const RealSequence* a, const PhasePolynomial& p,
                                                   std::span<const std::uint64_t> xs);
// W(y,U) = sum_{n<=y} e(U(n)).
std::complex<double> weyl_sum(const PhasePolynomial& u, std::uint64_t y);

// phi(pm) * conj(phi(qm)) = e(sum_j C_j alpha_j m^j) with C_j = p^j - q^j.
class CorrelationSpec {
 public:
  // p and q must be distinct primes.
  CorrelationSpec(std::uint64_t p, std::uint64_t q, PhasePolynomial base);

  std::uint64_t p() const { return p_; }
  std::uint64_t q() const { return q_; }
  const PhasePolynomial& base() const { return base_; }
  // C_j for j = 1..k, exact.
  const BigInt& c(int j) const { return c_.at(static_cast<std::size_t>(j - 1)); }
  // m -> sum_j (C_j alpha_j mod 1) m^j.
  const PhasePolynomial& difference() const { return difference_; }

 private:
  std::uint64_t p_, q_;
  PhasePolynomial base_;
  std::vector<BigInt> c_;
  PhasePolynomial difference_;
};

// sum_{m<=y} e(sum_j C_j alpha_j m^j). Throws OverflowError if some
// |C_j| * y^j does not fit in 192 bits.
std::complex<double> correlation_sum(const CorrelationSpec& spec, std::uint64_t y);

}  // namespace bsz
