#pragma once
// Block decomposition of [1,x] by primes in ((nu-1)^2, nu^2], H <= nu <= K,
// and the split of a twisted sum into the I and J parts.

#include <array>
#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "bsz/fixed.hpp"
#include "bsz/phase.hpp"
#include "bsz/report.hpp"
#include "bsz/sequence.hpp"

namespace bsz {

struct DecompositionParams {
  std::uint64_t x = 0;
  std::uint64_t H = 0;
  std::uint64_t K = 0;
  double delta = 0.1;
};

enum class NumberClass : std::uint8_t { I = 0, J1minusI = 1, J2minusJ1 = 2, J3 = 3 };
const char* class_name(NumberClass c);

struct Block {
  std::uint64_t nu = 0;
  std::uint64_t lo = 0;  // (nu-1)^2, exclusive
  std::uint64_t hi = 0;  // nu^2, inclusive
  std::vector<std::uint64_t> primes;
  std::uint64_t m_limit = 0;      // floor(x / nu^2)
  std::uint64_t m_count = 0;      // |M_nu|
  std::uint64_t product_count = 0;  // classified I members whose prime lies here
};

// n = p * m with p in the block of nu and m in M_nu.
struct Witness {
  std::uint64_t nu = 0;
  std::uint64_t p = 0;
  std::uint64_t m = 0;
};

class Decomposition {
 public:
  static constexpr std::uint64_t kMaterializeLimit = 100'000'000;

  const DecompositionParams& params() const { return params_; }
  const std::vector<Block>& blocks() const { return blocks_; }
  const Block& block(std::uint64_t nu) const;
  // Set when log^delta x < H < K < x^delta fails.
  bool regime_warning() const { return regime_warning_; }
  bool materialized() const { return !tags_.empty(); }

  // Class counts indexed by NumberClass.
  const std::array<std::uint64_t, 4>& class_counts() const { return counts_; }
  std::uint64_t count(NumberClass c) const { return counts_[static_cast<int>(c)]; }

  NumberClass class_of(std::uint64_t n) const;
  // Smallest prime of the blocks dividing n, with its block and cofactor.
  std::optional<Witness> witness(std::uint64_t n) const;
  // P_nu = prod of primes in ((H-1)^2, nu^2].
  BigInt block_modulus(std::uint64_t nu) const;
  // M_nu in increasing order.
  std::vector<std::uint64_t> multipliers(std::uint64_t nu) const;

  // Classifies [lo, hi) into out (size hi - lo), independent of materialization.
  // first_prime, if given, receives the smallest block prime dividing each n (0 if none).
  void classify_range(std::uint64_t lo, std::uint64_t hi, std::vector<NumberClass>& out,
                      std::vector<std::uint64_t>* first_prime = nullptr) const;

 private:
  friend Decomposition build_decomposition(const DecompositionParams& params);

  DecompositionParams params_;
  std::vector<Block> blocks_;
  bool regime_warning_ = false;
  std::array<std::uint64_t, 4> counts_{};
  std::vector<NumberClass> tags_;  // tags_[n-1], only when x <= kMaterializeLimit
};

// Requires 2 <= H < K and K^2 <= x.
Decomposition build_decomposition(const DecompositionParams& params);

struct SplitSum {
  std::complex<double> s_i, s_j, s;
};

// Sums a(n) e(P(n)) over I and over J; phase == nullptr means phi = 1.
// Every term is accumulated exactly, so s is bit-identical to the direct sum.
SplitSum split_sum(const RealSequence& a, const PhasePolynomial* phase, const Decomposition& dec);
// The same terms summed directly over [1,x].
std::complex<double> direct_sum(const RealSequence& a, const PhasePolynomial* phase, std::uint64_t x);

// x (1/sqrt(H log H) + sqrt(tau_est) + log H / log K).
double theorem1_envelope(std::uint64_t x, double H, double K, double tau_est);

// |J1\I| vs x/(H log H), |J2\J1| vs x/(H log^2 H), |J3| vs x log H / log K.
std::vector<BoundReport> class_count_reports(const Decomposition& dec);
// max over blocks of |P_nu| / (nu / log nu).
BoundReport brun_titchmarsh_report(const Decomposition& dec);

}  // namespace bsz
