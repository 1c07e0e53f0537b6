#include "bsz/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bsz/decomposition.hpp"
#include "bsz/errors.hpp"
#include "bsz/exact_sum.hpp"
#include "bsz/parallel.hpp"
#include "bsz/primes.hpp"

namespace bsz {

std::vector<BoundReport> assumption_a_report(const RealSequence& a, std::uint64_t x, std::uint64_t z,
                                             std::uint64_t w, std::uint64_t y) {
  if (z >= w) throw DomainError("need z < w");
  if (y == 0) y = x;
  if (y * w < x) throw DomainError("need y >= x/w");
  const auto primes = primes_in(z, w);
  BoundReport plain = mean_square_report(a, y, {});
  plain.name = "assumption_a_unsifted";
  BoundReport sifted = mean_square_report(a, y, primes);
  sifted.name = "assumption_a_sifted";
  for (BoundReport* r : {&plain, &sifted}) {
    r->params.emplace_back("z", static_cast<double>(z));
    r->params.emplace_back("w", static_cast<double>(w));
  }
  return {plain, sifted};
}

AssumptionBReport assumption_b_report(const PhasePolynomial& p, std::uint64_t x, std::uint64_t nu, double budget) {
  if (nu < 3) throw DomainError("assumption (b) needs nu >= 3 so that log z > 0");
  if (nu > x / nu) throw DomainError("need nu^2 <= x");
  AssumptionBReport r;
  r.nu = nu;
  r.z = (nu - 1) * (nu - 1);
  r.w = nu * nu;
  r.y = x / r.w;
  const auto primes = primes_in(r.z, r.w);
  r.primes = primes.size();
  const double work = static_cast<double>(r.primes) * static_cast<double>(r.primes) * static_cast<double>(r.y);
  if (work > budget)
    throw FeasibilityError("assumption (b) at nu=" + std::to_string(nu) + " needs " + std::to_string(work) +
                           " evaluations; use a smaller nu or x");
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < primes.size(); ++i) {
    for (std::size_t j = i + 1; j < primes.size(); ++j) pairs.emplace_back(i, j);
  }
  std::vector<double> mags(pairs.size());
  parallel_for(pairs.size(), [&](std::size_t k) {
    const CorrelationSpec spec(primes[pairs[k].first], primes[pairs[k].second], p);
    mags[k] = std::abs(correlation_sum(spec, r.y));
  });
  ExactSum total;
  for (double m : mags) total.add(m);
  r.lhs = 2.0 * total.value();
  for (std::size_t k = 0; k < std::min<std::size_t>(pairs.size(), 3); ++k) {
    const CorrelationSpec swapped(primes[pairs[k].second], primes[pairs[k].first], p);
    r.symmetry_deviation = std::max(r.symmetry_deviation, std::abs(std::abs(correlation_sum(swapped, r.y)) - mags[k]));
  }
  const double lz = std::log(static_cast<double>(r.z));
  r.tau_est = r.y == 0 ? 0.0 : r.lhs * lz * lz / (static_cast<double>(r.z) * static_cast<double>(r.y));
  return r;
}

Theorem1Report theorem1_report(const RealSequence& a, const PhasePolynomial& p, std::uint64_t x, std::uint64_t H,
                               std::uint64_t K, std::uint64_t stride, double budget) {
  if (stride == 0) throw DomainError("stride must be >= 1");
  const Decomposition dec = build_decomposition({x, H, K, 0.1});
  Theorem1Report out;
  out.regime_warning = dec.regime_warning();
  out.s = exp_sum(a, p, x);
  const SplitSum split = split_sum(a, &p, dec);
  out.split_deviation = std::abs(split.s_i + split.s_j - out.s);

  std::vector<std::uint64_t> nus;
  for (std::uint64_t nu = std::max<std::uint64_t>(H, 3); nu <= K; nu += stride) nus.push_back(nu);
  if (nus.empty() || nus.back() != K) nus.push_back(K);
  for (std::uint64_t nu : nus) {
    out.blocks.push_back(assumption_b_report(p, x, nu, budget));
    out.tau_est = std::max(out.tau_est, out.blocks.back().tau_est);
  }
  out.tau_exceeds_one = out.tau_est > 1.0;
  const double env = theorem1_envelope(x, static_cast<double>(H), static_cast<double>(K), out.tau_est);
  out.report = make_report("theorem1", std::abs(out.s), env,
                           {{"x", static_cast<double>(x)},
                            {"H", static_cast<double>(H)},
                            {"K", static_cast<double>(K)},
                            {"tau_est", out.tau_est},
                            {"tau_exceeds_one", out.tau_exceeds_one ? 1.0 : 0.0},
                            {"split_deviation", out.split_deviation},
                            {"regime_warning", out.regime_warning ? 1.0 : 0.0}});
  return out;
}

double theorem2_envelope(CoeffKind kind, std::uint64_t x) {
  const double xd = static_cast<double>(x);
  const double lx = std::log(xd);
  if (!(lx > 1.0)) return std::nan("");
  const double llx = std::log(lx);
  if (kind == CoeffKind::mu || kind == CoeffKind::mobius) return xd * llx / std::sqrt(lx);
  return xd * llx / lx;
}

std::vector<DecaySweepRow> theorem2_sweep(CoeffKind kind, const RealSequence& a, const PhasePolynomial& p,
                                          std::span<const std::uint64_t> xs) {
  const auto sums = exp_sum_prefixes(&a, p, xs);
  std::vector<DecaySweepRow> rows;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    DecaySweepRow r;
    r.x = xs[i];
    r.abs_s = std::abs(sums[i]);
    r.envelope = theorem2_envelope(kind, xs[i]);
    r.ratio = r.abs_s / r.envelope;
    r.sqrt_ratio = r.abs_s / std::sqrt(static_cast<double>(xs[i]));
    rows.push_back(r);
  }
  return rows;
}

std::vector<double> jutila_max(const RealSequence& a, std::span<const std::uint64_t> xs, std::uint64_t grid) {
  if (grid == 0) throw DomainError("grid must be >= 1");
  std::vector<double> best(xs.size(), 0.0);
  for (std::uint64_t i = 0; i < grid; ++i) {
    const PhasePolynomial lin({Fraction::from_rational(BigInt(i), BigInt(grid))});
    const auto sums = exp_sum_prefixes(&a, lin, xs);
    for (std::size_t k = 0; k < xs.size(); ++k)
      best[k] = std::max(best[k], std::abs(sums[k]) / std::sqrt(static_cast<double>(xs[k])));
  }
  return best;
}

}  // namespace bsz
