#include "bsz/decomposition.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bsz/errors.hpp"
#include "bsz/exact_sum.hpp"
#include "bsz/kernels.hpp"
#include "bsz/parallel.hpp"
#include "bsz/primes.hpp"

namespace bsz {

namespace {

constexpr std::uint64_t kSegment = std::uint64_t{1} << 18;

struct SegmentSums {
  ExactComplexSum i, j;
};

std::complex<double> term(double a, const PhaseScanner* scan) {
  if (scan == nullptr) return {a, 0.0};
  const std::complex<double> z = kernels::unit_root(scan->current().top64());
  return {a * z.real(), a * z.imag()};
}

}  // namespace

const char* class_name(NumberClass c) {
  switch (c) {
    case NumberClass::I:
      return "I";
    case NumberClass::J1minusI:
      return "J1minusI";
    case NumberClass::J2minusJ1:
      return "J2minusJ1";
    case NumberClass::J3:
      return "J3";
  }
  return "?";
}

const Block& Decomposition::block(std::uint64_t nu) const {
  if (nu < params_.H || nu > params_.K) throw DomainError("block index outside [H,K]");
  return blocks_[nu - params_.H];
}

void Decomposition::classify_range(std::uint64_t lo, std::uint64_t hi, std::vector<NumberClass>& out,
                                   std::vector<std::uint64_t>* first_prime) const {
  const std::size_t len = hi - lo;
  out.assign(len, NumberClass::J3);
  std::vector<std::uint32_t> first(len, 0);  // nu of the first block hit
  std::vector<std::uint8_t> hits(len, 0);    // prime factors in that block with multiplicity, capped at 2
  std::vector<std::uint64_t> prime(len, 0);
  for (const Block& b : blocks_) {
    for (std::uint64_t p : b.primes) {
      const std::uint64_t p2 = p * p;
      for (std::uint64_t n = (lo + p - 1) / p * p; n < hi; n += p) {
        const std::size_t i = n - lo;
        if (first[i] == 0) {
          first[i] = static_cast<std::uint32_t>(b.nu);
          prime[i] = p;
        } else if (first[i] != b.nu) {
          continue;
        }
        const int mult = (n % p2 == 0) ? 2 : 1;
        hits[i] = static_cast<std::uint8_t>(std::min(2, hits[i] + mult));
      }
    }
  }
  for (std::size_t i = 0; i < len; ++i) {
    if (first[i] == 0) continue;
    if (hits[i] >= 2) {
      out[i] = NumberClass::J2minusJ1;
      continue;
    }
    const std::uint64_t n = lo + i;
    const Block& b = blocks_[first[i] - params_.H];
    out[i] = (n / prime[i] <= b.m_limit) ? NumberClass::I : NumberClass::J1minusI;
  }
  if (first_prime != nullptr) *first_prime = std::move(prime);
}

NumberClass Decomposition::class_of(std::uint64_t n) const {
  if (n == 0 || n > params_.x) throw DomainError("n outside [1,x]");
  if (materialized()) return tags_[n - 1];
  std::vector<NumberClass> one;
  classify_range(n, n + 1, one);
  return one[0];
}

std::optional<Witness> Decomposition::witness(std::uint64_t n) const {
  if (n == 0 || n > params_.x) throw DomainError("n outside [1,x]");
  for (const Block& b : blocks_) {
    for (std::uint64_t p : b.primes) {
      if (n % p == 0) return Witness{b.nu, p, n / p};
    }
  }
  return std::nullopt;
}

BigInt Decomposition::block_modulus(std::uint64_t nu) const {
  BigInt prod = 1;
  for (const Block& b : blocks_) {
    if (b.nu > nu) break;
    for (std::uint64_t p : b.primes) prod *= p;
  }
  (void)block(nu);
  return prod;
}

std::vector<std::uint64_t> Decomposition::multipliers(std::uint64_t nu) const {
  const Block& target = block(nu);
  std::vector<char> bad(target.m_limit + 1, 0);
  for (const Block& b : blocks_) {
    if (b.nu > nu) break;
    for (std::uint64_t p : b.primes) {
      for (std::uint64_t m = p; m <= target.m_limit; m += p) bad[m] = 1;
    }
  }
  std::vector<std::uint64_t> out;
  for (std::uint64_t m = 1; m <= target.m_limit; ++m) {
    if (!bad[m]) out.push_back(m);
  }
  return out;
}

Decomposition build_decomposition(const DecompositionParams& params) {
  if (params.H < 2 || params.K <= params.H) throw DomainError("need 2 <= H < K");
  if (params.x == 0 || params.K > params.x / params.K) throw DomainError("need K^2 <= x");
  if (!(params.delta > 0.0 && params.delta <= 0.1)) throw DomainError("need 0 < delta <= 1/10");

  Decomposition dec;
  dec.params_ = params;
  const double lx = std::log(static_cast<double>(params.x));
  dec.regime_warning_ = !(std::pow(lx, params.delta) < static_cast<double>(params.H) &&
                          static_cast<double>(params.K) < std::pow(static_cast<double>(params.x), params.delta));

  const std::uint64_t u_lo = (params.H - 1) * (params.H - 1);
  const std::uint64_t u_hi = params.K * params.K;
  const std::vector<std::uint64_t> all = primes_in(u_lo, u_hi);
  auto it = all.begin();
  for (std::uint64_t nu = params.H; nu <= params.K; ++nu) {
    Block b;
    b.nu = nu;
    b.lo = (nu - 1) * (nu - 1);
    b.hi = nu * nu;
    while (it != all.end() && *it <= b.hi) b.primes.push_back(*it++);
    b.m_limit = params.x / b.hi;
    dec.blocks_.push_back(std::move(b));
  }
  for (Block& b : dec.blocks_) b.m_count = dec.multipliers(b.nu).size();

  const bool keep = params.x <= Decomposition::kMaterializeLimit;
  if (keep) dec.tags_.reserve(params.x);
  std::vector<NumberClass> seg;
  std::vector<std::uint64_t> seg_prime;
  for (std::uint64_t lo = 1; lo <= params.x; lo += kSegment) {
    const std::uint64_t hi = std::min(params.x + 1, lo + kSegment);
    dec.classify_range(lo, hi, seg, &seg_prime);
    for (std::size_t i = 0; i < seg.size(); ++i) {
      ++dec.counts_[static_cast<int>(seg[i])];
      if (seg[i] == NumberClass::I) {
        const auto nu = static_cast<std::uint64_t>(std::ceil(std::sqrt(static_cast<double>(seg_prime[i]))));
        ++dec.blocks_[nu - params.H].product_count;
      }
    }
    if (keep) dec.tags_.insert(dec.tags_.end(), seg.begin(), seg.end());
  }
  return dec;
}

SplitSum split_sum(const RealSequence& a, const PhasePolynomial* phase, const Decomposition& dec) {
  const std::uint64_t x = dec.params().x;
  if (a.size() < x) throw DomainError("coefficient table shorter than x");
  if (phase != nullptr) phase->check_range(x + static_cast<std::uint64_t>(phase->degree()));
  const std::size_t segments = (x + kSegment - 1) / kSegment;
  std::vector<SegmentSums> parts(segments);
  const auto av = a.values();
  parallel_for(segments, [&](std::size_t s) {
    const std::uint64_t lo = 1 + s * kSegment;
    const std::uint64_t hi = std::min(x + 1, lo + kSegment);
    std::vector<NumberClass> tags;
    dec.classify_range(lo, hi, tags);
    std::optional<PhaseScanner> scan;
    if (phase != nullptr) scan.emplace(*phase, lo);
    for (std::uint64_t n = lo; n < hi; ++n) {
      const std::complex<double> z = term(av[n - 1], scan ? &*scan : nullptr);
      if (tags[n - lo] == NumberClass::I) {
        parts[s].i.add(z);
      } else {
        parts[s].j.add(z);
      }
      if (scan) scan->advance();
    }
  });
  ExactComplexSum si, sj;
  for (const auto& p : parts) {
    si.add(p.i);
    sj.add(p.j);
  }
  ExactComplexSum total = si;
  total.add(sj);
  return {si.value(), sj.value(), total.value()};
}

std::complex<double> direct_sum(const RealSequence& a, const PhasePolynomial* phase, std::uint64_t x) {
  if (a.size() < x) throw DomainError("coefficient table shorter than x");
  if (phase != nullptr) phase->check_range(x + static_cast<std::uint64_t>(phase->degree()));
  const std::size_t segments = (x + kSegment - 1) / kSegment;
  std::vector<ExactComplexSum> parts(segments);
  const auto av = a.values();
  parallel_for(segments, [&](std::size_t s) {
    const std::uint64_t lo = 1 + s * kSegment;
    const std::uint64_t hi = std::min(x + 1, lo + kSegment);
    std::optional<PhaseScanner> scan;
    if (phase != nullptr) scan.emplace(*phase, lo);
    for (std::uint64_t n = lo; n < hi; ++n) {
      parts[s].add(term(av[n - 1], scan ? &*scan : nullptr));
      if (scan) scan->advance();
    }
  });
  ExactComplexSum total;
  for (const auto& p : parts) total.add(p);
  return total.value();
}

double theorem1_envelope(std::uint64_t x, double H, double K, double tau_est) {
  if (!(H > 1.0) || !(K > H)) throw DomainError("need 1 < H < K");
  if (tau_est < 0.0) throw DomainError("tau_est must be >= 0");
  return static_cast<double>(x) * (1.0 / std::sqrt(H * std::log(H)) + std::sqrt(tau_est) + std::log(H) / std::log(K));
}

std::vector<BoundReport> class_count_reports(const Decomposition& dec) {
  const auto& p = dec.params();
  const double x = static_cast<double>(p.x);
  const double h = static_cast<double>(p.H);
  const double k = static_cast<double>(p.K);
  const double lh = std::log(h);
  std::vector<std::pair<std::string, double>> params = {{"x", x}, {"H", h}, {"K", k}};
  return {
      make_report("J1minusI", static_cast<double>(dec.count(NumberClass::J1minusI)), x / (h * lh), params),
      make_report("J2minusJ1", static_cast<double>(dec.count(NumberClass::J2minusJ1)), x / (h * lh * lh), params),
      make_report("J3", static_cast<double>(dec.count(NumberClass::J3)), x * lh / std::log(k), params),
  };
}

BoundReport brun_titchmarsh_report(const Decomposition& dec) {
  double worst = 0.0;
  double at = 0.0;
  for (const Block& b : dec.blocks()) {
    const double nu = static_cast<double>(b.nu);
    const double c = static_cast<double>(b.primes.size()) / (nu / std::log(nu));
    if (c > worst) {
      worst = c;
      at = nu;
    }
  }
  return make_report("brun_titchmarsh", worst, 1.0,
                     {{"H", static_cast<double>(dec.params().H)}, {"K", static_cast<double>(dec.params().K)}, {"nu", at}});
}

}  // namespace bsz
