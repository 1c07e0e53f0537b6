#include "bsz/phase.hpp"

#include <algorithm>
#include <array>
#include <string>

#include "bsz/errors.hpp"
#include "bsz/kernels.hpp"
#include "bsz/parallel.hpp"
#include "bsz/primes.hpp"

namespace bsz {

namespace {

constexpr std::uint64_t kChunk = 1 << 16;
constexpr std::size_t kBlock = 2048;

bool power_fits(std::uint64_t n, int k) {
  if (n <= 1) return true;
  const int bits = 64 - __builtin_clzll(n);
  if (k * bits <= U192::kBits) return true;
  if (k * (bits - 1) >= U192::kBits) return false;
  return boost::multiprecision::pow(BigInt(n), static_cast<unsigned>(k)) < (BigInt(1) << U192::kBits);
}

kernels::CompensatedComplex sum_span(const RealSequence* a, const PhasePolynomial& p, std::uint64_t first,
                                     std::uint64_t last) {
  kernels::CompensatedComplex acc;
  PhaseScanner scan(p, first);
  std::array<std::uint64_t, kBlock> buf;
  for (std::uint64_t n = first; n <= last;) {
    const auto len = static_cast<std::size_t>(std::min<std::uint64_t>(kBlock, last - n + 1));
    scan.fill_top64(std::span(buf).first(len));
    const std::span<const double> w = a == nullptr ? std::span<const double>{} : a->values().subspan(n - 1, len);
    kernels::accumulate_phases(w, std::span<const std::uint64_t>(buf.data(), len), acc);
    n += len;
  }
  return acc;
}

struct Segment {
  std::uint64_t first, last;
};

// Splits [first,last] into kChunk-sized pieces.
void chunk(std::uint64_t first, std::uint64_t last, std::vector<Segment>& out) {
  for (std::uint64_t s = first; s <= last; s += kChunk) out.push_back({s, std::min(last, s + kChunk - 1)});
}

std::vector<kernels::CompensatedComplex> sum_segments(const RealSequence* a, const PhasePolynomial& p,
                                                      const std::vector<Segment>& segs) {
  std::vector<kernels::CompensatedComplex> parts(segs.size());
  parallel_for(segs.size(), [&](std::size_t i) { parts[i] = sum_span(a, p, segs[i].first, segs[i].last); });
  return parts;
}

}  // namespace

PhasePolynomial::PhasePolynomial(std::vector<Fraction> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw DomainError("phase polynomial needs degree k >= 1");
}

PhasePolynomial PhasePolynomial::parse(std::string_view csv) {
  std::vector<Fraction> coeffs;
  std::size_t start = 0;
  while (start <= csv.size()) {
    const std::size_t comma = csv.find(',', start);
    const std::string_view item = csv.substr(start, comma == std::string_view::npos ? csv.npos : comma - start);
    coeffs.push_back(Fraction::parse(item));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return PhasePolynomial(std::move(coeffs));
}

PhasePolynomial PhasePolynomial::monomial(const Fraction& alpha, int degree) {
  if (degree < 1) throw DomainError("monomial degree must be >= 1");
  std::vector<Fraction> c(static_cast<std::size_t>(degree));
  c.back() = alpha;
  return PhasePolynomial(std::move(c));
}

PhasePolynomial PhasePolynomial::negated() const {
  std::vector<Fraction> c;
  c.reserve(coeffs_.size());
  for (const auto& a : coeffs_) c.push_back(-a);
  return PhasePolynomial(std::move(c));
}

void PhasePolynomial::check_range(std::uint64_t n) const {
  if (!power_fits(n, degree()))
    throw OverflowError("n^" + std::to_string(degree()) + " exceeds 192 bits at n=" + std::to_string(n));
}

Fraction eval_phase(const PhasePolynomial& p, std::uint64_t n) {
  p.check_range(n);
  Fraction acc;
  U192 power(1);
  for (const auto& a : p.coeffs()) {
    power = power * n;
    acc += a * power;
  }
  return acc;
}

PhaseScanner::PhaseScanner(const PhasePolynomial& p, std::uint64_t start) : n_(start) {
  const int k = p.degree();
  std::vector<U192> values;
  values.reserve(static_cast<std::size_t>(k) + 1);
  for (int t = 0; t <= k; ++t) values.push_back(eval_phase(p, start + static_cast<std::uint64_t>(t)).raw());
  // diff_[i] = sum_t (-1)^(i-t) C(i,t) f(start+t)
  diff_.assign(static_cast<std::size_t>(k) + 1, U192());
  for (int i = 0; i <= k; ++i) {
    std::uint64_t binom = 1;
    for (int t = 0; t <= i; ++t) {
      const U192 term = values[static_cast<std::size_t>(t)] * binom;
      if ((i - t) % 2 == 0) {
        diff_[static_cast<std::size_t>(i)] += term;
      } else {
        diff_[static_cast<std::size_t>(i)] -= term;
      }
      binom = binom * static_cast<std::uint64_t>(i - t) / static_cast<std::uint64_t>(t + 1);
    }
  }
}

void PhaseScanner::fill_top64(std::span<std::uint64_t> out) {
  const std::size_t k = diff_.size();
  if (k == 2) {
    // Linear phases dominate the sweeps: keep the two-entry table in registers.
    U192 d0 = diff_[0];
    const U192 d1 = diff_[1];
    for (auto& o : out) {
      o = d0.top64();
      d0 += d1;
    }
    diff_[0] = d0;
    n_ += out.size();
    return;
  }
  for (auto& o : out) {
    o = diff_[0].top64();
    advance();
  }
}

std::complex<double> exp_sum(const RealSequence& a, const PhasePolynomial& p, std::uint64_t x) {
  if (x > a.size()) throw DomainError("x exceeds coefficient table length");
  if (x == 0) return {};
  return exp_sum_range(&a, p, 1, x);
}

std::complex<double> exp_sum_range(const RealSequence* a, const PhasePolynomial& p, std::uint64_t first,
                                   std::uint64_t last) {
  if (first == 0) throw DomainError("sums start at n = 1");
  if (last < first) return {};
  if (a != nullptr && last > a->size()) throw DomainError("range exceeds coefficient table length");
  p.check_range(last + static_cast<std::uint64_t>(p.degree()));
  std::vector<Segment> segs;
  chunk(first, last, segs);
  const auto parts = sum_segments(a, p, segs);
  kernels::CompensatedComplex total;
  for (const auto& part : parts) total.add(part);
  return total.value();
}

std::vector<std::complex<double>> exp_sum_prefixes(const RealSequence* a, const PhasePolynomial& p,
                                                   std::span<const std::uint64_t> xs) {
  std::vector<std::complex<double>> out;
  if (xs.empty()) return out;
  for (std::size_t i = 1; i < xs.size(); ++i) {
    if (xs[i] <= xs[i - 1]) throw DomainError("checkpoints must be strictly increasing");
  }
  if (a != nullptr && xs.back() > a->size()) throw DomainError("x exceeds coefficient table length");
  p.check_range(xs.back() + static_cast<std::uint64_t>(p.degree()));
  std::vector<Segment> segs;
  std::vector<std::size_t> ends;  // segs index one past each checkpoint
  std::uint64_t from = 1;
  for (std::uint64_t x : xs) {
    if (x >= from) chunk(from, x, segs);
    ends.push_back(segs.size());
    from = x + 1;
  }
  const auto parts = sum_segments(a, p, segs);
  kernels::CompensatedComplex total;
  std::size_t done = 0;
  for (std::size_t e : ends) {
    for (; done < e; ++done) total.add(parts[done]);
    out.push_back(total.value());
  }
  return out;
}

std::complex<double> weyl_sum(const PhasePolynomial& u, std::uint64_t y) {
  if (y == 0) return {};
  return exp_sum_range(nullptr, u, 1, y);
}

CorrelationSpec::CorrelationSpec(std::uint64_t p, std::uint64_t q, PhasePolynomial base)
    : p_(p), q_(q), base_(std::move(base)), difference_(std::vector<Fraction>(1)) {
  if (p == q) throw DomainError("correlation needs distinct primes p != q");
  if (!is_prime(p) || !is_prime(q)) throw DomainError("correlation arguments must be prime");
  std::vector<Fraction> diff;
  BigInt pp = 1, qq = 1;
  for (int j = 1; j <= base_.degree(); ++j) {
    pp *= p;
    qq *= q;
    c_.push_back(pp - qq);
    diff.push_back(base_.coeff(j) * U192::from_big(c_.back()));
  }
  difference_ = PhasePolynomial(std::move(diff));
}

std::complex<double> correlation_sum(const CorrelationSpec& spec, std::uint64_t y) {
  const BigInt limit = BigInt(1) << U192::kBits;
  BigInt ypow = 1;
  for (int j = 1; j <= spec.base().degree(); ++j) {
    ypow *= y;
    if (boost::multiprecision::abs(spec.c(j)) * ypow >= limit)
      throw OverflowError("C_" + std::to_string(j) + " * y^" + std::to_string(j) + " exceeds 192 bits");
  }
  return weyl_sum(spec.difference(), y);
}

}  // namespace bsz
