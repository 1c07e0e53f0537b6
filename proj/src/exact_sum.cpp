#include "bsz/exact_sum.hpp"

#include <bit>
#include <cmath>

#include "bsz/errors.hpp"
#include "bsz/fixed.hpp"

namespace bsz {

namespace {
constexpr std::int64_t kMask = 0xFFFFFFFF;
constexpr std::uint32_t kNormalizeEvery = 1u << 29;
}  // namespace

void ExactSum::add(double v) {
  if (v == 0.0) return;
  if (!std::isfinite(v)) throw DomainError("non-finite addend");
  const auto bits = std::bit_cast<std::uint64_t>(v);
  const bool neg = (bits >> 63) != 0;
  const auto biased = static_cast<int>((bits >> 52) & 0x7FF);
  std::uint64_t mant = bits & ((std::uint64_t{1} << 52) - 1);
  int pos = 0;  // bit position of mant's lsb, in units of 2^-1074
  if (biased == 0) {
    pos = 0;
  } else {
    mant |= std::uint64_t{1} << 52;
    pos = biased - 1;
  }
  const int idx = pos / 32;
  const u128 t = static_cast<u128>(mant) << (pos % 32);
  const auto d0 = static_cast<std::int64_t>(static_cast<std::uint64_t>(t) & kMask);
  const auto d1 = static_cast<std::int64_t>(static_cast<std::uint64_t>(t >> 32) & kMask);
  const auto d2 = static_cast<std::int64_t>(static_cast<std::uint64_t>(t >> 64));
  if (neg) {
    digit_[idx] -= d0;
    digit_[idx + 1] -= d1;
    digit_[idx + 2] -= d2;
  } else {
    digit_[idx] += d0;
    digit_[idx + 1] += d1;
    digit_[idx + 2] += d2;
  }
  if (++pending_ >= kNormalizeEvery) normalize();
}

void ExactSum::add(const ExactSum& other) {
  ExactSum o = other;
  o.normalize();
  normalize();
  for (int i = 0; i < kDigits; ++i) digit_[i] += o.digit_[i];
  normalize();
}

void ExactSum::normalize() {
  std::int64_t carry = 0;
  for (int i = 0; i < kDigits - 1; ++i) {
    const std::int64_t v = digit_[i] + carry;
    digit_[i] = v & kMask;
    carry = v >> 32;
  }
  digit_[kDigits - 1] += carry;
  pending_ = 0;
}

double ExactSum::value() const {
  ExactSum n = *this;
  n.normalize();
  long double r = 0.0L;
  for (int i = kDigits - 1; i >= 0; --i) r = r * 4294967296.0L + static_cast<long double>(n.digit_[i]);
  return static_cast<double>(std::ldexp(r, -1074));
}

bool ExactSum::operator==(const ExactSum& o) const {
  ExactSum a = *this, b = o;
  a.normalize();
  b.normalize();
  return a.digit_ == b.digit_;
}

}  // namespace bsz
