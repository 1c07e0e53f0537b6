#pragma once
// Order-independent exact summation of doubles.
//
// Every finite double is m * 2^e with |m| < 2^53 and e >= -1074, so it is an
// integer multiple of 2^-1074. The accumulator keeps that integer in signed
// base-2^32 digits held in int64 slots, normalizing lazily. The value only
// depends on the multiset of addends, so sums that re-bracket the same terms
// compare bit-for-bit equal.

#include <array>
#include <complex>
#include <cstdint>

namespace bsz {

class ExactSum {
 public:
  void add(double v);
  void add(const ExactSum& other);
  // Nearest-ish double to the exact sum; a deterministic function of the
  // exact value.
  double value() const;
  bool operator==(const ExactSum& o) const;

 private:
  static constexpr int kDigits = 70;
  void normalize();

  std::array<std::int64_t, kDigits> digit_{};
  std::uint32_t pending_ = 0;
};

class ExactComplexSum {
 public:
  void add(std::complex<double> z) {
    re_.add(z.real());
    im_.add(z.imag());
  }
  void add(const ExactComplexSum& o) {
    re_.add(o.re_);
    im_.add(o.im_);
  }
  std::complex<double> value() const { return {re_.value(), im_.value()}; }
  bool operator==(const ExactComplexSum& o) const { return re_ == o.re_ && im_ == o.im_; }

 private:
  ExactSum re_, im_;
};

}  // namespace bsz
