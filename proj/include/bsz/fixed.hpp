#pragma once
// 192-bit wrap-around integers and fixed-point fractions of a turn.
//
// A Fraction stores theta in [0,1) as an integer A with theta = A / 2^192.
// Multiplying a Fraction by an integer N modulo 1 is exactly A*N mod 2^192,
// so polynomial phases can be evaluated without any rounding beyond the
// initial rounding of the coefficients.

#include <array>
#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace bsz {

using i128 = __int128;
using u128 = unsigned __int128;
using BigInt = boost::multiprecision::cpp_int;

class U192 {
 public:
  static constexpr int kBits = 192;

  constexpr U192() = default;
  constexpr explicit U192(std::uint64_t v) : limb_{v, 0, 0} {}
  constexpr U192(std::uint64_t lo, std::uint64_t mid, std::uint64_t hi)
      : limb_{lo, mid, hi} {}

  // Two's complement image of v modulo 2^192.
  static U192 from_signed(i128 v);
  static U192 from_big(const BigInt& v);  // v mod 2^192, any sign

  constexpr std::uint64_t limb(int i) const { return limb_[i]; }
  constexpr std::uint64_t top64() const { return limb_[2]; }
  constexpr bool is_zero() const { return (limb_[0] | limb_[1] | limb_[2]) == 0; }

  BigInt to_big() const;

  friend constexpr bool operator==(const U192&, const U192&) = default;
  friend constexpr bool operator<(const U192& a, const U192& b) {
    if (a.limb_[2] != b.limb_[2]) return a.limb_[2] < b.limb_[2];
    if (a.limb_[1] != b.limb_[1]) return a.limb_[1] < b.limb_[1];
    return a.limb_[0] < b.limb_[0];
  }

  U192& operator+=(const U192& o) {
    u128 s = static_cast<u128>(limb_[0]) + o.limb_[0];
    limb_[0] = static_cast<std::uint64_t>(s);
    s = static_cast<u128>(limb_[1]) + o.limb_[1] + static_cast<std::uint64_t>(s >> 64);
    limb_[1] = static_cast<std::uint64_t>(s);
    limb_[2] += o.limb_[2] + static_cast<std::uint64_t>(s >> 64);
    return *this;
  }
  U192& operator-=(const U192& o) { return *this += -o; }
  friend U192 operator+(U192 a, const U192& b) { return a += b; }
  friend U192 operator-(U192 a, const U192& b) { return a -= b; }
  U192 operator-() const {
    U192 r(~limb_[0], ~limb_[1], ~limb_[2]);
    return r += U192(1);
  }

  // Low 192 bits of the full product.
  friend U192 operator*(const U192& a, const U192& b);
  friend U192 operator*(const U192& a, std::uint64_t b);

  // Interpreting the value as a signed 192-bit integer.
  bool negative() const { return (limb_[2] >> 63) != 0; }
  // Number of significant bits of the unsigned value (0 for zero).
  int bit_width() const;

 private:
  std::array<std::uint64_t, 3> limb_{};
};

// A phase theta in [0,1) with 192 fractional bits.
class Fraction {
 public:
  static constexpr int kBits = U192::kBits;

  constexpr Fraction() = default;
  constexpr explicit Fraction(U192 raw) : raw_(raw) {}

  // Rounds num/den (mod 1) to the nearest multiple of 2^-192.
  static Fraction from_rational(const BigInt& num, const BigInt& den);
  // Exact fractional part of v, truncated below 2^-192.
  static Fraction from_double(double v);
  // Accepts decimals ("0.25", "3.14159265358979323846"), rationals ("p/q"),
  // and the named constants sqrt2, sqrt3, sqrt5 and golden, each optionally
  // preceded by '-'. Decimals and rationals are read exactly, never via double.
  static Fraction parse(std::string_view text);

  constexpr const U192& raw() const { return raw_; }
  constexpr std::uint64_t top64() const { return raw_.top64(); }
  constexpr bool is_zero() const { return raw_.is_zero(); }
  double to_double() const;
  // Distance to the nearest integer, in [0, 1/2].
  double distance_to_integer() const;
  std::string to_string(int digits = 40) const;

  friend constexpr bool operator==(const Fraction&, const Fraction&) = default;
  Fraction& operator+=(const Fraction& o) { raw_ += o.raw_; return *this; }
  Fraction& operator-=(const Fraction& o) { raw_ -= o.raw_; return *this; }
  friend Fraction operator+(Fraction a, const Fraction& b) { return a += b; }
  friend Fraction operator-(Fraction a, const Fraction& b) { return a -= b; }
  Fraction operator-() const { return Fraction(-raw_); }
  // theta * n mod 1, exact.
  friend Fraction operator*(const Fraction& f, const U192& n) { return Fraction(f.raw_ * n); }
  friend Fraction operator*(const Fraction& f, std::uint64_t n) { return Fraction(f.raw_ * n); }

 private:
  U192 raw_{};
};

std::string to_string(i128 v);
i128 parse_i128(std::string_view text);

}  // namespace bsz
