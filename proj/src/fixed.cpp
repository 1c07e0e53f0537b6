#include "bsz/fixed.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "bsz/errors.hpp"

namespace bsz {

namespace {

const BigInt& two_pow_192() {
  static const BigInt v = BigInt(1) << 192;
  return v;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(),
                                   [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

BigInt parse_big(std::string_view s) {
  bool neg = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    neg = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) throw DomainError("not an integer: '" + std::string(s) + "'");
  BigInt v = 0;
  for (char c : s) v = v * 10 + (c - '0');
  return neg ? BigInt(-v) : v;
}

// floor(sqrt(k) * 2^192) for small k.
BigInt scaled_sqrt(unsigned k) { return boost::multiprecision::sqrt(BigInt(k) << 384); }

}  // namespace

U192 U192::from_signed(i128 v) {
  const auto u = static_cast<u128>(v);
  const std::uint64_t ext = v < 0 ? ~std::uint64_t{0} : 0;
  return U192(static_cast<std::uint64_t>(u), static_cast<std::uint64_t>(u >> 64), ext);
}

U192 U192::from_big(const BigInt& v) {
  BigInt r = v % two_pow_192();
  if (r < 0) r += two_pow_192();
  U192 out;
  for (int i = 0; i < 3; ++i) {
    out.limb_[i] = static_cast<std::uint64_t>(r & BigInt(~std::uint64_t{0}));
    r >>= 64;
  }
  return out;
}

BigInt U192::to_big() const {
  BigInt v = limb_[2];
  v <<= 64;
  v += limb_[1];
  v <<= 64;
  v += limb_[0];
  return v;
}

U192 operator*(const U192& a, const U192& b) {
  // Schoolbook product truncated to three limbs.
  std::uint64_t r0, r1, r2;
  u128 p = static_cast<u128>(a.limb_[0]) * b.limb_[0];
  r0 = static_cast<std::uint64_t>(p);
  u128 carry = p >> 64;
  p = static_cast<u128>(a.limb_[0]) * b.limb_[1];
  u128 mid = carry + static_cast<std::uint64_t>(p);
  std::uint64_t hi_acc = static_cast<std::uint64_t>(p >> 64);
  p = static_cast<u128>(a.limb_[1]) * b.limb_[0];
  mid += static_cast<std::uint64_t>(p);
  hi_acc += static_cast<std::uint64_t>(p >> 64);
  r1 = static_cast<std::uint64_t>(mid);
  r2 = static_cast<std::uint64_t>(mid >> 64) + hi_acc + a.limb_[0] * b.limb_[2] +
       a.limb_[1] * b.limb_[1] + a.limb_[2] * b.limb_[0];
  return U192(r0, r1, r2);
}

U192 operator*(const U192& a, std::uint64_t b) {
  u128 p = static_cast<u128>(a.limb_[0]) * b;
  const std::uint64_t r0 = static_cast<std::uint64_t>(p);
  p = static_cast<u128>(a.limb_[1]) * b + (p >> 64);
  const std::uint64_t r1 = static_cast<std::uint64_t>(p);
  const std::uint64_t r2 = a.limb_[2] * b + static_cast<std::uint64_t>(p >> 64);
  return U192(r0, r1, r2);
}

int U192::bit_width() const {
  for (int i = 2; i >= 0; --i) {
    if (limb_[i] != 0) return 64 * i + (64 - __builtin_clzll(limb_[i]));
  }
  return 0;
}

Fraction Fraction::from_rational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw DomainError("zero denominator");
  BigInt n = num, d = den;
  if (d < 0) {
    n = -n;
    d = -d;
  }
  BigInt r = n % d;
  if (r < 0) r += d;
  // round(r * 2^192 / d)
  BigInt a = ((r << 193) + d) / (2 * d);
  return Fraction(U192::from_big(a));
}

Fraction Fraction::from_double(double v) {
  if (!std::isfinite(v)) throw DomainError("non-finite coefficient");
  if (v == 0.0) return Fraction();
  int exp = 0;
  const double mant = std::frexp(v, &exp);
  // v = m * 2^(exp-53) exactly, m a signed 53-bit integer.
  const BigInt m = static_cast<std::int64_t>(std::ldexp(mant, 53));
  const int shift = exp - 53 + kBits;
  const BigInt raw = shift >= 0 ? BigInt(m << shift) : BigInt(m / (BigInt(1) << -shift));
  return Fraction(U192::from_big(raw));
}

Fraction Fraction::parse(std::string_view text) {
  std::string_view s = trim(text);
  bool neg = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    neg = s.front() == '-';
    s.remove_prefix(1);
  }
  if (s.empty()) throw DomainError("empty coefficient");
  Fraction f;
  // from_big reduces mod 2^192, which drops the integer part.
  if (s == "sqrt2") {
    f = Fraction(U192::from_big(scaled_sqrt(2)));
  } else if (s == "sqrt3") {
    f = Fraction(U192::from_big(scaled_sqrt(3)));
  } else if (s == "sqrt5") {
    f = Fraction(U192::from_big(scaled_sqrt(5)));
  } else if (s == "golden") {
    // floor(sqrt5 * 2^193) - 2^193 = (sqrt5 - 1) * 2^193, then divide by 4.
    f = Fraction(U192::from_big((boost::multiprecision::sqrt(BigInt(5) << 386) - (BigInt(1) << 193)) >> 2));
  } else if (const auto slash = s.find('/'); slash != std::string_view::npos) {
    const BigInt p = parse_big(trim(s.substr(0, slash)));
    const BigInt q = parse_big(trim(s.substr(slash + 1)));
    f = from_rational(p, q);
  } else {
    const auto dot = s.find('.');
    std::string_view ip = s.substr(0, dot);
    std::string_view fp = dot == std::string_view::npos ? std::string_view{} : s.substr(dot + 1);
    if (ip.empty() && fp.empty()) throw DomainError("malformed coefficient '" + std::string(text) + "'");
    if ((!ip.empty() && !all_digits(ip)) || (!fp.empty() && !all_digits(fp)))
      throw DomainError("malformed coefficient '" + std::string(text) + "'");
    BigInt num = ip.empty() ? BigInt(0) : parse_big(ip);
    BigInt den = 1;
    for (char c : fp) {
      num = num * 10 + (c - '0');
      den *= 10;
    }
    f = from_rational(num, den);
  }
  return neg ? -f : f;
}

double Fraction::to_double() const {
  return static_cast<double>(std::ldexp(static_cast<long double>(raw_.top64()), -64));
}

double Fraction::distance_to_integer() const {
  const U192 d = raw_.negative() ? -raw_ : raw_;
  return static_cast<double>(std::ldexp(static_cast<long double>(d.top64()), -64) +
                             std::ldexp(static_cast<long double>(d.limb(1)), -128));
}

std::string Fraction::to_string(int digits) const {
  BigInt r = raw_.to_big();
  std::string out = "0.";
  for (int i = 0; i < digits; ++i) {
    r *= 10;
    const BigInt d = r >> 192;
    out.push_back(static_cast<char>('0' + static_cast<int>(d)));
    r -= d << 192;
  }
  return out;
}

std::string to_string(i128 v) {
  if (v == 0) return "0";
  const bool neg = v < 0;
  u128 u = neg ? static_cast<u128>(-(v + 1)) + 1 : static_cast<u128>(v);
  std::string s;
  while (u != 0) {
    s.push_back(static_cast<char>('0' + static_cast<int>(u % 10)));
    u /= 10;
  }
  if (neg) s.push_back('-');
  std::reverse(s.begin(), s.end());
  return s;
}

i128 parse_i128(std::string_view text) {
  std::string_view s = trim(text);
  bool neg = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    neg = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) throw DomainError("not an integer: '" + std::string(text) + "'");
  u128 u = 0;
  const u128 limit = static_cast<u128>(1) << 127;
  for (char c : s) {
    const u128 next = u * 10 + static_cast<unsigned>(c - '0');
    if (next / 10 != u || next > limit) throw OverflowError("integer exceeds 128 bits");
    u = next;
  }
  if (!neg && u == limit) throw OverflowError("integer exceeds 128 bits");
  return neg ? static_cast<i128>(~u + 1) : static_cast<i128>(u);
}

}  // namespace bsz
