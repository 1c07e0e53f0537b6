#include "bsz/primes.hpp"

#include <algorithm>
#include <cmath>

#include "bsz/errors.hpp"
#include "bsz/fixed.hpp"

namespace bsz {

namespace {

std::uint64_t isqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e != 0) {
    if (e & 1) r = mulmod(r, b, m);
    b = mulmod(b, b, m);
    e >>= 1;
  }
  return r;
}

}  // namespace

std::vector<std::uint64_t> primes_up_to(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  if (n < 2) return out;
  // bit i <-> odd number 2i+1
  const std::uint64_t half = (n + 1) / 2;
  std::vector<bool> composite(half, false);
  out.push_back(2);
  for (std::uint64_t i = 1; i < half; ++i) {
    if (composite[i]) continue;
    const std::uint64_t p = 2 * i + 1;
    out.push_back(p);
    for (std::uint64_t j = p * p / 2; j < half; j += p) composite[j] = true;
  }
  return out;
}

std::vector<std::uint64_t> primes_in(std::uint64_t lo, std::uint64_t hi) {
  std::vector<std::uint64_t> out;
  if (hi <= lo || hi < 2) return out;
  const auto base = primes_up_to(isqrt(hi));
  constexpr std::uint64_t kSegment = 1 << 18;
  std::vector<char> mark;
  for (std::uint64_t start = std::max<std::uint64_t>(lo + 1, 2); start <= hi; start += kSegment) {
    const std::uint64_t stop = std::min(hi, start + kSegment - 1);
    mark.assign(stop - start + 1, 1);
    for (std::uint64_t p : base) {
      if (p * p > stop) break;
      std::uint64_t m = std::max(p * p, (start + p - 1) / p * p);
      for (; m <= stop; m += p) mark[m - start] = 0;
    }
    for (std::uint64_t n = start; n <= stop; ++n) {
      if (mark[n - start]) out.push_back(n);
    }
  }
  return out;
}

std::vector<std::uint32_t> smallest_prime_factors(std::uint64_t limit) {
  if (limit > 0xFFFFFFFFull) throw CapacityError("smallest-prime-factor table limited to 2^32");
  std::vector<std::uint32_t> spf(limit + 1, 0);
  std::vector<std::uint32_t> primes;
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (spf[i] == 0) {
      spf[i] = static_cast<std::uint32_t>(i);
      primes.push_back(static_cast<std::uint32_t>(i));
    }
    for (std::uint32_t p : primes) {
      if (p > spf[i] || static_cast<std::uint64_t>(p) * i > limit) break;
      spf[p * i] = p;
    }
  }
  return spf;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

std::uint64_t PrimeFactorization::value() const {
  std::uint64_t v = 1;
  for (auto [p, e] : factors) {
    for (int i = 0; i < e; ++i) v *= p;
  }
  return v;
}

PrimeFactorization factorize(std::uint64_t n, std::span<const std::uint64_t> primes) {
  if (n == 0) throw DomainError("cannot factorize 0");
  PrimeFactorization f;
  for (std::uint64_t p : primes) {
    if (p * p > n) break;
    if (n % p != 0) continue;
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    f.factors.emplace_back(p, e);
  }
  if (n > 1) {
    if (!primes.empty() && primes.back() * primes.back() < n && !is_prime(n))
      throw DomainError("prime table too short to factorize");
    f.factors.emplace_back(n, 1);
  }
  return f;
}

PrimeFactorization factorize(std::uint64_t n, std::span<const std::uint32_t> spf) {
  if (n == 0) throw DomainError("cannot factorize 0");
  if (n >= spf.size()) throw CapacityError("n outside smallest-prime-factor table");
  PrimeFactorization f;
  while (n > 1) {
    const std::uint64_t p = spf[n];
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    f.factors.emplace_back(p, e);
  }
  return f;
}

}  // namespace bsz
