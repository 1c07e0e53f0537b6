#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace bsz {

// Primes p <= n (sieve of Eratosthenes over odd numbers).
std::vector<std::uint64_t> primes_up_to(std::uint64_t n);

// Primes p with lo < p <= hi, by a segmented sieve seeded with primes <= sqrt(hi).
std::vector<std::uint64_t> primes_in(std::uint64_t lo, std::uint64_t hi);

// spf[n] = smallest prime factor of n for 2 <= n <= limit; spf[0] = spf[1] = 0.
std::vector<std::uint32_t> smallest_prime_factors(std::uint64_t limit);

// Deterministic Miller-Rabin for all 64-bit n.
bool is_prime(std::uint64_t n);

struct PrimeFactorization {
  // (prime, exponent), primes strictly increasing, exponents >= 1.
  std::vector<std::pair<std::uint64_t, int>> factors;

  std::uint64_t value() const;
  // Number of distinct prime factors.
  std::size_t omega() const { return factors.size(); }
};

// Trial division by a table that contains every prime <= sqrt(n).
PrimeFactorization factorize(std::uint64_t n, std::span<const std::uint64_t> primes);
PrimeFactorization factorize(std::uint64_t n, std::span<const std::uint32_t> spf);

}  // namespace bsz
