#pragma once
// Coefficient tables: tau, the normalized lambda, its Dirichlet inverse mu_f,
// divisor functions and the basic Dirichlet algebra.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string_view>

#include "bsz/primes.hpp"
#include "bsz/report.hpp"
#include "bsz/sequence.hpp"

namespace bsz {

inline constexpr std::size_t kTauTableLimit = std::size_t{1} << 21;

// tau(1..N) for Delta = q prod (1 - q^n)^24, exact. CapacityError above
// kTauTableLimit.
IntegerSequence tau_table(std::size_t n);

// c(n) / n^((weight-1)/2), using the exact integer n^(weight-1) and one square root.
RealSequence normalize_coefficients(const IntegerSequence& c, int weight);
RealSequence lambda_table(std::size_t n);

// Cache file: "tau-table v1 N=<N>" then one decimal integer per line.
void write_tau_cache(const std::filesystem::path& file, const IntegerSequence& tau);
// Reads the first n entries; DomainError on a malformed file or one that is too short.
IntegerSequence read_tau_cache(const std::filesystem::path& file, std::size_t n);
// Looks for tau-table-v1.txt under dir (or $BSZ_CACHE_DIR) holding at least n
// entries, computing and writing it if missing. No dir means no caching.
IntegerSequence tau_table_cached(std::size_t n, std::optional<std::filesystem::path> dir = std::nullopt);

// Ordered factorizations into ell parts; ell = 2 gives d(n).
CountSequence divisor_table(int ell, std::size_t n);

RealSequence ones(std::size_t n);
RealSequence mobius_table(std::size_t n);

// b with (a * b)(n) = [n = 1] for n <= N. DomainError if a(1) = 0.
RealSequence dirichlet_inverse(const RealSequence& a);
// (a * b)(n) for n <= min(|a|, |b|).
RealSequence dirichlet_convolve(const RealSequence& a, const RealSequence& b);

// 1 at n = 1; (-1)^h lambda(p1...ph) for n = p1...ph (p_{h+1}...p_r)^2 with
// distinct primes; 0 otherwise.
double mu_f_closed_form(const PrimeFactorization& n, const RealSequence& lambda);
// mu_f_closed_form for every n <= |lambda|.
RealSequence mu_f_table(const RealSequence& lambda);

// lhs = sum_{n<=x, (n,P)=1} |a(n)|^2 against x prod_{p|P} (1 - 1/p).
BoundReport mean_square_report(const RealSequence& a, std::uint64_t x, std::span<const std::uint64_t> coprime_to);

enum class CoeffKind { one, mobius, lambda, mu };
CoeffKind parse_coeff_kind(std::string_view name);
std::string_view coeff_kind_name(CoeffKind kind);
RealSequence coefficient_table(CoeffKind kind, std::size_t n,
                               std::optional<std::filesystem::path> cache_dir = std::nullopt);

}  // namespace bsz
