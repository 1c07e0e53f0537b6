#pragma once
// Reference implementations used only by the tests. None of them calls into
// the library: each recomputes its quantity from the definition.

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace oracle {

using BigInt = boost::multiprecision::cpp_int;
using Float256 = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<256>>;

// tau(1..n) from q * prod_{m<n} (1 - q^m)^24, multiplying one factor
// (1 - q^m) at a time in mod 2^128 arithmetic. The final coefficients fit
// in a signed 128-bit integer, so the wrapped result is exact.
std::vector<__int128> tau_by_product(std::size_t n);

// d_ell(n) for n <= limit by counting ordered factorizations recursively.
std::uint64_t divisor_count(int ell, std::uint64_t n);

// Dirichlet inverse by the textbook recurrence b(n) = -sum_{d|n, d<n} a(n/d) b(d) / a(1).
std::vector<double> dirichlet_inverse(const std::vector<double>& a);

// Value of a named constant or exact decimal/rational string at 256 bits, reduced mod 1.
Float256 parse_value(const std::string& text);
// sum_j alpha_j n^j mod 1 at 256 bits.
Float256 phase_256(const std::vector<Float256>& alphas, std::uint64_t n);
// Circular distance between two phases in [0,1).
double circular_distance(double a, double b);

// sum_{n<=x} e(alpha n) = e(alpha) (e(alpha x) - 1) / (e(alpha) - 1), at 256 bits.
std::complex<double> geometric_sum(const Float256& alpha, std::uint64_t x);

// sum_{n<=y} e((b1 n + b2 n^2)/q) from one full period of length q.
std::complex<double> gauss_periodic_sum(std::int64_t b1, std::int64_t b2, std::int64_t q, std::uint64_t y);

// Continued-fraction convergents p/q of num/den in increasing q order.
std::vector<std::pair<BigInt, BigInt>> convergents(BigInt num, BigInt den);

// Class of n in the block decomposition of [1,x] by primes in ((nu-1)^2, nu^2], H <= nu <= K,
// computed from the definition: 0 = I, 1 = J1\I, 2 = J2\J1, 3 = J3.
int decomposition_class(std::uint64_t n, std::uint64_t x, std::uint64_t H, std::uint64_t K);

// sum_{n<=N} min(M, 1/||alpha n||) in long double.
long double min_reciprocal(long double alpha, std::uint64_t n, long double m);

bool is_prime(std::uint64_t n);

}  // namespace oracle
