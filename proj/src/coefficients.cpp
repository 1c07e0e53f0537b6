#include "bsz/coefficients.hpp"

#include <unistd.h>

#include <algorithm>
#include <bit>
#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <string>
#include <vector>

#include "bsz/errors.hpp"
#include "bsz/exact_sum.hpp"

namespace bsz {

namespace {

// Signed 192-bit value hi * 2^64 + lo, exact for the tau recurrence.
struct Wide {
  i128 hi = 0;  // multiples of 2^64
  i128 lo = 0;  // unnormalized low part

  void add_product(std::int64_t c, i128 f) {
    const auto f_hi = static_cast<std::int64_t>(f >> 64);
    const auto f_lo = static_cast<std::uint64_t>(f);
    hi += static_cast<i128>(c) * f_hi;
    lo += static_cast<i128>(c) * static_cast<i128>(f_lo);
  }

  // Exact quotient by n > 0. Throws OverflowError if the quotient leaves
  // the int128 range, std::logic_error if n does not divide.
  i128 divide_exact(std::uint64_t n) const {
    i128 h = hi + (lo >> 64);
    auto l = static_cast<std::uint64_t>(lo);
    const bool negative = h < 0;
    if (negative) {
      if (l == 0) {
        h = -h;
      } else {
        h = -h - 1;
        l = ~l + 1;
      }
    }
    const auto mag = static_cast<u128>(h);
    const u128 q_hi = mag / n;
    const u128 rest = ((mag % n) << 64) | l;
    const u128 q_lo = rest / n;
    if (rest % n != 0) throw std::logic_error("tau recurrence: inexact division");
    if (q_hi >> 62 != 0) throw OverflowError("tau value exceeds 126 bits");
    const i128 q = static_cast<i128>((q_hi << 64) | q_lo);
    return negative ? -q : q;
  }
};

std::string cache_header(std::size_t n) { return "tau-table v1 N=" + std::to_string(n); }

}  // namespace

IntegerSequence tau_table(std::size_t n) {
  if (n == 0) throw DomainError("tau table needs N >= 1");
  if (n > kTauTableLimit)
    throw CapacityError("tau table limited to N <= " + std::to_string(kTauTableLimit));
  // g = prod (1 - q^m)^3 = sum_j (-1)^j (2j+1) q^{j(j+1)/2};
  // f = g^8 satisfies m f_m = sum_{k>=1} (9k - m) g_k f_{m-k}; tau(m+1) = f_m.
  std::vector<std::uint64_t> tri;
  std::vector<std::int64_t> g;
  for (std::uint64_t j = 1;; ++j) {
    const std::uint64_t t = j * (j + 1) / 2;
    if (t >= n) break;
    tri.push_back(t);
    g.push_back((j % 2 == 0 ? 1 : -1) * static_cast<std::int64_t>(2 * j + 1));
  }
  std::vector<i128> f(n);
  f[0] = 1;
  // Blocks of consecutive m: lags k >= kBlock only reach finished entries and
  // are streamed first; the short lags are then resolved in order.
  constexpr std::size_t kBlock = 4096;
  std::vector<Wide> acc(kBlock);
  for (std::size_t lo = 1; lo < n; lo += kBlock) {
    const std::size_t hi = std::min(n, lo + kBlock);
    std::fill(acc.begin(), acc.end(), Wide{});
    for (std::size_t j = 0; j < tri.size() && tri[j] < hi; ++j) {
      const std::size_t t = tri[j];
      if (t < kBlock) continue;
      const auto nine_t = 9 * static_cast<std::int64_t>(t);
      for (std::size_t m = std::max(lo, t); m < hi; ++m)
        acc[m - lo].add_product((nine_t - static_cast<std::int64_t>(m)) * g[j], f[m - t]);
    }
    for (std::size_t m = lo; m < hi; ++m) {
      Wide& a = acc[m - lo];
      const auto mm = static_cast<std::int64_t>(m);
      for (std::size_t j = 0; j < tri.size() && tri[j] <= m && tri[j] < kBlock; ++j) {
        const auto k = static_cast<std::int64_t>(tri[j]);
        a.add_product((9 * k - mm) * g[j], f[m - tri[j]]);
      }
      f[m] = a.divide_exact(m);
    }
  }
  return IntegerSequence(std::move(f));
}

RealSequence normalize_coefficients(const IntegerSequence& c, int weight) {
  if (weight < 1) throw DomainError("weight must be >= 1");
  const auto e = static_cast<unsigned>(weight - 1);
  using boost::multiprecision::uint256_t;
  std::vector<double> out(c.size());
  for (std::size_t n = 1; n <= c.size(); ++n) {
    const int bits = std::bit_width(n);
    long double scale;
    if (static_cast<unsigned>(bits) * e <= 256) {
      scale = boost::multiprecision::pow(uint256_t(n), e).convert_to<long double>();
    } else {
      scale = boost::multiprecision::pow(BigInt(n), e).convert_to<long double>();
    }
    out[n - 1] = static_cast<double>(static_cast<long double>(c.at(n)) / std::sqrt(scale));
  }
  return RealSequence(std::move(out));
}

RealSequence lambda_table(std::size_t n) { return normalize_coefficients(tau_table(n), 12); }

void write_tau_cache(const std::filesystem::path& file, const IntegerSequence& tau) {
  // Write then rename so concurrent readers never see a partial table.
  const std::filesystem::path tmp = file.string() + ".tmp" + std::to_string(::getpid());
  {
    std::ofstream out(tmp);
    if (!out) throw DomainError("cannot write cache file " + tmp.string());
    out << cache_header(tau.size()) << '\n';
    for (i128 v : tau.values()) out << to_string(v) << '\n';
    if (!out) throw DomainError("failed writing cache file " + tmp.string());
  }
  std::filesystem::rename(tmp, file);
}

IntegerSequence read_tau_cache(const std::filesystem::path& file, std::size_t n) {
  std::ifstream in(file);
  if (!in) throw DomainError("cannot open cache file " + file.string());
  std::string line;
  std::getline(in, line);
  const std::string prefix = "tau-table v1 N=";
  if (line.rfind(prefix, 0) != 0) throw DomainError("bad cache header in " + file.string());
  std::size_t stored = 0;
  try {
    stored = std::stoull(line.substr(prefix.size()));
  } catch (const std::exception&) {
    throw DomainError("bad cache header in " + file.string());
  }
  if (stored < n) throw DomainError("cache holds N=" + std::to_string(stored) + " < " + std::to_string(n));
  std::vector<i128> values;
  values.reserve(n);
  while (values.size() < n && std::getline(in, line)) values.push_back(parse_i128(line));
  if (values.size() < n) throw DomainError("cache file truncated: " + file.string());
  return IntegerSequence(std::move(values));
}

IntegerSequence tau_table_cached(std::size_t n, std::optional<std::filesystem::path> dir) {
  if (!dir) {
    if (const char* env = std::getenv("BSZ_CACHE_DIR"); env != nullptr && *env != '\0') dir = env;
  }
  if (!dir) return tau_table(n);
  const std::filesystem::path file = *dir / "tau-table-v1.txt";
  if (std::filesystem::exists(file)) {
    try {
      return read_tau_cache(file, n);
    } catch (const DomainError&) {
      // too short or unreadable: rebuild below
    }
  }
  IntegerSequence tau = tau_table(n);
  std::filesystem::create_directories(*dir);
  write_tau_cache(file, tau);
  return tau;
}

CountSequence divisor_table(int ell, std::size_t n) {
  if (ell < 2) throw DomainError("divisor function needs ell >= 2");
  if (n == 0) throw DomainError("divisor table needs N >= 1");
  std::vector<std::uint64_t> cur(n, 1);
  for (int level = 1; level < ell; ++level) {
    std::vector<std::uint64_t> next(n, 0);
    for (std::size_t d = 1; d <= n; ++d) {
      for (std::size_t m = d; m <= n; m += d) next[m - 1] += cur[d - 1];
    }
    cur = std::move(next);
  }
  return CountSequence(std::move(cur));
}

RealSequence ones(std::size_t n) { return RealSequence(std::vector<double>(n, 1.0)); }

RealSequence mobius_table(std::size_t n) {
  const auto spf = smallest_prime_factors(n);
  std::vector<double> mu(n, 0.0);
  if (n >= 1) mu[0] = 1.0;
  for (std::size_t m = 2; m <= n; ++m) {
    const std::size_t p = spf[m];
    const std::size_t rest = m / p;
    mu[m - 1] = (rest % p == 0) ? 0.0 : -mu[rest - 1];
  }
  return RealSequence(std::move(mu));
}

RealSequence dirichlet_inverse(const RealSequence& a) {
  const std::size_t n = a.size();
  if (n == 0) throw DomainError("empty sequence");
  const double a1 = a.at(1);
  if (a1 == 0.0) throw DomainError("Dirichlet inverse needs a(1) != 0");
  // acc[m] collects sum_{d e = m, d > 1} a(d) b(e) as soon as each b(e) is final.
  std::vector<double> acc(n, 0.0), b(n, 0.0);
  const auto av = a.values();
  for (std::size_t e = 1; e <= n; ++e) {
    b[e - 1] = (e == 1 ? 1.0 : -acc[e - 1]) / a1;
    const double be = b[e - 1];
    if (be == 0.0) continue;
    for (std::size_t d = 2; d * e <= n; ++d) acc[d * e - 1] += av[d - 1] * be;
  }
  return RealSequence(std::move(b));
}

RealSequence dirichlet_convolve(const RealSequence& a, const RealSequence& b) {
  const std::size_t n = std::min(a.size(), b.size());
  std::vector<double> c(n, 0.0);
  const auto av = a.values();
  const auto bv = b.values();
  for (std::size_t d = 1; d <= n; ++d) {
    for (std::size_t e = 1; d * e <= n; ++e) c[d * e - 1] += av[d - 1] * bv[e - 1];
  }
  return RealSequence(std::move(c));
}

double mu_f_closed_form(const PrimeFactorization& n, const RealSequence& lambda) {
  std::uint64_t squarefree = 1;
  int h = 0;
  for (const auto& [p, e] : n.factors) {
    if (e >= 3) return 0.0;
    if (e == 1) {
      squarefree *= p;
      ++h;
    }
  }
  const double v = lambda.at(squarefree);
  return h % 2 == 0 ? v : -v;
}

RealSequence mu_f_table(const RealSequence& lambda) {
  const std::size_t n = lambda.size();
  const auto spf = smallest_prime_factors(n);
  std::vector<double> mu(n);
  for (std::size_t m = 1; m <= n; ++m) mu[m - 1] = mu_f_closed_form(factorize(m, spf), lambda);
  return RealSequence(std::move(mu));
}

BoundReport mean_square_report(const RealSequence& a, std::uint64_t x, std::span<const std::uint64_t> coprime_to) {
  if (x == 0 || x > a.size()) throw DomainError("x must satisfy 1 <= x <= N");
  std::vector<char> excluded(x + 1, 0);
  double density = 1.0;
  for (std::uint64_t p : coprime_to) {
    density *= 1.0 - 1.0 / static_cast<double>(p);
    for (std::uint64_t m = p; m <= x; m += p) excluded[m] = 1;
  }
  ExactSum lhs;
  const auto av = a.values();
  for (std::uint64_t m = 1; m <= x; ++m) {
    if (!excluded[m]) lhs.add(av[m - 1] * av[m - 1]);
  }
  return make_report("mean_square", lhs.value(), static_cast<double>(x) * density,
                     {{"x", static_cast<double>(x)}, {"primes", static_cast<double>(coprime_to.size())}});
}

CoeffKind parse_coeff_kind(std::string_view name) {
  if (name == "one") return CoeffKind::one;
  if (name == "mobius") return CoeffKind::mobius;
  if (name == "lambda") return CoeffKind::lambda;
  if (name == "mu") return CoeffKind::mu;
  throw DomainError("unknown coefficient '" + std::string(name) + "' (one|mobius|lambda|mu)");
}

std::string_view coeff_kind_name(CoeffKind kind) {
  switch (kind) {
    case CoeffKind::one:
      return "one";
    case CoeffKind::mobius:
      return "mobius";
    case CoeffKind::lambda:
      return "lambda";
    case CoeffKind::mu:
      return "mu";
  }
  return "?";
}

RealSequence coefficient_table(CoeffKind kind, std::size_t n, std::optional<std::filesystem::path> cache_dir) {
  switch (kind) {
    case CoeffKind::one:
      return ones(n);
    case CoeffKind::mobius:
      return mobius_table(n);
    case CoeffKind::lambda:
      return normalize_coefficients(tau_table_cached(n, cache_dir), 12);
    case CoeffKind::mu:
      return mu_f_table(normalize_coefficients(tau_table_cached(n, cache_dir), 12));
  }
  throw DomainError("unknown coefficient kind");
}

}  // namespace bsz
