#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numeric>

#include "bsz/coefficients.hpp"
#include "bsz/errors.hpp"
#include "bsz/primes.hpp"
#include "oracles.hpp"

using namespace bsz;

namespace {

const IntegerSequence& tau4() {
  static const IntegerSequence t = tau_table(4000);
  return t;
}

}  // namespace

TEST_CASE("tau table matches the product expansion oracle") {
  const auto ref = oracle::tau_by_product(4000);
  const auto& t = tau4();
  REQUIRE(t.size() == 4000);
  for (std::size_t n = 1; n <= 4000; ++n) {
    if (t.at(n) != ref[n - 1]) {
      FAIL("tau mismatch at n = " << n);
    }
  }
  CHECK(tau_table(1).at(1) == 1);
  const std::vector<__int128> first6 = {1, -24, 252, -1472, 4830, -6048};
  for (std::size_t n = 1; n <= 6; ++n) CHECK(tau_table(6).at(n) == first6[n - 1]);
  CHECK_THROWS_AS(tau_table(kTauTableLimit + 1), CapacityError);
}

TEST_CASE("tau satisfies the Hecke relations") {
  const auto& t = tau4();
  const std::uint64_t n = t.size();
  for (std::uint64_t a = 1; a * a <= n; ++a) {
    for (std::uint64_t b = 1; b * b <= n; ++b) {
      if (std::gcd(a, b) == 1) CHECK(t.at(a * b) == t.at(a) * t.at(b));
    }
  }
  for (std::uint64_t p : primes_up_to(n)) {
    __int128 pw11 = 1;
    for (int i = 0; i < 11; ++i) pw11 *= static_cast<__int128>(p);
    for (std::uint64_t pk = p, pkm1 = 1; pk * p <= n; pkm1 = pk, pk *= p)
      CHECK(t.at(pk * p) == t.at(p) * t.at(pk) - pw11 * t.at(pkm1));
  }
}

TEST_CASE("lambda is normalized and obeys the Deligne bound") {
  const RealSequence lambda = normalize_coefficients(tau4(), 12);
  CHECK(lambda.at(1) == 1.0);
  CHECK(lambda.at(2) == doctest::Approx(-24.0 / std::pow(2.0, 5.5)).epsilon(1e-15));
  CHECK(lambda.at(2) == doctest::Approx(-0.530330085889911).epsilon(1e-13));
  const auto d = divisor_table(2, lambda.size());
  for (std::size_t n = 1; n <= lambda.size(); ++n) CHECK(std::abs(lambda.at(n)) <= static_cast<double>(d.at(n)));
}

TEST_CASE("divisor functions count ordered factorizations") {
  CHECK(divisor_table(2, 1).at(1) == 1);
  CHECK(divisor_table(2, 12).at(12) == 6);
  CHECK(divisor_table(3, 4).at(4) == 6);
  for (int ell : {2, 3, 4}) {
    const auto t = divisor_table(ell, 300);
    for (std::uint64_t n = 1; n <= 300; ++n) CHECK(t.at(n) == oracle::divisor_count(ell, n));
  }
}

TEST_CASE("Dirichlet inverse of ones is the Moebius function") {
  const auto mu = dirichlet_inverse(ones(2000));
  const auto mob = mobius_table(2000);
  for (std::size_t n = 1; n <= 2000; ++n) CHECK(mu.at(n) == mob.at(n));
  CHECK(mob.at(1) == 1);
  CHECK(mob.at(30) == -1);
  CHECK(mob.at(12) == 0);
  const std::vector<double> zero_first = {0.0, 1.0};
  CHECK_THROWS_AS(dirichlet_inverse(RealSequence(zero_first)), DomainError);
}

TEST_CASE("Dirichlet inverse agrees with the textbook recurrence") {
  const RealSequence lambda = normalize_coefficients(tau4(), 12);
  const auto inv = dirichlet_inverse(lambda);
  std::vector<double> a(lambda.values().begin(), lambda.values().begin() + 1500);
  const auto ref = oracle::dirichlet_inverse(a);
  for (std::size_t n = 1; n <= 1500; ++n) CHECK(std::abs(inv.at(n) - ref[n - 1]) < 1e-10);
  const auto conv = dirichlet_convolve(lambda, inv);
  for (std::size_t n = 1; n <= lambda.size(); ++n) CHECK(std::abs(conv.at(n) - (n == 1 ? 1.0 : 0.0)) < 1e-8);
}

TEST_CASE("mu_f closed form") {
  const RealSequence lambda = normalize_coefficients(tau4(), 12);
  const auto mu = mu_f_table(lambda);
  const auto inv = dirichlet_inverse(lambda);
  CHECK(mu.at(1) == 1.0);
  for (std::uint64_t p : primes_up_to(15)) {
    CHECK(mu.at(p) == -lambda.at(p));
    CHECK(mu.at(p * p) == 1.0);
    CHECK(mu.at(p * p * p) == 0.0);
    CHECK(std::abs(mu.at(p)) <= 2.0);
  }
  for (std::size_t n = 1; n <= lambda.size(); ++n) CHECK(std::abs(mu.at(n) - inv.at(n)) < 1e-9);
  for (std::uint64_t m = 1; m <= 60; ++m) {
    for (std::uint64_t n = 1; m * n <= lambda.size(); ++n) {
      if (std::gcd(m, n) == 1) CHECK(std::abs(mu.at(m * n) - mu.at(m) * mu.at(n)) < 1e-9);
    }
  }
  // p1 * (p2)^2 with distinct primes: (-1)^1 lambda(p1).
  CHECK(mu.at(3 * 25) == doctest::Approx(-lambda.at(3)));
  // p1 p2 q^2: lambda(p1 p2).
  CHECK(mu.at(2 * 3 * 49) == doctest::Approx(lambda.at(6)));
}

TEST_CASE("mean-square report") {
  const auto one = ones(100);
  const auto r0 = mean_square_report(one, 100, {});
  CHECK(r0.ratio == 1.0);
  const std::vector<std::uint64_t> two = {2};
  const auto r2 = mean_square_report(one, 100, two);
  CHECK(r2.lhs == 50.0);
  CHECK(r2.envelope == 50.0);
  CHECK(r2.ratio == 1.0);
  const RealSequence lambda = normalize_coefficients(tau4(), 12);
  const auto ps = primes_in(25, 100);
  const double lo = mean_square_report(lambda, 1000, ps).ratio;
  const double hi = mean_square_report(lambda, 2000, ps).ratio;
  CHECK(hi / lo >= 0.5);
  CHECK(hi / lo <= 2.0);
}

TEST_CASE("tau cache round trip and validation") {
  const auto dir = std::filesystem::temp_directory_path() / "bsz-cache-test";
  std::filesystem::remove_all(dir);
  const auto t = tau_table_cached(500, dir);
  CHECK(std::filesystem::exists(dir / "tau-table-v1.txt"));
  const auto again = tau_table_cached(300, dir);
  for (std::size_t n = 1; n <= 300; ++n) CHECK(again.at(n) == t.at(n));
  const auto grown = tau_table_cached(800, dir);
  CHECK(grown.size() == 800);
  CHECK(read_tau_cache(dir / "tau-table-v1.txt", 800).at(800) == tau_table(800).at(800));
  {
    std::ofstream bad(dir / "bad.txt");
    bad << "not a cache\n1\n";
  }
  CHECK_THROWS_AS(read_tau_cache(dir / "bad.txt", 1), DomainError);
  CHECK_THROWS_AS(read_tau_cache(dir / "tau-table-v1.txt", 100000), DomainError);
  std::filesystem::remove_all(dir);
}

TEST_CASE("coefficient kinds") {
  CHECK(parse_coeff_kind("lambda") == CoeffKind::lambda);
  CHECK(parse_coeff_kind("mu") == CoeffKind::mu);
  CHECK(coeff_kind_name(CoeffKind::mobius) == "mobius");
  CHECK_THROWS_AS(parse_coeff_kind("tau2"), DomainError);
  const auto mu = coefficient_table(CoeffKind::mu, 100);
  CHECK(mu.at(4) == 1.0);
}
