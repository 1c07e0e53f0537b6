#include <doctest.h>

#include <cmath>
#include <random>

#include "bsz/errors.hpp"
#include "bsz/kernels.hpp"
#include "bsz/phase.hpp"
#include "oracles.hpp"

using namespace bsz;

namespace {

PhasePolynomial random_poly(std::mt19937_64& rng, int k) {
  std::vector<Fraction> c;
  for (int j = 0; j < k; ++j) c.emplace_back(U192(rng(), rng(), rng()));
  return PhasePolynomial(c);
}

std::complex<double> brute_exp_sum(const std::vector<double>& a, const PhasePolynomial& p, std::uint64_t first,
                                   std::uint64_t last) {
  std::complex<long double> s = 0;
  for (std::uint64_t n = first; n <= last; ++n) {
    const auto z = kernels::unit_root(eval_phase(p, n).top64());
    s += std::complex<long double>(z.real(), z.imag()) * static_cast<long double>(a.empty() ? 1.0 : a[n - 1]);
  }
  return {static_cast<double>(s.real()), static_cast<double>(s.imag())};
}

}  // namespace

TEST_CASE("eval_phase small cases") {
  const auto half = PhasePolynomial::parse("1/2");
  CHECK(eval_phase(half, 3) == Fraction::parse("0.5"));
  const auto third_sq = PhasePolynomial::parse("0,1/3");
  CHECK(eval_phase(third_sq, 3).distance_to_integer() <= 9 * std::ldexp(1.0, -192));
  const auto zero = PhasePolynomial::parse("0,0");
  CHECK(eval_phase(zero, 12345).is_zero());
  CHECK_THROWS_AS(PhasePolynomial(std::vector<Fraction>{}), DomainError);
  CHECK(PhasePolynomial::monomial(Fraction::parse("0.25"), 3).degree() == 3);
  CHECK(PhasePolynomial::monomial(Fraction::parse("0.25"), 3).coeff(1).is_zero());
}

TEST_CASE("difference-table scan reproduces direct evaluation exactly") {
  std::mt19937_64 rng(21);
  for (int k = 1; k <= 5; ++k) {
    for (int trial = 0; trial < 4; ++trial) {
      const auto p = random_poly(rng, k);
      const std::uint64_t start = 1 + rng() % 999000;
      PhaseScanner scan(p, start);
      for (int i = 0; i < 1000; ++i) {
        REQUIRE(scan.current() == eval_phase(p, scan.position()));
        scan.advance();
      }
      PhaseScanner fill(p, start);
      std::vector<std::uint64_t> tops(777);
      fill.fill_top64(tops);
      for (std::size_t i = 0; i < tops.size(); ++i) CHECK(tops[i] == eval_phase(p, start + i).top64());
      CHECK(fill.position() == start + tops.size());
    }
  }
}

TEST_CASE("fixed-point phases agree with the 256-bit oracle") {
  const std::vector<std::string> names = {"sqrt2", "golden", "sqrt3", "0.7071067811865475244008443621", "sqrt5"};
  std::mt19937_64 rng(4);
  for (int k = 1; k <= 5; ++k) {
    std::string csv;
    std::vector<oracle::Float256> alphas;
    for (int j = 0; j < k; ++j) {
      csv += (j ? "," : "") + names[static_cast<std::size_t>(j)];
      alphas.push_back(oracle::parse_value(names[static_cast<std::size_t>(j)]));
    }
    const auto p = PhasePolynomial::parse(csv);
    for (int i = 0; i < 300; ++i) {
      const std::uint64_t n = i < 3 ? 1000000 - static_cast<std::uint64_t>(i) : 1 + rng() % 1000000;
      const double ref = static_cast<double>(oracle::phase_256(alphas, n));
      CHECK(oracle::circular_distance(eval_phase(p, n).to_double(), ref) < 1e-12);
    }
  }
}

TEST_CASE("exp_sum small cases and symmetries") {
  const RealSequence one(std::vector<double>(5000, 1.0));
  CHECK(std::abs(exp_sum(one, PhasePolynomial::parse("0.5"), 4)) == 0.0);
  CHECK(weyl_sum(PhasePolynomial::parse("0,0"), 77) == std::complex<double>(77, 0));
  CHECK(std::abs(weyl_sum(PhasePolynomial::parse("0,1/4"), 4) - std::complex<double>(2, 2)) < 1e-15);

  std::mt19937_64 rng(8);
  std::vector<double> w(5000);
  std::uniform_real_distribution<double> u(-2, 2);
  for (double& v : w) v = u(rng);
  const RealSequence a(w);
  for (int k = 1; k <= 4; ++k) {
    const auto p = random_poly(rng, k);
    const auto s = exp_sum(a, p, 5000);
    CHECK(std::abs(exp_sum(a, p.negated(), 5000) - std::conj(s)) < 1e-12);
    CHECK(std::abs(s - brute_exp_sum(w, p, 1, 5000)) < 1e-10);
    for (std::uint64_t m : {1u, 17u, 2048u, 4999u}) {
      CHECK(std::abs(exp_sum(a, p, m) + exp_sum_range(&a, p, m + 1, 5000) - s) < 1e-9);
    }
    const std::vector<std::uint64_t> xs = {1, 10, 2047, 2048, 2049, 4096, 5000};
    const auto pre = exp_sum_prefixes(&a, p, xs);
    for (std::size_t i = 0; i < xs.size(); ++i) CHECK(std::abs(pre[i] - exp_sum(a, p, xs[i])) < 1e-10);
  }
  CHECK_THROWS_AS(exp_sum(a, PhasePolynomial::parse("0.3"), 5001), DomainError);
}

TEST_CASE("linear exp_sum matches the geometric closed form") {
  const RealSequence one(std::vector<double>(1 << 20, 1.0));
  for (const char* alpha : {"sqrt2", "golden", "0.001", "0.3333", "1/7", "0.49999"}) {
    const auto p = PhasePolynomial::parse(alpha);
    const auto ratio = oracle::parse_value(alpha);
    for (std::uint64_t x : {10u, 1000u, 65536u, 65537u, 1000003u}) {
      const auto ref = oracle::geometric_sum(ratio, x);
      const auto s = exp_sum(one, p, x);
      CHECK(std::abs(s - ref) <= 1e-8 * std::max(1.0, std::abs(ref)));
      CHECK(std::abs(exp_sum_range(nullptr, p, 1, x) - s) < 1e-9);
    }
  }
}

TEST_CASE("rational quadratic Weyl sums match the periodic oracle") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 40; ++trial) {
    const std::int64_t q = 2 + static_cast<std::int64_t>(rng() % 500);
    const std::int64_t b1 = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(q));
    const std::int64_t b2 = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(q));
    const std::uint64_t y = 1 + rng() % 300000;
    const auto u = PhasePolynomial::parse(std::to_string(b1) + "/" + std::to_string(q) + "," + std::to_string(b2) +
                                          "/" + std::to_string(q));
    const auto ref = oracle::gauss_periodic_sum(b1, b2, q, y);
    CHECK(std::abs(weyl_sum(u, y) - ref) <= 1e-8 * std::max(1.0, std::abs(ref)));
  }
}

TEST_CASE("correlation sums") {
  const auto base = PhasePolynomial::parse("sqrt2,sqrt3");
  const CorrelationSpec spec(7, 11, base);
  CHECK(spec.c(1) == -4);
  CHECK(spec.c(2) == 49 - 121);
  std::complex<long double> ref = 0;
  for (std::uint64_t m = 1; m <= 3000; ++m) {
    const Fraction d = eval_phase(base, 7 * m) - eval_phase(base, 11 * m);
    const auto z = kernels::unit_root(d.top64());
    ref += std::complex<long double>(z.real(), z.imag());
  }
  CHECK(std::abs(correlation_sum(spec, 3000) - std::complex<double>(static_cast<double>(ref.real()),
                                                                     static_cast<double>(ref.imag()))) < 1e-9);
  CHECK_THROWS_AS(CorrelationSpec(7, 9, base), DomainError);
  CHECK_THROWS_AS(CorrelationSpec(7, 7, base), DomainError);
  const CorrelationSpec constant(5, 7, PhasePolynomial::parse("0"));
  CHECK(correlation_sum(constant, 100) == std::complex<double>(100, 0));
}

TEST_CASE("range checks") {
  auto p = PhasePolynomial::parse("0.1,0.1,0.1,0.1,0.1");
  CHECK_NOTHROW(p.check_range(1000000));
  auto big = PhasePolynomial::monomial(Fraction::parse("0.1"), 5);
  CHECK_THROWS_AS(big.check_range(std::uint64_t{1} << 40), OverflowError);
}
