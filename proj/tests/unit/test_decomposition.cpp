#include <doctest.h>

#include <cmath>
#include <set>

#include "bsz/coefficients.hpp"
#include "bsz/decomposition.hpp"
#include "bsz/errors.hpp"
#include "bsz/phase.hpp"
#include "oracles.hpp"

using namespace bsz;

TEST_CASE("small decomposition matches the worked example") {
  const Decomposition dec = build_decomposition({100, 2, 3});
  const Block& b3 = dec.block(3);
  CHECK(b3.primes == std::vector<std::uint64_t>{5, 7});
  CHECK(dec.block_modulus(3) == 210);
  CHECK(dec.multipliers(3) == std::vector<std::uint64_t>{1, 11});
  std::set<std::uint64_t> i3;
  for (auto p : b3.primes)
    for (auto m : dec.multipliers(3)) i3.insert(p * m);
  CHECK(i3 == std::set<std::uint64_t>{5, 7, 55, 77});
  std::set<std::uint64_t> i2;
  for (auto p : dec.block(2).primes)
    for (auto m : dec.multipliers(2)) i2.insert(p * m);
  for (auto n : i3) CHECK(i2.count(n) == 0);
  CHECK(dec.count(NumberClass::I) == i2.size() + i3.size());
  for (auto n : i3) {
    CHECK(dec.class_of(n) == NumberClass::I);
    const auto w = dec.witness(n);
    REQUIRE(w.has_value());
    CHECK(w->nu == 3);
    CHECK(w->p * w->m == n);
  }
}

TEST_CASE("classification matches the definition oracle") {
  for (auto [x, H, K] : {std::tuple<std::uint64_t, std::uint64_t, std::uint64_t>{100, 2, 3},
                         {1000, 2, 5},
                         {10000, 3, 9},
                         {30000, 4, 17},
                         {20000, 10, 14}}) {
    const Decomposition dec = build_decomposition({x, H, K});
    std::array<std::uint64_t, 4> counts{};
    for (std::uint64_t n = 1; n <= x; ++n) {
      const int ref = oracle::decomposition_class(n, x, H, K);
      const int got = static_cast<int>(dec.class_of(n));
      if (ref != got) FAIL("x=" << x << " n=" << n << " oracle " << ref << " got " << got);
      ++counts[static_cast<std::size_t>(ref)];
    }
    CHECK(dec.class_counts() == counts);
    std::uint64_t total = 0;
    for (auto c : counts) total += c;
    CHECK(total == x);
    for (const Block& b : dec.blocks()) {
      CHECK(b.product_count == b.primes.size() * b.m_count);
      for (auto p : b.primes) {
        CHECK(b.lo < p);
        CHECK(p <= b.hi);
      }
      const BigInt mod = dec.block_modulus(b.nu);
      for (auto m : dec.multipliers(b.nu)) {
        CHECK(m <= x / (b.nu * b.nu));
        CHECK(gcd(mod, BigInt(m)) == 1);
      }
    }
  }
}

TEST_CASE("I members have a unique factorization across blocks") {
  const Decomposition dec = build_decomposition({20000, 3, 11});
  std::vector<int> hits(20001, 0);
  for (const Block& b : dec.blocks()) {
    for (auto p : b.primes)
      for (auto m : dec.multipliers(b.nu)) ++hits[p * m];
  }
  for (std::uint64_t n = 1; n <= 20000; ++n) {
    CHECK(hits[n] <= 1);
    CHECK((hits[n] == 1) == (dec.class_of(n) == NumberClass::I));
  }
}

TEST_CASE("classify_range agrees with materialized tags") {
  const Decomposition dec = build_decomposition({50000, 4, 15});
  std::vector<NumberClass> out(5000);
  std::vector<std::uint64_t> first(5000);
  dec.classify_range(40001, 45001, out, &first);
  for (std::uint64_t i = 0; i < 5000; ++i) {
    CHECK(out[i] == dec.class_of(40001 + i));
    const auto w = dec.witness(40001 + i);
    CHECK(first[i] == (w ? w->p : 0));
  }
}

TEST_CASE("split sums") {
  const Decomposition dec = build_decomposition({100, 2, 3});
  const RealSequence one(std::vector<double>(100, 1.0));
  const SplitSum s = split_sum(one, nullptr, dec);
  CHECK(s.s == std::complex<double>(100, 0));
  CHECK(s.s_i == std::complex<double>(static_cast<double>(dec.count(NumberClass::I)), 0));
  CHECK(s.s_j == std::complex<double>(100.0 - static_cast<double>(dec.count(NumberClass::I)), 0));

  const std::uint64_t x = 100000;
  const RealSequence lambda = lambda_table(x);
  const Decomposition big = build_decomposition({x, 4, 17});
  const auto p = PhasePolynomial::parse("sqrt2");
  const SplitSum t = split_sum(lambda, &p, big);
  const auto direct = direct_sum(lambda, &p, x);
  CHECK(t.s == direct);
  CHECK(t.s_i + t.s_j == direct);
  CHECK(std::abs(direct - exp_sum(lambda, p, x)) < 1e-9 * static_cast<double>(x));
}

TEST_CASE("parameter validation and envelopes") {
  CHECK_THROWS_AS(build_decomposition({100, 1, 3}), DomainError);
  CHECK_THROWS_AS(build_decomposition({100, 3, 3}), DomainError);
  CHECK_THROWS_AS(build_decomposition({100, 2, 11}), DomainError);
  CHECK_THROWS_AS(build_decomposition({100, 2, 3, 0.2}), DomainError);
  CHECK(build_decomposition({1000000, 10, 31}).regime_warning());

  const double x = 1e6;
  const double env = theorem1_envelope(1000000, 30, 31, 1.0);
  CHECK(env / x == doctest::Approx(1.0 / std::sqrt(30 * std::log(30.0)) + 1.0 + std::log(30.0) / std::log(31.0)));
  CHECK(env / x > 2.0);
  CHECK(env / x < 2.2);
  const double e = std::exp(1.0);
  CHECK(theorem1_envelope(1000000, e, std::exp(10.0), 0.0) / x == doctest::Approx(1.0 / std::sqrt(e) + 0.1));
}

TEST_CASE("class count and Brun-Titchmarsh reports") {
  const Decomposition dec = build_decomposition({100000, 4, 17});
  const auto reps = class_count_reports(dec);
  REQUIRE(reps.size() == 3);
  CHECK(reps[0].name == "J1minusI");
  CHECK(reps[0].lhs == static_cast<double>(dec.count(NumberClass::J1minusI)));
  CHECK(reps[2].lhs == static_cast<double>(dec.count(NumberClass::J3)));
  const auto bt = brun_titchmarsh_report(dec);
  double worst = 0;
  for (const Block& b : dec.blocks()) {
    const double nu = static_cast<double>(b.nu);
    worst = std::max(worst, static_cast<double>(b.primes.size()) / (nu / std::log(nu)));
  }
  CHECK(bt.lhs == doctest::Approx(worst));
  CHECK(bt.ratio < 3.0);
}
