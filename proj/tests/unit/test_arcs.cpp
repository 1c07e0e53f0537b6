#include <doctest.h>

#include <cmath>
#include <random>

#include "bsz/arcs.hpp"
#include "bsz/coefficients.hpp"
#include "bsz/errors.hpp"
#include "oracles.hpp"

using namespace bsz;

namespace {

// |A/2^192 - a/q| <= 1/(qQ) in exact integers: |A q - a 2^192| Q <= 2^192, measured mod 1.
bool dirichlet_holds(const Fraction& alpha, const RationalApprox& r, const BigInt& Q) {
  const BigInt one = BigInt(1) << 192;
  BigInt diff = alpha.raw().to_big() * r.q - (r.a % r.q) * one;
  diff %= one * r.q;
  if (diff < 0) diff += one * r.q;
  const BigInt dist = std::min<BigInt>(diff, one * r.q - diff);
  return r.q >= 1 && r.q <= Q && dist * Q <= one;
}

}  // namespace

TEST_CASE("best_approx examples") {
  const auto third = best_approx(Fraction::parse("1/3"), 10);
  CHECK(third.a == 1);
  CHECK(third.q == 3);
  CHECK(third.err == 0.0);
  const auto r = best_approx(Fraction::parse("sqrt2"), 10);
  CHECK(r.a == 2);
  CHECK(r.q == 5);
  CHECK(r.err == doctest::Approx(0.0142135623730950).epsilon(1e-12));
  CHECK(r.err <= 1.0 / 50);
  const auto zero = best_approx(Fraction(), 100);
  CHECK(zero.a == 1);
  CHECK(zero.q == 1);
  CHECK(zero.err == 0.0);
  CHECK_THROWS_AS(best_approx(Fraction::parse("0.2"), 1), DomainError);
}

TEST_CASE("best_approx is the first admissible convergent") {
  std::mt19937_64 rng(99);
  for (int i = 0; i < 2000; ++i) {
    const Fraction alpha(U192(rng(), rng(), rng()));
    const BigInt Q = 2 + BigInt(rng() % 1000000000ull);
    const RationalApprox r = best_approx(alpha, Q);
    REQUIRE(dirichlet_holds(alpha, r, Q));
    const BigInt one = BigInt(1) << 192;
    for (const auto& [p, q] : oracle::convergents(alpha.raw().to_big(), one)) {
      const RationalApprox c{p, q, 0.0};
      if (q <= Q && dirichlet_holds(alpha, c, Q)) {
        CHECK(q == r.q);
        if (p % q != 0) CHECK(p == r.a);
        break;
      }
    }
  }
}

TEST_CASE("classification examples and monotonicity") {
  ArcSchedule s = ArcSchedule::power_default(3);
  s.minor = {0.1, 0.1, 0.1};
  const auto halves = classify(PhasePolynomial::parse("1/2,1/2,1/2"), s, 1000000);
  CHECK(halves.major());
  CHECK(halves.d == 0);
  for (const auto& c : halves.coeffs) CHECK(c.approx.q == 2);

  const auto golden = PhasePolynomial::parse("1/2,1/2,golden");
  s.minor = {0.1, 0.1, 0.01};
  const auto g = classify(golden, s, 1000000);
  CHECK(g.d == 3);
  CHECK_FALSE(g.coeffs[2].major);

  std::mt19937_64 rng(2);
  for (int i = 0; i < 50; ++i) {
    std::vector<Fraction> c;
    for (int j = 0; j < 3; ++j) {
      const std::uint64_t q = 1 + rng() % 200;
      c.push_back(Fraction::from_rational(BigInt(rng() % q), BigInt(q)) +
                  Fraction::from_rational(1, BigInt(1) << (20 + rng() % 40)));
    }
    const PhasePolynomial p(c);
    ArcSchedule lo = ArcSchedule::power_default(3), hi = lo;
    for (auto& v : hi.minor) v *= 8;
    const auto a = classify(p, lo, 1ull << 40);
    const auto b = classify(p, hi, 1ull << 40);
    CHECK(b.d <= a.d);
    for (int j = 0; j < 3; ++j) {
      if (a.coeffs[j].major) CHECK(b.coeffs[j].major);
    }
  }
  ArcSchedule bad = ArcSchedule::power_default(2);
  bad.minor[0] = 0.0;
  CHECK_THROWS_AS(classify(PhasePolynomial::parse("0.1,0.2"), bad, 1000), DomainError);
}

TEST_CASE("schedule exponents") {
  ArcSchedule s;
  s.kind = ScheduleKind::power;
  s.major = {0.1, 0.2, 0.05};
  s.minor = {0.01, 0.02, 0.04};
  const auto e = schedule_exponents(s);
  CHECK(e.gamma1 == doctest::Approx(0.5 + 0.2 + 0.5 * 0.07));
  CHECK(e.gamma2 == doctest::Approx(0.5 + 0.2 + 0.06));
  CHECK(std::isnan(e.gamma1p_minus_delta1));
  ArcSchedule x = ArcSchedule::exponential_default(2);
  const auto f = schedule_exponents(x);
  CHECK(std::isnan(f.gamma1));
  CHECK(f.gamma1p_minus_delta1 < 0);
}

TEST_CASE("polynomial split") {
  const auto p = PhasePolynomial::parse("1/4,1/6");
  const auto cls = classify(p, ArcSchedule::power_default(2), 1000000);
  const auto split = split_polynomial(p, cls);
  CHECK(split.rational.q == 12);
  for (const auto& c : split.remainder.coeffs()) CHECK(c.is_zero());
  for (double v : split.remainder_coeffs) CHECK(v == 0.0);
  const auto golden = PhasePolynomial::parse("1/3,golden");
  const auto gs = split_polynomial(golden, classify(golden, ArcSchedule::power_default(2), 1000000));
  const auto back = gs.rational.to_phase();
  for (int j = 1; j <= 2; ++j) CHECK(back.coeff(j) + gs.remainder.coeff(j) == golden.coeff(j));
}

TEST_CASE("progression sums") {
  const RealSequence one(std::vector<double>(10000, 1.0));
  CHECK(progression_sum(one, 10, 3, 1) == 4.0);
  const RealSequence lambda = lambda_table(10000);
  for (std::uint64_t q : {1u, 2u, 7u, 30u, 97u}) {
    const auto all = progression_sums(lambda, 10000, q);
    ExactSum total, direct;
    for (std::uint64_t b = 1; b <= q; ++b) {
      total.add(progression_sum_exact(lambda, 10000, q, b));
      CHECK(all[b - 1] == doctest::Approx(progression_sum(lambda, 10000, q, b)).epsilon(1e-12));
    }
    for (std::size_t n = 1; n <= 10000; ++n) direct.add(lambda.at(n));
    CHECK(total == direct);
  }
  CHECK_THROWS_AS(progression_sum(one, 10, 3, 4), DomainError);
  CHECK(progression_report(lambda, 10000, 10).ratio > 0);
}

TEST_CASE("major identity and character expansion") {
  const RealSequence one(std::vector<double>(1000, 1.0));
  RationalPolynomial trivial{{BigInt(5)}, BigInt(1)};
  const auto r1 = major_identity_check(one, 1000, trivial);
  CHECK(r1.passed.value());
  RationalPolynomial half{{BigInt(1)}, BigInt(2)};
  const auto r2 = major_identity_check(one, 4, half);
  CHECK(r2.lhs < 1e-12);
  const RealSequence lambda = lambda_table(1000);
  RationalPolynomial rbar{{BigInt(0), BigInt(1)}, BigInt(2)};
  const auto c1 = character_expansion_check(one, 20, Fraction::parse("sqrt2"), rbar);
  CHECK(c1.passed.value());
  RationalPolynomial unit{{BigInt(0)}, BigInt(1)};
  CHECK(character_expansion_check(lambda, 1000, Fraction::parse("0.3"), unit).lhs < 1e-10);
  RationalPolynomial r12{{BigInt(0), BigInt(5), BigInt(7)}, BigInt(12)};
  CHECK(character_expansion_check(lambda, 1000, Fraction::parse("sqrt3"), r12).passed.value());
  RationalPolynomial linear{{BigInt(1)}, BigInt(3)};
  CHECK_THROWS_AS(character_expansion_check(lambda, 100, Fraction(), linear), DomainError);
}
