#include "bsz/weyl.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bsz/coefficients.hpp"
#include "bsz/errors.hpp"
#include "bsz/exact_sum.hpp"

namespace bsz {

namespace {

u128 leading128(const Fraction& f) {
  return (static_cast<u128>(f.raw().limb(2)) << 64) | f.raw().limb(1);
}

double reciprocal_term(u128 u, double m) {
  const u128 dist = std::min(u, static_cast<u128>(0) - u);
  if (dist == 0) return m;
  const double inv = 1.0 / std::ldexp(static_cast<double>(dist), -128);
  return inv < m ? inv : m;
}

// count * m without rounding.
void add_multiple(ExactSum& s, std::uint64_t count, double m) {
  const auto c = static_cast<double>(count);
  if (static_cast<std::uint64_t>(c) != count) {
    for (std::uint64_t i = 0; i < count; ++i) s.add(m);
    return;
  }
  const double p = c * m;
  s.add(p);
  s.add(std::fma(c, m, -p));
}

std::uint64_t factorial(int d) {
  std::uint64_t f = 1;
  for (int i = 2; i <= d; ++i) f *= static_cast<std::uint64_t>(i);
  return f;
}

double ipow(double b, int e) {
  double r = 1.0;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

std::uint64_t moment_range(int d, std::uint64_t y) {
  const double h = static_cast<double>(factorial(d)) * ipow(static_cast<double>(y), d - 1);
  if (h > 1e8) throw CapacityError("divisor range d! y^(d-1) above 1e8");
  return static_cast<std::uint64_t>(h);
}

}  // namespace

double min_reciprocal_sum(const Fraction& alpha, std::uint64_t n, double m) {
  if (n < 1 || !(m >= 1.0)) throw DomainError("need N >= 1 and M >= 1");
  const u128 a = leading128(alpha);
  ExactSum s;
  for (std::uint64_t k = 1; k <= n; ++k) s.add(reciprocal_term(a * k, m));
  return s.value();
}

double min_reciprocal_sum_bucketed(const Fraction& alpha, std::uint64_t n, double m) {
  if (n < 1 || !(m >= 1.0)) throw DomainError("need N >= 1 and M >= 1");
  const u128 a = leading128(alpha);
  ExactSum s;
  std::uint64_t saturated = 0;
  u128 u = 0;
  for (std::uint64_t k = 1; k <= n; ++k) {
    u += a;
    const double t = reciprocal_term(u, m);
    if (t == m) {
      ++saturated;
    } else {
      s.add(t);
    }
  }
  add_multiple(s, saturated, m);
  return s.value();
}

void check_rational_hypothesis(const Fraction& alpha, const BigInt& a, const BigInt& q, double c) {
  if (!(c >= 1.0)) throw DomainError("need C >= 1");
  if (a < 1 || a >= q) throw DomainError("need 1 <= a < q");
  if (boost::multiprecision::gcd(a, q) != 1) throw DomainError("need gcd(a, q) = 1");
  const BigInt num = boost::multiprecision::abs(alpha.raw().to_big() * q - (a << Fraction::kBits));
  const long double lhs = (num * q).convert_to<long double>();
  if (lhs > static_cast<long double>(c) * std::ldexp(1.0L, Fraction::kBits))
    throw DomainError("need |alpha - a/q| <= C/q^2");
}

BoundReport lemma34_report(const Fraction& alpha, const BigInt& a, const BigInt& q, double c, std::uint64_t n,
                           double m) {
  check_rational_hypothesis(alpha, a, q, c);
  const double lhs = min_reciprocal_sum(alpha, n, m);
  const double qd = q.convert_to<double>();
  const double nd = static_cast<double>(n);
  const double env = c * (m * nd / qd + nd * std::log(qd) + m + qd * std::log(qd));
  return make_report("lemma34", lhs, env, {{"q", qd}, {"C", c}, {"N", nd}, {"M", m}});
}

double differencing_tuple_count(int d, std::uint64_t y) {
  if (d < 2) throw DomainError("differencing needs d >= 2");
  if (y < 2) return 0.0;
  // ways[prev] = number of completions of the remaining levels after h = prev
  std::vector<double> ways(y, 1.0);
  for (int level = 0; level < d - 1; ++level) {
    std::vector<double> prefix(y + 1, 0.0);
    for (std::uint64_t h = 1; h < y; ++h) prefix[h] = prefix[h - 1] + ways[h];
    std::vector<double> next(y, 0.0);
    for (std::uint64_t prev = 0; prev < y; ++prev) {
      const std::uint64_t top = (prev + 1 < y) ? y - 1 - prev : 0;
      next[prev] = prefix[top];
    }
    ways = std::move(next);
  }
  return ways[0];
}

double weyl_differenced_sum(const PhasePolynomial& u, std::uint64_t y) {
  const int d = u.degree();
  if (d < 2) throw DomainError("differencing needs degree d >= 2");
  if (y < 1) throw DomainError("need y >= 1");
  const double tuples = differencing_tuple_count(d, y);
  if (tuples > kDifferencingBudget)
    throw FeasibilityError("differencing loop needs " + std::to_string(tuples) + " > 1e9 iterations");
  const u128 a = leading128(u.coeff(d));
  const std::uint64_t fact = factorial(d);
  const double bound = static_cast<double>(fact) * ipow(static_cast<double>(y), d - 1);
  const double m = static_cast<double>(y);
  ExactSum s;
  std::vector<std::uint64_t> h(static_cast<std::size_t>(d), 0);  // h[0] = h_0 = 0
  // Depth-first over h_1..h_{d-1}.
  auto rec = [&](auto&& self, int level, std::uint64_t prod) -> void {
    const std::uint64_t prev = h[static_cast<std::size_t>(level - 1)];
    if (prev + 1 >= y) return;
    const std::uint64_t top = y - 1 - prev;
    for (std::uint64_t v = 1; v <= top; ++v) {
      h[static_cast<std::size_t>(level)] = v;
      const std::uint64_t p = prod * v;
      if (level == d - 1) {
        if (static_cast<double>(p) > bound) throw std::logic_error("differencing tuple exceeds d! y^(d-1)");
        s.add(reciprocal_term(a * p, m));
      } else {
        self(self, level + 1, p);
      }
    }
  };
  rec(rec, 1, fact);
  return s.value();
}

BoundReport weyl_differencing_report(const PhasePolynomial& u, std::uint64_t y) {
  const int d = u.degree();
  const double inner = weyl_differenced_sum(u, y);
  const double yd = static_cast<double>(y);
  const int e = 1 << (d - 1);
  const double lhs = std::pow(std::abs(weyl_sum(u, y)), e);
  const double env = ipow(yd, e - 1) + ipow(yd, e - d) * inner;
  return make_report("weyl_differencing", lhs, env, {{"d", d}, {"y", yd}, {"inner", inner}});
}

std::vector<std::uint64_t> divisor_counts(int ell, std::uint64_t limit) {
  if (ell < 1) throw DomainError("need ell >= 1");
  if (limit > 100'000'000) throw CapacityError("divisor table above 1e8 entries");
  if (ell == 1) return std::vector<std::uint64_t>(limit, 1);
  const auto t = divisor_table(ell, limit);
  return {t.values().begin(), t.values().end()};
}

BoundReport divisor_moment_report(int d, std::uint64_t y, double c) {
  if (d < 2) throw DomainError("need d >= 2");
  if (y < 2) throw DomainError("need y >= 2");
  if (c < 0.0) c = static_cast<double>((d - 1) * (d - 1) - 1);
  const std::uint64_t hmax = moment_range(d, y);
  const auto tau = divisor_counts(d - 1, hmax);
  ExactSum s;
  for (std::uint64_t t : tau) s.add(static_cast<double>(t) * static_cast<double>(t));
  const double yd = static_cast<double>(y);
  const double env = ipow(yd, d - 1) * std::pow(std::log(yd), c);
  return make_report("divisor_moment", s.value(), env, {{"d", d}, {"y", yd}, {"c", c}, {"h_max", static_cast<double>(hmax)}});
}

DivisorSplit divisor_split(int d, std::uint64_t y, double z, const Fraction& alpha) {
  if (d < 2) throw DomainError("need d >= 2");
  if (!(z > 1.0)) throw DomainError("need Z > 1");
  const std::uint64_t hmax = moment_range(d, y);
  const auto tau = divisor_counts(d - 1, hmax);
  const u128 a = leading128(alpha);
  const double m = static_cast<double>(y);
  DivisorSplit out;
  ExactSum minus, plus;
  for (std::uint64_t h = 1; h <= hmax; ++h) {
    const double t = static_cast<double>(tau[h - 1]);
    const double w = t * reciprocal_term(a * h, m);
    if (t <= z) {
      ++out.minus_count;
      minus.add(w);
    } else {
      ++out.plus_count;
      plus.add(w);
    }
    ++out.total;
  }
  out.minus_sum = minus.value();
  out.plus_sum = plus.value();
  return out;
}

std::vector<BoundReport> lemma35_report(const PhasePolynomial& u, std::uint64_t y, double z,
                                        const RationalApprox& approx, double c, double a_exp, double eps) {
  const int d = u.degree();
  if (d < 2) throw DomainError("need degree d >= 2");
  if (!(z > 1.0)) throw DomainError("need Z > 1");
  if (y < 2) throw DomainError("need y >= 2");
  check_rational_hypothesis(u.coeff(d), approx.a, approx.q, c);
  if (a_exp < 0.0) a_exp = static_cast<double>((d - 1) * (d - 1));
  const double kappa = std::ldexp(1.0, 1 - d);
  const double yd = static_cast<double>(y);
  const double q = approx.q.convert_to<double>();
  const double lq = std::log(q);
  const double lhs = std::abs(weyl_sum(u, y));
  const double inner = c * z / q + (c * z / yd) * lq + c * z * q * lq / ipow(yd, d) + std::pow(std::log(yd), a_exp) / z;
  const double classical = std::pow(yd, 1.0 + eps) * std::pow(c, kappa) * std::pow(1.0 / q + 1.0 / yd + q / ipow(yd, d), kappa);
  std::vector<std::pair<std::string, double>> params = {{"d", d}, {"y", yd}, {"Z", z}, {"q", q}, {"C", c}, {"A", a_exp}};
  return {make_report("lemma35", lhs, yd * std::pow(inner, kappa), params),
          make_report("weyl_classical", lhs, classical, {{"d", d}, {"y", yd}, {"q", q}, {"C", c}, {"eps", eps}})};
}

}  // namespace bsz
