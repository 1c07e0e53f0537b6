#include "bsz/arcs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "bsz/errors.hpp"
#include "bsz/kernels.hpp"

namespace bsz {

namespace {

const BigInt& one_turn() {
  static const BigInt n = BigInt(1) << Fraction::kBits;
  return n;
}

// floor(2^e) for e >= 0.
BigInt floor_pow2(long double e) {
  if (e < 62) return BigInt(static_cast<std::uint64_t>(std::floor(std::exp2l(e))));
  const auto shift = static_cast<unsigned>(std::floor(e) - 62);
  const auto top = static_cast<std::uint64_t>(std::exp2l(e - static_cast<long double>(shift)));
  return BigInt(top) << shift;
}

BigInt floor_big(double v) {
  if (v < 1.0) return 0;
  if (v < 9.0e18) return BigInt(static_cast<std::uint64_t>(std::floor(v)));
  return floor_pow2(std::log2(static_cast<long double>(v)));
}

double signed_value(const Fraction& f) {
  return f.raw().negative() ? -(-f).to_double() : f.to_double();
}

std::vector<std::uint64_t> checkpoints(std::uint64_t t) {
  std::vector<std::uint64_t> ts;
  for (std::uint64_t i = 1; i <= 8; ++i) {
    const std::uint64_t v = std::max<std::uint64_t>(1, (t * i + 7) / 8);
    if (ts.empty() || v > ts.back()) ts.push_back(v);
  }
  return ts;
}

std::uint64_t residue_phase(const BigInt& r, const BigInt& q) {
  // round(r * 2^64 / q) mod 2^64
  const BigInt v = ((r << 64) + q / 2) / q;
  return static_cast<std::uint64_t>(v & std::numeric_limits<std::uint64_t>::max());
}

void check_modulus(const BigInt& q) {
  if (q < 1 || q > kMaxProgressionModulus)
    throw DomainError("progression modulus must satisfy 1 <= q <= " + std::to_string(kMaxProgressionModulus));
}

}  // namespace

RationalApprox best_approx(const Fraction& alpha, const BigInt& Q) {
  if (Q < 2) throw DomainError("best_approx needs Q >= 2");
  const BigInt& N = one_turn();
  const BigInt A = alpha.raw().to_big();
  if (A == 0) return {1, 1, 0.0};
  BigInt num = A, den = N;
  BigInt h1 = 1, h2 = 0, k1 = 0, k2 = 1;
  for (;;) {
    const BigInt a = num / den;
    const BigInt h = a * h1 + h2;
    const BigInt k = a * k1 + k2;
    if (k > Q) break;
    const BigInt diff = boost::multiprecision::abs(A * k - h * N);
    if (diff * Q <= N) {
      RationalApprox r;
      r.a = h;
      r.q = k;
      r.err = std::ldexp(diff.convert_to<double>() / k.convert_to<double>(), -Fraction::kBits);
      if (r.a == 0) {
        r.a = 1;
      } else if (Fraction::from_rational(h, k) == alpha) {
        r.err = 0.0;
      }
      return r;
    }
    const BigInt rem = num - a * den;
    if (rem == 0) break;
    num = den;
    den = rem;
    h2 = h1;
    h1 = h;
    k2 = k1;
    k1 = k;
  }
  throw std::logic_error("best_approx: no convergent met the Dirichlet bound");
}

ArcSchedule ArcSchedule::power_default(int k) {
  ArcSchedule s;
  s.kind = ScheduleKind::power;
  for (int j = 1; j <= k; ++j) {
    s.major.push_back(std::ldexp(1.0, -10 * j - 2));
    s.minor.push_back(std::ldexp(1.0, -10 * j - 3));
  }
  return s;
}

ArcSchedule ArcSchedule::exponential_default(int k) {
  ArcSchedule s;
  s.kind = ScheduleKind::exponential;
  for (int j = 1; j <= k; ++j) {
    const double beta = 0.01 * std::ldexp(1.0, -10 * (j - 1));
    s.major.push_back(beta);
    s.minor.push_back(beta / 2);
  }
  return s;
}

BigInt ArcSchedule::Q(int j, std::uint64_t x) const {
  const long double lx = std::log2(static_cast<long double>(x));
  const double m = major.at(static_cast<std::size_t>(j - 1));
  if (kind == ScheduleKind::power) return floor_pow2((j - m) * lx);
  const long double root = std::sqrt(std::log(static_cast<long double>(x)));
  return floor_pow2(j * lx - m * root / std::log(2.0L));
}

double ArcSchedule::R(int j, std::uint64_t x) const {
  const double m = minor.at(static_cast<std::size_t>(j - 1));
  if (kind == ScheduleKind::power) return std::pow(static_cast<double>(x), m);
  return std::exp(m * std::sqrt(std::log(static_cast<double>(x))));
}

ArcExponents schedule_exponents(const ArcSchedule& s) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  double max_all = 0.0, max_tail = 0.0, sum_all = 0.0, sum_tail = 0.0;
  for (int j = 1; j <= s.degree(); ++j) {
    const double m = s.major[static_cast<std::size_t>(j - 1)];
    const double r = s.minor[static_cast<std::size_t>(j - 1)];
    max_all = std::max(max_all, m);
    sum_all += r;
    if (j >= 2) {
      max_tail = std::max(max_tail, m);
      sum_tail += r;
    }
  }
  if (s.kind == ScheduleKind::power) return {0.5 + max_all + 0.5 * sum_all, 0.5 + max_tail + sum_tail, nan, nan};
  return {nan, nan, -max_all - 1.5 * sum_all, -max_tail - sum_tail};
}

ArcClassification classify(const PhasePolynomial& p, const ArcSchedule& schedule, std::uint64_t x) {
  if (schedule.degree() < p.degree() || schedule.minor.size() != schedule.major.size())
    throw DomainError("schedule needs one (major, minor) pair per coefficient");
  if (x < 2) throw DomainError("classification needs x >= 2");
  ArcClassification out;
  for (int j = 1; j <= p.degree(); ++j) {
    const double mj = schedule.major[static_cast<std::size_t>(j - 1)];
    const double rj = schedule.minor[static_cast<std::size_t>(j - 1)];
    if (!(mj > 0.0) || !(rj > 0.0) || (schedule.kind == ScheduleKind::power && !(mj < 1.0)))
      throw DomainError("invalid schedule constants at j=" + std::to_string(j));
    ArcCoefficient c;
    c.Q = schedule.Q(j, x);
    c.R = schedule.R(j, x);
    if (!(c.R > 1.0) || BigInt(floor_big(c.R)) >= c.Q)
      throw DomainError("invalid schedule at j=" + std::to_string(j) + ": need 1 < R_j < Q_j");
    c.approx = best_approx(p.coeff(j), c.Q);
    c.major = c.approx.q <= floor_big(c.R);
    if (!c.major) out.d = j;
    out.coeffs.push_back(std::move(c));
  }
  return out;
}

std::uint64_t RationalPolynomial::phase64(std::uint64_t n) const {
  BigInt r = 0, power = 1;
  const BigInt nn = BigInt(n) % q;
  for (const BigInt& bj : b) {
    power = power * nn % q;
    r = (r + bj % q * power) % q;
  }
  if (r < 0) r += q;
  return residue_phase(r, q);
}

PhasePolynomial RationalPolynomial::to_phase() const {
  std::vector<Fraction> c;
  for (const BigInt& bj : b) c.push_back(Fraction::from_rational(bj, q));
  return PhasePolynomial(std::move(c));
}

PolynomialSplit split_polynomial(const PhasePolynomial& p, const ArcClassification& cls) {
  if (cls.coeffs.size() != static_cast<std::size_t>(p.degree()))
    throw DomainError("classification does not match the polynomial degree");
  BigInt q = 1;
  for (const auto& c : cls.coeffs) q = boost::multiprecision::lcm(q, c.approx.q);
  if (boost::multiprecision::msb(q) >= static_cast<unsigned>(Fraction::kBits))
    throw OverflowError("lcm of denominators exceeds 192 bits");
  RationalPolynomial rat;
  rat.q = q;
  std::vector<Fraction> rem;
  std::vector<double> rem_d;
  for (int j = 1; j <= p.degree(); ++j) {
    const RationalApprox& ap = cls.coeffs[static_cast<std::size_t>(j - 1)].approx;
    rat.b.push_back(ap.a * (q / ap.q));
    const Fraction r = p.coeff(j) - Fraction::from_rational(ap.a, ap.q);
    rem.push_back(r);
    rem_d.push_back(signed_value(r));
  }
  return {std::move(rat), PhasePolynomial(std::move(rem)), std::move(rem_d)};
}

ExactSum progression_sum_exact(const RealSequence& a, std::uint64_t t, std::uint64_t q, std::uint64_t b) {
  check_modulus(q);
  if (b < 1 || b > q) throw DomainError("residue must satisfy 1 <= b <= q");
  if (t > a.size()) throw DomainError("t exceeds coefficient table length");
  ExactSum s;
  const auto av = a.values();
  for (std::uint64_t n = b; n <= t; n += q) s.add(av[n - 1]);
  return s;
}

double progression_sum(const RealSequence& a, std::uint64_t t, std::uint64_t q, std::uint64_t b) {
  return progression_sum_exact(a, t, q, b).value();
}

std::vector<double> progression_sums(const RealSequence& a, std::uint64_t t, std::uint64_t q) {
  check_modulus(q);
  if (t > a.size()) throw DomainError("t exceeds coefficient table length");
  std::vector<kernels::CompensatedComplex> acc(q);
  const auto av = a.values();
  for (std::uint64_t n = 1; n <= t; ++n) acc[(n - 1) % q].add(av[n - 1], 0.0);
  std::vector<double> out(q);
  for (std::uint64_t b = 0; b < q; ++b) out[b] = acc[b].value().real();
  return out;
}

BoundReport progression_report(const RealSequence& a, std::uint64_t t, std::uint64_t q) {
  const auto sums = progression_sums(a, t, q);
  double total = 0.0;
  for (double s : sums) total += std::abs(s);
  return make_report("progressions", total, std::sqrt(static_cast<double>(q) * static_cast<double>(t)),
                     {{"t", static_cast<double>(t)}, {"q", static_cast<double>(q)}});
}

BoundReport major_identity_check(const RealSequence& a, std::uint64_t t, const RationalPolynomial& pbar) {
  check_modulus(pbar.q);
  if (t == 0 || t > a.size()) throw DomainError("need 1 <= t <= N");
  const auto q = pbar.q.convert_to<std::uint64_t>();
  const auto ts = checkpoints(t);
  const auto lhs = exp_sum_prefixes(&a, pbar.to_phase(), ts);

  std::vector<std::complex<double>> twist(q);
  for (std::uint64_t b = 1; b <= q; ++b) twist[b - 1] = kernels::unit_root(pbar.phase64(b));
  std::vector<kernels::CompensatedComplex> bucket(q);
  const auto av = a.values();
  double dev = 0.0;
  std::uint64_t n = 1;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    for (; n <= ts[i]; ++n) bucket[(n - 1) % q].add(av[n - 1], 0.0);
    kernels::CompensatedComplex rhs;
    for (std::uint64_t b = 0; b < q; ++b) rhs.add(twist[b] * bucket[b].value().real());
    dev = std::max(dev, std::abs(lhs[i] - rhs.value()));
  }
  return make_identity_report("major_identity", dev, 1e-9 * static_cast<double>(t),
                              {{"t", static_cast<double>(t)}, {"q", static_cast<double>(q)}});
}

BoundReport character_expansion_check(const RealSequence& a, std::uint64_t t, const Fraction& alpha1,
                                      const RationalPolynomial& rbar) {
  check_modulus(rbar.q);
  if (t == 0 || t > a.size()) throw DomainError("need 1 <= t <= N");
  if (rbar.b.empty() || rbar.b[0] % rbar.q != 0) throw DomainError("rbar must have no linear term");
  const auto qb = rbar.q.convert_to<std::uint64_t>();
  if (static_cast<double>(qb) * static_cast<double>(t) > 1e10)
    throw FeasibilityError("character expansion needs q * t <= 1e10");
  const auto ts = checkpoints(t);

  std::vector<Fraction> coeffs;
  coeffs.push_back(alpha1);
  for (std::size_t j = 1; j < rbar.b.size(); ++j) coeffs.push_back(Fraction::from_rational(rbar.b[j], rbar.q));
  const auto lhs = exp_sum_prefixes(&a, PhasePolynomial(coeffs), ts);

  // inner[c-1][i] = sum_{n<=t_i} a(n) e((alpha_1 + c/qbar) n)
  std::vector<std::vector<std::complex<double>>> inner;
  for (std::uint64_t c = 1; c <= qb; ++c) {
    const PhasePolynomial lin({alpha1 + Fraction::from_rational(BigInt(c), rbar.q)});
    inner.push_back(exp_sum_prefixes(&a, lin, ts));
  }
  std::vector<std::complex<double>> twist(qb);
  for (std::uint64_t b = 1; b <= qb; ++b) twist[b - 1] = kernels::unit_root(rbar.phase64(b));
  const BigInt qbig(qb);
  double dev = 0.0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    kernels::CompensatedComplex rhs;
    for (std::uint64_t b = 1; b <= qb; ++b) {
      kernels::CompensatedComplex mix;
      for (std::uint64_t c = 1; c <= qb; ++c) {
        const std::uint64_t r = (qb - (b * c) % qb) % qb;
        mix.add(kernels::unit_root(residue_phase(BigInt(r), qbig)) * inner[c - 1][i]);
      }
      rhs.add(twist[b - 1] * mix.value() / static_cast<double>(qb));
    }
    dev = std::max(dev, std::abs(lhs[i] - rhs.value()));
  }
  return make_identity_report("character_expansion", dev, 1e-8 * static_cast<double>(t),
                              {{"t", static_cast<double>(t)}, {"q", static_cast<double>(qb)}});
}

}  // namespace bsz
