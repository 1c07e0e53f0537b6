#include "bsz/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <json.hpp>
#include <optional>
#include <ostream>
#include <random>

#include "bsz/arcs.hpp"
#include "bsz/coefficients.hpp"
#include "bsz/decomposition.hpp"
#include "bsz/errors.hpp"
#include "bsz/kernels.hpp"
#include "bsz/phase.hpp"
#include "bsz/primes.hpp"
#include "bsz/verifier.hpp"
#include "bsz/weyl.hpp"

namespace bsz::cli {

namespace {

using nlohmann::ordered_json;

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string big(const BigInt& v) { return v.str(); }

struct Options {
  std::string cache;
  std::string kernel;

  std::string kind = "tau";
  std::uint64_t n = 0;
  int ell = 2;

  std::string coeff = "lambda";
  std::string poly;
  std::uint64_t x = 0;
  std::vector<std::uint64_t> xs;

  std::uint64_t H = 0, K = 0;
  double delta = 0.1;
  std::uint64_t stride = 1;

  std::string schedule = "power";
  std::vector<double> c, cp, beta, betap;

  int d = 2;
  std::vector<std::uint64_t> ys;
  double Z = 2.0;
  std::string alpha = "sqrt2";
  std::string report = "lemma35";

  std::uint64_t z = 0, w = 0;
  std::vector<std::uint64_t> nus;

  std::string sweep_kind = "jutila";
  std::uint64_t grid = 1000;
  std::uint64_t configs = 100;
  std::uint64_t seed = 1;
};

std::optional<std::filesystem::path> cache_dir(const Options& o) {
  if (o.cache.empty()) return std::nullopt;
  return std::filesystem::path(o.cache);
}

RealSequence table(const Options& o, std::uint64_t n) {
  return coefficient_table(parse_coeff_kind(o.coeff), n, cache_dir(o));
}

std::vector<double> broadcast(const std::vector<double>& v, int k, const char* name) {
  if (v.size() == 1) return std::vector<double>(static_cast<std::size_t>(k), v[0]);
  if (v.size() != static_cast<std::size_t>(k))
    throw DomainError(std::string("--") + name + " needs 1 or k = " + std::to_string(k) + " values");
  return v;
}

ordered_json report_json(const BoundReport& r) {
  ordered_json j;
  j["name"] = r.name;
  j["lhs"] = r.lhs;
  j["envelope"] = r.envelope;
  j["ratio"] = r.ratio;
  ordered_json params = ordered_json::object();
  for (const auto& [k, v] : r.params) params[k] = v;
  j["params"] = params;
  if (r.passed) j["passed"] = *r.passed;
  return j;
}

void csv_report(std::ostream& out, std::uint64_t y, const BoundReport& r) {
  out << y << ',' << num(r.lhs) << ',' << num(r.envelope) << ',' << num(r.ratio) << '\n';
}

int cmd_coeffs(const Options& o, std::ostream& out) {
  if (o.n == 0) throw DomainError("--N must be >= 1");
  if (o.kind == "tau") {
    const auto t = tau_table_cached(o.n, cache_dir(o));
    out << "n,tau\n";
    for (std::size_t i = 1; i <= t.size(); ++i) out << i << ',' << to_string(t.at(i)) << '\n';
    return kExitOk;
  }
  if (o.kind == "divisor") {
    const auto t = divisor_table(o.ell, o.n);
    out << "n,divisor\n";
    for (std::size_t i = 1; i <= t.size(); ++i) out << i << ',' << t.at(i) << '\n';
    return kExitOk;
  }
  const CoeffKind kind = parse_coeff_kind(o.kind);
  const auto t = coefficient_table(kind, o.n, cache_dir(o));
  out << "n," << coeff_kind_name(kind) << '\n';
  for (std::size_t i = 1; i <= t.size(); ++i) out << i << ',' << num(t.at(i)) << '\n';
  return kExitOk;
}

int cmd_sums(const Options& o, std::ostream& out) {
  if (o.x == 0) throw DomainError("--x must be >= 1");
  const auto p = PhasePolynomial::parse(o.poly);
  const auto a = table(o, o.x);
  const auto s = exp_sum(a, p, o.x);
  out << "x,re,im,abs,normalized\n";
  out << o.x << ',' << num(s.real()) << ',' << num(s.imag()) << ',' << num(std::abs(s)) << ','
      << num(std::abs(s) / theorem2_envelope(parse_coeff_kind(o.coeff), o.x)) << '\n';
  return kExitOk;
}

int cmd_decompose(const Options& o, std::ostream& out) {
  const Decomposition dec = build_decomposition({o.x, o.H, o.K, o.delta});
  ordered_json j;
  j["x"] = o.x;
  j["H"] = o.H;
  j["K"] = o.K;
  j["delta"] = o.delta;
  j["regime_warning"] = dec.regime_warning();
  bool ok = true;
  ordered_json blocks = ordered_json::array();
  for (const Block& b : dec.blocks()) {
    blocks.push_back({{"nu", b.nu},
                      {"primes", b.primes.size()},
                      {"m_limit", b.m_limit},
                      {"m_count", b.m_count},
                      {"product_count", b.product_count}});
    ok = ok && b.product_count == b.primes.size() * b.m_count;
  }
  j["blocks"] = blocks;
  ordered_json classes;
  std::uint64_t total = 0;
  for (NumberClass c : {NumberClass::I, NumberClass::J1minusI, NumberClass::J2minusJ1, NumberClass::J3}) {
    classes[class_name(c)] = dec.count(c);
    total += dec.count(c);
  }
  ok = ok && total == o.x;
  j["classes"] = classes;
  ordered_json reports = ordered_json::array();
  for (const auto& r : class_count_reports(dec)) reports.push_back(report_json(r));
  reports.push_back(report_json(brun_titchmarsh_report(dec)));
  j["reports"] = reports;
  j["partition_ok"] = ok;
  out << j.dump(2) << '\n';
  return ok ? kExitOk : kExitInvariant;
}

int cmd_arcs(const Options& o, std::ostream& out) {
  const auto p = PhasePolynomial::parse(o.poly);
  const int k = p.degree();
  ArcSchedule s;
  if (o.schedule == "power") {
    s = ArcSchedule::power_default(k);
    if (!o.c.empty()) s.major = broadcast(o.c, k, "c");
    if (!o.cp.empty()) s.minor = broadcast(o.cp, k, "cp");
  } else if (o.schedule == "exp") {
    s = ArcSchedule::exponential_default(k);
    if (!o.beta.empty()) s.major = broadcast(o.beta, k, "beta");
    if (!o.betap.empty()) s.minor = broadcast(o.betap, k, "betap");
  } else {
    throw DomainError("--schedule must be power or exp");
  }
  const ArcClassification cls = classify(p, s, o.x);
  ordered_json j;
  j["x"] = o.x;
  j["schedule"] = o.schedule;
  bool ok = true;
  ordered_json coeffs = ordered_json::array();
  for (int i = 1; i <= k; ++i) {
    const ArcCoefficient& c = cls.coeffs[static_cast<std::size_t>(i - 1)];
    coeffs.push_back({{"j", i},
                      {"a", big(c.approx.a)},
                      {"q", big(c.approx.q)},
                      {"err", c.approx.err},
                      {"Q", big(c.Q)},
                      {"R", c.R},
                      {"verdict", c.major ? "major" : "minor"}});
    const double bound = 1.0 / (c.approx.q.convert_to<double>() * c.Q.convert_to<double>());
    ok = ok && c.approx.q <= c.Q && c.approx.err <= bound * (1 + 1e-12);
  }
  j["coefficients"] = coeffs;
  j["d"] = cls.d;
  j["overall"] = cls.major() ? "major" : "minor";
  const ArcExponents e = schedule_exponents(s);
  if (s.kind == ScheduleKind::power) {
    j["exponents"] = {{"gamma1", e.gamma1}, {"gamma2", e.gamma2}};
  } else {
    j["exponents"] = {{"gamma1p_minus_delta1", e.gamma1p_minus_delta1}, {"gamma2p_minus_delta2", e.gamma2p_minus_delta2}};
  }
  out << j.dump(2) << '\n';
  return ok ? kExitOk : kExitInvariant;
}

int cmd_verify_weyl(const Options& o, std::ostream& out) {
  if (o.ys.empty()) throw DomainError("--y needs at least one value");
  const Fraction alpha = Fraction::parse(o.alpha);
  const PhasePolynomial u = PhasePolynomial::monomial(alpha, o.d);
  out << "y,lhs,envelope,ratio\n";
  for (std::uint64_t y : o.ys) {
    if (o.report == "differencing") {
      csv_report(out, y, weyl_differencing_report(u, y));
      continue;
    }
    const RationalApprox ap = best_approx(alpha, BigInt(y));
    if (ap.q < 2) throw DomainError("alpha is within 1/y of an integer; no approximation with q >= 2");
    const auto reps = lemma35_report(u, y, o.Z, ap, 1.0);
    if (o.report == "lemma35") {
      csv_report(out, y, reps[0]);
    } else if (o.report == "classical") {
      csv_report(out, y, reps[1]);
    } else {
      throw DomainError("--report must be lemma35, classical or differencing");
    }
  }
  return kExitOk;
}

int cmd_verify_theorem1(const Options& o, std::ostream& out) {
  const auto p = PhasePolynomial::parse(o.poly);
  const auto a = table(o, o.x);
  const Theorem1Report r = theorem1_report(a, p, o.x, o.H, o.K, o.stride);
  ordered_json j = report_json(r.report);
  j["s_re"] = r.s.real();
  j["s_im"] = r.s.imag();
  ordered_json blocks = ordered_json::array();
  for (const auto& b : r.blocks) {
    blocks.push_back({{"nu", b.nu}, {"z", b.z}, {"w", b.w}, {"y", b.y}, {"primes", b.primes}, {"lhs", b.lhs},
                      {"tau_est", b.tau_est}});
  }
  j["blocks"] = blocks;
  out << j.dump(2) << '\n';
  return r.split_deviation <= 1e-9 * static_cast<double>(o.x) ? kExitOk : kExitInvariant;
}

int cmd_verify_theorem2(const Options& o, std::ostream& out) {
  if (o.xs.empty()) throw DomainError("--xs needs at least one value");
  const auto p = PhasePolynomial::parse(o.poly);
  const auto a = table(o, *std::max_element(o.xs.begin(), o.xs.end()));
  out << "x,abs_s,envelope,ratio,sqrt_ratio\n";
  for (const auto& r : theorem2_sweep(parse_coeff_kind(o.coeff), a, p, o.xs)) {
    out << r.x << ',' << num(r.abs_s) << ',' << num(r.envelope) << ',' << num(r.ratio) << ',' << num(r.sqrt_ratio)
        << '\n';
  }
  return kExitOk;
}

int cmd_verify_assumption_a(const Options& o, std::ostream& out) {
  std::vector<std::uint64_t> ys = o.ys;
  if (ys.empty()) ys.push_back(o.x);
  const auto a = table(o, std::max(o.x, *std::max_element(ys.begin(), ys.end())));
  out << "report,y,lhs,envelope,ratio\n";
  for (std::uint64_t y : ys) {
    for (const auto& r : assumption_a_report(a, o.x, o.z, o.w, y))
      out << r.name << ',' << y << ',' << num(r.lhs) << ',' << num(r.envelope) << ',' << num(r.ratio) << '\n';
  }
  return kExitOk;
}

int cmd_verify_assumption_b(const Options& o, std::ostream& out) {
  if (o.nus.empty()) throw DomainError("--nu needs at least one value");
  const auto p = PhasePolynomial::parse(o.poly);
  out << "nu,z,w,y,primes,lhs,tau_est\n";
  bool ok = true;
  for (std::uint64_t nu : o.nus) {
    const auto r = assumption_b_report(p, o.x, nu);
    out << nu << ',' << r.z << ',' << r.w << ',' << r.y << ',' << r.primes << ',' << num(r.lhs) << ','
        << num(r.tau_est) << '\n';
    ok = ok && r.symmetry_deviation <= 1e-9 * static_cast<double>(r.y + 1);
  }
  return ok ? kExitOk : kExitInvariant;
}

int cmd_sweep(const Options& o, std::ostream& out) {
  if (o.sweep_kind == "jutila") {
    if (o.xs.empty()) throw DomainError("--xs needs at least one value");
    const auto a = table(o, *std::max_element(o.xs.begin(), o.xs.end()));
    const auto best = jutila_max(a, o.xs, o.grid);
    out << "x,max_ratio\n";
    for (std::size_t i = 0; i < o.xs.size(); ++i) out << o.xs[i] << ',' << num(best[i]) << '\n';
    return kExitOk;
  }
  if (o.sweep_kind == "lemma34") {
    std::mt19937_64 rng(o.seed);
    const std::vector<std::uint64_t> qs = [] {
      std::vector<std::uint64_t> v;
      for (std::uint64_t p : primes_in(4, 997)) v.push_back(p);
      return v;
    }();
    out << "q,a,N,M,lhs,envelope,ratio\n";
    for (std::uint64_t i = 0; i < o.configs; ++i) {
      const std::uint64_t q = qs[rng() % qs.size()];
      const std::uint64_t a = 1 + rng() % (q - 1);
      const std::uint64_t n = 1000 + rng() % 9001;
      const double m = static_cast<double>(100 + rng() % 901);
      // alpha = a/q + t/q^2 with |t| < 1/2
      const BigInt den = BigInt(q) * q * 1000000;
      const BigInt numr = BigInt(a) * q * 1000000 + BigInt(rng() % 1000000) - 500000;
      const Fraction alpha = Fraction::from_rational(numr, den);
      const auto r = lemma34_report(alpha, BigInt(a), BigInt(q), 1.0, n, m);
      out << q << ',' << a << ',' << n << ',' << num(m) << ',' << num(r.lhs) << ',' << num(r.envelope) << ','
          << num(r.ratio) << '\n';
    }
    return kExitOk;
  }
  if (o.sweep_kind == "differencing") {
    if (o.ys.empty()) throw DomainError("--y needs at least one value");
    const PhasePolynomial u = PhasePolynomial::monomial(Fraction::parse(o.alpha), o.d);
    out << "y,lhs,envelope,ratio,constant\n";
    double constant = 0.0;
    for (std::uint64_t y : o.ys) {
      const auto r = weyl_differencing_report(u, y);
      constant = std::max(constant, r.ratio);
      out << y << ',' << num(r.lhs) << ',' << num(r.envelope) << ',' << num(r.ratio) << ',' << num(constant) << '\n';
    }
    return kExitOk;
  }
  if (o.sweep_kind == "divisor-moment") {
    if (o.ys.empty()) throw DomainError("--y needs at least one value");
    out << "y,lhs,envelope,ratio\n";
    for (std::uint64_t y : o.ys) csv_report(out, y, divisor_moment_report(o.d, y));
    return kExitOk;
  }
  throw DomainError("--kind must be jutila, lemma34, differencing or divisor-moment");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Exponential sums twisted by modular coefficients, with empirical bound reports."};
  app.name("bsz");
  app.require_subcommand(1);
  app.add_option("--cache", o.cache, "Directory for the tau table cache (default: $BSZ_CACHE_DIR)");
  app.add_option("--kernel", o.kernel, "Phase kernel: scalar or avx2 (default: best available, or $BSZ_KERNEL)");

  auto* coeffs = app.add_subcommand("coeffs", "Print a coefficient table as CSV");
  coeffs->add_option("--kind", o.kind, "tau, lambda, mu, mobius, one or divisor")->capture_default_str();
  coeffs->add_option("--N", o.n, "Table length")->required();
  coeffs->add_option("--ell", o.ell, "Divisor function order for --kind divisor")->capture_default_str();

  auto add_coeff = [&](CLI::App* s) {
    s->add_option("--coeff", o.coeff, "one, mobius, lambda or mu")->capture_default_str();
  };
  auto add_poly = [&](CLI::App* s) {
    s->add_option("--poly", o.poly, "Coefficients a1,...,ak: decimals, p/q, sqrt2, sqrt3, sqrt5, golden")->required();
  };

  auto* sums = app.add_subcommand("sums", "Evaluate S_a(x,P) as CSV");
  add_coeff(sums);
  add_poly(sums);
  sums->add_option("--x", o.x, "Sum length")->required();

  auto* decompose = app.add_subcommand("decompose", "Block decomposition summary as JSON");
  decompose->add_option("--x", o.x, "Length of the range [1,x]")->required();
  decompose->add_option("--H", o.H, "First block index")->required();
  decompose->add_option("--K", o.K, "Last block index, K^2 <= x")->required();
  decompose->add_option("--delta", o.delta, "Regime exponent in (0, 0.1]")->capture_default_str();

  auto* arcs = app.add_subcommand("arcs", "Major/minor arc classification as JSON");
  add_poly(arcs);
  arcs->add_option("--x", o.x, "Scale at which Q_j and R_j are evaluated")->required();
  arcs->add_option("--schedule", o.schedule, "power or exp")->capture_default_str();
  arcs->add_option("--c", o.c, "Power schedule c_j (one value or k)")->delimiter(',');
  arcs->add_option("--cp", o.cp, "Power schedule c'_j")->delimiter(',');
  arcs->add_option("--beta", o.beta, "Exponential schedule beta_j")->delimiter(',');
  arcs->add_option("--betap", o.betap, "Exponential schedule beta'_j")->delimiter(',');

  auto* verify = app.add_subcommand("verify", "Bound and assumption reports");
  verify->require_subcommand(1);
  auto* weyl = verify->add_subcommand("weyl", "Weyl bounds for W(y, alpha n^d), one CSV row per y");
  weyl->add_option("--d", o.d, "Degree of U(n) = alpha n^d")->capture_default_str();
  weyl->add_option("--y", o.ys, "Comma-separated y values")->delimiter(',')->required();
  weyl->add_option("--Z", o.Z, "Divisor threshold Z > 1")->capture_default_str();
  weyl->add_option("--alpha", o.alpha, "Leading coefficient")->capture_default_str();
  weyl->add_option("--report", o.report, "lemma35, classical or differencing")->capture_default_str();

  auto* th1 = verify->add_subcommand("theorem1", "Criterion envelope with estimated tau, JSON");
  add_coeff(th1);
  add_poly(th1);
  th1->add_option("--x", o.x, "Sum length")->required();
  th1->add_option("--H", o.H, "First block index")->required();
  th1->add_option("--K", o.K, "Last block index, K^2 <= x")->required();
  th1->add_option("--stride", o.stride, "Sample every stride-th block")->capture_default_str();

  auto* th2 = verify->add_subcommand("theorem2", "Decay sweep, one CSV row per x");
  add_coeff(th2);
  add_poly(th2);
  th2->add_option("--xs", o.xs, "Comma-separated increasing x values")->delimiter(',')->required();

  auto* asa = verify->add_subcommand("assumption-a", "Mean-square reports, CSV");
  add_coeff(asa);
  asa->add_option("--x", o.x, "Sum length")->required();
  asa->add_option("--z", o.z, "Sieve range lower end (exclusive)")->required();
  asa->add_option("--w", o.w, "Sieve range upper end")->required();
  asa->add_option("--y", o.ys, "Comma-separated y values (default x)")->delimiter(',');

  auto* asb = verify->add_subcommand("assumption-b", "Prime-pair correlation reports, CSV");
  add_poly(asb);
  asb->add_option("--x", o.x, "Sum length")->required();
  asb->add_option("--nu", o.nus, "Comma-separated block indices")->delimiter(',')->required();

  auto* sweep = app.add_subcommand("sweep", "Ratio-stability sweeps as CSV");
  sweep->add_option("--kind", o.sweep_kind, "jutila, lemma34, differencing or divisor-moment")->capture_default_str();
  add_coeff(sweep);
  sweep->add_option("--xs", o.xs, "x values (jutila)")->delimiter(',');
  sweep->add_option("--grid", o.grid, "alpha grid size (jutila)")->capture_default_str();
  sweep->add_option("--configs", o.configs, "Random configurations (lemma34)")->capture_default_str();
  sweep->add_option("--seed", o.seed, "Random seed (lemma34)")->capture_default_str();
  sweep->add_option("--d", o.d, "Degree (differencing, divisor-moment)")->capture_default_str();
  sweep->add_option("--y", o.ys, "y values (differencing, divisor-moment)")->delimiter(',');
  sweep->add_option("--alpha", o.alpha, "Leading coefficient (differencing)")->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    if (o.kernel == "scalar") {
      kernels::set_active_isa(kernels::Isa::scalar);
    } else if (o.kernel == "avx2") {
      kernels::set_active_isa(kernels::Isa::avx2);
    } else if (!o.kernel.empty()) {
      throw DomainError("--kernel must be scalar or avx2");
    }
    if (coeffs->parsed()) return cmd_coeffs(o, out);
    if (sums->parsed()) return cmd_sums(o, out);
    if (decompose->parsed()) return cmd_decompose(o, out);
    if (arcs->parsed()) return cmd_arcs(o, out);
    if (weyl->parsed()) return cmd_verify_weyl(o, out);
    if (th1->parsed()) return cmd_verify_theorem1(o, out);
    if (th2->parsed()) return cmd_verify_theorem2(o, out);
    if (asa->parsed()) return cmd_verify_assumption_a(o, out);
    if (asb->parsed()) return cmd_verify_assumption_b(o, out);
    if (sweep->parsed()) return cmd_sweep(o, out);
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const CapacityError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const OverflowError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const FeasibilityError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  err << "error: no subcommand\n";
  return kExitUsage;
}

}  // namespace bsz::cli
