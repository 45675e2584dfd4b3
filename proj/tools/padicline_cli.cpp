// padicline: integrate, verify, teichmuller and raylimits from the command line.
//
// Exit codes: 0 success, 1 usage or input error (and failed verification),
// 2 no convergence.
//
// Defaults may be overridden by the environment:
//   PADICLINE_PRECISION, PADICLINE_KMAX, PADICLINE_TARGET, PADICLINE_WINDOW,
//   PADICLINE_LAMBDA_MAX, PADICLINE_SEED, PADICLINE_CACHE_DIR

#include <CLI11.hpp>
#include <json.hpp>

#include <iomanip>
#include <iostream>
#include <string>

#include <padicline/verify.hpp>

using namespace padicline;
using Json = nlohmann::ordered_json;

namespace {

constexpr int kOk = 0;
constexpr int kInputError = 1;
constexpr int kNoConvergence = 2;

struct Options {
  unsigned long p = 0;
  Val precision = 40;
  long k_max = 6;
  Val target = 12;
  long window = 2;
  long lambda_max = 12;
  std::uint64_t seed = 1;
  std::string cache_dir;
  bool json = false;
  bool k_max_given = false;
};

std::string val_text(Val v) { return v == kInfiniteVal ? "inf" : std::to_string(v); }

Json val_json(Val v) { return v == kInfiniteVal ? Json(nullptr) : Json(v); }

Json padic_json(const PadicNumber& x) {
  Json j;
  j["p"] = x.p();
  j["valuation"] = x.is_zero() ? Json(nullptr) : Json(x.valuation());
  j["digits"] = x.is_zero() ? std::vector<unsigned long>{} : x.digits();
  j["precision"] = x.precision();
  j["text"] = x.to_string();
  return j;
}

void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }

void require_p(const Options& o) {
  const mpz_class p(o.p);
  if (o.p < 3 || mpz_probab_prime_p(p.get_mpz_t(), 30) == 0)
    fail(ErrorKind::InvalidArgument, "--p must be an odd prime");
}

VerifyConfig verify_config(const Options& o) {
  VerifyConfig c;
  c.p = o.p;
  c.precision = o.precision;
  c.k_max = o.k_max;
  c.target = o.target;
  c.window = o.window;
  c.lambda_max = o.lambda_max;
  c.seed = o.seed;
  c.cache_dir = o.cache_dir;
  c.k_max_given = o.k_max_given;
  return c;
}

BuiltinOptions builtin_options(const Options& o, std::size_t nmax) {
  BuiltinOptions b;
  b.bernoulli_nmax = std::max(nmax, BernoulliCache::kDefaultMax);
  if (!o.cache_dir.empty()) b.bernoulli = verify_detail::bernoulli_cache(verify_config(o), b.bernoulli_nmax);
  return b;
}

EvalStrategy parse_strategy(const std::string& s, Val goal) {
  if (s == "auto") return EvalStrategy::automatic();
  if (s == "full") return EvalStrategy::full();
  if (s == "rootsum") return EvalStrategy::root_sum();
  if (s == "truncated") return EvalStrategy::truncated_to(goal);
  fail(ErrorKind::InvalidArgument, "unknown strategy '" + s + "'");
}

Json trace_json(const IntegralResult& r) {
  Json t = Json::array();
  for (const auto& e : r.trace) {
    Json j;
    j["k"] = e.k;
    j["phi"] = e.phi;
    j["residual"] = val_json(e.residual);
    j["precision"] = e.precision;
    j["route"] = eval_kind_name(e.used);
    j["n_cut"] = e.n_cut;
    if (!e.note.empty()) j["note"] = e.note;
    t.push_back(j);
  }
  return t;
}

void print_result(const IntegralResult& r) {
  std::cout << "path        " << r.path.describe() << "\n";
  std::cout << "tried       ";
  for (std::size_t i = 0; i < r.members_tried.size(); ++i) std::cout << (i ? ", " : "") << r.members_tried[i];
  std::cout << "\n";
  std::cout << "converged   " << (r.converged ? "yes" : "no") << " (k_used " << r.k_used << ", achieved precision "
            << r.achieved_precision << ")\n";
  std::cout << "value       " << r.value.to_string() << "\n";
  std::cout << "valuation   " << (r.value.is_zero() ? std::string("inf") : std::to_string(r.value.valuation()))
            << "\n";
  std::cout << "route       " << eval_kind_name(r.used) << "\n";
  std::cout << "   k  phi  residual  precision  route\n";
  for (const auto& e : r.trace) {
    std::cout << std::setw(4) << e.k << std::setw(5) << e.phi << std::setw(10) << val_text(e.residual)
              << std::setw(11) << e.precision << "  " << eval_kind_name(e.used);
    if (!e.note.empty()) std::cout << "  " << e.note;
    std::cout << "\n";
  }
}

int cmd_integrate(const Options& o, const std::string& func, const std::string& arc_spec, const std::string& path,
                  const std::string& strategy) {
  require_p(o);
  if (o.target > o.precision) fail(ErrorKind::InvalidArgument, "--target exceeds --precision");
  Ctx ctx = make_context(o.p, o.precision);
  Arc arc = parse_arc(arc_spec, ctx);
  ParsedFunction pf = parse_function(func, arc, builtin_options(o, 0));
  InterlockedFamily schedule = parse_schedule(path);

  LimitConfig cfg;
  cfg.target = o.target;
  cfg.k_max = o.k_max;
  cfg.window = o.window;
  cfg.lambda_max = o.lambda_max;
  cfg.strategy = parse_strategy(strategy, o.target + cfg.guard);
  // Boundary poles converge slowly along phi(k) = k; allow tau + w steps unless told otherwise.
  if (pf.rational && path == "k" && !o.k_max_given) cfg.k_max = std::max(cfg.k_max, long(o.target) + o.window);

  std::optional<PadicNumber> closed;
  if (pf.rational) closed = integrate_rational_closed_form(*pf.rational, arc, schedule.omega_alpha());

  IntegralResult r;
  bool converged = true;
  try {
    r = integrate_limit(pf.series, arc, schedule, cfg);
  } catch (const NoConvergenceError& e) {
    r = e.result();
    converged = false;
  }
  // Only the stabilized digits are reported.
  r.value = r.value.truncated(r.achieved_precision);

  if (o.json) {
    Json j;
    j["command"] = "integrate";
    j["function"] = func;
    j["arc"] = arc.describe();
    j["schedule"] = schedule.describe();
    j["path"] = r.path.describe();
    j["members_tried"] = r.members_tried;
    j["converged"] = converged;
    j["k_used"] = r.k_used;
    j["achieved_precision"] = r.achieved_precision;
    j["value"] = padic_json(r.value);
    j["route"] = eval_kind_name(r.used);
    j["heuristic"] = r.heuristic;
    if (closed) {
      j["closed_form"] = padic_json(*closed);
      j["closed_form_agreement"] = val_json(agreement(*closed, r.value));
    }
    j["trace"] = trace_json(r);
    emit(j);
  } else {
    std::cout << "function    " << func << "\n";
    std::cout << "arc         " << arc.describe() << "\n";
    std::cout << "schedule    " << schedule.describe() << "\n";
    print_result(r);
    if (closed) {
      std::cout << "closed form " << closed->to_string() << "\n";
      std::cout << "agreement   " << val_text(agreement(*closed, r.value)) << "\n";
    }
  }
  return converged ? kOk : kNoConvergence;
}

int cmd_verify(const Options& o, const std::string& suite) {
  if (o.p != 0) require_p(o);
  SuiteReport rep = run_suite(suite, verify_config(o));
  if (o.json) {
    Json j;
    j["command"] = "verify";
    j["suite"] = rep.suite.empty() ? suite : rep.suite;
    j["passed"] = rep.passed();
    j["failures"] = rep.failures();
    Json checks = Json::array();
    for (const auto& c : rep.checks) checks.push_back(Json{{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    j["checks"] = checks;
    emit(j);
  } else {
    for (const auto& c : rep.checks)
      std::cout << (c.passed ? "PASS  " : "FAIL  ") << c.name << (c.detail.empty() ? "" : "  " + c.detail) << "\n";
    std::cout << suite << ": " << (rep.checks.size() - rep.failures()) << "/" << rep.checks.size() << " passed in "
              << std::fixed << std::setprecision(1) << rep.seconds << " s\n";
  }
  return rep.passed() ? kOk : kInputError;
}

int cmd_teichmuller(const Options& o, const std::string& x_text, long alpha) {
  require_p(o);
  if (alpha < 0) fail(ErrorKind::InvalidArgument, "--alpha must be non-negative");
  Ctx ctx = make_context(o.p, o.precision);
  const mpq_class q = parse_rational(x_text);
  const PadicNumber x = PadicNumber::from_rational(ctx, q);
  const PadicNumber w = alpha == 0 ? teichmuller(x) : omega_power(x, static_cast<unsigned>(alpha));
  if (o.json) {
    Json j;
    j["command"] = "teichmuller";
    j["x"] = q.get_str();
    j["alpha"] = alpha;
    j["value"] = padic_json(w);
    emit(j);
  } else {
    std::cout << w.to_string() << "\n";
  }
  return kOk;
}

int cmd_raylimits(const Options& o, const std::string& func, const std::string& arc_spec, const std::string& path,
                  long d_max, long m) {
  require_p(o);
  if (d_max < 1) fail(ErrorKind::InvalidArgument, "--dmax must be positive");
  Ctx ctx = make_context(o.p, o.precision);
  Arc arc = parse_arc(arc_spec, ctx);
  InterlockedFamily schedule = parse_schedule(path);
  if (schedule.kind != InterlockedFamily::Kind::Singleton)
    fail(ErrorKind::InvalidArgument, "raylimits takes a single path, not a family");
  const PathSequence ph = schedule.single;
  mpz_class top;
  mpz_ui_pow_ui(top.get_mpz_t(), o.p, static_cast<unsigned long>(ph(o.k_max)));
  top = top * d_max + 2;
  if (!top.fits_ulong_p() || top > 1000000) fail(ErrorKind::IndexTooLarge, "ray indices exceed 10^6");
  ParsedFunction pf = parse_function(func, arc, builtin_options(o, top.get_ui()));
  SufficiencyReport rep = sufficiency_check(pf.series, arc, ph, d_max, o.k_max);
  if (m != -1) rep.table = ray_limits(pf.series, arc, ph, d_max, o.k_max, m);
  const RayLimitTable& t = rep.table;
  if (o.json) {
    Json j;
    j["command"] = "raylimits";
    j["function"] = func;
    j["arc"] = arc.describe();
    j["path"] = ph.describe();
    j["m"] = t.m;
    j["k0"] = t.k0;
    j["k_max"] = t.k_max;
    j["uniform_residual"] = val_json(t.uniform_residual);
    j["sufficiency_met"] = rep.met;
    Json rows = Json::array();
    for (const auto& [d, e] : t.entries) {
      Json r;
      r["d"] = d;
      r["limit"] = padic_json(e.limit);
      Json res = Json::array();
      for (Val v : e.residuals) res.push_back(val_json(v));
      r["residuals"] = res;
      r["stabilized"] = e.stabilized;
      r["stabilized_at_k"] = e.stabilized_at_k;
      r["strictly_improving"] = e.strictly_improving;
      r["exact_zero"] = e.exact_zero;
      rows.push_back(r);
    }
    j["rays"] = rows;
    emit(j);
  } else {
    std::cout << "function " << func << " on " << arc.describe() << ", " << ph.describe() << ", m = " << t.m
              << ", k = " << t.k0 << ".." << t.k_max << "\n";
    for (const auto& [d, e] : t.entries) {
      std::cout << "d=" << d << "  residuals [";
      for (std::size_t i = 0; i < e.residuals.size(); ++i) std::cout << (i ? "," : "") << val_text(e.residuals[i]);
      std::cout << "]  " << (e.exact_zero ? "zero" : e.stabilized ? "stable" : "unstable") << "  "
                << e.limit.to_string() << "\n";
    }
    std::cout << "uniform residual " << val_text(t.uniform_residual) << "; " << rep.verdict << "\n";
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"p-adic line integrals on arcs: integration, verification suites and utilities"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* c, bool need_p) {
    auto* po = c->add_option("--p", o.p, "odd prime");
    if (need_p) po->required();
    c->add_option("--precision", o.precision, "working precision N in digits")->envname("PADICLINE_PRECISION");
    c->add_option("--kmax", o.k_max, "largest k")->envname("PADICLINE_KMAX");
    c->add_option("--target", o.target, "target precision tau")->envname("PADICLINE_TARGET");
    c->add_option("--window", o.window, "stabilization window w")->envname("PADICLINE_WINDOW");
    c->add_option("--lambda-max", o.lambda_max, "family members searched")->envname("PADICLINE_LAMBDA_MAX");
    c->add_option("--seed", o.seed, "seed for randomized suites")->envname("PADICLINE_SEED");
    c->add_option("--cache-dir", o.cache_dir, "directory for the Bernoulli cache")->envname("PADICLINE_CACHE_DIR");
    c->add_flag("--json", o.json, "JSON output");
  };

  std::string func, arc = "a=1,b=0", path = "k", strategy = "auto", suite, x_text;
  long alpha = 0, d_max = 8, m = -1;

  auto* integ = app.add_subcommand("integrate", "integral of a function over an arc as a limit along a path");
  common(integ, true);
  integ->add_option("--func", func, "rat:<expr> or builtin:<name>[:params]")->required();
  integ->add_option("--arc", arc, "a=<rat>,b=<rat>")->required();
  integ->add_option("--path", path, "k | affine:a,l | power:a,m | family:phiA | family:psiA");
  integ->add_option("--strategy", strategy, "auto | full | rootsum | truncated");

  auto* ver = app.add_subcommand("verify", "run a named verification suite");
  common(ver, false);
  ver->add_option("suite", suite, "suite name")->required();

  auto* te = app.add_subcommand("teichmuller", "Teichmuller representative omega(x)^(p^alpha)");
  common(te, true);
  te->add_option("x", x_text, "rational n or n/d")->required();
  te->add_option("--alpha", alpha, "power p^alpha");

  auto* ray = app.add_subcommand("raylimits", "ray sequences a(m + d p^phi(k)) and their limits");
  common(ray, true);
  ray->add_option("--func", func, "function spec")->required();
  ray->add_option("--arc", arc, "a=<rat>,b=<rat>");
  ray->add_option("--path", path, "single path");
  ray->add_option("--dmax", d_max, "largest d");
  ray->add_option("--m", m, "ray offset m");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e) == 0 ? kOk : kInputError;
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }
  for (auto* c : {integ, ver, te, ray})
    if (c->parsed() && c->get_option("--kmax")->count() > 0) o.k_max_given = true;
  if (std::getenv("PADICLINE_KMAX")) o.k_max_given = true;

  try {
    if (integ->parsed()) return cmd_integrate(o, func, arc, path, strategy);
    if (ver->parsed()) return cmd_verify(o, suite);
    if (te->parsed()) return cmd_teichmuller(o, x_text, alpha);
    return cmd_raylimits(o, func, arc, path, d_max, m);
  } catch (const NoConvergenceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNoConvergence;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.kind() == ErrorKind::NoConvergence ? kNoConvergence : kInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
}
