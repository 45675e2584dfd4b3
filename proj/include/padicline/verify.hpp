#pragma once

/**
 * @file verify.hpp
 * @brief Named verification suites shared by the CLI and the acceptance tests.
 *
 * Every suite returns a list of checks with a pass flag and a short detail
 * line carrying the residual valuations that decided it.
 */

#include <chrono>
#include <filesystem>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cauchy.hpp"
#include "closed_form.hpp"
#include "funcspec.hpp"
#include "limit.hpp"
#include "oracle.hpp"
#include "raylimits.hpp"
#include "substitution.hpp"

namespace padicline {

struct VerifyConfig {
  unsigned long p = 0;  ///< 0 picks each suite's own primes
  Val precision = 40;
  long k_max = 6;
  Val target = 12;
  long window = 2;
  long lambda_max = 12;
  std::uint64_t seed = 1;
  std::string cache_dir;  ///< Bernoulli cache location; empty disables the file cache
  bool k_max_given = false;

  LimitConfig limit() const {
    LimitConfig c;
    c.target = target;
    c.k_max = k_max;
    c.window = window;
    c.lambda_max = lambda_max;
    return c;
  }
};

struct Check {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct SuiteReport {
  std::string suite;
  std::vector<Check> checks;
  double seconds = 0;

  bool passed() const {
    if (checks.empty()) return false;
    for (const auto& c : checks)
      if (!c.passed) return false;
    return true;
  }
  std::size_t failures() const {
    std::size_t n = 0;
    for (const auto& c : checks) n += c.passed ? 0 : 1;
    return n;
  }
  void add(std::string name, bool ok, std::string detail = {}) {
    checks.push_back({std::move(name), ok, std::move(detail)});
  }
};

namespace verify_detail {

inline std::string val_str(Val v) { return v == kInfiniteVal ? "inf" : std::to_string(v); }

/// Portable draws from mt19937_64 (the distributions of <random> are not).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : g_(seed) {}
  long range(long lo, long hi) {  // inclusive
    const auto span = static_cast<std::uint64_t>(hi - lo + 1);
    return lo + static_cast<long>(g_() % span);
  }
  long nonzero(long lo, long hi) {
    for (;;) {
      long v = range(lo, hi);
      if (v != 0) return v;
    }
  }
  mpq_class small_rational(long num_bound, long den_bound) {
    mpq_class q(range(-num_bound, num_bound), range(1, den_bound));
    q.canonicalize();
    return q;
  }

 private:
  std::mt19937_64 g_;
};

inline std::vector<unsigned long> primes_or(const VerifyConfig& cfg, std::vector<unsigned long> dflt) {
  if (cfg.p != 0) return {cfg.p};
  return dflt;
}

inline Val qval(const mpq_class& q, unsigned long p) { return q == 0 ? kInfiniteVal : valuation(q, p); }

/// A random rational function with rational poles outside A(a, b).
inline ExactRationalFunction random_rational(Rng& rng, const mpq_class& a, const mpq_class& b, unsigned long p) {
  const Val rho = qval(b - a, p);
  std::vector<mpq_class> num;
  const long deg = rng.range(0, 4);
  for (long i = 0; i <= deg; ++i) num.push_back(rng.small_rational(9, 3));
  if (num.back() == 0) num.back() = 1;
  ExactRationalFunction f(qpoly(num));
  const long poles = rng.range(0, 2);
  for (long i = 0; i < poles; ++i) {
    mpq_class r;
    do r = rng.small_rational(12, 4);
    while (r == b || qval(r - b, p) > rho);
    f = f / ExactRationalFunction(qpoly({-r, 1}));
  }
  return f;
}

inline std::shared_ptr<BernoulliCache> bernoulli_cache(const VerifyConfig& cfg, std::size_t nmax) {
  auto cache = std::make_shared<BernoulliCache>(nmax);
  if (cfg.cache_dir.empty()) return cache;
  const std::string path = cfg.cache_dir + "/bernoulli.plbc";
  cache->load(path);
  if (cache->computed() <= nmax) {
    cache->get(nmax);
    std::filesystem::create_directories(cfg.cache_dir);
    cache->save(path);
  }
  return cache;
}

}  // namespace verify_detail

/// eval_A against the exact root-of-unity average, phi(k) = k, p^k <= 250, mod p^40.
inline SuiteReport verify_oracle(const VerifyConfig& cfg) {
  using namespace verify_detail;
  SuiteReport rep{"oracle", {}, 0};
  const Val compare = 40;
  const long count = 30;
  for (unsigned long p : primes_or(cfg, {3, 5})) {
    auto ctx = make_context(p, compare + 12);
    Rng rng(cfg.seed * 7919 + p);
    long kmax = 0;
    for (long pk = static_cast<long>(p); pk <= 250; pk *= static_cast<long>(p)) ++kmax;
    if (cfg.k_max_given) kmax = std::min(kmax, cfg.k_max);
    long equal = 0, total = 0;
    Val worst = kInfiniteVal;
    std::string first_bad;
    for (long i = 0; i < count; ++i) {
      const mpq_class a = rng.range(-4, 4);
      const mpq_class b = a + rng.nonzero(-6, 6);
      const ExactRationalFunction f = random_rational(rng, a, b, p);
      const Arc arc = Arc::make(ctx, a, b);
      const SeriesFunction s = from_rational(f, arc);
      for (long k = 1; k <= kmax; ++k) {
        const PadicNumber want = PadicNumber::from_rational(ctx, direct_A(f, a, b, p, static_cast<unsigned>(k)));
        for (const EvalStrategy& st : {EvalStrategy::root_sum(), EvalStrategy::full()}) {
          const EvalResult got = eval_A(s, arc, PathSequence::identity(), k, st);
          const Val agr = std::min(agreement(got.value, want), got.value.precision());
          ++total;
          if (agr >= compare) {
            ++equal;
          } else if (first_bad.empty()) {
            first_bad = "; first mismatch: " + f.to_string() + " on A(" + a.get_str() + "," + b.get_str() +
                        "), k = " + std::to_string(k) + ", " + st.describe() + ", agreement " + val_str(agr);
          }
          worst = std::min(worst, agr);
        }
      }
    }
    rep.add("eval_A equals the exact average, p = " + std::to_string(p), equal == total,
            std::to_string(equal) + "/" + std::to_string(total) + " equal mod p^" + std::to_string(compare) +
                " (k <= " + std::to_string(kmax) + ", min agreement " + val_str(worst) + ")" + first_bad);
  }
  return rep;
}

/// Closed forms of 1/(x - x0) and (x - x0)^-m against the limit over Phi_alpha.
inline SuiteReport verify_rational(const VerifyConfig& cfg) {
  using namespace verify_detail;
  SuiteReport rep{"rational", {}, 0};
  for (unsigned long p : primes_or(cfg, {5})) {
    auto ctx = make_context(p, cfg.precision);
    const Arc arc = Arc::make(ctx, 0, 1);
    const long pl = static_cast<long>(p);
    std::vector<std::pair<long, std::string>> points{{pl, "interior"}, {2 * pl, "interior"}, {pl * pl, "interior"}};
    for (long c = 2; c < pl; ++c) points.push_back({c, "boundary"});
    for (long alpha : {0L, 1L}) {
      for (const auto& [x0, where] : points) {
        const ExactRationalFunction f(qpoly_const(1), qpoly({-x0, 1}));
        const PadicNumber cf = integrate_rational_closed_form(f, arc, alpha);
        const std::string name = "1/(x-" + std::to_string(x0) + ") " + where + ", alpha = " + std::to_string(alpha);
        const bool expect_one = where == "interior";
        try {
          const IntegralResult r = integrate_limit(from_rational(f, arc), arc, InterlockedFamily::phi(alpha), cfg.limit());
          const Val agr = agreement(r.value, cf);
          const bool ok = r.converged && r.achieved_precision >= cfg.target && agr >= cfg.target &&
                          (!expect_one || agreement(cf, PadicNumber::one(ctx)) >= cfg.precision);
          rep.add(name, ok,
                  "residual " + val_str(r.achieved_precision) + " along " + r.path.describe() + " at k = " +
                      std::to_string(r.k_used) + ", agreement with closed form " + val_str(agr));
        } catch (const NoConvergenceError& e) {
          rep.add(name, false, std::string(e.what()));
        }
      }
    }
    for (long m : {2L, 3L, -1L, -2L}) {
      for (long x0 : {3L, pl}) {
        const ExactRationalFunction f =
            ExactRationalFunction(qpoly({-x0, 1})).pow(-m);
        const std::string name = "(x-" + std::to_string(x0) + ")^" + std::to_string(-m) + " integrates to 0";
        try {
          const IntegralResult r = integrate_limit(from_rational(f, arc), arc, InterlockedFamily::phi(0), cfg.limit());
          const Val v = r.value.valuation_lower_bound();
          rep.add(name, r.converged && v >= cfg.target,
                  "v_p(value) = " + val_str(v) + ", residual " + val_str(r.achieved_precision));
        } catch (const NoConvergenceError& e) {
          rep.add(name, false, std::string(e.what()));
        }
      }
    }
  }
  return rep;
}

/// E'/E on A(1, 0), phi(k) = k: stabilizes and the value is -1 mod p^3.
inline SuiteReport verify_artin_hasse(const VerifyConfig& cfg) {
  using namespace verify_detail;
  SuiteReport rep{"artin-hasse", {}, 0};
  for (unsigned long p : primes_or(cfg, {3, 5, 7})) {
    auto ctx = make_context(p, cfg.precision);
    const Arc arc = Arc::make(ctx, 1, 0);
    const std::string name = "E'/E at p = " + std::to_string(p);
    try {
      const IntegralResult r =
          integrate_limit(builtin_artin_hasse_logderiv(arc), arc, PathSequence::identity(), cfg.limit());
      const Val agr = agreement(r.value, PadicNumber::from_int(ctx, -1));
      rep.add(name, r.converged && agr >= 3,
              "stabilized at k = " + std::to_string(r.k_used) + " (residual " + val_str(r.achieved_precision) +
                  "), value = -1 mod p^" + val_str(std::min(agr, r.achieved_precision)) + ", digits " +
                  r.value.truncated(r.achieved_precision).to_string());
    } catch (const NoConvergenceError& e) {
      rep.add(name, false, e.what());
    }
  }
  return rep;
}

/// Zero/pole counts: interior zeros and poles count 1 each, a boundary zero carries its weight.
inline SuiteReport verify_zp(const VerifyConfig& cfg) {
  using namespace verify_detail;
  SuiteReport rep{"zp", {}, 0};
  const unsigned long p = cfg.p ? cfg.p : 5;
  const long pl = static_cast<long>(p);
  auto ctx = make_context(p, cfg.precision);
  const Arc arc = Arc::make(ctx, 0, 1);
  auto lin = [](const mpq_class& r) { return ExactRationalFunction(qpoly({-r, 1})); };
  auto run = [&](const std::string& name, const ExactRationalFunction& f, const std::vector<CountedPoint>& zeros,
                 const std::vector<CountedPoint>& poles) {
    const ExactRationalFunction logd = f.derivative() / f;
    const PadicNumber count = zp_count(zeros, poles, arc, 0);
    try {
      const IntegralResult r = integrate_limit(from_rational(logd, arc), arc, InterlockedFamily::phi(0), cfg.limit());
      const Val agr = agreement(r.value, count);
      rep.add(name, r.converged && agr >= cfg.target,
              "count " + count.truncated(cfg.target).to_string() + ", limit agrees to " + val_str(agr) + " along " +
                  r.path.describe());
      return r.value;
    } catch (const NoConvergenceError& e) {
      rep.add(name, false, e.what());
      return PadicNumber::zero(ctx);
    }
  };
  auto pt = [&](long v) { return CountedPoint{PadicNumber::from_int(ctx, v), 1}; };
  // Z = 3, P = 1, all in D-(0, 1)
  const ExactRationalFunction interior = lin(pl) * lin(2 * pl) * lin(pl * pl) / lin(3 * pl);
  const PadicNumber two = run("interior Z = 3, P = 1 gives 2", interior, {pt(pl), pt(2 * pl), pt(pl * pl)}, {pt(3 * pl)});
  rep.add("interior count equals 2 exactly", agreement(two, PadicNumber::from_int(ctx, 2)) >= cfg.target,
          "agreement " + val_str(agreement(two, PadicNumber::from_int(ctx, 2))));
  const PadicNumber w3 = (PadicNumber::one(ctx) - teichmuller(PadicNumber::from_int(ctx, 3))).inverse();
  const PadicNumber got = run("boundary zero at 3", lin(3), {pt(3)}, {});
  rep.add("boundary weight is 1/(1 - w(3))", agreement(got, w3) >= cfg.target, "agreement " + val_str(agreement(got, w3)));
  run("boundary zero at 3 with interior zeros and a pole", lin(3) * interior, {pt(3), pt(pl), pt(2 * pl), pt(pl * pl)},
      {pt(3 * pl)});
  return rep;
}

/// Cauchy's formula on the closed disc for random polynomials, f(z) and f'(z).
inline SuiteReport verify_cauchy_disc(const VerifyConfig& cfg) {
  using namespace verify_detail;
  SuiteReport rep{"cauchy-disc", {}, 0};
  const unsigned long p = cfg.p ? cfg.p : 5;
  const long pl = static_cast<long>(p);
  auto ctx = make_context(p, cfg.precision);
  Rng rng(cfg.seed * 104729 + p);
  long ok_limit = 0, ok_laurent = 0, total = 0;
  Val worst = kInfiniteVal;
  std::string bad;
  for (int i = 0; i < 20; ++i) {
    std::vector<mpq_class> c;
    const long deg = rng.range(0, 5);
    for (long j = 0; j <= deg; ++j) c.push_back(rng.small_rational(20, 3));
    const ExactRationalFunction f(qpoly(c));
    const mpq_class a = rng.range(-5, 5);
    const mpq_class b = a + rng.range(1, pl - 1);
    const Arc arc = Arc::make(ctx, a, b);
    // z in D+(a, 1) but not in D-(b, 1)
    mpq_class z;
    do z = a + rng.range(-2 * pl, 2 * pl);
    while (qval(z - b, p) > 0);
    const PadicNumber zp = PadicNumber::from_rational(ctx, z);
    for (long n : {0L, 1L}) {
      ++total;
      const CauchyDiscResult lim = cauchy_eval_disc(from_rational(f, arc), arc, zp, 0, n, true, cfg.limit());
      const CauchyDiscResult lau = cauchy_eval_disc(from_rational(f, arc), arc, zp, 0, n, false);
      const mpq_class exact = n == 0 ? f(z) : f.derivative()(z);
      const PadicNumber want = PadicNumber::from_rational(ctx, exact);
      const Val agr = std::min(agreement(lim.value, want), lim.limit->achieved_precision);
      worst = std::min(worst, agr);
      if (agr >= cfg.target) ++ok_limit;
      else if (bad.empty()) bad = "; " + f.to_string() + " at z = " + z.get_str() + ", n = " + std::to_string(n);
      if (agreement(lau.value, want) >= cfg.precision - 1) ++ok_laurent;
    }
  }
  rep.add("limit of root sums recovers f(z), f'(z)", ok_limit == total,
          std::to_string(ok_limit) + "/" + std::to_string(total) + " to precision >= " + val_str(cfg.target) +
              " (min " + val_str(worst) + ")" + bad);
  rep.add("Laurent residue recovers f(z), f'(z)", ok_laurent == total,
          std::to_string(ok_laurent) + "/" + std::to_string(total) + " exact to working precision");
  return rep;
}

/// The two p = 5 worked configurations with i = w(2).
inline SuiteReport verify_cauchy_example_p5(const VerifyConfig& cfg) {
  using namespace verify_detail;
  SuiteReport rep{"cauchy-example-p5", {}, 0};
  const Val compare = 40;
  auto ctx = make_context(5, compare + 4);
  auto P = [&](long v) { return PadicNumber::from_int(ctx, v); };
  const PadicNumber i = teichmuller(P(2));
  rep.add("i = w(2) squares to -1", agreement(i * i, P(-1)) >= compare, "");
  // a Krasner function on D+(0,1) minus D-(0,1): a polynomial plus a tail at 0
  KrasnerFunction f(ctx);
  f.poly = PPoly({P(1), P(0), P(2), P(1)}, P(0));
  f.add_pole(P(0), {P(3), P(-1)});
  f.add_pole(P(2) * P(5), {P(7)});
  const PadicNumber z = P(-1) + P(5) * P(3);
  {
    HoleyDomain dom{P(-1), 0, P(1), {Hole{P(0), 0, 0, P(2)}}};
    const CauchyHolesResult r = cauchy_formula_holes(f, dom, z, 0);
    const Val a0 = agreement(r.kappa[0], P(2));
    const Val a1 = agreement(r.kappa[1], -(P(1) - i));
    rep.add("outer-circle configuration: coefficient 2", a0 >= compare, "agreement " + val_str(a0));
    rep.add("outer-circle configuration: coefficient -(1-i)", a1 >= compare, "agreement " + val_str(a1));
    rep.add("outer-circle configuration recovers f(z)", r.agreement >= compare - 2, "agreement " + val_str(r.agreement));
  }
  {
    const OneLargeHoleResult r = cauchy_one_large_hole(f, P(0), P(1), P(-1), std::nullopt, z, 0);
    const PadicNumber c0 = (P(6) - P(2) * i) / P(5), c1 = (P(2) - P(4) * i) / P(5);
    const Val a0 = agreement(r.coeff_outer, c0), a1 = agreement(r.coeff_hole, -c1);
    rep.add("one large hole: a0 = x0 = -1", agreement(r.a0, P(-1)) >= compare, "");
    rep.add("one large hole: coefficient (6-2i)/5", a0 >= compare, "agreement " + val_str(a0));
    rep.add("one large hole: coefficient -(2-4i)/5", a1 >= compare, "agreement " + val_str(a1));
    rep.add("one large hole: |D|_5 < 1", r.det.valuation_lower_bound() > 0, "v_5(D) = " + val_str(r.det.valuation()));
    rep.add("one large hole recovers f(z)", r.agreement >= compare - 2, "agreement " + val_str(r.agreement));
  }
  (void)cfg;
  return rep;
}

/// Random configurations with |x_i - x_j| = |b_i - b_j| = |x_i - b_j| = R in Q_p need 2n residue
/// classes, so they exist only for 2n <= p.
inline bool det_configuration_exists(unsigned long p, long n) { return 2 * static_cast<unsigned long>(n) <= p; }

inline SuiteReport verify_det_unit(const VerifyConfig& cfg, bool include_impossible = false) {
  using namespace verify_detail;
  SuiteReport rep{"det-unit", {}, 0};
  Rng rng(cfg.seed * 1299709);
  for (unsigned long p : primes_or(cfg, {3, 5, 7})) {
    auto ctx = make_context(p, cfg.precision);
    const long pl = static_cast<long>(p);
    for (long n : {1L, 2L, 3L}) {
      const std::string name = "|det D| = 1, p = " + std::to_string(p) + ", n = " + std::to_string(n);
      if (!det_configuration_exists(p, n)) {
        if (include_impossible)
          rep.add(name, false,
                  "no configuration exists: 2n = " + std::to_string(2 * n) + " points in distinct classes mod " +
                      std::to_string(p));
        continue;
      }
      long unit = 0;
      for (int trial = 0; trial < 100; ++trial) {
        // 2n distinct residues, scaled to a random radius p^-rho around a random center
        std::vector<long> res;
        for (long c = 0; c < pl; ++c) res.push_back(c);
        for (long j = pl - 1; j > 0; --j) std::swap(res[static_cast<std::size_t>(j)], res[static_cast<std::size_t>(rng.range(0, j))]);
        const long rho = rng.range(0, 2);
        const long alpha = rng.range(0, 2);
        const PadicNumber center = PadicNumber::from_int(ctx, rng.range(-50, 50));
        PadicNumber scale = PadicNumber::from_int(ctx, 1);
        for (long r = 0; r < rho; ++r) scale *= PadicNumber::from_int(ctx, pl);
        std::vector<PadicNumber> xs, bs;
        for (long j = 0; j < 2 * n; ++j) {
          const PadicNumber pt = center + scale * (PadicNumber::from_int(ctx, res[static_cast<std::size_t>(j)]) +
                                                   PadicNumber::from_int(ctx, pl * rng.range(-20, 20)));
          (j < n ? xs : bs).push_back(pt);
        }
        try {
          const PadicNumber d = det_D(xs, bs, alpha);
          if (!d.is_zero() && d.valuation() == 0) ++unit;
        } catch (const Error&) {
        }
      }
      rep.add(name, unit == 100, std::to_string(unit) + "/100 unit determinants");
    }
  }
  for (long n : {2L, 3L}) {
    long same = 0, trials = 0;
    for (int t = 0; t < 50; ++t) {
      std::vector<mpq_class> xs, bs;
      for (long j = 0; j < n; ++j) {
        xs.push_back(rng.range(-30, 30));
        bs.push_back(rng.range(-30, 30));
      }
      try {
        const RationalIdentity id = weight_det_identity(xs, bs);
        ++trials;
        same += id.lhs == id.rhs ? 1 : 0;
      } catch (const Error&) {
      }
    }
    rep.add("determinant identity over Q, n = " + std::to_string(n), trials > 0 && same == trials,
            std::to_string(same) + "/" + std::to_string(trials) + " random integer instantiations");
  }
  return rep;
}

inline SuiteReport verify_kazandzidis(const VerifyConfig& cfg) {
  using namespace verify_detail;
  SuiteReport rep{"kazandzidis", {}, 0};
  for (unsigned long p : primes_or(cfg, {3, 5, 7})) {
    long ok = 0, total = 0;
    std::string bad;
    for (unsigned long a = 1; a <= 40; ++a)
      for (unsigned long b = 1; b <= a; ++b)
        for (unsigned t = 0; t <= 2; ++t) {
          ++total;
          const KazandzidisResult r = kazandzidis_check(a, b, t, p);
          if (r.holds) ++ok;
          else if (bad.empty())
            bad = "; fails at (a, b, t) = (" + std::to_string(a) + ", " + std::to_string(b) + ", " + std::to_string(t) + ")";
        }
    rep.add("modified Kazandzidis bound, p = " + std::to_string(p), ok == total,
            std::to_string(ok) + "/" + std::to_string(total) + " triples" + bad);
  }
  return rep;
}

/// Ray limits of B_{d p^k - 1} and the integral of x^(j-3) psi'(1/x) recovered from them.
/// With k_max <= 3 the integral check uses only k <= 3; by default it extends to k = 4.
inline SuiteReport verify_ray_lp(const VerifyConfig& cfg) {
  using namespace verify_detail;
  SuiteReport rep{"ray-lp", {}, 0};
  const unsigned long p = cfg.p ? cfg.p : 5;
  const long j = 2, d_max = 8;
  const long k_rays = 3;
  const long k_int = cfg.k_max_given ? std::min(cfg.k_max, 4L) : 4;
  auto ctx = make_context(p, cfg.precision);
  const Arc arc = Arc::make(ctx, 1, 0);
  // the certified cut at k = 3 reaches B_1400, at k = 4 B_7000 (p = 5)
  BuiltinOptions opt;
  opt.bernoulli = bernoulli_cache(cfg, k_int >= 4 ? 7000 : 1400);
  const SeriesFunction f = builtin_bernoulli_psi(arc, j, opt);
  const RayLimitTable tab = ray_limits(f, arc, PathSequence::identity(), d_max, k_rays);
  for (const auto& [d, e] : tab.entries) {
    std::string rs;
    for (Val r : e.residuals) rs += val_str(r) + " ";
    const bool ok = e.exact_zero || (e.stabilized && e.strictly_improving);
    rep.add("ray d = " + std::to_string(d) + " stabilizes", ok,
            e.exact_zero ? "exactly zero" : "residuals " + rs + "(strictly increasing)");
  }
  const long n = static_cast<long>(p) - 1;
  const PadicNumber via = integrate_via_raylimits(tab, n, 0, ctx);
  // run the limit out to k_int and compare its last value; it is not expected to stabilize at tau
  LimitConfig lc = cfg.limit();
  lc.k_max = k_int;
  lc.target = cfg.precision;
  lc.strategy = EvalStrategy::automatic(cfg.target);
  IntegralResult r;
  try {
    r = integrate_limit(f, arc, PathSequence::identity(), lc);
  } catch (const NoConvergenceError& e) {
    r = e.result();
  }
  const Val agr = agreement(r.value, via);
  rep.add("integral agrees with the ray-limit L-value sum to >= 4", agr >= 4,
          "A(" + std::to_string(r.k_used) + ") agrees to v_p = " + val_str(agr) + " (value valuation " +
              val_str(r.value.valuation_lower_bound()) + ")");
  return rep;
}

inline SuiteReport verify_maxmod(const VerifyConfig& cfg) {
  using namespace verify_detail;
  SuiteReport rep{"maxmod", {}, 0};
  const unsigned long p = cfg.p ? cfg.p : 5;
  const long pl = static_cast<long>(p);
  auto ctx = make_context(p, cfg.precision);
  Rng rng(cfg.seed * 15485863 + p);
  for (int i = 0; i < 10; ++i) {
    std::vector<mpq_class> c;
    const long deg = rng.range(1, 5);
    for (long j = 0; j <= deg; ++j) {
      mpq_class q = rng.small_rational(30, 4);
      if (rng.range(0, 2) == 0) q *= pl;
      c.push_back(q);
    }
    const long rho = rng.range(0, 1);
    const mpq_class a = rng.range(-5, 5);
    mpq_class r = 1;
    for (long k = 0; k < rho; ++k) r *= pl;
    const Arc arc = Arc::make(ctx, a, a + r);
    const SeriesFunction f = from_rational(ExactRationalFunction(qpoly(c)), arc);
    std::vector<PadicNumber> bases;
    for (int s = 0; s < 6; ++s) bases.push_back(PadicNumber::from_rational(ctx, a + r * rng.range(-20, 20)));
    const MaxModulusReport m = max_modulus_check(f, PadicNumber::from_rational(ctx, a), rho, bases);
    std::string per;
    for (Val v : m.per_arc) per += val_str(v) + " ";
    rep.add("sup over every arc equals the disc maximum, sample " + std::to_string(i + 1), m.all_equal,
            "disc " + val_str(m.global) + ", arcs " + per);
  }
  return rep;
}

inline SuiteReport verify_substitution(const VerifyConfig& cfg) {
  using namespace verify_detail;
  SuiteReport rep{"substitution", {}, 0};
  const unsigned long p = cfg.p ? cfg.p : 5;
  const long pl = static_cast<long>(p);
  auto ctx = make_context(p, cfg.precision);
  struct Case {
    std::string name;
    QPoly map;
  };
  const std::vector<Case> maps{{"x = 1 + 3t", qpoly({1, 3})}, {"x = t + p t^2", qpoly({0, 1, mpq_class(pl)})}};
  const std::vector<std::pair<std::string, ExactRationalFunction>> fs{
      {"1/(x-3)", ExactRationalFunction(qpoly_const(1), qpoly({-3, 1}))},
      {"x^2 + 1/(x-2)^2 + 2/(x-" + std::to_string(pl) + ")",
       ExactRationalFunction(qpoly({0, 0, 1})) + ExactRationalFunction(qpoly({-2, 1})).pow(-2) +
           ExactRationalFunction(qpoly_const(2), qpoly({-pl, 1}))}};
  for (const auto& m : maps) {
    const Arc source = Arc::make(ctx, 0, 1);
    const mpq_class a = m.map(0), b = m.map(1);
    const Arc target = Arc::make(ctx, a, b);
    for (const auto& [fname, f] : fs) {
      const std::string name = m.name + ", f = " + fname;
      try {
        const SubstitutionReport r = check_substitution_invariance(f, target, m.map, source, 0, cfg.limit());
        const bool ok = r.agreement_closed >= cfg.precision - 2 && r.rhs_limit && r.rhs_limit->converged &&
                        r.agreement_limit >= cfg.target;
        rep.add(name, ok,
                "closed forms agree to " + val_str(r.agreement_closed) + ", limit over the source arc to " +
                    val_str(r.agreement_limit));
      } catch (const NoConvergenceError& e) {
        rep.add(name, false, e.what());
      }
    }
  }
  return rep;
}

/// Linearity, the max bound, strategy agreement, basepoint invariance, uniform limits, gap series.
inline SuiteReport verify_invariants(const VerifyConfig& cfg) {
  using namespace verify_detail;
  SuiteReport rep{"invariants", {}, 0};
  const unsigned long p = cfg.p ? cfg.p : 5;
  const long pl = static_cast<long>(p);
  auto ctx = make_context(p, cfg.precision);
  Rng rng(cfg.seed * 32452843 + p);
  const PathSequence id = PathSequence::identity();
  // linearity at fixed k, exactly
  {
    long ok = 0, total = 0;
    for (int i = 0; i < 10; ++i) {
      const mpq_class a = 0, b = 1;
      const Arc arc = Arc::make(ctx, a, b);
      const ExactRationalFunction f = random_rational(rng, a, b, p), g = random_rational(rng, a, b, p);
      const mpq_class s = rng.small_rational(5, 3);
      for (long k = 1; k <= 2; ++k) {
        ++total;
        const mpq_class lhs = direct_A(f + ExactRationalFunction::constant(s) * g, a, b, p, static_cast<unsigned>(k));
        const mpq_class rhs = direct_A(f, a, b, p, static_cast<unsigned>(k)) + s * direct_A(g, a, b, p, static_cast<unsigned>(k));
        const EvalResult ef = eval_A(from_rational(f, arc), arc, id, k, EvalStrategy::full());
        const EvalResult eg = eval_A(from_rational(g, arc), arc, id, k, EvalStrategy::full());
        const EvalResult es = eval_A(from_rational(f + ExactRationalFunction::constant(s) * g, arc), arc, id, k,
                                     EvalStrategy::full());
        const PadicNumber sp = PadicNumber::from_rational(ctx, s);
        const Val agr = agreement(es.value, ef.value + sp * eg.value);
        if (lhs == rhs && agr >= std::min(es.value.precision(), (ef.value + sp * eg.value).precision())) ++ok;
      }
    }
    rep.add("A(k) is linear in f", ok == total, std::to_string(ok) + "/" + std::to_string(total) + " (exact over Q and in Q_p)");
  }
  // |A(k)| <= M R for polynomials and rational functions bounded on the arc
  {
    long ok = 0, total = 0;
    for (int i = 0; i < 10; ++i) {
      const mpq_class a = rng.range(-3, 3);
      const mpq_class r = rng.range(0, 1) == 0 ? mpq_class(1) : mpq_class(pl);
      const Arc arc = Arc::make(ctx, a, a + r);
      std::vector<mpq_class> c;
      for (long j = 0; j <= 4; ++j) c.push_back(rng.small_rational(25, 3));
      const SeriesFunction f = from_rational(ExactRationalFunction(qpoly(c)), arc);
      const Val m = poly_sup_valuation(as_krasner(f).poly.taylor_shift(arc.b), arc.rho());
      for (long k = 1; k <= 3; ++k) {
        ++total;
        const EvalResult e = eval_A(f, arc, id, k, EvalStrategy::full());
        if (e.value.valuation_lower_bound() >= m + arc.rho()) ++ok;
      }
    }
    rep.add("|A(k)|_p <= M R", ok == total, std::to_string(ok) + "/" + std::to_string(total));
  }
  // truncation strategies agree with the full sum within their certified precision
  {
    long ok = 0, total = 0;
    Val lowest = kInfiniteVal;
    const Arc arc = Arc::make(ctx, 0, 1);
    const Arc arc10 = Arc::make(ctx, 1, 0);
    std::vector<std::pair<SeriesFunction, Arc>> fs{
        {from_rational(ExactRationalFunction(qpoly_const(1), qpoly({-3, 1})), arc), arc},
        {from_rational(ExactRationalFunction(qpoly({1, 2}), qpoly({-2, 0, 1})), arc), arc},
        {builtin_log1m(arc10), arc10},
        {builtin_artin_hasse_logderiv(arc10), arc10}};
    for (const auto& [f, ar] : fs)
      for (long k = 1; k <= 3; ++k) {
        const EvalResult full = eval_A(f, ar, id, k, EvalStrategy::full());
        std::vector<EvalStrategy> sts{EvalStrategy::truncated_standard(), EvalStrategy::truncated_to(12)};
        if (f.certificate() && f.certificate()->beta < 1) {  // filtering needs beta < 1
          sts.push_back(EvalStrategy::filtered(ThetaRule::HalfPhi));
          sts.push_back(EvalStrategy::filtered(ThetaRule::LogPhi, CutRule::ToPrecision, 12));
        }
        for (const EvalStrategy& st : sts) {
          ++total;
          const EvalResult e = eval_A(f, ar, id, k, st);
          const Val need = std::min(e.value.precision(), full.value.precision());
          lowest = std::min(lowest, need);
          if (agreement(e.value, full.value) >= need) ++ok;
        }
      }
    rep.add("truncated and filtered sums agree with the full sum within their bounds", ok == total,
            std::to_string(ok) + "/" + std::to_string(total) + " (lowest certified precision " + val_str(lowest) + ")");
  }
  // moving a and b by less than R leaves the integral unchanged
  {
    long ok = 0, total = 0;
    const Val prec = 10;
    for (long x0 : {3L, 2L, pl}) {
      const ExactRationalFunction f(qpoly_const(1), qpoly({-x0, 1}));
      for (const auto& [a2, b2] : std::vector<std::pair<long, long>>{{pl, 1 + pl}, {-pl, 1 + 2 * pl}, {2 * pl, 1 - pl}}) {
        ++total;
        LimitConfig lc = cfg.limit();
        lc.target = prec;
        const Arc a1 = Arc::make(ctx, 0, 1), a2r = Arc::make(ctx, a2, b2);
        try {
          const IntegralResult r1 = integrate_limit(from_rational(f, a1), a1, InterlockedFamily::phi(0), lc);
          const IntegralResult r2 = integrate_limit(from_rational(f, a2r), a2r, InterlockedFamily::phi(0), lc);
          if (agreement(r1.value, r2.value) >= prec) ++ok;
        } catch (const NoConvergenceError&) {
        }
      }
    }
    rep.add("integral is invariant under |a - a'|, |b - b'| < R", ok == total,
            std::to_string(ok) + "/" + std::to_string(total) + " at precision 10");
  }
  // f_i -> f uniformly on the arc implies the integrals converge
  {
    const Arc arc = Arc::make(ctx, 0, 1);
    const ExactRationalFunction tail(qpoly_const(1), qpoly({1, -pl}));  // 1/(1 - p x)
    const ExactRationalFunction pole(qpoly_const(1), qpoly({-3, 1}));
    const IntegralResult lim = integrate_limit(from_rational(tail + pole, arc), arc, InterlockedFamily::phi(0), cfg.limit());
    bool ok = lim.converged;
    std::string trail;
    for (long i = 1; i <= 8; ++i) {
      std::vector<mpq_class> partial;
      mpq_class pk = 1;
      for (long n = 0; n < i; ++n) {
        partial.push_back(pk);
        pk *= pl;
      }
      mpq_class eps = 1;
      for (long n = 0; n < i; ++n) eps *= pl;
      const ExactRationalFunction fi =
          ExactRationalFunction(qpoly(partial)) + ExactRationalFunction(qpoly_const(1), qpoly({-3 - eps, 1}));
      const IntegralResult ri = integrate_limit(from_rational(fi, arc), arc, InterlockedFamily::phi(0), cfg.limit());
      const Val agr = agreement(ri.value, lim.value);
      trail += val_str(std::min<Val>(agr, 99)) + " ";
      ok = ok && ri.converged && agr >= std::min<Val>(i, cfg.target);
    }
    rep.add("integrals of a uniformly convergent sequence converge", ok, "agreement by i: " + trail);
  }
  // the gap series needs its own schedule
  {
    auto c3 = make_context(p, cfg.precision);
    const Arc arc = Arc::make(c3, 1, 0);
    const SeriesFunction g = builtin_gap_series(arc, 2, 7);
    try {
      const IntegralResult r = integrate_limit(g, arc, PathSequence::power(0, 2), cfg.limit());
      const Val agr = agreement(r.value, PadicNumber::from_int(c3, -7));
      rep.add("gap series converges to -L under phi(k) = k^2", r.converged && agr >= cfg.target,
              "agreement with -L " + val_str(agr) + " at k = " + std::to_string(r.k_used));
    } catch (const NoConvergenceError& e) {
      rep.add("gap series converges to -L under phi(k) = k^2", false, e.what());
    }
    try {
      const IntegralResult r = integrate_limit(g, arc, id, cfg.limit());
      rep.add("gap series has no limit under phi(k) = k", false, "unexpectedly stabilized at k = " + std::to_string(r.k_used));
    } catch (const NoConvergenceError& e) {
      std::string rs;
      for (const auto& t : e.result().trace)
        if (t.residual != kInfiniteVal) rs += val_str(t.residual) + " ";
      rep.add("gap series has no limit under phi(k) = k", true, "residuals " + rs);
    }
  }
  return rep;
}

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"oracle",  "rational",    "artin-hasse", "zp",         "cauchy-disc",
                                              "cauchy-example-p5", "det-unit", "kazandzidis", "ray-lp", "maxmod",
                                              "substitution", "invariants"};
  return names;
}

inline SuiteReport run_suite(const std::string& name, const VerifyConfig& cfg) {
  static const std::map<std::string, std::function<SuiteReport(const VerifyConfig&)>> table{
      {"oracle", verify_oracle},
      {"rational", verify_rational},
      {"artin-hasse", verify_artin_hasse},
      {"zp", verify_zp},
      {"cauchy-disc", verify_cauchy_disc},
      {"cauchy-example-p5", verify_cauchy_example_p5},
      {"det-unit", [](const VerifyConfig& c) { return verify_det_unit(c); }},
      {"kazandzidis", verify_kazandzidis},
      {"ray-lp", verify_ray_lp},
      {"maxmod", verify_maxmod},
      {"substitution", verify_substitution},
      {"invariants", verify_invariants}};
  auto it = table.find(name);
  if (it == table.end()) fail(ErrorKind::UnknownSuite, "unknown suite '" + name + "'");
  const auto t0 = std::chrono::steady_clock::now();
  SuiteReport r = it->second(cfg);
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

}  // namespace padicline
