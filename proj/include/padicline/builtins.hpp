#pragma once

/**
 * @file builtins.hpp
 * @brief Series constructors: expansions of rational functions about b and the
 * named library functions.
 */

#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "bernoulli.hpp"
#include "series.hpp"

namespace padicline {

/// Taylor expansion of f = N/D about b. Coefficients come from the recurrence
/// e_n = N^_n - sum_i D^_i e_{n-i} in the scaled variable s = (x - b)/(a - b),
/// where the hats denote coefficients divided by D(b). Since D has no root with
/// |s| < 1, every D^_i is integral and the recurrence loses no precision.
inline SeriesFunction from_rational(const ExactRationalFunction& f, const Arc& arc) {
  if (!arc.rational()) fail(ErrorKind::InvalidArgument, "from_rational needs rational arc endpoints");
  const Ctx& ctx = arc.context();
  const unsigned long p = ctx->p();
  const mpq_class a = *arc.a_rational, b = *arc.b_rational, h = a - b;
  QPoly ns = f.num().taylor_shift(b).scale_var(h);
  QPoly ds = f.den().taylor_shift(b).scale_var(h);
  const mpq_class d0 = ds[0];
  if (d0 == 0) fail(ErrorKind::PoleInArc, "pole at the basepoint b");
  const Val v0 = valuation(d0, p);
  for (long i = 1; i <= ds.degree(); ++i) {
    const mpq_class di = ds[static_cast<std::size_t>(i)];
    if (di != 0 && valuation(di, p) < v0)
      fail(ErrorKind::PoleInArc, "denominator of " + f.to_string() + " vanishes inside " + arc.describe());
  }
  struct State {
    std::mutex mu;
    std::vector<PadicNumber> nh, dh, e, hpow_inv;
  };
  auto st = std::make_shared<State>();
  Val min_scaled = kInfiniteVal;
  for (long i = 0; i <= ns.degree(); ++i) {
    mpq_class c = ns[static_cast<std::size_t>(i)] / d0;
    st->nh.push_back(PadicNumber::from_rational(ctx, c));
    if (c != 0) min_scaled = std::min(min_scaled, valuation(c, p));
  }
  for (long i = 0; i <= ds.degree(); ++i)
    st->dh.push_back(PadicNumber::from_rational(ctx, mpq_class(ds[static_cast<std::size_t>(i)] / d0)));
  const PadicNumber hinv = PadicNumber::from_rational(ctx, mpq_class(1 / h));
  auto extend = [st, ctx, hinv](std::int64_t n) {
    while (static_cast<std::int64_t>(st->e.size()) <= n) {
      const std::size_t k = st->e.size();
      PadicNumber s = k < st->nh.size() ? st->nh[k] : PadicNumber::zero(ctx);
      for (std::size_t i = 1; i < st->dh.size() && i <= k; ++i) s -= st->dh[i] * st->e[k - i];
      st->e.push_back(s);
      st->hpow_inv.push_back(k == 0 ? PadicNumber::one(ctx) : st->hpow_inv.back() * hinv);
    }
  };
  auto oracle = [st, extend](std::int64_t n) {
    std::lock_guard<std::mutex> lock(st->mu);
    extend(n);
    const auto i = static_cast<std::size_t>(n);
    return st->e[i] * st->hpow_inv[i];
  };
  auto scaled = [st, extend](std::int64_t n) {
    std::lock_guard<std::mutex> lock(st->mu);
    extend(n);
    return st->e[static_cast<std::size_t>(n)];
  };
  Certificate cert;
  cert.log_m = min_scaled == kInfiniteVal ? 0.0 : -static_cast<double>(min_scaled);
  cert.beta = 0;
  cert.n0 = 0;
  cert.rho = valuation(h, p);
  SeriesFunction s(ctx, arc.b, oracle, cert, "rat:" + f.to_string());
  s.with_rational(f);
  s.with_scaled(scaled, PadicNumber::from_rational(ctx, h));
  if (f.is_polynomial()) s.with_degree_bound(f.num().degree() < 0 ? 0 : f.num().degree());
  return s;
}

/// Polynomial given by its coefficients about b.
inline SeriesFunction from_polynomial_about(const PPoly& g, const PadicNumber& b, const Arc& arc, std::string name) {
  const Ctx& ctx = arc.context();
  Val rho = arc.rho();
  Val mn = kInfiniteVal;
  for (std::size_t i = 0; i < g.coeffs().size(); ++i)
    if (!g.coeffs()[i].is_zero()) mn = std::min(mn, g.coeffs()[i].valuation() + static_cast<Val>(i) * rho);
  Certificate cert{mn == kInfiniteVal ? 0.0 : -static_cast<double>(mn), 0.0, 0, rho};
  auto oracle = [g, ctx](std::int64_t n) {
    return static_cast<std::size_t>(n) < g.coeffs().size() ? g.coeffs()[static_cast<std::size_t>(n)]
                                                             : PadicNumber::zero(ctx);
  };
  SeriesFunction s(ctx, b, oracle, cert, std::move(name));
  s.with_degree_bound(std::max<long>(g.degree(), 0));
  return s;
}

struct BuiltinOptions {
  std::shared_ptr<BernoulliCache> bernoulli;  ///< shared cache; created on demand when null
  std::size_t bernoulli_nmax = BernoulliCache::kDefaultMax;
};

namespace detail {

inline void require_unit_arc_at_zero(const Arc& arc, const std::string& name) {
  if (!arc.b.is_zero() || arc.rho() != 0)
    fail(ErrorKind::IncompatibleArc, name + " is expanded about 0 and needs an arc with b = 0 and |a|_p = 1");
}

inline std::optional<std::int64_t> next_pow_minus_one(std::int64_t n, unsigned long p,
                                                      const std::function<long(long)>& exponent_of_t, long t0) {
  for (long t = t0; t < 64; ++t) {
    const long e = exponent_of_t(t);
    double approx = std::pow(static_cast<double>(p), static_cast<double>(e));
    if (approx > 9e18) return std::nullopt;
    std::int64_t v = 1;
    for (long i = 0; i < e; ++i) v *= static_cast<std::int64_t>(p);
    if (v - 1 >= n) return v - 1;
  }
  return std::nullopt;
}

}  // namespace detail

/// log(1 - x) = -sum_{n>=1} x^n / n.
inline SeriesFunction builtin_log1m(const Arc& arc) {
  detail::require_unit_arc_at_zero(arc, "log1m");
  const Ctx ctx = arc.context();
  auto oracle = [ctx](std::int64_t n) {
    if (n == 0) return PadicNumber::zero(ctx);
    return PadicNumber::from_rational(ctx, mpq_class(-1, static_cast<unsigned long>(n)));
  };
  return SeriesFunction(ctx, arc.b, oracle, Certificate{0.0, 1.0, 0, 0}, "log1m");
}

/// E'(x)/E(x) for the Artin-Hasse exponential: sum_{t>=0} x^(p^t - 1).
inline SeriesFunction builtin_artin_hasse_logderiv(const Arc& arc) {
  detail::require_unit_arc_at_zero(arc, "artin_hasse");
  const Ctx ctx = arc.context();
  const unsigned long p = ctx->p();
  auto is_pm1 = [p](std::int64_t n) {
    std::int64_t m = n + 1;
    while (m % static_cast<std::int64_t>(p) == 0) m /= static_cast<std::int64_t>(p);
    return m == 1;
  };
  auto oracle = [ctx, is_pm1](std::int64_t n) {
    return is_pm1(n) ? PadicNumber::one(ctx) : PadicNumber::zero(ctx);
  };
  SeriesFunction s(ctx, arc.b, oracle, Certificate{0.0, 0.0, 0, 0}, "artin_hasse_logderiv");
  s.with_support([p](std::int64_t n) { return detail::next_pow_minus_one(n, p, [](long t) { return t; }, 0); });
  return s;
}

/// (1 + x)^t for p-integral rational t.
inline SeriesFunction builtin_binom_t(const Arc& arc, const mpq_class& t) {
  detail::require_unit_arc_at_zero(arc, "binom_t");
  const Ctx ctx = arc.context();
  if (valuation(t, ctx->p()) < 0) fail(ErrorKind::InvalidArgument, "binom_t needs t in Z_p");
  struct State {
    std::mutex mu;
    std::vector<mpq_class> c{mpq_class(1)};
  };
  auto st = std::make_shared<State>();
  auto oracle = [st, ctx, t](std::int64_t n) {
    std::lock_guard<std::mutex> lock(st->mu);
    while (static_cast<std::int64_t>(st->c.size()) <= n) {
      const auto k = static_cast<long>(st->c.size());
      mpq_class next = st->c.back() * (t - (k - 1)) / k;
      st->c.push_back(next);
    }
    return PadicNumber::from_rational(ctx, st->c[static_cast<std::size_t>(n)]);
  };
  return SeriesFunction(ctx, arc.b, oracle, Certificate{0.0, 0.0, 0, 0}, "binom_t:" + t.get_str());
}

/// x^(j-3) psi'(1/x) = sum_{n >= j-2} B_{n-j+2} x^n.
inline SeriesFunction builtin_bernoulli_psi(const Arc& arc, long j, const BuiltinOptions& opt = {}) {
  detail::require_unit_arc_at_zero(arc, "bernoulli_psi");
  if (j < 2) fail(ErrorKind::InvalidArgument, "bernoulli_psi needs j >= 2");
  const Ctx ctx = arc.context();
  auto cache = opt.bernoulli ? opt.bernoulli : std::make_shared<BernoulliCache>(opt.bernoulli_nmax);
  auto oracle = [ctx, cache, j](std::int64_t n) {
    if (n < j - 2) return PadicNumber::zero(ctx);
    return PadicNumber::from_rational(ctx, cache->get(static_cast<std::size_t>(n - j + 2)));
  };
  // von Staudt-Clausen: v_p(B_m) >= -1
  SeriesFunction s(ctx, arc.b, oracle, Certificate{1.0, 0.0, 0, 0}, "bernoulli_psi:" + std::to_string(j));
  s.with_max_index(static_cast<std::int64_t>(cache->nmax()) + j - 2);
  return s;
}

/// sum_{t>=1} L (a-b)^-(p^(t^mu)) (x - b)^(p^(t^mu) - 1): a lacunary series whose
/// coefficients are tuned to the path phi(k) = k^mu.
inline SeriesFunction builtin_gap_series(const Arc& arc, long mu, const mpq_class& limit) {
  if (arc.rho() != 0) fail(ErrorKind::IncompatibleArc, "gap_series needs |a - b|_p = 1");
  if (mu < 1 || mu > 3) fail(ErrorKind::InvalidArgument, "gap_series supports mu in 1..3");
  const Ctx ctx = arc.context();
  const unsigned long p = ctx->p();
  const PadicNumber L = PadicNumber::from_rational(ctx, limit);
  const PadicNumber h = arc.a - arc.b;
  auto support = [p, mu](std::int64_t n) {
    return detail::next_pow_minus_one(
        n, p,
        [mu](long t) {
          long r = 1;
          for (long i = 0; i < mu; ++i) r *= t;
          return r;
        },
        1);
  };
  auto oracle = [ctx, L, h, support](std::int64_t n) {
    auto nx = support(n);
    if (!nx || *nx != n) return PadicNumber::zero(ctx);
    return L * h.pow(mpz_class(-(n + 1)));
  };
  const double log_m = limit == 0 ? 0.0 : -static_cast<double>(valuation(limit, p));
  SeriesFunction s(ctx, arc.b, oracle, Certificate{log_m, 0.0, 0, 0},
                   "gap_series:" + std::to_string(mu) + ":" + limit.get_str());
  s.with_support(support);
  return s;
}

}  // namespace padicline
