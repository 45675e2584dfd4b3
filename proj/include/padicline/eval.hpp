#pragma once

/**
 * @file eval.hpp
 * @brief The level-k sum A_{f,phi}(k) = p^-phi sum_zeta (x - a) f(x) over
 * x = a + (b - a) zeta, zeta^(p^phi) = 1.
 *
 * Two routes. The series route uses
 *   A = -sum_{n >= P-1} c_n (a-b)^(n+1) sum_{j>=1} (-1)^(j-1) C(n, jP - 1),  P = p^phi,
 * truncated and optionally filtered with bounds from the coefficient
 * certificate. The root-sum route evaluates the sum exactly for a function
 * given by partial fractions.
 */

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "binomial.hpp"
#include "partial_fractions.hpp"
#include "series.hpp"

namespace padicline {

enum class EvalKind { Auto, Full, Truncated, Filtered, RootSum };
/// Standard: n_k = (1 + floor((beta + 2)(p - 1) phi / p)) p^phi. ToPrecision: the first cut whose tail bound reaches the goal.
enum class CutRule { Standard, ToPrecision };
enum class ThetaRule { HalfPhi, LogPhi, Custom };

inline const char* eval_kind_name(EvalKind k) {
  switch (k) {
    case EvalKind::Auto: return "auto";
    case EvalKind::Full: return "full";
    case EvalKind::Truncated: return "truncated";
    case EvalKind::Filtered: return "filtered";
    case EvalKind::RootSum: return "rootsum";
  }
  return "?";
}

struct EvalStrategy {
  EvalKind kind = EvalKind::Auto;
  CutRule cut = CutRule::ToPrecision;
  Val goal = -1;  ///< ToPrecision target; -1 means the context precision
  ThetaRule theta = ThetaRule::HalfPhi;
  std::function<long(long k, long phi)> custom_theta;
  std::int64_t max_terms = 20'000'000;

  static EvalStrategy automatic(Val goal = -1) { return with(EvalKind::Auto, CutRule::ToPrecision, goal); }
  static EvalStrategy full() { return with(EvalKind::Full, CutRule::ToPrecision, -1); }
  static EvalStrategy truncated_standard() { return with(EvalKind::Truncated, CutRule::Standard, -1); }
  static EvalStrategy truncated_to(Val goal) { return with(EvalKind::Truncated, CutRule::ToPrecision, goal); }
  static EvalStrategy filtered(ThetaRule t, CutRule c = CutRule::Standard, Val goal = -1) {
    EvalStrategy s = with(EvalKind::Filtered, c, goal);
    s.theta = t;
    return s;
  }
  static EvalStrategy root_sum() { return with(EvalKind::RootSum, CutRule::ToPrecision, -1); }

  long theta_of(long k, long phi, unsigned long p) const {
    switch (theta) {
      case ThetaRule::HalfPhi: return 1 + phi / 2;
      case ThetaRule::LogPhi: {
        long t = 0;
        for (long m = k; m >= static_cast<long>(p); m /= static_cast<long>(p)) ++t;
        return t;
      }
      case ThetaRule::Custom:
        if (!custom_theta) fail(ErrorKind::InvalidArgument, "custom theta rule without a function");
        return custom_theta(k, phi);
    }
    return 0;
  }

  std::string describe() const {
    std::string s = eval_kind_name(kind);
    if (kind == EvalKind::Truncated || kind == EvalKind::Filtered)
      s += cut == CutRule::Standard ? "[standard]" : "[goal=" + std::to_string(goal) + "]";
    if (kind == EvalKind::Filtered)
      s += theta == ThetaRule::HalfPhi ? "[theta=half]" : theta == ThetaRule::LogPhi ? "[theta=log]" : "[theta=custom]";
    return s;
  }

 private:
  static EvalStrategy with(EvalKind k, CutRule c, Val goal) {
    EvalStrategy s;
    s.kind = k;
    s.cut = c;
    s.goal = goal;
    return s;
  }
};

struct EvalResult {
  PadicNumber value;
  EvalKind used = EvalKind::Auto;
  std::int64_t n_cut = 0;          ///< series route: indices n < n_cut were summed
  Val tail_bound = kInfiniteVal;   ///< lower bound on v_p of the omitted tail
  Val filter_bound = kInfiniteVal; ///< lower bound on v_p of the filtered-out terms
  std::int64_t terms = 0;
};

namespace detail {

inline std::int64_t level_size(unsigned long p, long phi) {
  if (phi < 0) fail(ErrorKind::InvalidArgument, "negative level");
  std::int64_t P = 1;
  for (long i = 0; i < phi; ++i) {
    if (P > (std::int64_t{1} << 40) / static_cast<std::int64_t>(p))
      fail(ErrorKind::LevelTooLarge, "p^phi too large for the series route (phi = " + std::to_string(phi) + ")");
    P *= static_cast<std::int64_t>(p);
  }
  return P;
}

/// Lower bound on v_p(c_n (a-b)^(n+1) S(n)) over all n >= n_cut, S(n) the
/// alternating binomial sum; uses v_p(S(n)) >= max(0, ceil(n p / (P (p-1))) - phi).
inline Val series_tail_bound(const Certificate& c, unsigned long p, long phi, std::int64_t P, Val rho,
                             std::int64_t n_cut) {
  const double lp = std::log(static_cast<double>(p));
  const double slope = static_cast<double>(p) / (static_cast<double>(P) * static_cast<double>(p - 1));
  const double n_c = static_cast<double>(phi) / slope;
  const double n_star = c.beta > 0 ? c.beta / (slope * lp) : 0.0;
  double n = std::max(static_cast<double>(std::max<std::int64_t>(n_cut, 1)), n_star > n_c ? n_star : n_c);
  double h = -c.beta * std::log(n) / lp + std::max(0.0, n * slope - static_cast<double>(phi));
  return static_cast<Val>(std::ceil(-c.log_m + static_cast<double>(rho) + h - 1e-9));
}

/// C(n, jP - 1) for j = 1..floor((n+1)/P), by one pass of running products of
/// p-free parts. O(n) multiplications modulo p^N.
inline std::vector<PadicNumber> binomial_row_walk(std::int64_t n, std::int64_t P, const Ctx& ctx) {
  const unsigned long p = ctx->p();
  const mpz_class& mod = ctx->pow_ref(ctx->precision());
  std::vector<PadicNumber> out;
  mpz_class num = 1, den = 1, tmp;
  Val v = 0;
  const std::int64_t jmax = (n + 1) / P;
  std::int64_t next = P - 1;
  for (std::int64_t i = 0; i <= n && static_cast<std::int64_t>(out.size()) < jmax; ++i) {
    if (i > 0) {
      auto up = static_cast<std::uint64_t>(n - i + 1), dn = static_cast<std::uint64_t>(i);
      while (up % p == 0) {
        up /= p;
        ++v;
      }
      while (dn % p == 0) {
        dn /= p;
        --v;
      }
      if (up != 1) {
        mpz_mul_ui(num.get_mpz_t(), num.get_mpz_t(), up);
        mpz_mod(num.get_mpz_t(), num.get_mpz_t(), mod.get_mpz_t());
      }
      if (dn != 1) {
        mpz_mul_ui(den.get_mpz_t(), den.get_mpz_t(), dn);
        mpz_mod(den.get_mpz_t(), den.get_mpz_t(), mod.get_mpz_t());
      }
    }
    if (i == next) {
      if (v >= ctx->precision()) {
        out.push_back(PadicNumber::zero(ctx));
      } else {
        mpz_invert(tmp.get_mpz_t(), den.get_mpz_t(), mod.get_mpz_t());
        out.push_back(PadicNumber::from_parts(ctx, v, num * tmp, ctx->precision()));
      }
      next += P;
    }
  }
  return out;
}

inline constexpr std::int64_t kDenseTableLimit = std::int64_t{1} << 20;

}  // namespace detail

/// sum_{j>=1} (-1)^(j-1) C(n, jP - 1), exact mod p^N.
inline PadicNumber alternating_binomial_sum(std::int64_t n, std::int64_t P, const Ctx& ctx, bool use_table) {
  PadicNumber s = PadicNumber::zero(ctx);
  if (use_table) {
    auto table = factorial_table(ctx);
    int sign = 1;
    for (std::int64_t k = P - 1; k <= n; k += P, sign = -sign) {
      PadicNumber c = table->binom(n, k);
      s = sign > 0 ? s + c : s - c;
    }
    return s;
  }
  int sign = 1;
  for (const auto& c : detail::binomial_row_walk(n, P, ctx)) {
    s = sign > 0 ? s + c : s - c;
    sign = -sign;
  }
  return s;
}

/// Series route. `k` only matters for the LogPhi filter rule.
inline EvalResult eval_series(const SeriesFunction& f, const Arc& arc, long phi, long k, const EvalStrategy& st) {
  const Ctx& ctx = arc.context();
  const unsigned long p = ctx->p();
  const Val N = ctx->precision();
  if (!(f.center() - arc.b).is_zero())
    fail(ErrorKind::IncompatibleArc, f.name() + " is not expanded about the arc basepoint");
  const std::int64_t P = detail::level_size(p, phi);
  const Val rho = arc.rho();
  const PadicNumber h = arc.a - arc.b;
  const std::int64_t start = P - 1;

  EvalResult r;
  r.used = st.kind;
  const auto deg = f.degree_bound();
  const auto& cert = f.certificate();

  std::int64_t n_cut = 0;
  if (deg && (st.kind == EvalKind::Full || st.kind == EvalKind::Auto || !cert)) {
    if (st.kind == EvalKind::Auto) r.used = EvalKind::Full;
    n_cut = *deg + 1;
  } else {
    if (!cert) fail(ErrorKind::CertificateRequired, f.name() + " has no coefficient certificate");
    if (st.kind == EvalKind::Filtered && cert->beta >= 1)
      fail(ErrorKind::BetaTooLarge, "filtering needs beta < 1, " + f.name() + " has beta = " + std::to_string(cert->beta));
    if (st.kind == EvalKind::Auto) r.used = EvalKind::Truncated;
    const bool standard = st.kind != EvalKind::Full && st.kind != EvalKind::Auto && st.cut == CutRule::Standard;
    if (standard) {
      const double m = 1 + std::floor((cert->beta + 2) * static_cast<double>(p - 1) * static_cast<double>(phi) /
                                      static_cast<double>(p));
      n_cut = static_cast<std::int64_t>(m) * P;
      if (f.max_index() && n_cut - 1 > *f.max_index())
        fail(ErrorKind::IndexTooLarge, f.name() + " cannot supply coefficients up to " + std::to_string(n_cut - 1));
    } else {
      const Val goal = (st.kind == EvalKind::Full || st.goal < 0) ? N : std::min(st.goal, N);
      std::int64_t lo = 1, hi = 1;
      auto ok = [&](std::int64_t m) { return detail::series_tail_bound(*cert, p, phi, P, rho, m * P) >= goal; };
      while (!ok(hi)) {
        lo = hi + 1;
        hi *= 2;
        if (hi * P > st.max_terms * 4) fail(ErrorKind::LevelTooLarge, "tail bound needs too many terms");
      }
      while (lo < hi) {
        std::int64_t mid = (lo + hi) / 2;
        if (ok(mid)) hi = mid; else lo = mid + 1;
      }
      n_cut = hi * P;
      if (f.max_index() && n_cut - 1 > *f.max_index()) n_cut = *f.max_index() + 1;
    }
    n_cut = std::max<std::int64_t>(n_cut, cert->n0 + 1);
    r.tail_bound = detail::series_tail_bound(*cert, p, phi, P, rho, n_cut);
    if (deg && n_cut > *deg) r.tail_bound = kInfiniteVal;
  }
  r.n_cut = n_cut;

  long theta = 0;
  std::int64_t ptheta = 1;
  if (st.kind == EvalKind::Filtered) {
    theta = std::max(0L, std::min(st.theta_of(k, phi, p), phi));
    ptheta = detail::level_size(p, theta);
    if (theta > 0 && n_cut - 1 > std::max<std::int64_t>(cert->n0, start))
      r.filter_bound = cert->scaled_bound(n_cut - 1, p) + rho + phi - theta + 1;
  }

  const bool use_table = !f.sparse() && n_cut <= detail::kDenseTableLimit;
  if (!f.sparse() && !use_table)
    fail(ErrorKind::LevelTooLarge, "dense series route needs indices up to " + std::to_string(n_cut));

  PadicNumber acc = PadicNumber::zero(ctx);
  std::int64_t hp_index = -1;
  PadicNumber hp = PadicNumber::one(ctx);
  for (std::int64_t n = start; n < n_cut;) {
    auto nx = f.next_support(n);
    if (!nx || *nx >= n_cut) break;
    n = *nx;
    if (theta > 0 && n > cert->n0 && (n + 1) % ptheta != 0) {
      n = ((n + 1) / ptheta + 1) * ptheta - 1;
      continue;
    }
    if (++r.terms > st.max_terms) fail(ErrorKind::LevelTooLarge, "term budget exhausted");
    if (auto sc = f.scaled_coeff(n, h)) {
      acc += *sc * h * alternating_binomial_sum(n, P, ctx, use_table);
      ++n;
      continue;
    }
    PadicNumber c = f.coeff(n);
    if (c.is_zero() && c.precision() >= N) {
      ++n;
      continue;
    }
    if (hp_index >= 0 && n + 1 - hp_index <= 8) {
      for (; hp_index < n + 1; ++hp_index) hp *= h;
    } else {
      hp = h.pow(mpz_class(static_cast<long>(n + 1)));
      hp_index = n + 1;
    }
    acc += c * hp * alternating_binomial_sum(n, P, ctx, use_table);
    ++n;
  }
  r.value = (-acc).truncated(std::min(r.tail_bound, r.filter_bound));
  return r;
}

namespace detail {

/// Power series quotient num/den to `terms` coefficients.
inline std::vector<PadicNumber> series_divide(const std::vector<PadicNumber>& num, const std::vector<PadicNumber>& den,
                                              std::size_t terms, const Ctx& ctx) {
  std::vector<PadicNumber> q;
  for (std::size_t i = 0; i < terms; ++i) {
    PadicNumber s = i < num.size() ? num[i] : PadicNumber::zero(ctx);
    for (std::size_t j = 1; j <= i && j < den.size(); ++j) s -= den[j] * q[i - j];
    q.push_back(s / den[0]);
  }
  return q;
}

/// Exact rational binomial C(top, i) for big `top`.
inline mpq_class binom_big(const mpz_class& top, long i) {
  mpq_class r = 1;
  for (long l = 0; l < i; ++l) r *= mpq_class(top - l, mpz_class(l + 1));
  r.canonicalize();
  return r;
}

}  // namespace detail

/// p^-phi sum_zeta (x - x0)^-m over the sample points, m = 0..order.
/// T_0 = 1; T_m = -(b-a)^-m [t^(m-1)] (w+t)^(P-1) / ((w+t)^P - 1) with w = (x0-a)/(b-a).
inline std::vector<PadicNumber> pole_power_sums(const PadicNumber& x0, const Arc& arc, const mpz_class& P, int order) {
  const Ctx& ctx = arc.context();
  const PadicNumber hb = arc.b - arc.a;
  const PadicNumber w = (x0 - arc.a) / hb;
  const auto terms = static_cast<std::size_t>(order);
  std::vector<PadicNumber> g;
  if (w.valuation_lower_bound() >= 0) {
    std::vector<PadicNumber> num, den;
    for (std::size_t i = 0; i < terms; ++i) {
      mpq_class c1 = detail::binom_big(P - 1, static_cast<long>(i));
      mpq_class c2 = detail::binom_big(P, static_cast<long>(i));
      num.push_back(PadicNumber::from_rational(ctx, c1) * w.pow(mpz_class(P - 1 - static_cast<long>(i))));
      den.push_back(i == 0 ? w.pow(P) - PadicNumber::one(ctx)
                           : PadicNumber::from_rational(ctx, c2) * w.pow(mpz_class(P - static_cast<long>(i))));
    }
    if (den[0].is_zero())
      fail(ErrorKind::PoleOnSampleSet, "pole " + x0.to_compact() + " is a sample point at this level");
    g = detail::series_divide(num, den, terms, ctx);
  } else {
    const PadicNumber v = w.inverse();
    const PadicNumber vP = v.pow(P);
    std::vector<PadicNumber> a, d;
    PadicNumber vi = PadicNumber::one(ctx);
    for (std::size_t i = 0; i < terms; ++i) {
      a.push_back((i % 2 ? -v : v) * vi);
      mpq_class bi = detail::binom_big(P + static_cast<long>(i) - 1, static_cast<long>(i));
      if (i % 2) bi = -bi;
      PadicNumber b = PadicNumber::from_rational(ctx, bi) * vi;
      d.push_back(i == 0 ? PadicNumber::one(ctx) - vP : -(vP * b));
      vi *= v;
    }
    if (d[0].is_zero())
      fail(ErrorKind::PoleOnSampleSet, "pole " + x0.to_compact() + " is a sample point at this level");
    g = detail::series_divide(a, d, terms, ctx);
  }
  std::vector<PadicNumber> T{PadicNumber::one(ctx)};
  PadicNumber hinv = hb.inverse(), hm = hinv;
  for (std::size_t m = 1; m <= terms; ++m) {
    T.push_back(-(hm * g[m - 1]));
    hm *= hinv;
  }
  return T;
}

/// Exact A_{f,phi}(k) for f in partial-fraction form.
inline PadicNumber eval_root_sum(const PadicPartialFractions& pf, const Arc& arc, long phi) {
  const Ctx& ctx = arc.context();
  if (phi < 0) fail(ErrorKind::InvalidArgument, "negative level");
  mpz_class P;
  mpz_ui_pow_ui(P.get_mpz_t(), ctx->p(), static_cast<unsigned long>(phi));
  const PadicNumber hb = arc.b - arc.a;
  PadicNumber acc = PadicNumber::zero(ctx);
  if (!pf.poly.is_zero()) {
    PPoly q = pf.poly.taylor_shift(arc.a);
    for (std::size_t n = 0; n < q.coeffs().size(); ++n)
      if (mpz_divisible_p(mpz_class(static_cast<unsigned long>(n + 1)).get_mpz_t(), P.get_mpz_t()))
        acc += q.coeffs()[n] * hb.pow(mpz_class(static_cast<unsigned long>(n + 1)));
  }
  for (const auto& pl : pf.poles) {
    if (arc.contains(pl.x0))
      fail(ErrorKind::PoleInArc, "pole " + pl.x0.to_compact() + " lies in " + arc.describe());
    const int order = pl.order();
    if (order == 0) continue;
    auto T = pole_power_sums(pl.x0, arc, P, order);
    const PadicNumber d = pl.x0 - arc.a;
    for (int m = 1; m <= order; ++m) {
      const auto i = static_cast<std::size_t>(m);
      acc += pl.coeffs[i - 1] * (T[i - 1] + d * T[i]);
    }
  }
  return acc;
}

/// Partial fractions of a rational series, computed once per series object.
inline std::shared_ptr<const PadicPartialFractions> rational_parts(const SeriesFunction& f, const Ctx& ctx) {
  if (!f.rational()) return nullptr;
  return std::make_shared<const PadicPartialFractions>(partial_fractions(*f.rational(), ctx));
}

/// A_{f,phi}(k). Auto picks the root-sum route for rational f, the full sum for
/// polynomials given by coefficients, and the certified truncation otherwise.
inline EvalResult eval_A(const SeriesFunction& f, const Arc& arc, const PathSequence& path, long k,
                         const EvalStrategy& st = {},
                         const std::shared_ptr<const PadicPartialFractions>& parts = nullptr) {
  if (k < path.k0()) fail(ErrorKind::InvalidArgument, "k below the first valid index of " + path.describe());
  const long phi = path(k);
  if (st.kind == EvalKind::RootSum || (st.kind == EvalKind::Auto && f.rational())) {
    auto pf = parts ? parts : rational_parts(f, arc.context());
    if (!pf) fail(ErrorKind::InvalidArgument, "root-sum route needs a rational function");
    EvalResult r;
    r.used = EvalKind::RootSum;
    r.value = eval_root_sum(*pf, arc, phi);
    return r;
  }
  return eval_series(f, arc, phi, k, st);
}

}  // namespace padicline
