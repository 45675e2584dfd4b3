#pragma once

/**
 * @file series_tools.hpp
 * @brief Recentering a series at a new basepoint, sup norms of polynomials on
 * discs, and the disc automorphism test for polynomial maps.
 */

#include <algorithm>
#include <cmath>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "binomial.hpp"
#include "polynomial.hpp"
#include "series.hpp"

namespace padicline {

namespace detail {

/// Lower bound on v_p(c_{n+m} C(n+m, n) t^m) over m > window, given
/// v_p(c_j) >= scaled_bound(j) - j rho and e = v_p(t) - rho >= 1.
inline Val recenter_tail_bound(const Certificate& c, unsigned long p, Val rho, Val vt, std::int64_t n,
                               std::int64_t window) {
  const double e = static_cast<double>(vt - rho);
  const double lp = std::log(static_cast<double>(p));
  double m = static_cast<double>(window + 1);
  if (c.beta > 0) m = std::max(m, c.beta / (e * lp) - static_cast<double>(n));
  const double g = -c.log_m - c.beta * std::log(static_cast<double>(n) + m) / lp - static_cast<double>(n * rho) + m * e;
  return static_cast<Val>(std::ceil(g - 1e-9));
}

}  // namespace detail

/// Coefficients about b_new: c'_n = sum_{m=0}^{window} c_{n+m} C(n+m, n) t^m with
/// t = b_new - b. Each c'_n carries the precision of the truncated sum, capped by
/// the certificate tail bound.
inline SeriesFunction recenter(const SeriesFunction& f, const Arc& arc, const PadicNumber& b_new, std::int64_t window) {
  if (window < 1) fail(ErrorKind::InvalidArgument, "window must be positive");
  const Ctx& ctx = arc.context();
  const Val rho = arc.rho();
  const PadicNumber t = b_new - f.center();
  if (!t.is_zero() && t.valuation() <= rho)
    fail(ErrorKind::BasepointOutsideArc, "new basepoint is not in " + arc.describe());
  const auto deg = f.degree_bound();
  const auto& cert = f.certificate();
  if (!deg && !cert) fail(ErrorKind::NoCertificate, f.name() + " has no certificate to bound the recentering tail");
  if (!deg && window < cert->n0) fail(ErrorKind::InvalidArgument, "window must cover the certificate's n0");
  auto oracle = [f, t, window, deg, cert, rho, ctx](std::int64_t n) {
    if (t.is_zero()) return f.coeff(n);
    PadicNumber s = PadicNumber::zero(ctx);
    PadicNumber tm = PadicNumber::one(ctx);
    std::int64_t last = n + window;
    if (deg) last = std::min(last, *deg);
    for (std::int64_t j = n; j <= last; ++j) {
      s += f.coeff(j) * binom_mod_pN(j, n, ctx) * tm;
      tm *= t;
    }
    if (deg && n + window >= *deg) return s;
    if (!cert) fail(ErrorKind::NoCertificate, "window too short for an uncertified polynomial");
    return s.truncated(detail::recenter_tail_bound(*cert, ctx->p(), rho, t.valuation(), n, window));
  };
  SeriesFunction out(ctx, b_new, oracle, cert, f.name() + "@recentered");
  if (deg) out.with_degree_bound(*deg);
  return out;
}

/// max_n |g_n|_p R^n as a valuation: min_n v_p(g_n) + n rho.
inline Val poly_sup_valuation(const PPoly& g, Val rho) {
  Val best = kInfiniteVal;
  for (std::size_t n = 0; n < g.coeffs().size(); ++n)
    if (!g.coeffs()[n].is_zero())
      best = std::min(best, g.coeffs()[n].valuation() + static_cast<Val>(n) * rho);
  return best;
}

struct AutomorphismCheck {
  bool is_automorphism = false;
  PadicNumber gamma;
  PPoly g;                 ///< higher-order part, coefficients in powers of (t - a1)
  Val g_sup_valuation = kInfiniteVal;
};

/// map = a + gamma (t - a1) + g(t); one-to-one from D+(a1, p^-rho1) onto D+(a, p^-rho)
/// iff |gamma| = r/R and sup |g| < r on the source disc.
inline AutomorphismCheck check_disc_automorphism(const PPoly& map, const PadicNumber& a1, Val rho1,
                                                 const PadicNumber& a, Val rho) {
  const Ctx& ctx = a.context();
  PPoly shifted = map.taylor_shift(a1);
  const PadicNumber c0 = shifted[0];
  if (!(c0 - a).is_zero()) fail(ErrorKind::CenterMismatch, "map(a1) differs from a");
  AutomorphismCheck r;
  r.gamma = shifted[1];
  std::vector<PadicNumber> rest(shifted.coeffs().size() > 2 ? shifted.coeffs().size() : 0, PadicNumber::zero(ctx));
  for (std::size_t i = 2; i < shifted.coeffs().size(); ++i) rest[i] = shifted.coeffs()[i];
  r.g = PPoly(std::move(rest), PadicNumber::zero(ctx));
  r.g_sup_valuation = poly_sup_valuation(r.g, rho1);
  const bool gamma_ok = !r.gamma.is_zero() && r.gamma.valuation() == rho - rho1;
  r.is_automorphism = gamma_ok && r.g_sup_valuation > rho;
  return r;
}

}  // namespace padicline
