#pragma once

/**
 * @file closed_form.hpp
 * @brief Closed-form integrals of rational and Laurent data, and the
 * zero/pole count.
 */

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "partial_fractions.hpp"
#include "series.hpp"
#include "teichmuller.hpp"

namespace padicline {

/// Integral of 1/(x - x0) over A(center, base):
/// 1 if |x0 - center| < R, 1/(1 - w^(p^alpha)(c)) with c = (center - x0)/(center - base)
/// if |x0 - center| = R, and 0 if x0 lies outside the closed disc.
inline PadicNumber pole_weight(const PadicNumber& center, const PadicNumber& base, const PadicNumber& x0, long alpha) {
  const Ctx& ctx = center.context();
  const PadicNumber h = center - base;
  const Val rho = h.valuation();
  if ((x0 - base).valuation_lower_bound() > rho)
    fail(ErrorKind::PoleInArc, "pole " + x0.to_compact() + " lies in the arc at " + base.to_compact());
  const PadicNumber c = (center - x0) / h;
  if (c.is_zero()) {
    if (c.precision() <= 0)
      fail(ErrorKind::PrecisionExhausted, "cannot place " + x0.to_compact() + " relative to the circle");
    return PadicNumber::one(ctx);
  }
  if (c.valuation() > 0) return PadicNumber::one(ctx);
  if (c.valuation() < 0) return PadicNumber::zero(ctx);
  return (PadicNumber::one(ctx) - omega_power(c, static_cast<unsigned>(alpha))).inverse();
}

/// Closed-form integral over the arc of a function given by partial fractions:
/// polynomial parts and higher-order pole terms integrate to zero.
inline PadicNumber integrate_closed_form(const PadicPartialFractions& pf, const Arc& arc, long alpha) {
  const Ctx& ctx = arc.context();
  PadicNumber s = PadicNumber::zero(ctx);
  for (const auto& pl : pf.poles) {
    if (arc.contains(pl.x0))
      fail(ErrorKind::PoleInArc, "pole " + pl.x0.to_compact() + " lies in " + arc.describe());
    if (pl.order() == 0) continue;
    s += pl.residue() * pole_weight(arc.a, arc.b, pl.x0, alpha);
  }
  return s;
}

inline PadicNumber integrate_rational_closed_form(const ExactRationalFunction& f, const Arc& arc, long alpha) {
  return integrate_closed_form(partial_fractions(f, arc.context()), arc, alpha);
}

/// Laurent expansion sum_n c_n (x - x0)^n; only finitely many entries are stored.
struct LaurentSeries {
  PadicNumber center;
  std::map<long, PadicNumber> coeffs;

  PadicNumber coeff(long n) const {
    auto it = coeffs.find(n);
    return it == coeffs.end() ? PadicNumber::zero(center.context()) : it->second;
  }
};

/// c_{-1} / (1 - w^(p^alpha)((a - x0)/(a - b))), for b on the circle |x - x0| = R.
inline PadicNumber residue_laurent(const LaurentSeries& f, const Arc& arc, long alpha) {
  const Val rho = arc.rho();
  const PadicNumber d = arc.b - f.center;
  if (d.is_zero() || d.valuation() != rho)
    fail(ErrorKind::GeometryViolation, "basepoint must lie on the circle of radius R about the Laurent center");
  const PadicNumber c = (arc.a - f.center) / (arc.a - arc.b);
  if (c.valuation_lower_bound() < 0)
    fail(ErrorKind::GeometryViolation, "Laurent center lies outside the closed disc");
  const PadicNumber res = f.coeff(-1);
  return res * (PadicNumber::one(arc.context()) - omega_power(c, static_cast<unsigned>(alpha))).inverse();
}

struct CountedPoint {
  PadicNumber center;
  long count = 0;
};

/// sum_i (Z_i - P_i) / (1 - w^(p^alpha)((a - z_i)/(a - b))), interior points weighted 1.
inline PadicNumber zp_count(const std::vector<CountedPoint>& zeros, const std::vector<CountedPoint>& poles,
                            const Arc& arc, long alpha) {
  const Ctx& ctx = arc.context();
  const Val rho = arc.rho();
  PadicNumber s = PadicNumber::zero(ctx);
  auto add = [&](const CountedPoint& z, long sign) {
    if (z.count < 0) fail(ErrorKind::InvalidArgument, "negative multiplicity");
    if ((arc.b - z.center).valuation_lower_bound() > rho)
      fail(ErrorKind::BasepointInHole, "basepoint lies within R of " + z.center.to_compact());
    s += PadicNumber::from_int(ctx, sign * z.count) * pole_weight(arc.a, arc.b, z.center, alpha);
  };
  for (const auto& z : zeros) add(z, 1);
  for (const auto& z : poles) add(z, -1);
  return s;
}

}  // namespace padicline
