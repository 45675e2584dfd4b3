#pragma once

/**
 * @file substitution.hpp
 * @brief Change of variables x = x(t) by a polynomial disc automorphism:
 * the integral of f over A(a, b) against the integral of f(x(t)) x'(t) over
 * A(a1, b1) with x(a1) = a, x(b1) = b.
 */

#include <optional>
#include <string>

#include "builtins.hpp"
#include "closed_form.hpp"
#include "limit.hpp"
#include "series_tools.hpp"

namespace padicline {

struct SubstitutionReport {
  AutomorphismCheck automorphism;
  ExactRationalFunction composed;  ///< f(x(t)) x'(t)
  PadicNumber lhs;                 ///< closed form over the target arc
  PadicNumber rhs_closed;          ///< closed form of the composed function over the source arc
  std::optional<IntegralResult> rhs_limit;
  Val agreement_closed = 0;
  Val agreement_limit = 0;
};

inline SubstitutionReport check_substitution_invariance(const ExactRationalFunction& f, const Arc& arc,
                                                        const QPoly& map, const Arc& source_arc, long alpha,
                                                        const LimitConfig& cfg = {}) {
  const Ctx& ctx = arc.context();
  const PPoly pmap = to_padic(map, ctx);
  if (!(pmap(source_arc.b) - arc.b).is_zero())
    fail(ErrorKind::CenterMismatch, "map(b1) differs from b");
  SubstitutionReport r{check_disc_automorphism(pmap, source_arc.a, source_arc.rho(), arc.a, arc.rho()),
                       f.compose(map) * ExactRationalFunction(map.derivative(), qpoly_const(1)),
                       PadicNumber::zero(ctx), PadicNumber::zero(ctx), std::nullopt, 0, 0};
  if (!r.automorphism.is_automorphism)
    fail(ErrorKind::NotAnAutomorphism, "map is not a one-to-one map of the discs");
  r.lhs = integrate_rational_closed_form(f, arc, alpha);
  r.rhs_closed = integrate_rational_closed_form(r.composed, source_arc, alpha);
  r.agreement_closed = agreement(r.lhs, r.rhs_closed);
  if (source_arc.rational()) {
    r.rhs_limit = integrate_limit(from_rational(r.composed, source_arc), source_arc, InterlockedFamily::phi(alpha), cfg);
    r.agreement_limit = agreement(r.lhs, r.rhs_limit->value);
  }
  return r;
}

}  // namespace padicline
