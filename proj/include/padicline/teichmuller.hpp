#pragma once

#include "padic.hpp"

namespace padicline {

/// Teichmuller representative: the (p-1)-th root of unity congruent to x mod p,
/// or 0 when |x|_p < 1. Only the leading digit of x matters, so the result is
/// exact to the working precision.
inline PadicNumber teichmuller(const PadicNumber& x) {
  const Ctx& ctx = x.context();
  if (x.is_zero()) {
    if (x.precision() < 1) fail(ErrorKind::PrecisionExhausted, "leading digit unknown");
    return PadicNumber::zero(ctx);
  }
  if (x.valuation() < 0) fail(ErrorKind::NormTooLarge, "teichmuller needs |x|_p <= 1");
  if (x.valuation() > 0) return PadicNumber::zero(ctx);
  const unsigned long p = ctx->p();
  const mpz_class mod = ctx->pow(ctx->precision());
  mpz_class y = x.unit() % p;
  mpz_class pz(p);
  for (;;) {
    mpz_class next;
    mpz_powm(next.get_mpz_t(), y.get_mpz_t(), pz.get_mpz_t(), mod.get_mpz_t());
    if (next == y) break;
    y = next;
  }
  return PadicNumber::from_parts(ctx, 0, y, ctx->precision());
}

/// omega(x)^(p^alpha); in Q_p this equals omega(x) for every alpha.
inline PadicNumber omega_power(const PadicNumber& x, unsigned alpha) {
  PadicNumber w = teichmuller(x);
  if (w.is_zero()) return w;
  mpz_class e;
  mpz_ui_pow_ui(e.get_mpz_t(), x.p(), alpha);
  return w.pow(e);
}

/// The Teichmuller lift of a residue class c mod p, 1 <= c < p.
inline PadicNumber teichmuller_of_residue(const Ctx& ctx, unsigned long c) {
  return teichmuller(PadicNumber::from_int(ctx, mpz_class(c)));
}

}  // namespace padicline
