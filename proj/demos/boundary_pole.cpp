// Integrates 1/(x - 3) over A(0, 1) in Q_5 three ways: the exact root sums A(k),
// their limit along phi(k) = k, and the closed form 1/(1 - w(3)).

#include <iostream>

#include <padicline/limit.hpp>
#include <padicline/builtins.hpp>
#include <padicline/closed_form.hpp>

using namespace padicline;

int main() {
  Ctx ctx = make_context(5, 20);
  Arc arc = Arc::make(ctx, 0, 1);
  ExactRationalFunction f(qpoly_const(1), qpoly({-3, 1}));
  SeriesFunction s = from_rational(f, arc);

  for (long k = 1; k <= 4; ++k)
    std::cout << "A(" << k << ") = " << eval_A(s, arc, PathSequence::identity(), k).value << "\n";

  LimitConfig cfg;
  cfg.target = 10;
  cfg.k_max = 14;
  IntegralResult r = integrate_limit(s, arc, PathSequence::identity(), cfg);
  PadicNumber closed = integrate_rational_closed_form(f, arc, 0);
  std::cout << "limit     = " << r.value.truncated(r.achieved_precision) << "  (k = " << r.k_used << ")\n";
  std::cout << "closed    = " << closed << "\n";
  std::cout << "agreement = " << agreement(r.value, closed) << " digits\n";
}
