// Root sums, limits, closed forms, ray limits, spec parsing and the Cauchy machinery.

#include <gtest/gtest.h>

#include <random>

#include <padicline/verify.hpp>

using namespace padicline;

namespace {

PadicNumber Q(const Ctx& ctx, const mpq_class& q) { return PadicNumber::from_rational(ctx, q); }

ExactRationalFunction simple_pole(const mpq_class& x0, long order = 1) {
  return ExactRationalFunction(qpoly_const(1), qpoly({-x0, 1})).pow(order);
}

mpq_class qpow(const mpq_class& c, unsigned long e) {
  mpq_class r;
  mpz_pow_ui(r.get_num_mpz_t(), c.get_num_mpz_t(), e);
  mpz_pow_ui(r.get_den_mpz_t(), c.get_den_mpz_t(), e);
  return r;
}

}  // namespace

TEST(PoleWeight, ThreeRegions) {
  Ctx ctx = make_context(5, 20);
  const PadicNumber a = Q(ctx, 0), b = Q(ctx, 1);
  EXPECT_TRUE((pole_weight(a, b, Q(ctx, 5), 0) - Q(ctx, 1)).is_zero());
  EXPECT_TRUE(pole_weight(a, b, Q(ctx, mpq_class(1, 5)), 0).is_zero());
  EXPECT_THROW(pole_weight(a, b, Q(ctx, 6), 0), Error);
  // 1/(1 - w(3)) at p = 5, digits frozen from an independent big-integer computation
  PadicNumber w = pole_weight(a, b, Q(ctx, 3), 0);
  std::vector<unsigned long> d = w.digits();
  d.resize(12);
  EXPECT_EQ(d, (std::vector<unsigned long>{2, 4, 3, 1, 3, 2, 3, 0, 2, 3, 3, 3}));
  EXPECT_TRUE((pole_weight(a, b, Q(ctx, 3), 1) - w).is_zero());
}

// A(k) of 1/(x - x0) is exactly 1/(1 - c^(p^k)), c = (x0 - a)/(b - a), on every evaluation route.
TEST(EvalA, SimplePoleMatchesExactAverage) {
  const unsigned long p = 5;
  Ctx ctx = make_context(p, 40);
  Arc arc = Arc::make(ctx, 0, 1);
  for (mpq_class x0 : {mpq_class(3), mpq_class(7, 3), mpq_class(10), mpq_class(1, 5), mpq_class(-4, 3)}) {
    const mpq_class c = x0;  // a = 0, b = 1
    SeriesFunction f = from_rational(simple_pole(x0), arc);
    unsigned long pk = 1;
    for (long k = 1; k <= 3; ++k) {
      pk *= p;
      const PadicNumber want = Q(ctx, 1 / (1 - qpow(c, pk)));
      for (auto st : {EvalStrategy::root_sum(), EvalStrategy::full(), EvalStrategy::automatic(30)}) {
        EvalResult r = eval_A(f, arc, PathSequence::identity(), k, st);
        EXPECT_GE(agreement(r.value, want), std::min<Val>(30, r.value.precision()))
            << x0.get_str() << " k=" << k << " " << st.describe();
      }
    }
  }
}

TEST(EvalA, MatchesOracleOnRandomFunctions) {
  verify_detail::Rng rng(5);
  for (unsigned long p : {3ul, 5ul}) {
    Ctx ctx = make_context(p, 52);  // guard digits; compared mod p^40
    for (int i = 0; i < 6; ++i) {
      ExactRationalFunction f = verify_detail::random_rational(rng, 0, 1, p);
      Arc arc = Arc::make(ctx, 0, 1);
      SeriesFunction s = from_rational(f, arc);
      for (unsigned k = 1; k <= 2; ++k) {
        mpq_class exact;
        try {
          exact = direct_A(f, 0, 1, p, k);
        } catch (const Error&) {
          continue;
        }
        EvalResult r = eval_A(s, arc, PathSequence::identity(), k, EvalStrategy::root_sum());
        EXPECT_GE(agreement(r.value, Q(ctx, exact)), 40);
      }
    }
  }
}

TEST(EvalA, LinearAtFixedLevel) {
  Ctx ctx = make_context(3, 30);
  Arc arc = Arc::make(ctx, 0, 1);
  ExactRationalFunction f = simple_pole(2), g = ExactRationalFunction(qpoly({1, 0, 3}));
  auto A = [&](const ExactRationalFunction& h) {
    return eval_A(from_rational(h, arc), arc, PathSequence::identity(), 3, EvalStrategy::full()).value;
  };
  EXPECT_GE(agreement(A(f * ExactRationalFunction::constant(5) - g), Q(ctx, 5) * A(f) - A(g)), 28);
}

TEST(Limit, RationalClosedForms) {
  Ctx ctx = make_context(5, 40);
  Arc arc = Arc::make(ctx, 0, 1);
  LimitConfig cfg;
  for (long alpha : {0L, 1L}) {
    // boundary pole
    auto r = integrate_limit(from_rational(simple_pole(3), arc), arc, InterlockedFamily::phi(alpha), cfg);
    EXPECT_TRUE(r.converged);
    EXPECT_GE(agreement(r.value, pole_weight(arc.a, arc.b, Q(ctx, 3), alpha)), 12);
    // interior pole
    r = integrate_limit(from_rational(simple_pole(5), arc), arc, InterlockedFamily::phi(alpha), cfg);
    EXPECT_GE(agreement(r.value, Q(ctx, 1)), 12);
    // double pole integrates to zero
    r = integrate_limit(from_rational(simple_pole(3, 2), arc), arc, InterlockedFamily::phi(alpha), cfg);
    EXPECT_GE(agreement(r.value, Q(ctx, 0)), 12);
  }
}

TEST(Limit, PolynomialIsExactlyZero) {
  Ctx ctx = make_context(5, 40);
  Arc arc = Arc::make(ctx, 0, 1);
  auto r = integrate_limit(from_rational(ExactRationalFunction(qpoly({0, 0, 1})), arc), arc,
                           InterlockedFamily::singleton(PathSequence::identity()));
  EXPECT_TRUE(r.converged);
  EXPECT_TRUE(r.value.is_zero());
}

TEST(Limit, GapSeriesNeedsItsOwnSchedule) {
  Ctx ctx = make_context(3, 40);
  Arc arc = Arc::make(ctx, 1, 0);
  SeriesFunction f = builtin_gap_series(arc, 2, 1);
  auto r = integrate_limit(f, arc, PathSequence::power(0, 2));
  EXPECT_TRUE(r.converged);
  EXPECT_GE(agreement(r.value, Q(ctx, -1)), 12);
  EXPECT_THROW(integrate_limit(f, arc, PathSequence::identity()), NoConvergenceError);
}

TEST(Limit, ArgumentChecks) {
  Ctx ctx = make_context(5, 10);
  Arc arc = Arc::make(ctx, 0, 1);
  LimitConfig cfg;
  cfg.target = 12;
  EXPECT_THROW(integrate_limit(from_rational(simple_pole(3), arc), arc, PathSequence::identity(), cfg), Error);
  SeriesFunction bare(ctx, arc.b, [ctx](std::int64_t) { return PadicNumber::one(ctx); }, std::nullopt, "bare");
  cfg.target = 5;
  try {
    integrate_limit(bare, arc, PathSequence::identity(), cfg);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::CertificateRequired);
  }
  EXPECT_THROW(Arc::make(ctx, 1, 1), Error);
}

TEST(Limit, ArtinHasseIsMinusOneModPCubed) {
  Ctx ctx = make_context(3, 40);
  Arc arc = Arc::make(ctx, 1, 0);
  auto r = integrate_limit(builtin_artin_hasse_logderiv(arc), arc, PathSequence::identity());
  EXPECT_TRUE(r.converged);
  EXPECT_GE(agreement(r.value, Q(ctx, -1)), 3);
}

TEST(RayLimits, OddBernoulliVanishOnEvenRays) {
  Ctx ctx = make_context(5, 40);
  Arc arc = Arc::make(ctx, 1, 0);
  BuiltinOptions opt;
  opt.bernoulli_nmax = 1100;
  SeriesFunction f = builtin_bernoulli_psi(arc, 2, opt);
  RayLimitTable t = ray_limits(f, arc, PathSequence::identity(), 8, 3);
  for (const auto& [d, e] : t.entries) {
    if (d % 2 == 0) {
      EXPECT_TRUE(e.exact_zero) << d;
    } else {
      EXPECT_TRUE(e.stabilized) << d;
      EXPECT_FALSE(e.exact_zero) << d;
    }
  }
}

TEST(Recenter, SimplePoleAboutNewBasepoint) {
  Ctx ctx = make_context(5, 30);
  Arc arc = Arc::make(ctx, 0, 1);
  SeriesFunction f = from_rational(simple_pole(3), arc);
  SeriesFunction g = recenter(f, arc, Q(ctx, 6), 40);
  for (std::int64_t n = 0; n < 5; ++n) {
    // coefficients about 6 of 1/(x - 3) are (-1)^n / 3^(n+1)
    mpq_class want(n % 2 ? -1 : 1, 1);
    for (std::int64_t i = 0; i <= n; ++i) want /= 3;
    EXPECT_GE(agreement(g.coeff(n), Q(ctx, want)), 10) << n;
  }
}

TEST(Automorphism, AffineAndQuadraticMaps) {
  Ctx ctx = make_context(3, 20);
  auto ok = check_disc_automorphism(to_padic(qpoly({1, 3}), ctx), Q(ctx, 0), 0, Q(ctx, 1), 1);
  EXPECT_TRUE(ok.is_automorphism);
  auto quad = check_disc_automorphism(to_padic(qpoly({0, 1, 3}), ctx), Q(ctx, 0), 0, Q(ctx, 0), 0);
  EXPECT_TRUE(quad.is_automorphism);
  auto bad = check_disc_automorphism(to_padic(qpoly({0, 1, 1}), ctx), Q(ctx, 0), 0, Q(ctx, 0), 0);
  EXPECT_FALSE(bad.is_automorphism);
}

TEST(FuncSpec, ParsesRationalExpressions) {
  ExactRationalFunction f = parse_rational_function("(x^2+1)/(x-3)");
  EXPECT_EQ(f(mpq_class(5)), mpq_class(13));
  EXPECT_EQ(parse_rational_function("2x - 3(x+1)")(mpq_class(2)), mpq_class(-5));
  EXPECT_EQ(parse_rational_function("x^-2")(mpq_class(2)), mpq_class(1, 4));
  EXPECT_EQ(parse_rational("-7/21"), mpq_class(-1, 3));
}

TEST(FuncSpec, ReportsErrorPositions) {
  auto pos = [](auto&& fn) -> long {
    try {
      fn();
    } catch (const ParseFailure& e) {
      return static_cast<long>(e.position());
    }
    return -1;
  };
  Ctx ctx = make_context(5, 10);
  Arc arc = Arc::make(ctx, 0, 1);
  EXPECT_EQ(pos([&] { parse_function("rat:1/(x-", arc); }), 9);
  EXPECT_EQ(pos([&] { parse_function("rat:1/0", arc); }), 6);
  EXPECT_EQ(pos([&] { parse_function("rat:x$", arc); }), 5);
  EXPECT_EQ(pos([&] { parse_function("builtin:nope", arc); }), 8);
  EXPECT_EQ(pos([&] { parse_arc("a=1,b=x", ctx); }), 6);
  EXPECT_EQ(pos([&] { parse_schedule("affine:1"); }), 7);
  EXPECT_GE(pos([&] { parse_function("builtin:binom_t", arc); }), 0);
}

TEST(FuncSpec, Schedules) {
  EXPECT_EQ(parse_schedule("k").describe(), "phi(k)=0+1k");
  EXPECT_EQ(parse_schedule("affine:1,3").describe(), "phi(k)=1+3k");
  EXPECT_EQ(parse_schedule("power:0,2").describe(), "phi(k)=0+k^2");
  EXPECT_EQ(parse_schedule("family:phi1").describe(), "Phi_1");
  EXPECT_EQ(parse_schedule("family:psi0").describe(), "Psi_0");
}

TEST(Cauchy, DeterminantIsUnitAndIdentityHolds) {
  Ctx ctx = make_context(7, 30);
  std::vector<PadicNumber> xs{Q(ctx, 0), Q(ctx, 1), Q(ctx, 2)}, bs{Q(ctx, 3), Q(ctx, 4), Q(ctx, 5)};
  PadicNumber d = det_D(xs, bs, 0);
  EXPECT_EQ(d.valuation(), 0);
  RationalIdentity id = weight_det_identity({0, 1, 2}, {3, 4, 5});
  EXPECT_EQ(id.lhs, id.rhs);
  EXPECT_THROW(det_D({Q(ctx, 0), Q(ctx, 7)}, {Q(ctx, 3), Q(ctx, 4)}, 0), Error);
}

TEST(Cauchy, DiscFormulaRecoversValueAndDerivative) {
  Ctx ctx = make_context(5, 40);
  Arc arc = Arc::make(ctx, 0, 1);
  ExactRationalFunction f(qpoly({2, -1, 0, 3, 1}));
  SeriesFunction s = from_rational(f, arc);
  const PadicNumber z = Q(ctx, 5);
  for (long n : {0L, 1L}) {
    CauchyDiscResult laurent = cauchy_eval_disc(s, arc, z, 0, n, false);
    EXPECT_GE(laurent.agreement, 12);
    CauchyDiscResult lim = cauchy_eval_disc(s, arc, z, 0, n, true);
    EXPECT_GE(lim.agreement, 12);
  }
  // f(5) and f'(5) from the coefficients directly
  EXPECT_GE(agreement(cauchy_eval_disc(s, arc, z, 0, 0, false).direct, Q(ctx, f(mpq_class(5)))), 30);
  EXPECT_THROW(cauchy_eval_disc(s, arc, Q(ctx, 6), 0), Error);
}

TEST(ZeroPoleCount, InteriorAndBoundary) {
  Ctx ctx = make_context(5, 30);
  Arc arc = Arc::make(ctx, 0, 1);
  PadicNumber two = zp_count({{Q(ctx, 5), 2}, {Q(ctx, 10), 1}}, {{Q(ctx, 0), 1}}, arc, 0);
  EXPECT_TRUE((two - Q(ctx, 2)).is_zero());
  PadicNumber w = zp_count({{Q(ctx, 3), 1}}, {}, arc, 0);
  EXPECT_TRUE((w - pole_weight(arc.a, arc.b, Q(ctx, 3), 0)).is_zero());
}

TEST(Suites, UnknownSuiteThrows) {
  try {
    run_suite("nope", VerifyConfig{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::UnknownSuite);
  }
}

TEST(Suites, ExampleConfigurationsAtFive) {
  SuiteReport r = run_suite("cauchy-example-p5", VerifyConfig{});
  EXPECT_TRUE(r.passed());
}
