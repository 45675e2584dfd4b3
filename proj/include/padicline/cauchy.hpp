#pragma once

/**
 * @file cauchy.hpp
 * @brief Residue and Cauchy-Goursat identities on discs with holes, the
 * Cauchy integral formulas, the weight determinant and the maximum modulus
 * check.
 *
 * Krasner functions are carried as PadicPartialFractions: a polynomial
 * holomorphic part plus finitely many Laurent tails at points inside the holes.
 */

#include <optional>
#include <string>
#include <vector>

#include "builtins.hpp"
#include "closed_form.hpp"
#include "limit.hpp"
#include "matrix.hpp"
#include "series_tools.hpp"

namespace padicline {

using KrasnerFunction = PadicPartialFractions;

struct Hole {
  PadicNumber x;     ///< center
  Val removed = 0;   ///< D-(x, p^-removed) is cut out
  Val circle = 0;    ///< integration circle radius p^-circle, circle <= removed
  PadicNumber base;  ///< basepoint on the integration circle
};

/// D+(a, p^-rho) minus the open discs of the holes; large holes (removed == rho) come first.
struct HoleyDomain {
  PadicNumber a;
  Val rho = 0;
  PadicNumber b;
  std::vector<Hole> holes;

  std::size_t large_count() const {
    std::size_t m = 0;
    for (const auto& h : holes) m += h.removed == rho ? 1 : 0;
    return m;
  }

  Arc outer_arc() const { return Arc::make(a, b); }
  Arc hole_arc(std::size_t i) const { return Arc::make(holes[i].x, holes[i].base); }

  void validate() const {
    auto geo = [](const std::string& what) { fail(ErrorKind::GeometryViolation, what); };
    auto v = [](const PadicNumber& x, const PadicNumber& y) { return (x - y).valuation_lower_bound(); };
    if (v(b, a) != rho) geo("outer basepoint is not on the boundary circle");
    bool small_seen = false;
    for (std::size_t i = 0; i < holes.size(); ++i) {
      const Hole& h = holes[i];
      if (h.removed < rho) geo("hole " + std::to_string(i) + " is larger than the disc");
      if (h.circle < rho || h.circle > h.removed) geo("hole " + std::to_string(i) + " needs removed <= r <= R");
      if (v(h.x, a) < rho) geo("hole " + std::to_string(i) + " lies outside the disc");
      if (v(h.base, h.x) != h.circle) geo("basepoint of hole " + std::to_string(i) + " is not on its circle");
      if (v(b, h.x) != rho) geo("outer basepoint is not at distance R from hole " + std::to_string(i));
      const bool large = h.removed == rho;
      if (large && small_seen) geo("large holes must be listed first");
      small_seen = small_seen || !large;
      if (large && v(a, h.x) != rho) geo("large hole " + std::to_string(i) + " is not on the boundary circle");
      for (std::size_t j = 0; j < holes.size(); ++j) {
        if (j == i) continue;
        const Hole& g = holes[j];
        if (v(h.x, g.x) > std::min(h.removed, g.removed)) geo("holes overlap");
        if (!large && g.removed != rho && v(h.x, g.x) >= std::min(h.circle, g.circle))
          geo("closed discs of small holes meet");
        if (large) {
          if (v(h.base, g.x) != rho) geo("large hole basepoint is not at distance R from every hole");
          if (g.removed == rho && v(h.base, g.base) != rho) geo("large hole basepoints are not at distance R");
        }
      }
    }
  }

  /// Index of the hole containing y, or -1 if y lies in the domain; throws if y is outside the closed disc.
  long hole_of(const PadicNumber& y) const {
    for (std::size_t i = 0; i < holes.size(); ++i)
      if ((y - holes[i].x).valuation_lower_bound() > holes[i].removed) return static_cast<long>(i);
    return -1;
  }
};

enum class WeightProvenance { ClosedForm, Solved };

struct GoursatWeights {
  std::vector<PadicNumber> mu;
  WeightProvenance provenance = WeightProvenance::ClosedForm;
};

struct GoursatResult {
  PadicNumber lhs, rhs;
  GoursatWeights weights;
  Val agreement = 0;
};

namespace detail {

/// Every pole of f must sit in a hole or outside the closed disc.
inline void check_krasner(const KrasnerFunction& f, const HoleyDomain& dom) {
  for (const auto& pl : f.poles) {
    if ((pl.x0 - dom.a).valuation_lower_bound() < dom.rho) continue;
    if (dom.hole_of(pl.x0) < 0)
      fail(ErrorKind::GeometryViolation, "pole " + pl.x0.to_compact() + " lies in the domain");
  }
}

inline PadicNumber weighted_arcs(const KrasnerFunction& f, const HoleyDomain& dom, const std::vector<PadicNumber>& mu,
                                 long alpha) {
  PadicNumber s = PadicNumber::zero(dom.a.context());
  for (std::size_t i = 0; i < dom.holes.size(); ++i) s += mu[i] * integrate_closed_form(f, dom.hole_arc(i), alpha);
  return s;
}

inline void require_identity(const GoursatResult& r, const char* what) {
  const Val need = std::min(r.lhs.precision(), r.rhs.precision());
  if (r.agreement < need - 2)
    fail(ErrorKind::SingularToPrecision, std::string(what) + " identity fails: agreement " + std::to_string(r.agreement));
}

}  // namespace detail

/// sum_i Res_{x_i} f / (1 - w^(p^alpha)((a - x_i)/(a - b))), small holes only.
inline PadicNumber residue_krasner(const KrasnerFunction& f, const HoleyDomain& dom, long alpha) {
  dom.validate();
  if (dom.large_count() > 0) fail(ErrorKind::LargeHolePresent, "residue theorem needs all holes smaller than R");
  detail::check_krasner(f, dom);
  const Ctx& ctx = dom.a.context();
  PadicNumber s = PadicNumber::zero(ctx);
  for (std::size_t i = 0; i < dom.holes.size(); ++i) {
    PadicNumber res = PadicNumber::zero(ctx);
    for (const auto& pl : f.poles)
      if (dom.hole_of(pl.x0) == static_cast<long>(i)) res += pl.residue();
    s += res * pole_weight(dom.a, dom.b, dom.holes[i].x, alpha);
  }
  return s;
}

/// Outer arc integral against the weighted hole arc integrals, all circles r_i < R.
inline GoursatResult goursat_small(const KrasnerFunction& f, const HoleyDomain& dom, long alpha) {
  dom.validate();
  for (const auto& h : dom.holes)
    if (h.circle <= dom.rho) fail(ErrorKind::LargeHolePresent, "goursat_small needs every r_i < R");
  detail::check_krasner(f, dom);
  GoursatResult r;
  r.weights.provenance = WeightProvenance::ClosedForm;
  for (const auto& h : dom.holes) r.weights.mu.push_back(pole_weight(dom.a, dom.b, h.x, alpha));
  r.lhs = integrate_closed_form(f, dom.outer_arc(), alpha);
  r.rhs = detail::weighted_arcs(f, dom, r.weights.mu, alpha);
  r.agreement = agreement(r.lhs, r.rhs);
  detail::require_identity(r, "small-hole Goursat");
  return r;
}

/// The matrix (1/(1 - w^(p^alpha)((x_i - x_j)/(x_i - b_i))))_{i,j}.
inline PadicMatrix d_matrix(const std::vector<PadicNumber>& xs, const std::vector<PadicNumber>& bs, long alpha) {
  if (xs.empty() || xs.size() != bs.size()) fail(ErrorKind::InvalidArgument, "need matching nonempty point lists");
  const std::size_t n = xs.size();
  PadicMatrix m(xs[0].context(), n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = pole_weight(xs[i], bs[i], xs[j], alpha);
  return m;
}

inline PadicNumber det_D(const std::vector<PadicNumber>& xs, const std::vector<PadicNumber>& bs, long alpha) {
  if (xs.empty() || xs.size() != bs.size()) fail(ErrorKind::InvalidArgument, "need matching nonempty point lists");
  const Val rho = (xs[0] - bs[0]).valuation_lower_bound();
  auto v = [](const PadicNumber& x, const PadicNumber& y) { return (x - y).valuation_lower_bound(); };
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (std::size_t j = 0; j < xs.size(); ++j) {
      if (v(xs[i], bs[j]) != rho) fail(ErrorKind::GeometryViolation, "need |x_i - b_j| = R for all i, j");
      if (i != j && (v(xs[i], xs[j]) != rho || v(bs[i], bs[j]) != rho))
        fail(ErrorKind::GeometryViolation, "need |x_i - x_j| = |b_i - b_j| = R for i != j");
    }
  PadicNumber d = d_matrix(xs, bs, alpha).determinant();
  if (d.is_zero() || d.valuation() != 0)
    fail(ErrorKind::UnitDeterminantViolated, "|det D| != 1: " + d.to_compact());
  return d;
}

/// Weights mu solving E^T mu = w with E_ij = W(x_i, b_i; x_j) and w_j = W(a, b; x_j),
/// so that int_A(a,b) f = sum mu_i int_A(x_i,b_i) f for every Krasner f. The identity is
/// checked on f before returning.
inline GoursatResult goursat_large(const KrasnerFunction& f, const HoleyDomain& dom, long alpha) {
  dom.validate();
  detail::check_krasner(f, dom);
  const Ctx& ctx = dom.a.context();
  const std::size_t n = dom.holes.size();
  GoursatResult r;
  r.weights.provenance = WeightProvenance::Solved;
  if (n > 0) {
    PadicMatrix et(ctx, n, n);
    std::vector<PadicNumber> w;
    for (std::size_t j = 0; j < n; ++j) {
      w.push_back(pole_weight(dom.a, dom.b, dom.holes[j].x, alpha));
      for (std::size_t i = 0; i < n; ++i) et(j, i) = pole_weight(dom.holes[i].x, dom.holes[i].base, dom.holes[j].x, alpha);
    }
    r.weights.mu = solve_linear(et, w);
  }
  r.lhs = integrate_closed_form(f, dom.outer_arc(), alpha);
  r.rhs = detail::weighted_arcs(f, dom, r.weights.mu, alpha);
  r.agreement = agreement(r.lhs, r.rhs);
  detail::require_identity(r, "Goursat");
  return r;
}

/// Coefficient of (x - z)^n in f about z.
inline PadicNumber taylor_coefficient(const KrasnerFunction& f, const PadicNumber& z, long n) {
  const Ctx& ctx = z.context();
  PPoly shifted = f.poly.taylor_shift(z);
  PadicNumber s = static_cast<std::size_t>(n) < shifted.coeffs().size() ? shifted[static_cast<std::size_t>(n)]
                                                                       : PadicNumber::zero(ctx);
  // (x - x0)^-k = (d + u)^-k with d = z - x0: coefficient of u^n is C(-k, n) d^(-k-n)
  for (const auto& pl : f.poles) {
    const PadicNumber d = z - pl.x0;
    if (d.is_zero()) fail(ErrorKind::DivisionByZero, "z is a pole");
    for (int k = 1; k <= pl.order(); ++k) {
      mpz_class c;
      mpz_bin_uiui(c.get_mpz_t(), static_cast<unsigned long>(k + n - 1), static_cast<unsigned long>(n));
      if (n % 2 == 1) c = -c;
      s += pl.coeffs[static_cast<std::size_t>(k - 1)] * PadicNumber::from_int(ctx, c) * d.pow(-(k + n));
    }
  }
  return s;
}

/// f as partial fractions in x: rational data directly, polynomials from their coefficients.
inline KrasnerFunction as_krasner(const SeriesFunction& f) {
  const Ctx& ctx = f.context();
  if (f.rational()) return partial_fractions(*f.rational(), ctx);
  if (!f.degree_bound()) fail(ErrorKind::NotClosedDiscHolomorphic, f.name() + " is neither rational nor a polynomial");
  std::vector<PadicNumber> c;
  for (std::int64_t n = 0; n <= *f.degree_bound(); ++n) c.push_back(f.coeff(n));
  KrasnerFunction out(ctx);
  out.poly = PPoly(std::move(c), PadicNumber::zero(ctx)).taylor_shift(-f.center());
  return out;
}

struct CauchyDiscResult {
  PadicNumber value;     ///< f^(n)(z)/n! from the integral
  PadicNumber direct;    ///< Taylor coefficient at z
  PadicNumber integral;  ///< int f(x)/(x - z)^(n+1) dx over the arc
  std::optional<IntegralResult> limit;  ///< present when the integral came from the root-sum limit
  Val agreement = 0;
};

/// f^(n)(z)/n! = (1 - w^(p^alpha)((a - z)/(a - b))) int f(x)/(x - z)^(n+1) dx for f holomorphic
/// on the closed disc. The integral is the limit of the root sums along the Phi_alpha family
/// when `use_limit`, otherwise the residue of the Laurent expansion about z.
inline CauchyDiscResult cauchy_eval_disc(const SeriesFunction& fs, const Arc& arc, const PadicNumber& z, long alpha,
                                         long n = 0, bool use_limit = true, const LimitConfig& cfg = {}) {
  if (n < 0) fail(ErrorKind::InvalidArgument, "derivative order must be >= 0");
  const Ctx& ctx = arc.context();
  const Val rho = arc.rho();
  if ((z - arc.a).valuation_lower_bound() < rho) fail(ErrorKind::GeometryViolation, "z lies outside the closed disc");
  if (arc.contains(z)) fail(ErrorKind::ZOnArc, "z lies in " + arc.describe());
  const KrasnerFunction f = as_krasner(fs);
  for (const auto& pl : f.poles)
    if ((pl.x0 - arc.a).valuation_lower_bound() >= rho)
      fail(ErrorKind::NotClosedDiscHolomorphic, "pole " + pl.x0.to_compact() + " lies in the closed disc");
  CauchyDiscResult r;
  KrasnerFunction g = f;
  for (long i = 0; i <= n; ++i) g = g.divided_by_linear(z);
  if (use_limit) {
    r.limit = integrate_limit(g, arc, InterlockedFamily::phi(alpha), cfg);
    r.integral = r.limit->value;
  } else {
    LaurentSeries L{z, {{-1, taylor_coefficient(f, z, n)}}};
    r.integral = residue_laurent(L, arc, alpha);
  }
  r.value = (PadicNumber::one(ctx) - omega_power((arc.a - z) / (arc.a - arc.b), static_cast<unsigned>(alpha))) * r.integral;
  r.direct = taylor_coefficient(f, z, n);
  r.agreement = agreement(r.value, r.direct);
  return r;
}

struct CauchyHolesResult {
  PadicNumber value;                ///< f(z) from the arc integrals
  PadicNumber direct;               ///< f(z) evaluated directly
  std::vector<PadicNumber> kappa;   ///< f(z) = sum_i kappa_i int_{arc i} f(x)/(x - z) dx, arc 0 the outer one
  std::vector<PadicNumber> integrals;
  Val agreement = 0;
};

/// Cauchy's formula on a disc with holes. Unknowns are f(z) and the residues of
/// f(x)/(x - z) in each hole; each arc (outer first, then the holes) gives one equation.
inline CauchyHolesResult cauchy_formula_holes(const KrasnerFunction& f, const HoleyDomain& dom, const PadicNumber& z,
                                              long alpha) {
  dom.validate();
  detail::check_krasner(f, dom);
  const Ctx& ctx = dom.a.context();
  auto v = [](const PadicNumber& x, const PadicNumber& y) { return (x - y).valuation_lower_bound(); };
  if (v(z, dom.a) < dom.rho || dom.hole_of(z) >= 0) fail(ErrorKind::ZOutsideDStar, "z is not in the domain");
  if (v(z, dom.b) > dom.rho) fail(ErrorKind::ZOutsideDStar, "z lies in the outer arc");
  for (std::size_t i = 0; i < dom.holes.size(); ++i) {
    const Hole& h = dom.holes[i];
    if (h.removed == dom.rho ? v(z, h.base) != dom.rho : v(z, h.x) >= h.circle)
      fail(ErrorKind::ZOutsideDStar, "z is too close to hole " + std::to_string(i));
  }
  const std::size_t M = dom.holes.size();
  std::vector<PadicNumber> xs{dom.a}, bs{dom.b};
  for (const auto& h : dom.holes) {
    xs.push_back(h.x);
    bs.push_back(h.base);
  }
  PadicMatrix m(ctx, M + 1, M + 1);
  for (std::size_t i = 0; i <= M; ++i) {
    m(i, 0) = pole_weight(xs[i], bs[i], z, alpha);
    for (std::size_t j = 1; j <= M; ++j) m(i, j) = pole_weight(xs[i], bs[i], xs[j], alpha);
  }
  const KrasnerFunction g = f.divided_by_linear(z);
  CauchyHolesResult r;
  for (std::size_t i = 0; i <= M; ++i) r.integrals.push_back(integrate_closed_form(g, Arc::make(xs[i], bs[i]), alpha));
  std::vector<PadicNumber> e(M + 1, PadicNumber::zero(ctx));
  e[0] = PadicNumber::one(ctx);
  r.kappa = solve_linear(m.transpose(), e);
  r.value = PadicNumber::zero(ctx);
  for (std::size_t i = 0; i <= M; ++i) r.value += r.kappa[i] * r.integrals[i];
  r.direct = f(z);
  r.agreement = agreement(r.value, r.direct);
  return r;
}

/// The auxiliary center: x0 unless w((x1 - x0)/(x1 - b)) is a primitive 6th root of
/// unity, else x1 + (b - x1) w(c) for the least residue c with w((a0 - x1)/(a0 - b)) != -zeta.
inline PadicNumber choose_a0(const PadicNumber& x1, const PadicNumber& b, const PadicNumber& x0, long alpha) {
  const Ctx& ctx = x1.context();
  const PadicNumber zeta = omega_power((x1 - x0) / (x1 - b), static_cast<unsigned>(alpha));
  const PadicNumber one = PadicNumber::one(ctx);
  const bool primitive6 = zeta.pow(6L) == one && zeta.pow(2L) != one && zeta.pow(3L) != one;
  if (!primitive6) return x0;
  for (unsigned long c = 2; c < ctx->p(); ++c) {
    const PadicNumber a0 = x1 + (b - x1) * teichmuller_of_residue(ctx, c);
    const PadicNumber w = omega_power((a0 - x1) / (a0 - b), static_cast<unsigned>(alpha));
    if (!(w + zeta).is_zero()) return a0;
  }
  fail(ErrorKind::DeterminantZero, "no admissible auxiliary center");
}

struct OneLargeHoleResult {
  PadicNumber value, direct;
  PadicNumber a0;
  PadicNumber det;                  ///< D = W(a0; x0) - W(a0; x1) W(x1; x0)
  PadicNumber coeff_outer, coeff_hole;  ///< f(z) = coeff_outer J(a0, b) + coeff_hole J(x1, b)
  PadicNumber j_outer, j_hole;
  Val agreement = 0;
};

/// Cauchy's formula on D+(x1, R) minus D-(x1, R) with one large hole at x1, for |z - x0| < R.
inline OneLargeHoleResult cauchy_one_large_hole(const KrasnerFunction& f, const PadicNumber& x1, const PadicNumber& b,
                                                const PadicNumber& x0, std::optional<PadicNumber> a0, const PadicNumber& z,
                                                long alpha) {
  const Ctx& ctx = x1.context();
  auto v = [](const PadicNumber& x, const PadicNumber& y) { return (x - y).valuation_lower_bound(); };
  const Val rho = v(x1, b);
  if (v(x0, x1) != rho || v(x0, b) != rho) fail(ErrorKind::GeometryViolation, "x0 must be at distance R from x1 and b");
  if (v(z, x0) <= rho) fail(ErrorKind::ZOutsideDStar, "need |z - x0| < R");
  OneLargeHoleResult r;
  r.a0 = a0 ? *a0 : choose_a0(x1, b, x0, alpha);
  if (v(r.a0, x1) != rho || v(r.a0, b) != rho) fail(ErrorKind::GeometryViolation, "a0 must be at distance R from x1 and b");
  const PadicNumber w00 = pole_weight(r.a0, b, x0, alpha);
  const PadicNumber w01 = pole_weight(r.a0, b, x1, alpha);
  const PadicNumber w10 = pole_weight(x1, b, x0, alpha);
  r.det = w00 - w01 * w10;
  if (r.det.is_zero()) fail(ErrorKind::DeterminantZero, "D vanishes to precision");
  r.coeff_outer = r.det.inverse();
  r.coeff_hole = -(w01 / r.det);
  const KrasnerFunction g = f.divided_by_linear(z);
  r.j_outer = integrate_closed_form(g, Arc::make(r.a0, b), alpha);
  r.j_hole = integrate_closed_form(g, Arc::make(x1, b), alpha);
  r.value = r.coeff_outer * r.j_outer + r.coeff_hole * r.j_hole;
  r.direct = f(z);
  r.agreement = agreement(r.value, r.direct);
  (void)ctx;
  return r;
}

struct MaxModulusReport {
  Val global = kInfiniteVal;        ///< min_n v_p(c_n) + n rho about a
  std::vector<Val> per_arc;         ///< the same about each basepoint
  bool all_equal = true;
};

/// sup of |f| over each open disc D-(b_i, R) against the sup over D+(a, R), for polynomials.
inline MaxModulusReport max_modulus_check(const SeriesFunction& f, const PadicNumber& a, Val rho,
                                          const std::vector<PadicNumber>& basepoints) {
  const KrasnerFunction k = as_krasner(f);
  if (!k.poles.empty()) fail(ErrorKind::NotClosedDiscHolomorphic, "max modulus check needs a polynomial");
  MaxModulusReport r;
  r.global = poly_sup_valuation(k.poly.taylor_shift(a), rho);
  for (const auto& bi : basepoints) {
    if ((bi - a).valuation_lower_bound() < rho) fail(ErrorKind::GeometryViolation, "basepoint outside the disc");
    const Val s = poly_sup_valuation(k.poly.taylor_shift(bi), rho);
    r.per_arc.push_back(s);
    r.all_equal = r.all_equal && s == r.global;
  }
  return r;
}

/// Both sides of det((x_i - b_i)/(x_j - b_i)) = prod_{i != j} (x_j - b_i)^-1 prod_{i<j} (b_j - b_i)(x_i - x_j) over Q.
struct RationalIdentity {
  mpq_class lhs, rhs;
};

inline mpq_class rational_det(std::vector<std::vector<mpq_class>> m) {
  const std::size_t n = m.size();
  mpq_class det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && m[piv][c] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != c) {
      std::swap(m[piv], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      const mpq_class f = m[r][c] / m[c][c];
      for (std::size_t k = c; k < n; ++k) m[r][k] -= f * m[c][k];
    }
  }
  return det;
}

inline RationalIdentity weight_det_identity(const std::vector<mpq_class>& xs, const std::vector<mpq_class>& bs) {
  const std::size_t n = xs.size();
  if (n == 0 || bs.size() != n) fail(ErrorKind::InvalidArgument, "need matching nonempty point lists");
  std::vector<std::vector<mpq_class>> m(n, std::vector<mpq_class>(n));
  RationalIdentity r{0, 1};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (xs[j] == bs[i]) fail(ErrorKind::DivisionByZero, "x_j = b_i");
      m[i][j] = (xs[i] - bs[i]) / (xs[j] - bs[i]);
      if (i != j) r.rhs /= xs[j] - bs[i];
      if (i < j) r.rhs *= (bs[j] - bs[i]) * (xs[i] - xs[j]);
    }
  r.lhs = rational_det(std::move(m));
  return r;
}

}  // namespace padicline
