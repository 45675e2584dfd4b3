#pragma once

/**
 * @file raylimits.hpp
 * @brief Ray limits of a(n) = c_n (a - b)^(n+1) along n = m + d p^phi(k),
 * the sufficiency check built on them, and the integral recovered from the
 * ray limits through the delta sums.
 */

#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "series.hpp"
#include "teichmuller.hpp"

namespace padicline {

struct RayEntry {
  long d = 0;
  PadicNumber limit;              ///< value at the largest k
  std::vector<PadicNumber> values;///< a(m + d p^phi(k)) for k = k0..k_max
  std::vector<Val> residuals;     ///< v_p of successive differences
  long stabilized_at_k = -1;      ///< first k from which residuals strictly increase (or are exact); -1 if never
  bool stabilized = false;
  bool strictly_improving = false;  ///< every residual improves on the previous one
  bool exact_zero = false;
};

struct RayLimitTable {
  long m = -1;
  long k0 = 1;
  long k_max = 0;
  std::map<long, RayEntry> entries;
  Val uniform_residual = kInfiniteVal;  ///< min over d of the final residual

  const RayEntry& at(long d) const {
    auto it = entries.find(d);
    if (it == entries.end()) fail(ErrorKind::InvalidArgument, "no ray entry for d = " + std::to_string(d));
    return it->second;
  }
};

namespace detail {

inline void check_ray_preconditions(const SeriesFunction& f, const PathSequence& path) {
  if (!f.certificate() && !f.degree_bound()) fail(ErrorKind::CertificateRequired, f.name());
  const double beta = f.certificate() ? f.certificate()->beta : 0.0;
  if (beta >= 1) fail(ErrorKind::BetaTooLarge, f.name() + " has beta >= 1");
  if (path.kind == PathSequence::Kind::Affine) return;
  // phi(k) - (beta+1)(phi(k+1) - phi(k)) - beta log_p phi(k) must grow.
  const double lp = std::log(static_cast<double>(f.context()->p()));
  double prev = -1e300;
  const long k0 = path.k0();
  const long k_end = std::min(path.max_k() - 1, k0 + 6);
  for (long k = k0; k <= k_end; ++k) {
    const double ph = static_cast<double>(path(k));
    const double g = ph - (beta + 1) * (static_cast<double>(path(k + 1)) - ph) - beta * std::log(ph) / lp;
    if (k > k0 && g <= prev)
      fail(ErrorKind::GrowthConditionViolated, path.describe() + " does not satisfy the growth condition");
    prev = g;
  }
}

}  // namespace detail

inline RayLimitTable ray_limits(const SeriesFunction& f, const Arc& arc, const PathSequence& path, long d_max,
                                long k_max, long m = -1) {
  detail::check_ray_preconditions(f, path);
  const Ctx& ctx = arc.context();
  const PadicNumber h = arc.a - arc.b;
  RayLimitTable t;
  t.m = m;
  t.k0 = path.k0();
  t.k_max = k_max;
  for (long d = 1; d <= d_max; ++d) {
    RayEntry e;
    e.d = d;
    for (long k = t.k0; k <= k_max; ++k) {
      mpz_class P;
      mpz_ui_pow_ui(P.get_mpz_t(), ctx->p(), static_cast<unsigned long>(path(k)));
      mpz_class n = m + d * P;
      if (n < 0) continue;
      if (!n.fits_slong_p()) fail(ErrorKind::LevelTooLarge, "ray index overflows");
      const long ni = n.get_si();
      PadicNumber v = f.coeff(ni) * h.pow(mpz_class(ni + 1));
      if (!e.values.empty()) e.residuals.push_back(agreement(v, e.values.back()));
      e.values.push_back(v);
    }
    if (e.values.empty()) continue;
    e.limit = e.values.back();
    e.exact_zero = true;
    for (const auto& v : e.values) e.exact_zero = e.exact_zero && v.is_zero();
    // a run of residuals that strictly increase, where agreement to full precision counts as progress
    const std::size_t r = e.residuals.size();
    auto exact = [&](std::size_t i) {
      return e.residuals[i] >= std::min(e.values[i].precision(), e.values[i + 1].precision());
    };
    std::size_t from = r == 0 ? 0 : r - 1;
    while (from > 0 && (e.residuals[from] > e.residuals[from - 1] || exact(from))) --from;
    e.stabilized = r > 0 && (exact(r - 1) || (r >= 2 && from <= r - 2));
    e.strictly_improving = e.stabilized && from == 0;
    e.stabilized_at_k = e.stabilized ? t.k0 + static_cast<long>(from) + 1 : -1;
    if (r > 0) t.uniform_residual = std::min(t.uniform_residual, e.residuals.back());
    t.entries.emplace(d, std::move(e));
  }
  return t;
}

struct SufficiencyReport {
  RayLimitTable table;
  bool met = false;
  std::string verdict;
};

/// Tracks the ray sequences and reports whether every direction stabilized.
inline SufficiencyReport sufficiency_check(const SeriesFunction& f, const Arc& arc, const PathSequence& path,
                                           long d_max, long k_max) {
  SufficiencyReport rep;
  rep.table = ray_limits(f, arc, path, d_max, k_max, -1);
  rep.met = true;
  for (const auto& [d, e] : rep.table.entries) rep.met = rep.met && e.stabilized;
  rep.verdict = rep.met ? "sufficiency criteria met to depth k_max = " + std::to_string(k_max)
                        : "some ray sequences did not stabilize by k_max = " + std::to_string(k_max);
  return rep;
}

/// The n-th roots of unity in Z_p (n | p - 1) as Teichmuller lifts, ascending residue.
inline std::vector<PadicNumber> roots_of_unity(const Ctx& ctx, long n) {
  const unsigned long p = ctx->p();
  if (n < 1 || (p - 1) % static_cast<unsigned long>(n) != 0)
    fail(ErrorKind::UnsupportedOrder, std::to_string(n) + " does not divide p - 1");
  std::vector<PadicNumber> out;
  for (unsigned long c = 1; c < p; ++c) {
    PadicNumber z = teichmuller_of_residue(ctx, c);
    if (z.pow(n) == PadicNumber::one(ctx)) out.push_back(z);
  }
  return out;
}

/// delta_i = sum_{zeta^n = 1} zeta^(i+1) / (1 - w^(p^alpha)(1 - zeta)).
inline std::vector<PadicNumber> delta_sums(const Ctx& ctx, long n, long alpha) {
  auto roots = roots_of_unity(ctx, n);
  std::vector<PadicNumber> weights;
  for (const auto& z : roots) {
    PadicNumber w = omega_power(PadicNumber::one(ctx) - z, static_cast<unsigned>(alpha));
    weights.push_back((PadicNumber::one(ctx) - w).inverse());
  }
  std::vector<PadicNumber> delta;
  for (long i = 0; i < n; ++i) {
    PadicNumber s = PadicNumber::zero(ctx);
    for (std::size_t r = 0; r < roots.size(); ++r) s += roots[r].pow(i + 1) * weights[r];
    delta.push_back(s);
  }
  return delta;
}

/// -(1/n) sum_i delta_i L(alpha'(i+1)), alpha' p^alpha = 1 mod n. Ray limits are
/// read modulo n and must agree on each class to the table's uniform residual.
inline PadicNumber integrate_via_raylimits(const RayLimitTable& table, long n, long alpha, const Ctx& ctx) {
  const unsigned long p = ctx->p();
  if (n < 1 || (p - 1) % static_cast<unsigned long>(n) != 0)
    fail(ErrorKind::UnsupportedOrder, std::to_string(n) + " does not divide p - 1");
  long pa = 1;
  for (long i = 0; i < alpha; ++i) pa = (pa * static_cast<long>(p % static_cast<unsigned long>(n))) % n;
  long ap = 1;
  for (; ap <= n; ++ap)
    if ((ap * pa) % n == 1 % n) break;
  // class consistency
  const Val tol = table.uniform_residual;
  std::map<long, PadicNumber> rep;
  for (const auto& [d, e] : table.entries) {
    const long cls = d % n;
    auto it = rep.find(cls);
    if (it == rep.end()) {
      rep.emplace(cls, e.limit);
    } else if (agreement(it->second, e.limit) < std::min<Val>(tol, std::min(it->second.precision(), e.limit.precision()))) {
      fail(ErrorKind::ClassInconsistency, "ray limits for d = " + std::to_string(d) + " disagree with its class mod " +
                                              std::to_string(n));
    }
  }
  auto delta = delta_sums(ctx, n, alpha);
  PadicNumber s = PadicNumber::zero(ctx);
  for (long i = 0; i < n; ++i) {
    const long cls = (ap * (i + 1)) % n;
    auto it = rep.find(cls);
    if (it == rep.end())
      fail(ErrorKind::InvalidArgument, "ray table lacks a direction in class " + std::to_string(cls) + " mod " +
                                           std::to_string(n));
    s += delta[static_cast<std::size_t>(i)] * it->second;
  }
  return -(s / PadicNumber::from_int(ctx, n));
}

}  // namespace padicline
