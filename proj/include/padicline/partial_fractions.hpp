#pragma once

/**
 * @file partial_fractions.hpp
 * @brief Roots of rational polynomials in Q_p and partial fraction
 * decompositions with p-adic poles.
 */

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "polynomial.hpp"
#include "rational_function.hpp"

namespace padicline {

/// Square-free factorization (Yun): f = lead * prod_i s_i^i, s_i monic.
inline std::vector<std::pair<QPoly, int>> squarefree_factors(const QPoly& f) {
  std::vector<std::pair<QPoly, int>> out;
  if (f.degree() < 1) return out;
  QPoly fp = f.derivative();
  QPoly b = gcd(f, fp);
  QPoly c = monic(divmod(f, b).first);
  QPoly d = divmod(fp, b).first - c.derivative();
  int i = 1;
  while (c.degree() > 0) {
    QPoly a = gcd(c, d);
    if (a.degree() > 0) out.emplace_back(a, i);
    c = monic(divmod(c, a).first);
    d = divmod(d, a).first - c.derivative();
    ++i;
  }
  return out;
}

/// Integer polynomial proportional to f with coprime coefficients.
inline std::vector<mpz_class> primitive_integer_coeffs(const QPoly& f) {
  mpz_class l = 1;
  for (const auto& c : f.coeffs()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  std::vector<mpz_class> z;
  mpz_class g = 0;
  for (const auto& c : f.coeffs()) {
    mpq_class t = c * l;
    z.push_back(t.get_num());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), z.back().get_mpz_t());
  }
  if (g != 0)
    for (auto& x : z) x /= g;
  return z;
}

namespace detail {

inline mpz_class eval_z(const std::vector<mpz_class>& g, const mpz_class& x) {
  mpz_class r = 0;
  for (std::size_t i = g.size(); i-- > 0;) r = r * x + g[i];
  return r;
}

inline std::vector<mpz_class> deriv_z(const std::vector<mpz_class>& g) {
  std::vector<mpz_class> d;
  for (std::size_t i = 1; i < g.size(); ++i) d.push_back(g[i] * static_cast<unsigned long>(i));
  return d;
}

inline std::vector<mpz_class> divisors(mpz_class n) {
  n = abs(n);
  std::vector<mpz_class> primes;
  std::vector<int> exps;
  for (unsigned long q = 2; mpz_class(q) * q <= n; ++q) {
    if (q > 2000000) return {};
    if (mpz_divisible_ui_p(n.get_mpz_t(), q)) {
      int e = 0;
      while (mpz_divisible_ui_p(n.get_mpz_t(), q)) {
        n /= q;
        ++e;
      }
      primes.emplace_back(q);
      exps.push_back(e);
    }
  }
  if (n > 1) {
    primes.push_back(n);
    exps.push_back(1);
  }
  std::vector<mpz_class> divs{1};
  for (std::size_t i = 0; i < primes.size(); ++i) {
    std::size_t cur = divs.size();
    mpz_class pw = 1;
    for (int e = 1; e <= exps[i]; ++e) {
      pw *= primes[i];
      for (std::size_t j = 0; j < cur; ++j) divs.push_back(divs[j] * pw);
    }
  }
  return divs;
}

/// Roots in Z_p of a primitive integer polynomial without repeated roots,
/// as residues modulo p^prec.
inline void zp_roots(std::vector<mpz_class> g, unsigned long p, Val prec, const mpz_class& offset,
                     const mpz_class& scale, std::vector<mpz_class>& out, int depth = 0) {
  while (!g.empty() && g.back() == 0) g.pop_back();
  if (g.size() < 2) return;
  mpz_class cont = 0;
  for (const auto& c : g) mpz_gcd(cont.get_mpz_t(), cont.get_mpz_t(), c.get_mpz_t());
  for (auto& c : g) c /= cont;
  if (depth > 4 * prec + 64) fail(ErrorKind::PrecisionExhausted, "root separation exceeds working precision");
  mpz_class mod;
  mpz_ui_pow_ui(mod.get_mpz_t(), p, static_cast<unsigned long>(prec));
  const auto gp = deriv_z(g);
  for (unsigned long c = 0; c < p; ++c) {
    if (!mpz_divisible_ui_p(eval_z(g, mpz_class(c)).get_mpz_t(), p)) continue;
    if (!mpz_divisible_ui_p(eval_z(gp, mpz_class(c)).get_mpz_t(), p)) {
      mpz_class x = c;
      for (int it = 0; it < 200; ++it) {
        mpz_class v = eval_z(g, x) % mod;
        if (v == 0) break;
        mpz_class d = eval_z(gp, x) % mod, inv;
        if (d < 0) d += mod;
        mpz_invert(inv.get_mpz_t(), d.get_mpz_t(), mod.get_mpz_t());
        x = (x - v * inv) % mod;
        if (x < 0) x += mod;
      }
      out.push_back(offset + scale * x);
      continue;
    }
    // G(c + p y) as a polynomial in y
    std::vector<mpz_class> h(g.size(), mpz_class(0));
    {
      std::vector<mpz_class> sh = g;
      const std::size_t n = sh.size();
      for (std::size_t i = 0; i + 1 < n; ++i)
        for (std::size_t j = n - 1; j-- > i;) sh[j] += sh[j + 1] * c;
      mpz_class pw = 1;
      for (std::size_t i = 0; i < n; ++i) {
        h[i] = sh[i] * pw;
        pw *= p;
      }
    }
    zp_roots(std::move(h), p, prec, offset + scale * c, scale * p, out, depth + 1);
  }
}

}  // namespace detail

/// Rational roots of a polynomial over Q (each listed once).
inline std::vector<mpq_class> rational_roots(const QPoly& f) {
  std::vector<mpq_class> out;
  if (f.degree() < 1) return out;
  auto z = primitive_integer_coeffs(f);
  std::size_t low = 0;
  while (low < z.size() && z[low] == 0) ++low;
  if (low > 0) out.emplace_back(0);
  if (low + 1 >= z.size()) return out;
  auto us = detail::divisors(z[low]);
  auto vs = detail::divisors(z.back());
  if (us.empty() || vs.empty()) return out;
  for (const auto& u : us)
    for (const auto& v : vs)
      for (int s : {1, -1}) {
        mpq_class r(s * u, v);
        r.canonicalize();
        if (f(r) == 0 && std::find(out.begin(), out.end(), r) == out.end()) out.push_back(r);
      }
  return out;
}

/// All roots in Q_p of a square-free f; `complete` tells whether deg f roots were found.
struct PadicRoots {
  std::vector<PadicNumber> roots;
  bool complete = false;
};

inline PadicRoots padic_roots(const QPoly& f, const Ctx& ctx) {
  PadicRoots r;
  if (f.degree() < 1) {
    r.complete = true;
    return r;
  }
  auto z = primitive_integer_coeffs(f);
  const unsigned long p = ctx->p();
  const Val prec = ctx->precision() + 4;
  std::size_t low = 0;
  while (low < z.size() && z[low] == 0) ++low;
  if (low > 0) r.roots.push_back(PadicNumber::zero(ctx));
  std::vector<mpz_class> g(z.begin() + static_cast<long>(low), z.end());
  std::vector<mpz_class> found;
  detail::zp_roots(g, p, prec, 0, 1, found);
  for (const auto& x : found) r.roots.push_back(PadicNumber::from_parts(ctx, 0, x, prec));
  std::vector<mpz_class> rev(g.rbegin(), g.rend());
  std::vector<mpz_class> inv_found;
  detail::zp_roots(rev, p, prec, 0, 1, inv_found);
  for (const auto& y : inv_found) {
    PadicNumber py = PadicNumber::from_parts(ctx, 0, y, prec);
    if (py.valuation_lower_bound() > 0 && !py.is_zero()) r.roots.push_back(py.inverse());
  }
  r.complete = static_cast<long>(r.roots.size()) == f.degree();
  return r;
}

/// One pole: sum_k coeffs[k-1] / (x - x0)^k.
struct PolePart {
  PadicNumber x0;
  std::vector<PadicNumber> coeffs;
  std::optional<mpq_class> x0_rational;

  int order() const { return static_cast<int>(coeffs.size()); }
  const PadicNumber& residue() const { return coeffs.front(); }
};

/// poly(x) + sum over poles, everything in Q_p.
struct PadicPartialFractions {
  Ctx ctx;
  PPoly poly;
  std::vector<PolePart> poles;

  explicit PadicPartialFractions(const Ctx& c) : ctx(c), poly(PadicNumber::zero(c)) {}

  PadicNumber operator()(const PadicNumber& x) const {
    PadicNumber s = poly(x);
    for (const auto& pl : poles) {
      PadicNumber u = (x - pl.x0).inverse(), pw = u;
      for (const auto& c : pl.coeffs) {
        s += c * pw;
        pw *= u;
      }
    }
    return s;
  }

  PadicPartialFractions& add_pole(PadicNumber x0, std::vector<PadicNumber> coeffs) {
    for (auto& pl : poles) {
      if ((pl.x0 - x0).is_zero()) {
        if (pl.coeffs.size() < coeffs.size()) pl.coeffs.resize(coeffs.size(), PadicNumber::zero(ctx));
        for (std::size_t i = 0; i < coeffs.size(); ++i) pl.coeffs[i] += coeffs[i];
        return *this;
      }
    }
    poles.push_back({std::move(x0), std::move(coeffs), std::nullopt});
    return *this;
  }

  friend PadicPartialFractions operator+(PadicPartialFractions a, const PadicPartialFractions& b) {
    a.poly = a.poly + b.poly;
    for (const auto& pl : b.poles) a.add_pole(pl.x0, pl.coeffs);
    return a;
  }

  PadicPartialFractions scaled(const PadicNumber& s) const {
    PadicPartialFractions r = *this;
    r.poly = s * r.poly;
    for (auto& pl : r.poles)
      for (auto& c : pl.coeffs) c = s * c;
    return r;
  }

  /// this(x) / (x - z).
  PadicPartialFractions divided_by_linear(const PadicNumber& z) const {
    PadicPartialFractions r(ctx);
    PadicNumber fz = poly(z);
    // poly(x)/(x - z) = quotient + poly(z)/(x - z)
    std::vector<PadicNumber> q;
    {
      const auto& c = poly.coeffs();
      if (c.size() > 1) {
        q.assign(c.size() - 1, PadicNumber::zero(ctx));
        PadicNumber acc = c.back();
        for (std::size_t i = c.size() - 1; i-- > 0;) {
          q[i] = acc;
          acc = acc * z + c[i];
        }
      }
    }
    r.poly = PPoly(std::move(q), PadicNumber::zero(ctx));
    PadicNumber at_z = fz;
    for (const auto& pl : poles) {
      PadicNumber delta = z - pl.x0;
      if (delta.is_zero()) {
        // the pole at z itself gains one order
        std::vector<PadicNumber> up{PadicNumber::zero(ctx)};
        up.insert(up.end(), pl.coeffs.begin(), pl.coeffs.end());
        r.poles.push_back({pl.x0, std::move(up), pl.x0_rational});
        continue;
      }
      // 1/((x-x0)^n (x-z)) = delta^-n/(x-z) - sum_{k=1}^n delta^-(n-k+1)/(x-x0)^k
      const int n_max = pl.order();
      std::vector<PadicNumber> out(static_cast<std::size_t>(n_max), PadicNumber::zero(ctx));
      PadicNumber dinv = delta.inverse();
      std::vector<PadicNumber> dpow{PadicNumber::one(ctx)};
      for (int i = 1; i <= n_max + 1; ++i) dpow.push_back(dpow.back() * dinv);
      for (int n = 1; n <= n_max; ++n) {
        const PadicNumber& c = pl.coeffs[static_cast<std::size_t>(n - 1)];
        if (c.is_zero() && c.precision() >= ctx->precision()) continue;
        at_z += c * dpow[static_cast<std::size_t>(n)];
        for (int k = 1; k <= n; ++k) out[static_cast<std::size_t>(k - 1)] -= c * dpow[static_cast<std::size_t>(n - k + 1)];
      }
      r.poles.push_back({pl.x0, std::move(out), pl.x0_rational});
    }
    r.add_pole(z, {at_z});
    return r;
  }
};

namespace detail {

/// First m coefficients of num(t)/den(t) as power series.
template <class T>
std::vector<T> series_quotient(const Poly<T>& num, const Poly<T>& den, std::size_t m) {
  std::vector<T> out;
  const T& d0 = den[0];
  for (std::size_t n = 0; n < m; ++n) {
    T s = num[n];
    for (std::size_t i = 1; i <= n; ++i) s = s - den[i] * out[n - i];
    out.push_back(s / d0);
  }
  return out;
}

}  // namespace detail

/// Partial fractions of an exact rational function over Q_p. Rational poles
/// are handled exactly over Q; other poles must lie in Q_p.
inline PadicPartialFractions partial_fractions(const ExactRationalFunction& f, const Ctx& ctx) {
  PadicPartialFractions out(ctx);
  auto qr = divmod(f.num(), f.den());
  out.poly = to_padic(qr.first, ctx);
  const QPoly& rem = qr.second;
  const QPoly& den = f.den();
  if (den.degree() == 0) return out;
  for (auto& [s, mult] : squarefree_factors(den)) {
    QPoly rest = s;
    const std::size_t m = static_cast<std::size_t>(mult);
    for (const mpq_class& r : rational_roots(s)) {
      QPoly lin = qpoly({-r, 1});
      rest = divmod(rest, lin).first;
      QPoly g = den;
      for (std::size_t i = 0; i < m; ++i) g = divmod(g, lin).first;
      auto h = detail::series_quotient(rem.taylor_shift(r), g.taylor_shift(r), m);
      std::vector<PadicNumber> coeffs;
      for (std::size_t j = m; j-- > 0;) coeffs.push_back(PadicNumber::from_rational(ctx, h[j]));
      out.poles.push_back({PadicNumber::from_rational(ctx, r), std::move(coeffs), r});
    }
    if (rest.degree() < 1) continue;
    PadicRoots roots = padic_roots(rest, ctx);
    if (!roots.complete)
      fail(ErrorKind::IrrationalPole, "denominator factor " + to_string(rest) + " does not split over Q_" +
                                          std::to_string(ctx->p()));
    PPoly dp = to_padic(den, ctx), rp = to_padic(rem, ctx);
    for (const auto& x0 : roots.roots) {
      PPoly lin({-x0, PadicNumber::one(ctx)}, PadicNumber::zero(ctx));
      PPoly g = dp;
      for (std::size_t i = 0; i < m; ++i) g = divmod(g, lin).first;
      auto h = detail::series_quotient(rp.taylor_shift(x0), g.taylor_shift(x0), m);
      std::vector<PadicNumber> coeffs;
      for (std::size_t j = m; j-- > 0;) coeffs.push_back(h[j]);
      out.poles.push_back({x0, std::move(coeffs), std::nullopt});
    }
  }
  return out;
}

}  // namespace padicline
