#pragma once

/**
 * @file oracle.hpp
 * @brief Exact evaluation of the root-of-unity average
 *   A(m) = p^-m * sum_{zeta^(p^m)=1} (x - a) f(x),  x = a + (b - a) zeta
 * for rational f with rational a, b.
 *
 * For each level j the value at one primitive p^j-th root is computed in
 * Q(zeta_{p^j}) and the remaining roots of that order are its Galois
 * conjugates, so the whole sum is assembled exactly without approximations.
 */

#include "cyclotomic.hpp"
#include "rational_function.hpp"

namespace padicline {

struct OracleOptions {
  long enumeration_cap = 250;  ///< largest admissible p^m
  long generator = 1;          ///< which primitive root zeta^s plays the role of zeta
};

inline CyclotomicElement eval_in_field(const QPoly& f, const CyclotomicElement& x) {
  CyclotomicElement r(x.p(), x.level());
  for (long i = f.degree(); i >= 0; --i)
    r = r * x + CyclotomicElement::constant(x.p(), x.level(), f[static_cast<std::size_t>(i)]);
  return r;
}

inline mpq_class direct_A(const ExactRationalFunction& f, const mpq_class& a, const mpq_class& b, unsigned long p,
                          unsigned m, const OracleOptions& opt = {}) {
  if (a == b) fail(ErrorKind::InvalidArgument, "degenerate arc a = b");
  const long order = CyclotomicElement::order_of(p, m);
  if (order > opt.enumeration_cap)
    fail(ErrorKind::LevelTooLarge, "p^m = " + std::to_string(order) + " exceeds the enumeration cap");
  if (opt.generator % static_cast<long>(p) == 0) fail(ErrorKind::InvalidArgument, "generator exponent must be prime to p");
  const mpq_class h = b - a;

  if (f.den()(b) == 0) fail(ErrorKind::PoleOnSampleSet, "pole at the basepoint b");
  mpq_class total = h * f(b);

  for (unsigned j = 1; j <= m; ++j) {
    const long ord = CyclotomicElement::order_of(p, j);
    CyclotomicElement z = CyclotomicElement::zeta_power(p, j, opt.generator);
    CyclotomicElement x = CyclotomicElement::constant(p, j, a) + h * z;
    CyclotomicElement d = eval_in_field(f.den(), x);
    CyclotomicElement dinv(p, j);
    try {
      dinv = d.inverse();
    } catch (const Error&) {
      fail(ErrorKind::PoleOnSampleSet, "pole at a primitive " + std::to_string(ord) + "-th sample point");
    }
    CyclotomicElement y = h * (z * eval_in_field(f.num(), x) * dinv);
    CyclotomicElement sum(p, j);
    for (long s = 1; s < ord; ++s) {
      if (s % static_cast<long>(p) == 0) continue;
      sum = sum + y.galois(s);
    }
    if (!sum.is_rational()) fail(ErrorKind::InvalidArgument, "conjugate sum is not rational; arithmetic is inconsistent");
    total += sum.rational_part();
  }
  mpq_class res = total / mpq_class(order);
  res.canonicalize();
  return res;
}

}  // namespace padicline
