#pragma once

/**
 * @file cyclotomic.hpp
 * @brief Exact arithmetic in Q(zeta) for zeta a primitive p^m-th root of unity.
 *
 * Elements are polynomials in zeta of degree < phi(p^m), reduced modulo
 * Phi_{p^m}(x) = sum_{i<p} x^(i p^(m-1)).
 */

#include <vector>

#include "polynomial.hpp"

namespace padicline {

class CyclotomicElement {
 public:
  CyclotomicElement(unsigned long p, unsigned m) : p_(p), m_(m) {
    c_.assign(static_cast<std::size_t>(degree_of(p, m)), mpq_class(0));
  }

  static CyclotomicElement constant(unsigned long p, unsigned m, const mpq_class& q) {
    CyclotomicElement e(p, m);
    e.c_[0] = q;
    return e;
  }

  /// zeta^k, k taken modulo p^m.
  static CyclotomicElement zeta_power(unsigned long p, unsigned m, long k) {
    std::vector<mpq_class> v(static_cast<std::size_t>(order_of(p, m)), mpq_class(0));
    long ord = order_of(p, m);
    v[static_cast<std::size_t>(((k % ord) + ord) % ord)] = 1;
    return from_raw(p, m, std::move(v));
  }

  static long order_of(unsigned long p, unsigned m) {
    long r = 1;
    for (unsigned i = 0; i < m; ++i) r *= static_cast<long>(p);
    return r;
  }
  static long degree_of(unsigned long p, unsigned m) {
    return m == 0 ? 1 : order_of(p, m - 1) * static_cast<long>(p - 1);
  }

  /// Reduce an arbitrary coefficient vector modulo Phi_{p^m}.
  static CyclotomicElement from_raw(unsigned long p, unsigned m, std::vector<mpq_class> v) {
    CyclotomicElement e(p, m);
    const long d = degree_of(p, m);
    if (m == 0) {
      mpq_class s = 0;
      for (auto& x : v) s += x;
      e.c_[0] = s;
      return e;
    }
    const long step = order_of(p, m - 1);
    for (long i = static_cast<long>(v.size()) - 1; i >= d; --i) {
      if (v[static_cast<std::size_t>(i)] == 0) continue;
      mpq_class c = v[static_cast<std::size_t>(i)];
      v[static_cast<std::size_t>(i)] = 0;
      for (unsigned long j = 0; j + 1 < p; ++j) v[static_cast<std::size_t>(i - d + static_cast<long>(j) * step)] -= c;
    }
    for (long i = 0; i < d && i < static_cast<long>(v.size()); ++i) e.c_[static_cast<std::size_t>(i)] = v[static_cast<std::size_t>(i)];
    return e;
  }

  unsigned long p() const { return p_; }
  unsigned level() const { return m_; }
  const std::vector<mpq_class>& coeffs() const { return c_; }

  bool is_rational() const {
    for (std::size_t i = 1; i < c_.size(); ++i)
      if (c_[i] != 0) return false;
    return true;
  }
  bool is_zero() const {
    for (const auto& x : c_)
      if (x != 0) return false;
    return true;
  }
  const mpq_class& rational_part() const { return c_[0]; }

  friend CyclotomicElement operator+(const CyclotomicElement& a, const CyclotomicElement& b) {
    a.check(b);
    CyclotomicElement r = a;
    for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] += b.c_[i];
    return r;
  }
  friend CyclotomicElement operator-(const CyclotomicElement& a, const CyclotomicElement& b) {
    a.check(b);
    CyclotomicElement r = a;
    for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] -= b.c_[i];
    return r;
  }
  friend CyclotomicElement operator*(const CyclotomicElement& a, const CyclotomicElement& b) {
    a.check(b);
    std::vector<mpq_class> v(a.c_.size() + b.c_.size(), mpq_class(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i] == 0) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j)
        if (b.c_[j] != 0) v[i + j] += a.c_[i] * b.c_[j];
    }
    return from_raw(a.p_, a.m_, std::move(v));
  }
  friend CyclotomicElement operator*(const mpq_class& s, const CyclotomicElement& a) {
    CyclotomicElement r = a;
    for (auto& x : r.c_) x *= s;
    return r;
  }

  /// Inverse via the extended Euclidean algorithm against Phi_{p^m}.
  CyclotomicElement inverse() const {
    if (is_zero()) fail(ErrorKind::DivisionByZero, "inverse of zero in Q(zeta)");
    QPoly r0 = cyclotomic_poly(), r1 = qpoly(c_);
    QPoly t0 = qpoly_const(0), t1 = qpoly_const(1);
    while (!r1.is_zero()) {
      auto qr = divmod(r0, r1);
      QPoly t2 = t0 - qr.first * t1;
      r0 = std::move(r1);
      r1 = std::move(qr.second);
      t0 = std::move(t1);
      t1 = std::move(t2);
    }
    if (r0.degree() != 0) fail(ErrorKind::NotInvertible, "element shares a factor with the cyclotomic polynomial");
    mpq_class inv = 1 / r0[0];
    std::vector<mpq_class> v = t0.coeffs();
    for (auto& x : v) x *= inv;
    return from_raw(p_, m_, std::move(v));
  }

  /// The automorphism zeta -> zeta^s, gcd(s, p) = 1.
  CyclotomicElement galois(long s) const {
    const long ord = order_of(p_, m_);
    std::vector<mpq_class> v(static_cast<std::size_t>(ord), mpq_class(0));
    for (std::size_t i = 0; i < c_.size(); ++i) {
      long k = ((static_cast<long>(i) * s) % ord + ord) % ord;
      v[static_cast<std::size_t>(k)] += c_[i];
    }
    return from_raw(p_, m_, std::move(v));
  }

  QPoly cyclotomic_poly() const {
    if (m_ == 0) return qpoly({-1, 1});
    const long step = order_of(p_, m_ - 1);
    std::vector<mpq_class> v(static_cast<std::size_t>(step * static_cast<long>(p_ - 1) + 1), mpq_class(0));
    for (unsigned long j = 0; j < p_; ++j) v[static_cast<std::size_t>(static_cast<long>(j) * step)] = 1;
    return qpoly(std::move(v));
  }

 private:
  void check(const CyclotomicElement& b) const {
    if (p_ != b.p_ || m_ != b.m_) fail(ErrorKind::InvalidArgument, "mixing cyclotomic fields");
  }

  unsigned long p_;
  unsigned m_;
  std::vector<mpq_class> c_;
};

}  // namespace padicline
