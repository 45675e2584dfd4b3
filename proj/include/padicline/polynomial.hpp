#pragma once

#include <gmpxx.h>

#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "padic.hpp"

namespace padicline {

template <class T>
struct CoeffTraits;

template <>
struct CoeffTraits<mpq_class> {
  static bool is_zero(const mpq_class& x) { return x == 0; }
  static mpq_class from_long(const mpq_class&, long n) { return mpq_class(n); }
};

template <>
struct CoeffTraits<PadicNumber> {
  static bool is_zero(const PadicNumber& x) { return x.is_zero(); }
  static PadicNumber from_long(const PadicNumber& proto, long n) {
    return PadicNumber::from_int(proto.context(), mpz_class(n));
  }
};

/// Dense univariate polynomial, coefficients stored low degree first.
/// `zero_` is a prototype so coefficient types that carry a context can
/// manufacture zeros.
template <class T>
class Poly {
  using Tr = CoeffTraits<T>;

 public:
  Poly() = default;
  explicit Poly(T zero) : zero_(std::move(zero)) {}
  Poly(std::vector<T> coeffs, T zero) : c_(std::move(coeffs)), zero_(std::move(zero)) { trim(); }

  static Poly monomial(const T& coeff, std::size_t deg, const T& zero) {
    std::vector<T> c(deg + 1, zero);
    c[deg] = coeff;
    return Poly(std::move(c), zero);
  }

  long degree() const { return static_cast<long>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<T>& coeffs() const { return c_; }
  const T& zero() const { return zero_; }
  T operator[](std::size_t i) const { return i < c_.size() ? c_[i] : zero_; }
  const T& lead() const { return c_.back(); }

  T operator()(const T& x) const {
    T r = zero_;
    for (std::size_t i = c_.size(); i-- > 0;) r = r * x + c_[i];
    return r;
  }

  Poly derivative() const {
    std::vector<T> d;
    for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * Tr::from_long(zero_, static_cast<long>(i)));
    return Poly(std::move(d), zero_);
  }

  friend Poly operator+(const Poly& a, const Poly& b) {
    std::vector<T> r(std::max(a.c_.size(), b.c_.size()), a.zero_);
    for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] = a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] = r[i] + b.c_[i];
    return Poly(std::move(r), a.zero_);
  }
  friend Poly operator-(const Poly& a) {
    std::vector<T> r;
    for (const auto& x : a.c_) r.push_back(-x);
    return Poly(std::move(r), a.zero_);
  }
  friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly(a.zero_);
    std::vector<T> r(a.c_.size() + b.c_.size() - 1, a.zero_);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] = r[i + j] + a.c_[i] * b.c_[j];
    return Poly(std::move(r), a.zero_);
  }
  friend Poly operator*(const T& s, const Poly& a) {
    std::vector<T> r;
    for (const auto& x : a.c_) r.push_back(s * x);
    return Poly(std::move(r), a.zero_);
  }

  /// Quotient and remainder; needs an invertible leading coefficient of b.
  friend std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
    if (b.is_zero()) fail(ErrorKind::DivisionByZero, "polynomial division by zero");
    if (a.degree() < b.degree()) return {Poly(a.zero_), a};
    std::vector<T> r = a.c_;
    std::vector<T> q(static_cast<std::size_t>(a.degree() - b.degree() + 1), a.zero_);
    const std::size_t db = static_cast<std::size_t>(b.degree());
    for (std::size_t k = q.size(); k-- > 0;) {
      T f = r[k + db] / b.lead();
      q[k] = f;
      for (std::size_t j = 0; j <= db; ++j) r[k + j] = r[k + j] - f * b.c_[j];
    }
    r.resize(db);
    return {Poly(std::move(q), a.zero_), Poly(std::move(r), a.zero_)};
  }

  /// Coefficients of f(x + s).
  Poly taylor_shift(const T& s) const {
    std::vector<T> r = c_;
    const std::size_t n = r.size();
    for (std::size_t i = 0; i + 1 < n; ++i)
      for (std::size_t j = n - 1; j-- > i;) r[j] = r[j] + s * r[j + 1];
    return Poly(std::move(r), zero_);
  }

  /// Coefficients of f(s * x).
  Poly scale_var(const T& s) const {
    std::vector<T> r = c_;
    T pw = Tr::from_long(zero_, 1);
    for (auto& x : r) {
      x = x * pw;
      pw = pw * s;
    }
    return Poly(std::move(r), zero_);
  }

  Poly compose(const Poly& g) const {
    Poly r(zero_);
    for (std::size_t i = c_.size(); i-- > 0;) r = r * g + Poly({c_[i]}, zero_);
    return r;
  }

  template <class F>
  auto map(F&& f, decltype(f(std::declval<T>())) zero) const {
    std::vector<decltype(f(std::declval<T>()))> r;
    for (const auto& x : c_) r.push_back(f(x));
    return Poly<decltype(f(std::declval<T>()))>(std::move(r), zero);
  }

  friend bool operator==(const Poly& a, const Poly& b) { return (a - b).is_zero(); }

 private:
  void trim() {
    while (!c_.empty() && Tr::is_zero(c_.back())) c_.pop_back();
  }

  std::vector<T> c_;
  T zero_;
};

using QPoly = Poly<mpq_class>;
using PPoly = Poly<PadicNumber>;

inline QPoly qpoly(std::vector<mpq_class> c) { return QPoly(std::move(c), mpq_class(0)); }
inline QPoly qpoly_x() { return qpoly({0, 1}); }
inline QPoly qpoly_const(const mpq_class& c) { return qpoly({c}); }

inline QPoly monic(const QPoly& a) {
  if (a.is_zero()) return a;
  mpq_class l = a.lead();
  return mpq_class(1 / l) * a;
}

inline QPoly gcd(QPoly a, QPoly b) {
  while (!b.is_zero()) {
    auto qr = divmod(a, b);
    a = std::move(b);
    b = std::move(qr.second);
  }
  return monic(a);
}

inline PPoly to_padic(const QPoly& f, const Ctx& ctx) {
  return f.map([&](const mpq_class& x) { return PadicNumber::from_rational(ctx, x); }, PadicNumber::zero(ctx));
}

inline std::string to_string(const QPoly& f, const std::string& var = "x") {
  if (f.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (long i = f.degree(); i >= 0; --i) {
    mpq_class c = f[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    first = false;
    mpq_class a = abs(c);
    if (i == 0 || a != 1) {
      bool paren = a.get_den() != 1 && i > 0;
      os << (paren ? "(" : "") << a.get_str() << (paren ? ")" : "");
      if (i > 0) os << "*";
    }
    if (i >= 1) os << var;
    if (i >= 2) os << "^" << i;
  }
  return os.str();
}

}  // namespace padicline
