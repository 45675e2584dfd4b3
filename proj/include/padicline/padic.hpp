#pragma once

/**
 * @file padic.hpp
 * @brief Capped-absolute p-adic numbers over GMP.
 *
 * A value is p^val * unit, known modulo p^prec. Every context has a working
 * precision N and no result is ever claimed beyond p^N. A value whose known
 * digits are all zero is "zero to precision" and keeps the absolute precision
 * it was computed with.
 */

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <limits>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "error.hpp"

namespace padicline {

using Val = std::int64_t;
inline constexpr Val kInfiniteVal = std::numeric_limits<Val>::max();

class PadicContext {
 public:
  PadicContext(unsigned long p, Val precision) : p_(p), n_(precision) {
    if (p < 2 || mpz_probab_prime_p(mpz_class(p).get_mpz_t(), 30) == 0)
      fail(ErrorKind::InvalidArgument, "p must be prime, got " + std::to_string(p));
    if (precision < 1) fail(ErrorKind::InvalidArgument, "working precision must be positive");
    powers_.resize(static_cast<std::size_t>(4 * n_ + 16));
    powers_[0] = 1;
    for (std::size_t i = 1; i < powers_.size(); ++i) powers_[i] = powers_[i - 1] * p_;
  }

  unsigned long p() const noexcept { return p_; }
  Val precision() const noexcept { return n_; }

  mpz_class pow(Val e) const {
    if (e < 0) fail(ErrorKind::InvalidArgument, "negative power of p");
    if (static_cast<std::size_t>(e) < powers_.size()) return powers_[static_cast<std::size_t>(e)];
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), p_, static_cast<unsigned long>(e));
    return r;
  }

  const mpz_class& pow_ref(Val e) const {
    if (e < 0 || static_cast<std::size_t>(e) >= powers_.size())
      fail(ErrorKind::InvalidArgument, "power of p outside cached range");
    return powers_[static_cast<std::size_t>(e)];
  }

  bool cached(Val e) const noexcept { return e >= 0 && static_cast<std::size_t>(e) < powers_.size(); }

 private:
  unsigned long p_;
  Val n_;
  std::vector<mpz_class> powers_;
};

using Ctx = std::shared_ptr<const PadicContext>;

inline Ctx make_context(unsigned long p, Val precision = 40) {
  return std::make_shared<const PadicContext>(p, precision);
}

/// p-adic valuation of a nonzero integer; kInfiniteVal for 0.
inline Val valuation(const mpz_class& n, unsigned long p) {
  if (n == 0) return kInfiniteVal;
  mpz_class tmp;
  mpz_class pp(p);
  return static_cast<Val>(mpz_remove(tmp.get_mpz_t(), n.get_mpz_t(), pp.get_mpz_t()));
}

inline Val valuation(const mpq_class& q, unsigned long p) {
  if (q == 0) return kInfiniteVal;
  return valuation(mpz_class(q.get_num()), p) - valuation(mpz_class(q.get_den()), p);
}

class PadicNumber {
 public:
  PadicNumber() = default;

  static PadicNumber zero(const Ctx& ctx, Val prec) {
    PadicNumber r;
    r.ctx_ = ctx;
    r.val_ = kInfiniteVal;
    r.prec_ = std::min(prec, ctx->precision());
    return r;
  }
  static PadicNumber zero(const Ctx& ctx) { return zero(ctx, ctx->precision()); }

  static PadicNumber one(const Ctx& ctx) { return from_int(ctx, mpz_class(1)); }

  /// p^v * u known modulo p^prec; u may carry factors of p.
  static PadicNumber from_parts(const Ctx& ctx, Val v, mpz_class u, Val prec) {
    PadicNumber r;
    r.ctx_ = ctx;
    r.prec_ = std::min(prec, ctx->precision());
    r.val_ = v;
    r.unit_ = std::move(u);
    r.normalize();
    return r;
  }

  static PadicNumber from_int(const Ctx& ctx, const mpz_class& n) {
    return from_parts(ctx, 0, n, ctx->precision());
  }
  static PadicNumber from_int(const Ctx& ctx, long n) { return from_int(ctx, mpz_class(n)); }

  static PadicNumber from_rational(const Ctx& ctx, const mpq_class& q) {
    if (q == 0) return zero(ctx);
    const unsigned long p = ctx->p();
    mpz_class num = q.get_num(), den = q.get_den();
    mpz_class pp(p);
    Val vn = static_cast<Val>(mpz_remove(num.get_mpz_t(), num.get_mpz_t(), pp.get_mpz_t()));
    Val vd = static_cast<Val>(mpz_remove(den.get_mpz_t(), den.get_mpz_t(), pp.get_mpz_t()));
    Val v = vn - vd;
    Val prec = ctx->precision();
    if (v >= prec) return zero(ctx, prec);
    mpz_class mod = ctx->pow(prec - v);
    mpz_class inv;
    mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), mod.get_mpz_t());
    mpz_class u = num * inv;
    return from_parts(ctx, v, u, prec);
  }

  const Ctx& context() const noexcept { return ctx_; }
  unsigned long p() const noexcept { return ctx_->p(); }
  bool is_zero() const noexcept { return val_ == kInfiniteVal; }
  Val valuation() const noexcept { return val_; }
  Val precision() const noexcept { return prec_; }
  Val relative_precision() const noexcept { return is_zero() ? 0 : prec_ - val_; }
  const mpz_class& unit() const noexcept { return unit_; }

  /// The valuation if nonzero, otherwise the known precision.
  Val valuation_lower_bound() const noexcept { return is_zero() ? prec_ : val_; }

  /// Base-p digits d_0..d_{r-1} of the unit, r = relative precision.
  std::vector<unsigned long> digits() const {
    std::vector<unsigned long> out;
    if (is_zero()) return out;
    mpz_class u = unit_;
    const Val r = relative_precision();
    out.reserve(static_cast<std::size_t>(r));
    for (Val i = 0; i < r; ++i) {
      out.push_back(mpz_fdiv_q_ui(u.get_mpz_t(), u.get_mpz_t(), ctx_->p()));
    }
    return out;
  }

  mpq_class to_rational() const {
    if (is_zero()) return 0;
    mpq_class r(unit_);
    if (val_ >= 0) {
      r *= mpq_class(ctx_->pow(val_));
    } else {
      r /= mpq_class(ctx_->pow(-val_));
    }
    r.canonicalize();
    return r;
  }

  PadicNumber truncated(Val prec) const {
    if (prec >= prec_) return *this;
    if (is_zero() || val_ >= prec) return zero(ctx_, prec);
    return from_parts(ctx_, val_, unit_, prec);
  }

  PadicNumber operator-() const {
    if (is_zero()) return *this;
    PadicNumber r = *this;
    const mpz_class& mod = modulus();
    r.unit_ = mod - unit_;
    return r;
  }

  friend PadicNumber operator+(const PadicNumber& x, const PadicNumber& y) {
    x.same_ctx(y);
    const Val a = std::min(x.prec_, y.prec_);
    if (x.is_zero()) return y.truncated(a).checked();
    if (y.is_zero()) return x.truncated(a).checked();
    const Val v = std::min(x.val_, y.val_);
    if (a <= v) return zero(x.ctx_, a).checked();
    mpz_class s = x.val_ == v ? x.unit_ : x.unit_ * x.ctx_->pow(x.val_ - v);
    if (y.val_ == v) {
      s += y.unit_;
    } else {
      s += y.unit_ * x.ctx_->pow(y.val_ - v);
    }
    return from_parts(x.ctx_, v, std::move(s), a).checked();
  }

  friend PadicNumber operator-(const PadicNumber& x, const PadicNumber& y) { return x + (-y); }

  friend PadicNumber operator*(const PadicNumber& x, const PadicNumber& y) {
    x.same_ctx(y);
    const Val n = x.ctx_->precision();
    if (x.is_zero() || y.is_zero()) {
      Val a;
      if (x.is_zero() && y.is_zero()) {
        a = sat_add(x.prec_, y.prec_);
      } else if (x.is_zero()) {
        a = sat_add(x.prec_, y.val_);
      } else {
        a = sat_add(y.prec_, x.val_);
      }
      return zero(x.ctx_, std::min(a, n)).checked();
    }
    const Val v = x.val_ + y.val_;
    const Val r = std::min(x.relative_precision(), y.relative_precision());
    const Val a = std::min(v + r, n);
    if (a <= v) return zero(x.ctx_, a).checked();
    mpz_class u = x.unit_ * y.unit_;
    return from_parts(x.ctx_, v, std::move(u), a).checked();
  }

  friend PadicNumber operator/(const PadicNumber& x, const PadicNumber& y) {
    x.same_ctx(y);
    if (y.is_zero()) fail(ErrorKind::DivisionByZero, "divisor is zero to precision " + std::to_string(y.prec_));
    const Val n = x.ctx_->precision();
    if (x.is_zero()) return zero(x.ctx_, std::min(x.prec_ - y.val_, n)).checked();
    const Val v = x.val_ - y.val_;
    const Val r = std::min(x.relative_precision(), y.relative_precision());
    const Val a = std::min(v + r, n);
    if (a <= v) return zero(x.ctx_, a).checked();
    const mpz_class mod = x.ctx_->pow(a - v);
    mpz_class inv;
    mpz_invert(inv.get_mpz_t(), y.unit_.get_mpz_t(), mod.get_mpz_t());
    mpz_class u = x.unit_ * inv;
    return from_parts(x.ctx_, v, std::move(u), a).checked();
  }

  PadicNumber& operator+=(const PadicNumber& y) { return *this = *this + y; }
  PadicNumber& operator-=(const PadicNumber& y) { return *this = *this - y; }
  PadicNumber& operator*=(const PadicNumber& y) { return *this = *this * y; }
  PadicNumber& operator/=(const PadicNumber& y) { return *this = *this / y; }

  PadicNumber inverse() const { return one(ctx_) / *this; }

  /// Multiply by p^k (k may be negative); exact, so relative precision is kept.
  PadicNumber shifted(Val k) const {
    if (is_zero()) return zero(ctx_, std::min(sat_add(prec_, k), ctx_->precision())).checked();
    return from_parts(ctx_, val_ + k, unit_, std::min(sat_add(prec_, k), ctx_->precision())).checked();
  }

  PadicNumber pow(const mpz_class& e) const {
    if (e < 0) return pow(mpz_class(-e)).inverse();
    if (e == 0) return one(ctx_);
    const Val n = ctx_->precision();
    if (is_zero()) {
      if (prec_ <= 0) fail(ErrorKind::PrecisionExhausted, "power of an unknown value");
      Val a = e.fits_slong_p() ? sat_mul(prec_, e.get_si()) : kInfiniteVal;
      return zero(ctx_, std::min(a, n));
    }
    if (val_ > 0) {
      if (!e.fits_slong_p() || sat_mul(val_, e.get_si()) >= n) return zero(ctx_, n);
    } else if (val_ < 0) {
      if (!e.fits_slong_p() || sat_mul(-val_, e.get_si()) >= kInfiniteVal / 4)
        fail(ErrorKind::PrecisionExhausted, "valuation of power overflows");
    }
    const Val v = val_ == 0 ? 0 : val_ * e.get_si();
    Val r = relative_precision();
    const unsigned long p = ctx_->p();
    if (p != 2 || r >= 2) r = sat_add(r, padicline::valuation(e, p));
    const Val a = std::min(sat_add(v, r), n);
    if (a <= v) return zero(ctx_, a);
    const mpz_class mod = ctx_->pow(a - v);
    mpz_class u;
    mpz_powm(u.get_mpz_t(), unit_.get_mpz_t(), e.get_mpz_t(), mod.get_mpz_t());
    return from_parts(ctx_, v, std::move(u), a);
  }
  PadicNumber pow(long e) const { return pow(mpz_class(e)); }

  friend bool operator==(const PadicNumber& x, const PadicNumber& y) { return (x - y).is_zero(); }
  friend bool operator!=(const PadicNumber& x, const PadicNumber& y) { return !(x == y); }

  /// Bitwise equality of the stored representation (value and precision).
  bool identical(const PadicNumber& y) const {
    return ctx_->p() == y.ctx_->p() && val_ == y.val_ && prec_ == y.prec_ && unit_ == y.unit_;
  }

  /// Canonical text: d0*p^v + ... (mod p^A); powers with zero digits are omitted.
  std::string to_string() const {
    std::ostringstream os;
    const unsigned long p = ctx_->p();
    if (is_zero()) {
      os << "0 (mod " << p << "^" << prec_ << ")";
      return os.str();
    }
    auto ds = digits();
    bool first = true;
    for (std::size_t i = 0; i < ds.size(); ++i) {
      if (ds[i] == 0) continue;
      const Val e = val_ + static_cast<Val>(i);
      if (!first) os << " + ";
      first = false;
      os << ds[i];
      if (e == 1) {
        os << "*" << p;
      } else if (e != 0) {
        os << "*" << p << "^" << e;
      }
    }
    os << " (mod " << p << "^" << prec_ << ")";
    return os.str();
  }

  /// Compact form: val:v;digits:[d0,...]; zero is val:inf;prec:A.
  std::string to_compact() const {
    std::ostringstream os;
    if (is_zero()) {
      os << "val:inf;prec:" << prec_;
      return os.str();
    }
    os << "val:" << val_ << ";digits:[";
    auto ds = digits();
    for (std::size_t i = 0; i < ds.size(); ++i) os << (i ? "," : "") << ds[i];
    os << "]";
    return os.str();
  }

  static PadicNumber from_digits(const Ctx& ctx, Val v, const std::vector<unsigned long>& ds) {
    mpz_class u = 0;
    for (std::size_t i = ds.size(); i-- > 0;) {
      if (ds[i] >= ctx->p()) fail(ErrorKind::ParseError, "digit out of range");
      u = u * ctx->p() + ds[i];
    }
    return from_parts(ctx, v, u, v + static_cast<Val>(ds.size()));
  }

 private:
  static Val sat_add(Val a, Val b) {
    if (a == kInfiniteVal || b == kInfiniteVal) return kInfiniteVal;
    if (b > 0 && a > kInfiniteVal / 2 - b) return kInfiniteVal / 2;
    return a + b;
  }
  static Val sat_mul(Val a, long b) {
    if (a == 0 || b == 0) return 0;
    if (a > (kInfiniteVal / 4) / b) return kInfiniteVal / 4;
    return a * b;
  }

  void same_ctx(const PadicNumber& y) const {
    if (!ctx_ || !y.ctx_) fail(ErrorKind::InvalidArgument, "uninitialized p-adic number");
    if (ctx_ != y.ctx_ && (ctx_->p() != y.ctx_->p() || ctx_->precision() != y.ctx_->precision()))
      fail(ErrorKind::InvalidArgument, "mixing p-adic contexts");
  }

  mpz_class modulus() const { return ctx_->pow(prec_ - val_); }

  PadicNumber checked() const {
    if (is_zero() && prec_ <= 0)
      fail(ErrorKind::PrecisionExhausted, "no digit at or above p^0 is known");
    return *this;
  }

  void normalize() {
    if (val_ == kInfiniteVal || unit_ == 0 || val_ >= prec_) {
      set_zero();
      return;
    }
    const Val rel = prec_ - val_;
    if (ctx_->cached(rel)) {
      mpz_mod(unit_.get_mpz_t(), unit_.get_mpz_t(), ctx_->pow_ref(rel).get_mpz_t());
    } else {
      unit_ %= ctx_->pow(rel);
      if (unit_ < 0) unit_ += ctx_->pow(rel);
    }
    if (unit_ == 0) {
      set_zero();
      return;
    }
    const unsigned long p = ctx_->p();
    if (mpz_divisible_ui_p(unit_.get_mpz_t(), p)) {
      mpz_class pp(p);
      val_ += static_cast<Val>(mpz_remove(unit_.get_mpz_t(), unit_.get_mpz_t(), pp.get_mpz_t()));
    }
  }

  void set_zero() {
    val_ = kInfiniteVal;
    unit_ = 0;
  }

  Ctx ctx_;
  Val val_ = kInfiniteVal;
  mpz_class unit_ = 0;
  Val prec_ = 0;
};

inline std::ostream& operator<<(std::ostream& os, const PadicNumber& x) { return os << x.to_string(); }

/// Valuation of x - y, or the precision to which they agree when equal.
inline Val agreement(const PadicNumber& x, const PadicNumber& y) { return (x - y).valuation_lower_bound(); }

}  // namespace padicline
