#pragma once

#include <string>

#include "polynomial.hpp"

namespace padicline {

/// N(x)/D(x) over Q, kept with gcd(N, D) = 1 and D monic.
class ExactRationalFunction {
 public:
  ExactRationalFunction() : num_(mpq_class(0)), den_(qpoly_const(1)) {}
  ExactRationalFunction(QPoly num, QPoly den) : num_(std::move(num)), den_(std::move(den)) { reduce(); }
  explicit ExactRationalFunction(QPoly num) : num_(std::move(num)), den_(qpoly_const(1)) {}

  static ExactRationalFunction constant(const mpq_class& c) { return ExactRationalFunction(qpoly_const(c)); }
  static ExactRationalFunction x() { return ExactRationalFunction(qpoly_x()); }

  const QPoly& num() const { return num_; }
  const QPoly& den() const { return den_; }
  bool is_polynomial() const { return den_.degree() == 0; }

  mpq_class operator()(const mpq_class& x) const {
    mpq_class d = den_(x);
    if (d == 0) fail(ErrorKind::DivisionByZero, "evaluation at a pole");
    return num_(x) / d;
  }

  friend ExactRationalFunction operator+(const ExactRationalFunction& a, const ExactRationalFunction& b) {
    return {a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_};
  }
  friend ExactRationalFunction operator-(const ExactRationalFunction& a) { return {-a.num_, a.den_}; }
  friend ExactRationalFunction operator-(const ExactRationalFunction& a, const ExactRationalFunction& b) {
    return a + (-b);
  }
  friend ExactRationalFunction operator*(const ExactRationalFunction& a, const ExactRationalFunction& b) {
    return {a.num_ * b.num_, a.den_ * b.den_};
  }
  friend ExactRationalFunction operator/(const ExactRationalFunction& a, const ExactRationalFunction& b) {
    if (b.num_.is_zero()) fail(ErrorKind::DivisionByZero, "division by the zero function");
    return {a.num_ * b.den_, a.den_ * b.num_};
  }

  ExactRationalFunction pow(long e) const {
    if (e < 0) return constant(1) / pow(-e);
    ExactRationalFunction r = constant(1), b = *this;
    for (; e; e >>= 1) {
      if (e & 1) r = r * b;
      b = b * b;
    }
    return r;
  }

  ExactRationalFunction derivative() const {
    return {num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_};
  }

  /// f(g(x)) for a polynomial g.
  ExactRationalFunction compose(const QPoly& g) const { return {num_.compose(g), den_.compose(g)}; }

  friend bool operator==(const ExactRationalFunction& a, const ExactRationalFunction& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  std::string to_string() const {
    if (is_polynomial()) return padicline::to_string(num_);
    return "(" + padicline::to_string(num_) + ")/(" + padicline::to_string(den_) + ")";
  }

 private:
  void reduce() {
    if (den_.is_zero()) fail(ErrorKind::DivisionByZero, "zero denominator");
    if (num_.is_zero()) {
      den_ = qpoly_const(1);
      return;
    }
    QPoly g = gcd(num_, den_);
    if (g.degree() > 0) {
      num_ = divmod(num_, g).first;
      den_ = divmod(den_, g).first;
    }
    mpq_class l = den_.lead();
    num_ = mpq_class(1 / l) * num_;
    den_ = mpq_class(1 / l) * den_;
  }

  QPoly num_, den_;
};

}  // namespace padicline
