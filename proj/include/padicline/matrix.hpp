#pragma once

#include <utility>
#include <vector>

#include "padic.hpp"

namespace padicline {

class PadicMatrix {
 public:
  PadicMatrix() = default;
  PadicMatrix(const Ctx& ctx, std::size_t rows, std::size_t cols)
      : ctx_(ctx), rows_(rows), cols_(cols), data_(rows * cols, PadicNumber::zero(ctx)) {}

  static PadicMatrix identity(const Ctx& ctx, std::size_t n) {
    PadicMatrix m(ctx, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = PadicNumber::one(ctx);
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  const Ctx& context() const noexcept { return ctx_; }

  PadicNumber& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const PadicNumber& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  PadicMatrix transpose() const {
    PadicMatrix t(ctx_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  std::vector<PadicNumber> operator*(const std::vector<PadicNumber>& x) const {
    if (x.size() != cols_) fail(ErrorKind::InvalidArgument, "dimension mismatch");
    std::vector<PadicNumber> y(rows_, PadicNumber::zero(ctx_));
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) y[i] += (*this)(i, j) * x[j];
    return y;
  }

  PadicNumber determinant() const {
    if (rows_ != cols_) fail(ErrorKind::InvalidArgument, "determinant of a non-square matrix");
    PadicMatrix a = *this;
    PadicNumber det = PadicNumber::one(ctx_);
    const std::size_t n = rows_;
    for (std::size_t c = 0; c < n; ++c) {
      std::size_t piv = n;
      for (std::size_t r = c; r < n; ++r) {
        if (a(r, c).is_zero()) continue;
        if (piv == n || a(r, c).valuation() < a(piv, c).valuation()) piv = r;
      }
      if (piv == n) {
        Val prec = a(c, c).precision();
        for (std::size_t r = c; r < n; ++r) prec = std::min(prec, a(r, c).precision());
        return PadicNumber::zero(ctx_, std::min(prec + det.valuation_lower_bound(), ctx_->precision()));
      }
      if (piv != c) {
        a.swap_rows(piv, c);
        det = -det;
      }
      det *= a(c, c);
      for (std::size_t r = c + 1; r < n; ++r) {
        if (a(r, c).is_zero()) continue;
        PadicNumber f = a(r, c) / a(c, c);
        for (std::size_t k = c; k < n; ++k) a(r, k) -= f * a(c, k);
      }
    }
    return det;
  }

  void swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t k = 0; k < cols_; ++k) std::swap((*this)(i, k), (*this)(j, k));
  }

 private:
  Ctx ctx_;
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<PadicNumber> data_;
};

/// Gaussian elimination choosing the pivot of least valuation in each column.
/// Precision loss from small pivots is carried by the entries themselves.
inline std::vector<PadicNumber> solve_linear(const PadicMatrix& m, const std::vector<PadicNumber>& rhs) {
  const std::size_t n = m.rows();
  if (m.cols() != n || rhs.size() != n) fail(ErrorKind::InvalidArgument, "solve_linear needs a square system");
  PadicMatrix a = m;
  std::vector<PadicNumber> b = rhs;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = n;
    for (std::size_t r = c; r < n; ++r) {
      if (a(r, c).is_zero()) continue;
      if (piv == n || a(r, c).valuation() < a(piv, c).valuation()) piv = r;
    }
    if (piv == n) fail(ErrorKind::SingularToPrecision, "no nonzero pivot in column " + std::to_string(c));
    a.swap_rows(piv, c);
    std::swap(b[piv], b[c]);
    for (std::size_t r = c + 1; r < n; ++r) {
      if (a(r, c).is_zero()) continue;
      PadicNumber f = a(r, c) / a(c, c);
      for (std::size_t k = c; k < n; ++k) a(r, k) -= f * a(c, k);
      b[r] -= f * b[c];
    }
  }
  std::vector<PadicNumber> x(n, PadicNumber::zero(m.context()));
  for (std::size_t i = n; i-- > 0;) {
    PadicNumber s = b[i];
    for (std::size_t k = i + 1; k < n; ++k) s -= a(i, k) * x[k];
    x[i] = s / a(i, i);
  }
  return x;
}

}  // namespace padicline
