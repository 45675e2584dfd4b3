#pragma once

/**
 * @file series.hpp
 * @brief Arcs, path sequences, interlocked families and power series with
 * lazily computed, memoized coefficients.
 */

#include <cmath>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "padic.hpp"
#include "rational_function.hpp"

namespace padicline {

/// The open disc {x : |x - b|_p < |a - b|_p} with distinguished point a on its boundary circle.
struct Arc {
  PadicNumber a, b;
  std::optional<mpq_class> a_rational, b_rational;

  static Arc make(const Ctx& ctx, const mpq_class& a, const mpq_class& b) {
    Arc arc{PadicNumber::from_rational(ctx, a), PadicNumber::from_rational(ctx, b), a, b};
    arc.validate();
    return arc;
  }
  static Arc make(const PadicNumber& a, const PadicNumber& b) {
    Arc arc{a, b, std::nullopt, std::nullopt};
    arc.validate();
    return arc;
  }

  const Ctx& context() const { return a.context(); }
  unsigned long p() const { return a.p(); }

  /// R = p^-rho.
  Val rho() const { return (a - b).valuation(); }

  bool contains(const PadicNumber& x) const { return (x - b).valuation_lower_bound() > rho(); }

  bool rational() const { return a_rational.has_value() && b_rational.has_value(); }

  std::string describe() const {
    if (rational()) return "A(" + a_rational->get_str() + "," + b_rational->get_str() + ")";
    return "A(" + a.to_compact() + "," + b.to_compact() + ")";
  }

 private:
  void validate() const {
    if ((a - b).is_zero()) fail(ErrorKind::InvalidArgument, "degenerate arc: a = b to precision");
  }
};

/// phi(k) = alpha + lambda k, alpha + k^mu, or an explicit list phi(1), phi(2), ...
struct PathSequence {
  enum class Kind { Affine, Power, Explicit };
  Kind kind = Kind::Affine;
  long alpha = 0;
  long lambda = 1;
  long mu = 1;
  std::vector<long> values;

  static PathSequence identity() { return affine(0, 1); }
  static PathSequence affine(long alpha, long lambda) {
    if (lambda < 1) fail(ErrorKind::InvalidArgument, "lambda must be positive");
    return {Kind::Affine, alpha, lambda, 1, {}};
  }
  static PathSequence power(long alpha, long mu) {
    if (mu < 1) fail(ErrorKind::InvalidArgument, "mu must be positive");
    return {Kind::Power, alpha, 1, mu, {}};
  }
  static PathSequence explicit_values(std::vector<long> v) {
    for (std::size_t i = 1; i < v.size(); ++i)
      if (v[i] <= v[i - 1]) fail(ErrorKind::InvalidArgument, "explicit path must be strictly increasing");
    return {Kind::Explicit, 0, 1, 1, std::move(v)};
  }

  long operator()(long k) const {
    switch (kind) {
      case Kind::Affine: return alpha + lambda * k;
      case Kind::Power: {
        long r = 1;
        for (long i = 0; i < mu; ++i) r *= k;
        return alpha + r;
      }
      case Kind::Explicit:
        if (k < 1 || static_cast<std::size_t>(k) > values.size())
          fail(ErrorKind::InvalidArgument, "explicit path undefined at k = " + std::to_string(k));
        return values[static_cast<std::size_t>(k - 1)];
    }
    return 0;
  }

  /// First k >= 1 with phi(k) >= 1.
  long k0() const {
    for (long k = 1; k < 64; ++k)
      if ((*this)(k) >= 1) return k;
    fail(ErrorKind::InvalidArgument, "path never becomes positive");
  }

  long max_k() const { return kind == Kind::Explicit ? static_cast<long>(values.size()) : 1L << 20; }

  std::string describe() const {
    switch (kind) {
      case Kind::Affine: return "phi(k)=" + std::to_string(alpha) + "+" + std::to_string(lambda) + "k";
      case Kind::Power: return "phi(k)=" + std::to_string(alpha) + "+k^" + std::to_string(mu);
      case Kind::Explicit: {
        std::string s = "phi=[";
        for (std::size_t i = 0; i < values.size(); ++i) s += (i ? "," : "") + std::to_string(values[i]);
        return s + "]";
      }
    }
    return "";
  }
};

/// Phi_alpha = {alpha + lambda k}, Psi_alpha = {alpha + k^mu}, or one path.
struct InterlockedFamily {
  enum class Kind { PhiAlpha, PsiAlpha, Singleton };
  Kind kind = Kind::Singleton;
  long alpha = 0;
  PathSequence single = PathSequence::identity();

  static InterlockedFamily phi(long alpha) { return {Kind::PhiAlpha, alpha, PathSequence::affine(alpha, 1)}; }
  static InterlockedFamily psi(long alpha) { return {Kind::PsiAlpha, alpha, PathSequence::power(alpha, 1)}; }
  static InterlockedFamily singleton(PathSequence s) { return {Kind::Singleton, 0, std::move(s)}; }

  /// Members in search order: lambda (or mu) = 1, 2, ..., limit.
  std::vector<PathSequence> members(long limit) const {
    std::vector<PathSequence> out;
    switch (kind) {
      case Kind::PhiAlpha:
        for (long l = 1; l <= limit; ++l) out.push_back(PathSequence::affine(alpha, l));
        break;
      case Kind::PsiAlpha:
        for (long m = 1; m <= limit; ++m) out.push_back(PathSequence::power(alpha, m));
        break;
      case Kind::Singleton: out.push_back(single); break;
    }
    return out;
  }

  /// The alpha used for omega^(p^alpha) in closed forms.
  long omega_alpha() const { return kind == Kind::Singleton ? single.alpha : alpha; }

  std::string describe() const {
    switch (kind) {
      case Kind::PhiAlpha: return "Phi_" + std::to_string(alpha);
      case Kind::PsiAlpha: return "Psi_" + std::to_string(alpha);
      case Kind::Singleton: return single.describe();
    }
    return "";
  }
};

/// For n > n0: v_p(c_n) + n rho >= -log_m - beta log_p(n), i.e. |c_n|_p R^n <= M n^beta
/// with M = p^log_m and R = p^-rho.
struct Certificate {
  double log_m = 0;
  double beta = 0;
  std::int64_t n0 = 0;
  Val rho = 0;

  bool bounded() const { return beta == 0; }

  /// Guaranteed lower bound on v_p(c_n (a - b)^n) for n > n0.
  Val scaled_bound(std::int64_t n, unsigned long p) const {
    double lg = n > 1 ? beta * std::log(static_cast<double>(n)) / std::log(static_cast<double>(p)) : 0.0;
    return static_cast<Val>(std::ceil(-log_m - lg - 1e-9));
  }
};

class SeriesFunction {
 public:
  using Oracle = std::function<PadicNumber(std::int64_t)>;
  /// Smallest index >= n whose coefficient may be nonzero, or nullopt if none.
  using Support = std::function<std::optional<std::int64_t>(std::int64_t)>;

  SeriesFunction(Ctx ctx, PadicNumber center, Oracle oracle, std::optional<Certificate> cert, std::string name)
      : ctx_(std::move(ctx)),
        center_(std::move(center)),
        oracle_(std::move(oracle)),
        cert_(std::move(cert)),
        name_(std::move(name)),
        memo_(std::make_shared<Memo>()) {}

  const Ctx& context() const { return ctx_; }
  const PadicNumber& center() const { return center_; }
  const std::optional<Certificate>& certificate() const { return cert_; }
  const std::string& name() const { return name_; }
  bool bounded() const { return cert_ && cert_->bounded(); }

  PadicNumber coeff(std::int64_t n) const {
    if (n < 0) return PadicNumber::zero(ctx_);
    if (degree_bound_ && n > *degree_bound_) return PadicNumber::zero(ctx_);
    {
      std::lock_guard<std::mutex> lock(memo_->mu);
      auto it = memo_->values.find(n);
      if (it != memo_->values.end()) return it->second;
    }
    PadicNumber v = oracle_(n);
    std::lock_guard<std::mutex> lock(memo_->mu);
    memo_->values.emplace(n, v);
    return v;
  }

  std::optional<std::int64_t> next_support(std::int64_t n) const {
    if (degree_bound_ && n > *degree_bound_) return std::nullopt;
    if (support_) return support_(n);
    return n;
  }
  bool sparse() const { return static_cast<bool>(support_); }

  /// True if all coefficients beyond some index vanish.
  bool eventually_zero() const { return degree_bound_.has_value(); }
  std::optional<std::int64_t> degree_bound() const { return degree_bound_; }

  SeriesFunction& with_support(Support s) {
    support_ = std::move(s);
    return *this;
  }
  SeriesFunction& with_degree_bound(std::int64_t d) {
    degree_bound_ = d;
    return *this;
  }
  SeriesFunction& with_rational(ExactRationalFunction f) {
    rational_ = std::make_shared<ExactRationalFunction>(std::move(f));
    return *this;
  }
  SeriesFunction& with_max_index(std::int64_t n) {
    max_index_ = n;
    return *this;
  }
  SeriesFunction& with_certificate(std::optional<Certificate> c) {
    cert_ = std::move(c);
    return *this;
  }

  /// c_n (a - b)^n for the arc whose a - b equals `scale`. Lets callers skip c_n alone,
  /// which loses n v_p(a - b) digits when |a - b|_p < 1.
  SeriesFunction& with_scaled(Oracle s, PadicNumber scale) {
    scaled_ = std::make_shared<Scaled>(Scaled{std::move(s), std::move(scale)});
    return *this;
  }
  std::optional<PadicNumber> scaled_coeff(std::int64_t n, const PadicNumber& h) const {
    if (!scaled_ || !(scaled_->scale - h).is_zero()) return std::nullopt;
    if (n < 0 || (degree_bound_ && n > *degree_bound_)) return PadicNumber::zero(ctx_);
    return scaled_->oracle(n);
  }

  /// Exact source when the series expands a rational function.
  const std::shared_ptr<const ExactRationalFunction>& rational() const { return rational_; }

  /// Largest index the oracle can produce, if limited.
  std::optional<std::int64_t> max_index() const { return max_index_; }

 private:
  struct Scaled {
    Oracle oracle;
    PadicNumber scale;
  };
  std::shared_ptr<const Scaled> scaled_;
  struct Memo {
    std::mutex mu;
    std::unordered_map<std::int64_t, PadicNumber> values;
  };

  Ctx ctx_;
  PadicNumber center_;
  Oracle oracle_;
  std::optional<Certificate> cert_;
  std::string name_;
  std::shared_ptr<Memo> memo_;
  Support support_;
  std::optional<std::int64_t> degree_bound_;
  std::optional<std::int64_t> max_index_;
  std::shared_ptr<const ExactRationalFunction> rational_;
};

struct CertificateSpotCheck {
  bool ok = true;
  std::int64_t first_violation = -1;
};

/// Check the certificate inequality on n0 < n <= n_max (supported indices only).
inline CertificateSpotCheck check_certificate(const SeriesFunction& f, const PadicNumber& a_minus_b,
                                              std::int64_t n_max) {
  if (!f.certificate()) fail(ErrorKind::NoCertificate, f.name());
  const Certificate& c = *f.certificate();
  const Val rho = a_minus_b.valuation();
  CertificateSpotCheck out;
  for (std::int64_t n = std::max<std::int64_t>(c.n0 + 1, 1); n <= n_max;) {
    auto nx = f.next_support(n);
    if (!nx || *nx > n_max) break;
    n = *nx;
    PadicNumber cn = f.coeff(n);
    if (!cn.is_zero()) {
      Val scaled = cn.valuation() + n * rho;
      if (scaled < c.scaled_bound(n, f.context()->p())) {
        out.ok = false;
        out.first_violation = n;
        return out;
      }
    }
    ++n;
  }
  return out;
}

}  // namespace padicline
