#pragma once

/**
 * @file binomial.hpp
 * @brief Binomial coefficients: exact values, p-adic valuations (Legendre),
 * residues modulo p^N through p-removed factorials, and the Kazandzidis
 * congruence check.
 */

#include <array>
#include <atomic>
#include <map>
#include <memory>
#include <mutex>

#include "padic.hpp"

namespace padicline {

/// v_p(n!) by Legendre's formula.
inline Val legendre(std::int64_t n, unsigned long p) {
  Val v = 0;
  const auto pp = static_cast<std::int64_t>(p);
  while (n > 0) {
    n /= pp;
    v += n;
  }
  return v;
}

/// v_p(C(n, k)) = number of borrows when subtracting k from n in base p.
inline Val binom_valuation(std::int64_t n, std::int64_t k, unsigned long p) {
  if (k < 0 || k > n) return kInfiniteVal;
  return legendre(n, p) - legendre(k, p) - legendre(n - k, p);
}

inline mpz_class binom_exact(unsigned long n, unsigned long k) {
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

/// Unit parts of n! (all factors of p removed) modulo p^N, with inverses,
/// grown on demand in fixed-size chunks so published entries never move.
class FactorialTable {
  static constexpr std::size_t kChunk = std::size_t{1} << 14;
  static constexpr std::size_t kMaxChunks = std::size_t{1} << 12;

  struct Chunk {
    std::array<mpz_class, kChunk> unit, inv;
  };

 public:
  explicit FactorialTable(Ctx ctx) : ctx_(std::move(ctx)), mod_(ctx_->pow(ctx_->precision())) {}

  const Ctx& context() const { return ctx_; }

  /// C(n, k) as a p-adic number, exact to the working precision.
  PadicNumber binom(std::int64_t n, std::int64_t k) {
    if (k < 0 || k > n) return PadicNumber::zero(ctx_);
    ensure(static_cast<std::size_t>(n));
    const Val v = binom_valuation(n, k, ctx_->p());
    if (v >= ctx_->precision()) return PadicNumber::zero(ctx_);
    mpz_class u = unit(n) * inv(k);
    u %= mod_;
    u *= inv(n - k);
    return PadicNumber::from_parts(ctx_, v, std::move(u), ctx_->precision());
  }

  void ensure(std::size_t n) {
    if (n < size_.load(std::memory_order_acquire)) return;
    std::lock_guard<std::mutex> lock(mu_);
    while (size_.load(std::memory_order_relaxed) <= n) grow();
  }

 private:
  const mpz_class& unit(std::int64_t n) const {
    auto i = static_cast<std::size_t>(n);
    return chunks_[i / kChunk]->unit[i % kChunk];
  }
  const mpz_class& inv(std::int64_t n) const {
    auto i = static_cast<std::size_t>(n);
    return chunks_[i / kChunk]->inv[i % kChunk];
  }

  void grow() {
    const std::size_t base = size_.load(std::memory_order_relaxed);
    const std::size_t ci = base / kChunk;
    if (ci >= kMaxChunks) fail(ErrorKind::IndexTooLarge, "factorial table limit reached");
    auto chunk = std::make_unique<Chunk>();
    const unsigned long p = ctx_->p();
    mpz_class prev = base == 0 ? mpz_class(1) : unit(static_cast<std::int64_t>(base - 1));
    for (std::size_t i = 0; i < kChunk; ++i) {
      std::size_t n = base + i;
      if (n == 0) {
        chunk->unit[i] = 1;
      } else {
        std::size_t m = n;
        while (m % p == 0) m /= p;
        mpz_class t = prev * static_cast<unsigned long>(m);
        mpz_mod(t.get_mpz_t(), t.get_mpz_t(), mod_.get_mpz_t());
        chunk->unit[i] = t;
      }
      prev = chunk->unit[i];
    }
    mpz_class last_inv;
    mpz_invert(last_inv.get_mpz_t(), chunk->unit[kChunk - 1].get_mpz_t(), mod_.get_mpz_t());
    chunk->inv[kChunk - 1] = last_inv;
    for (std::size_t i = kChunk - 1; i-- > 0;) {
      std::size_t m = base + i + 1;
      while (m % p == 0) m /= p;
      mpz_class t = chunk->inv[i + 1] * static_cast<unsigned long>(m);
      mpz_mod(t.get_mpz_t(), t.get_mpz_t(), mod_.get_mpz_t());
      chunk->inv[i] = t;
    }
    chunks_[ci] = std::move(chunk);
    size_.store(base + kChunk, std::memory_order_release);
  }

  Ctx ctx_;
  mpz_class mod_;
  std::array<std::unique_ptr<Chunk>, kMaxChunks> chunks_{};
  std::atomic<std::size_t> size_{0};
  std::mutex mu_;
};

/// Process-wide tables keyed by (p, N).
inline std::shared_ptr<FactorialTable> factorial_table(const Ctx& ctx) {
  static std::mutex mu;
  static std::map<std::pair<unsigned long, Val>, std::shared_ptr<FactorialTable>> tables;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(ctx->p(), ctx->precision());
  auto it = tables.find(key);
  if (it != tables.end()) return it->second;
  auto t = std::make_shared<FactorialTable>(ctx);
  tables.emplace(key, t);
  return t;
}

inline constexpr std::int64_t kExactBinomialLimit = 100000;

/// C(n, k) mod p^N: exact big integers up to n = 1e5, p-removed factorials above.
inline PadicNumber binom_mod_pN(std::int64_t n, std::int64_t k, const Ctx& ctx) {
  if (n < 0) fail(ErrorKind::InvalidArgument, "binom_mod_pN needs n >= 0");
  if (k < 0 || k > n) return PadicNumber::zero(ctx);
  if (n <= kExactBinomialLimit)
    return PadicNumber::from_int(ctx, binom_exact(static_cast<unsigned long>(n), static_cast<unsigned long>(k)));
  return factorial_table(ctx)->binom(n, k);
}

struct KazandzidisResult {
  Val lhs_valuation;  ///< v_p(C(a p^t - 1, b p^t - 1) - C(a - 1, b - 1)), infinite when equal
  Val bound;          ///< required valuation: 3 (2 for p = 3) + 2 v_p(b) + v_p(a - b)
  bool holds;
};

/// |C(a p^t - 1, b p^t - 1) - C(a - 1, b - 1)|_p <= p^-3 |b|_p^2 |a - b|_p  (p^-2 for p = 3).
inline KazandzidisResult kazandzidis_check(unsigned long a, unsigned long b, unsigned t, unsigned long p) {
  if (p < 3) fail(ErrorKind::InvalidArgument, "the congruence is stated for p >= 3");
  if (b < 1 || b > a) fail(ErrorKind::InvalidArgument, "need 1 <= b <= a");
  mpz_class pt;
  mpz_ui_pow_ui(pt.get_mpz_t(), p, t);
  const unsigned long big_a = a * pt.get_ui(), big_b = b * pt.get_ui();
  mpz_class diff = binom_exact(big_a - 1, big_b - 1) - binom_exact(a - 1, b - 1);
  KazandzidisResult r{};
  r.lhs_valuation = valuation(diff, p);
  if (a == b) {
    r.bound = kInfiniteVal;
    r.holds = diff == 0;
    return r;
  }
  r.bound = (p == 3 ? 2 : 3) + 2 * valuation(mpz_class(b), p) + valuation(mpz_class(a - b), p);
  r.holds = r.lhs_valuation >= r.bound;
  return r;
}

}  // namespace padicline
