#pragma once

/**
 * @file bernoulli.hpp
 * @brief Exact Bernoulli numbers, convention t e^t/(e^t - 1) (so B_1 = +1/2),
 * from tangent numbers. Optional on-disk cache.
 */

#include <cstdio>
#include <mutex>
#include <string>
#include <vector>

#include "error.hpp"
#include "padic.hpp"

namespace padicline {

/// Tangent numbers T_1..T_n (T_1 = 1, T_2 = 2, T_3 = 16, ...).
inline std::vector<mpz_class> tangent_numbers(std::size_t n) {
  std::vector<mpz_class> t(n + 1, mpz_class(0));
  if (n == 0) return t;
  t[1] = 1;
  for (std::size_t k = 2; k <= n; ++k) t[k] = t[k - 1] * static_cast<unsigned long>(k - 1);
  for (std::size_t k = 2; k <= n; ++k)
    for (std::size_t j = k; j <= n; ++j)
      t[j] = t[j - 1] * static_cast<unsigned long>(j - k) + t[j] * static_cast<unsigned long>(j - k + 2);
  return t;
}

class BernoulliCache {
 public:
  static constexpr std::size_t kDefaultMax = 600;

  explicit BernoulliCache(std::size_t nmax = kDefaultMax) : nmax_(nmax) {}

  std::size_t nmax() const { return nmax_; }
  std::size_t computed() const {
    std::lock_guard<std::mutex> lock(mu_);
    return b_.size();
  }

  mpq_class get(std::size_t n) {
    if (n > nmax_)
      fail(ErrorKind::IndexTooLarge, "B_" + std::to_string(n) + " beyond nmax = " + std::to_string(nmax_));
    std::lock_guard<std::mutex> lock(mu_);
    if (n >= b_.size()) fill(std::min(nmax_, std::max(n, 2 * b_.size())));
    return b_[n];
  }

  /// Binary format: "PLBC", u32 version, u64 count, then numerator and
  /// denominator of each B_n in GMP raw form.
  void save(const std::string& path) const {
    std::lock_guard<std::mutex> lock(mu_);
    FILE* f = std::fopen(path.c_str(), "wb");
    if (!f) fail(ErrorKind::InvalidArgument, "cannot write " + path);
    const std::uint32_t version = kVersion;
    const std::uint64_t count = b_.size();
    std::fwrite("PLBC", 1, 4, f);
    std::fwrite(&version, sizeof version, 1, f);
    std::fwrite(&count, sizeof count, 1, f);
    for (const auto& q : b_) {
      mpz_out_raw(f, q.get_num_mpz_t());
      mpz_out_raw(f, q.get_den_mpz_t());
    }
    std::fclose(f);
  }

  /// Returns false (leaving the cache untouched) if the file is missing or malformed.
  bool load(const std::string& path) {
    FILE* f = std::fopen(path.c_str(), "rb");
    if (!f) return false;
    char magic[4];
    std::uint32_t version = 0;
    std::uint64_t count = 0;
    bool ok = std::fread(magic, 1, 4, f) == 4 && std::string(magic, 4) == "PLBC" &&
              std::fread(&version, sizeof version, 1, f) == 1 && version == kVersion &&
              std::fread(&count, sizeof count, 1, f) == 1;
    std::vector<mpq_class> v;
    for (std::uint64_t i = 0; ok && i < count; ++i) {
      mpz_class num, den;
      ok = mpz_inp_raw(num.get_mpz_t(), f) != 0 && mpz_inp_raw(den.get_mpz_t(), f) != 0 && den != 0;
      if (ok) v.emplace_back(num, den);
    }
    std::fclose(f);
    if (!ok) return false;
    std::lock_guard<std::mutex> lock(mu_);
    if (v.size() > b_.size()) b_ = std::move(v);
    return true;
  }

 private:
  static constexpr std::uint32_t kVersion = 1;

  void fill(std::size_t n) {
    std::vector<mpz_class> t = tangent_numbers(n / 2 + 1);
    std::vector<mpq_class> b(n + 1, mpq_class(0));
    b[0] = 1;
    if (n >= 1) b[1] = mpq_class(1, 2);
    for (std::size_t k = 1; 2 * k <= n; ++k) {
      mpz_class four_k;
      mpz_ui_pow_ui(four_k.get_mpz_t(), 2, 2 * k);
      mpq_class v(mpz_class(t[k] * static_cast<unsigned long>(2 * k)), mpz_class(four_k * (four_k - 1)));
      v.canonicalize();
      b[2 * k] = (k % 2 == 1) ? v : mpq_class(-v);
    }
    b_ = std::move(b);
  }

  std::size_t nmax_;
  mutable std::mutex mu_;
  std::vector<mpq_class> b_;
};

inline mpq_class bernoulli(std::size_t n, BernoulliCache& cache) { return cache.get(n); }

}  // namespace padicline
