#pragma once

/**
 * @file limit.hpp
 * @brief The integral as the limit of A_{f,phi}(k), detected numerically.
 *
 * Convergence at precision tau means v_p(A(k) - A(k-1)) >= tau for `window`
 * consecutive k. This is a stabilization heuristic, not a proof of a limit.
 */

#include <optional>
#include <string>
#include <vector>

#include "eval.hpp"

namespace padicline {

struct LimitConfig {
  Val target = 12;      ///< tau
  long k_max = 6;
  long window = 2;      ///< w
  long lambda_max = 12; ///< members searched in a family
  EvalStrategy strategy = EvalStrategy::automatic();
  Val guard = 4;        ///< extra digits requested from certified truncation beyond tau
};

struct TraceEntry {
  long k = 0;
  long phi = 0;
  Val residual = kInfiniteVal;  ///< v_p(A(k) - A(k-1)); infinite for the first k
  Val precision = 0;            ///< known precision of A(k)
  EvalKind used = EvalKind::Auto;
  std::int64_t n_cut = 0;
  std::string note;
};

struct IntegralResult {
  PadicNumber value;
  Val achieved_precision = 0;
  long k_used = 0;
  bool converged = false;
  EvalStrategy strategy;
  EvalKind used = EvalKind::Auto;
  PathSequence path = PathSequence::identity();
  std::vector<TraceEntry> trace;
  std::vector<std::string> members_tried;
  bool heuristic = true;
};

class NoConvergenceError : public Error {
 public:
  explicit NoConvergenceError(IntegralResult r)
      : Error(ErrorKind::NoConvergence, "no stabilization along " + r.path.describe() + " up to k = " +
                                            std::to_string(r.k_used)),
        result_(std::move(r)) {}
  const IntegralResult& result() const { return result_; }

 private:
  IntegralResult result_;
};

namespace detail {

inline IntegralResult run_path(const SeriesFunction& f, const Arc& arc, const PathSequence& path,
                               const LimitConfig& cfg, const std::shared_ptr<const PadicPartialFractions>& parts) {
  IntegralResult res;
  res.path = path;
  res.strategy = cfg.strategy;
  EvalStrategy st = cfg.strategy;
  if (st.goal < 0 && (st.kind == EvalKind::Auto || st.kind == EvalKind::Truncated || st.kind == EvalKind::Filtered))
    st.goal = cfg.target + cfg.guard;
  std::optional<PadicNumber> prev;
  long run = 0;
  Val run_min = kInfiniteVal;
  const long k0 = path.k0();
  const long k_end = std::min(cfg.k_max, path.max_k());
  for (long k = k0; k <= k_end; ++k) {
    TraceEntry t;
    t.k = k;
    t.phi = path(k);
    EvalResult e;
    try {
      e = eval_A(f, arc, path, k, st, parts);
    } catch (const Error& err) {
      if (err.kind() != ErrorKind::LevelTooLarge && err.kind() != ErrorKind::IndexTooLarge) throw;
      t.note = err.what();
      res.trace.push_back(t);
      break;
    }
    t.precision = e.value.precision();
    t.used = e.used;
    t.n_cut = e.n_cut;
    res.used = e.used;
    if (prev) {
      t.residual = agreement(e.value, *prev);
      if (t.residual >= cfg.target) {
        ++run;
        run_min = std::min(run_min, t.residual);
      } else {
        run = 0;
        run_min = kInfiniteVal;
      }
    }
    res.trace.push_back(t);
    res.value = e.value;
    res.k_used = k;
    prev = e.value;
    if (run >= cfg.window) {
      res.converged = true;
      Val last = kInfiniteVal;
      for (long i = 0; i < cfg.window; ++i)
        last = std::min(last, res.trace[res.trace.size() - 1 - static_cast<std::size_t>(i)].residual);
      res.achieved_precision = std::min(last, e.value.precision());
      return res;
    }
  }
  if (!res.trace.empty()) {
    Val last = kInfiniteVal;
    for (auto it = res.trace.rbegin(); it != res.trace.rend(); ++it)
      if (it->residual != kInfiniteVal && it->note.empty()) {
        last = it->residual;
        break;
      }
    res.achieved_precision = last == kInfiniteVal ? 0 : std::min(last, res.value.precision());
  }
  return res;
}

}  // namespace detail

/// Limit of A_{f,phi}(k) for one path or a search over a family.
/// Throws NoConvergenceError (carrying the best attempt) if nothing stabilizes.
inline IntegralResult integrate_limit(const SeriesFunction& f, const Arc& arc, const InterlockedFamily& schedule,
                                      const LimitConfig& cfg = {}) {
  if (cfg.window < 1 || cfg.k_max < 1) fail(ErrorKind::InvalidArgument, "window and k_max must be positive");
  if (cfg.target > arc.context()->precision())
    fail(ErrorKind::InvalidArgument, "target precision exceeds the working precision");
  if (!f.rational() && !f.degree_bound() && !f.certificate())
    fail(ErrorKind::CertificateRequired, f.name() + " needs a certificate to be integrated");
  auto parts = rational_parts(f, arc.context());
  std::optional<IntegralResult> best;
  std::vector<std::string> tried;
  for (const PathSequence& path : schedule.members(cfg.lambda_max)) {
    tried.push_back(path.describe());
    IntegralResult r = detail::run_path(f, arc, path, cfg, parts);
    if (r.converged) {
      r.members_tried = tried;
      return r;
    }
    const bool hit_limit = !r.trace.empty() && !r.trace.back().note.empty();
    if (!best || r.achieved_precision > best->achieved_precision) best = r;
    if (hit_limit && schedule.kind == InterlockedFamily::Kind::PhiAlpha) break;
  }
  if (!best) fail(ErrorKind::ScheduleUnsupported, "empty schedule " + schedule.describe());
  best->members_tried = tried;
  throw NoConvergenceError(*best);
}

inline IntegralResult integrate_limit(const SeriesFunction& f, const Arc& arc, const PathSequence& path,
                                      const LimitConfig& cfg = {}) {
  return integrate_limit(f, arc, InterlockedFamily::singleton(path), cfg);
}

/// Limit of the exact root sums of a function in partial-fraction form.
inline IntegralResult integrate_limit(const PadicPartialFractions& pf, const Arc& arc,
                                      const InterlockedFamily& schedule, LimitConfig cfg = {}) {
  auto parts = std::make_shared<const PadicPartialFractions>(pf);
  SeriesFunction carrier(
      arc.context(), arc.b,
      [](std::int64_t) -> PadicNumber { fail(ErrorKind::InvalidArgument, "partial fractions carry no coefficients"); },
      std::nullopt, "partial-fractions");
  cfg.strategy = EvalStrategy::root_sum();
  if (cfg.target > arc.context()->precision())
    fail(ErrorKind::InvalidArgument, "target precision exceeds the working precision");
  std::optional<IntegralResult> best;
  std::vector<std::string> tried;
  for (const PathSequence& path : schedule.members(cfg.lambda_max)) {
    tried.push_back(path.describe());
    IntegralResult r = detail::run_path(carrier, arc, path, cfg, parts);
    if (r.converged) {
      r.members_tried = tried;
      return r;
    }
    if (!best || r.achieved_precision > best->achieved_precision) best = r;
  }
  if (!best) fail(ErrorKind::ScheduleUnsupported, "empty schedule " + schedule.describe());
  best->members_tried = tried;
  throw NoConvergenceError(*best);
}

}  // namespace padicline
