#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <vector>

#include "rieszlab/core.hpp"
#include "rieszlab/verdict.hpp"
#include "rieszlab/weights.hpp"

namespace rieszlab::oracle {

/// Reference routes used only by the test suite. Each one recomputes a
/// quantity the library produces incrementally, by the most direct textbook
/// formula available, sharing no intermediate state with the scan code.

namespace detail {

/// r_k recomputed straight from the family definition in extended precision;
/// deliberately not the cursor the scans use.
inline long double raw_weight(const RieszWeights& w, std::size_t k) {
  switch (w.family()) {
    case RieszWeights::Family::Constant:
      return static_cast<long double>(w.parameter());
    case RieszWeights::Family::Power:
      return std::pow(static_cast<long double>(k), static_cast<long double>(w.parameter()));
    case RieszWeights::Family::Geometric:
      return std::pow(static_cast<long double>(w.parameter()), static_cast<long double>(k));
    case RieszWeights::Family::Explicit: {
      const auto& v = w.explicit_values();
      return k <= v.size() ? static_cast<long double>(v[k - 1]) : 0.0L;
    }
  }
  return 0.0L;
}

}  // namespace detail

/// Weighted mean as the literal quotient sum(r_k x_k) / sum(r_k), accumulated
/// in extended precision with plain loops. The scan route never forms this
/// quotient, so agreement between the two is a real check on the recurrence.
inline double brute_riesz_mean(const std::vector<double>& weights,
                               const std::vector<double>& values) {
  if (weights.empty() || weights.size() != values.size()) {
    throw ValidationError("brute_riesz_mean: weights and values must match and be nonempty");
  }
  long double num = 0.0L;
  long double den = 0.0L;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    num += static_cast<long double>(weights[i]) * static_cast<long double>(values[i]);
    den += static_cast<long double>(weights[i]);
  }
  if (!(den > 0.0L)) throw ValidationError("brute_riesz_mean: weight sum must be positive");
  return static_cast<double>(num / den);
}

/// n-th weighted mean of a materialized sequence under a weight family,
/// with the weights regenerated from the family formula. Capped at depth
/// 10^4: beyond that extended precision can overflow for geometric weights.
inline FiniteVector brute_mean(const RieszWeights& w, const std::vector<FiniteVector>& seq,
                               std::size_t n) {
  if (n == 0 || n > seq.size()) throw ValidationError("brute_mean: n out of range");
  if (n > 10000) throw ValidationError("brute_mean: reference route capped at depth 1e4");
  const std::size_t dim = seq.front().dim();
  std::vector<long double> num(dim, 0.0L);
  long double den = 0.0L;
  for (std::size_t k = 1; k <= n; ++k) {
    const long double rk = detail::raw_weight(w, k);
    if (!std::isfinite(rk)) {
      throw ValidationError("brute_mean: weights overflow the extended range at this depth");
    }
    for (std::size_t j = 0; j < dim; ++j) {
      num[j] += rk * static_cast<long double>(seq[k - 1][j]);
    }
    den += rk;
  }
  if (!(den > 0.0L)) throw ValidationError("brute_mean: weight sum must be positive");
  std::vector<double> out(dim);
  for (std::size_t j = 0; j < dim; ++j) out[j] = static_cast<double>(num[j] / den);
  return FiniteVector(out);
}

/// Largest |sum epsilon_k a_k| over sign patterns, by the closed form: the
/// all-matching pattern wins, giving the plain left-to-right sum of |a_k|.
inline double exact_h_scalar(const std::vector<double>& coeffs) {
  double s = 0.0;
  for (double a : coeffs) s += std::abs(a);
  return s;
}

/// The same supremum by brute force over all 2^L sign patterns with running
/// prefixes. The sign-matching path performs the identical additions as
/// exact_h_scalar, so for coefficients whose magnitudes dominate rounding the
/// two agree bit for bit.
inline double exhaustive_h_scalar(const std::vector<double>& coeffs) {
  if (coeffs.size() > 25) {
    throw ValidationError("exhaustive_h_scalar: capped at 25 terms (2^L patterns)");
  }
  double best = 0.0;
  auto rec = [&](auto&& self, std::size_t i, double prefix) -> void {
    if (i == coeffs.size()) {
      best = std::max(best, std::abs(prefix));
      return;
    }
    self(self, i + 1, prefix + coeffs[i]);
    self(self, i + 1, prefix - coeffs[i]);
  };
  rec(rec, 0, 0.0);
  return best;
}

/// Verdict recomputed from a fully materialized trajectory: window
/// oscillation and probe-depth snapshots are re-derived by direct indexing
/// rather than streaming state, then mapped through the same four-step rule.
inline ConvergenceVerdict reference_verdict(const std::vector<FiniteVector>& seq,
                                            const TruncationSchedule& sched,
                                            NormKind norm_kind = NormKind::sup()) {
  if (seq.size() != sched.final_depth()) {
    throw ValidationError("reference_verdict: trajectory length must equal the final probe depth");
  }
  const FiniteVector& last = seq.back();
  const std::size_t have = std::min<std::size_t>(sched.window, seq.size());
  double window_osc = 0.0;
  for (std::size_t i = seq.size() - have; i < seq.size(); ++i) {
    window_osc = std::max(window_osc, diff_norm(seq[i].entries(), last.entries(), norm_kind));
  }
  std::vector<double> depth_norms;
  depth_norms.reserve(sched.depths.size());
  for (std::size_t d : sched.depths) depth_norms.push_back(seq[d - 1].norm(norm_kind));
  double drift = 0.0;
  if (sched.depths.size() >= 2) {
    const FiniteVector& a = seq[sched.depths[sched.depths.size() - 2] - 1];
    drift = diff_norm(a.entries(), last.entries(), norm_kind);
  }
  ConvergenceVerdict v;
  v.kind = rieszlab::detail::classify(window_osc, drift, depth_norms, sched.tol);
  v.residual = window_osc;
  v.drift = drift;
  v.depth_used = seq.size();
  v.depth_norms = std::move(depth_norms);
  if (v.kind == VerdictKind::Converged) v.limit = last;
  return v;
}

/// Single-depth convenience form: the whole trajectory is the only probe.
inline ConvergenceVerdict reference_verdict(const std::vector<FiniteVector>& seq, double tol,
                                            std::size_t window,
                                            NormKind norm_kind = NormKind::sup()) {
  if (seq.empty()) throw ValidationError("reference_verdict: empty trajectory");
  return reference_verdict(seq, TruncationSchedule({seq.size()}, window, tol), norm_kind);
}

inline ConvergenceVerdict reference_verdict(const std::vector<double>& seq,
                                            const TruncationSchedule& sched) {
  std::vector<FiniteVector> lifted;
  lifted.reserve(seq.size());
  for (double x : seq) lifted.push_back(FiniteVector(std::vector<double>{x}));
  return reference_verdict(lifted, sched, NormKind::sup());
}

}  // namespace rieszlab::oracle
