#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "rieszlab/core.hpp"

namespace rieszlab {

/// Probe depths, trailing-window length, and tolerance used by every
/// finite-depth convergence diagnostic. Depths must be strictly increasing and
/// the window must fit below the first depth.
struct TruncationSchedule {
  std::vector<std::size_t> depths;
  std::size_t window = 50;
  double tol = 1e-8;

  TruncationSchedule(std::vector<std::size_t> depths_in, std::size_t window_in, double tol_in)
      : depths(std::move(depths_in)), window(window_in), tol(tol_in) {
    if (depths.empty()) throw ValidationError("schedule: at least one depth required");
    for (std::size_t i = 0; i < depths.size(); ++i) {
      if (depths[i] == 0) throw ValidationError("schedule: depths must be positive");
      if (i > 0 && depths[i] <= depths[i - 1]) {
        throw ValidationError("schedule: depths must be strictly increasing");
      }
    }
    if (window == 0 || window >= depths.front()) {
      throw ValidationError("schedule: window must be positive and smaller than the first depth");
    }
    if (!std::isfinite(tol) || tol <= 0.0) {
      throw ValidationError("schedule: tolerance must be positive and finite");
    }
  }

  static TruncationSchedule defaults() {
    return TruncationSchedule({1000, 10000, 100000}, 50, 1e-8);
  }

  std::size_t final_depth() const noexcept { return depths.back(); }

  bool operator==(const TruncationSchedule& other) const noexcept {
    return depths == other.depths && window == other.window && tol == other.tol;
  }
};

enum class VerdictKind { Converged, Cauchy, Diverging, Inconclusive };

inline const char* to_string(VerdictKind k) noexcept {
  switch (k) {
    case VerdictKind::Converged: return "Converged";
    case VerdictKind::Cauchy: return "Cauchy";
    case VerdictKind::Diverging: return "Diverging";
    case VerdictKind::Inconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

/// Ordering used to pick "worst" outcomes in probes: Diverging is worst, then
/// Inconclusive, Cauchy, Converged.
inline int severity(VerdictKind k) noexcept {
  switch (k) {
    case VerdictKind::Diverging: return 3;
    case VerdictKind::Inconclusive: return 2;
    case VerdictKind::Cauchy: return 1;
    case VerdictKind::Converged: return 0;
  }
  return 2;
}

/// Which estimator produced a verdict's limit: Direct means the scanned
/// sequence itself settled (the limit is its final value); Averaged means a
/// mean trajectory (weighted or windowed) was judged instead.
enum class EstimateRoute { Direct, Averaged };

inline const char* to_string(EstimateRoute r) noexcept {
  return r == EstimateRoute::Direct ? "direct" : "averaged";
}

/// Finite-depth convergence evidence for one sequence scan.
///
///   residual    trailing-window oscillation max ||v_n - v_N|| at final depth N
///   drift       distance between the snapshots at the last two probe depths
///   depth_norms ||v|| at each probe depth (the growth witness for Diverging)
///
/// kind == Converged implies the limit is present and residual <= the
/// tolerance the scan ran with; kind == Diverging implies depth_norms records
/// a monotone, more-than-tenfold norm increase.
struct ConvergenceVerdict {
  VerdictKind kind = VerdictKind::Inconclusive;
  std::optional<FiniteVector> limit;
  double residual = 0.0;
  double drift = 0.0;
  std::size_t depth_used = 0;
  EstimateRoute route = EstimateRoute::Direct;
  std::vector<double> depth_norms;

  double limit_norm(NormKind kind_of_norm) const noexcept {
    return limit ? limit->norm(kind_of_norm)
                 : std::numeric_limits<double>::quiet_NaN();
  }
};

namespace detail {

/// The verdict rule shared by the streaming tracker and the reference
/// implementation in the oracle module:
///   1. window oscillation W <= tol and inter-depth drift D <= tol: Converged
///      (the tie between Converged and Cauchy resolves to the stronger claim);
///   2. otherwise a growth witness (norms at the probe depths nondecreasing
///      and final > 10 x first, with at least two depths): Diverging;
///   3. otherwise W <= tol: Cauchy;
///   4. otherwise: Inconclusive.
inline VerdictKind classify(double window_osc, double drift, const std::vector<double>& depth_norms,
                            double tol) noexcept {
  if (window_osc <= tol && drift <= tol) return VerdictKind::Converged;
  if (depth_norms.size() >= 2) {
    bool monotone = true;
    for (std::size_t i = 1; i < depth_norms.size(); ++i) {
      if (depth_norms[i] < depth_norms[i - 1] * (1.0 - 1e-12)) {
        monotone = false;
        break;
      }
    }
    if (monotone && depth_norms.back() > 10.0 * depth_norms.front() && depth_norms.back() > 0.0) {
      return VerdictKind::Diverging;
    }
  }
  if (window_osc <= tol) return VerdictKind::Cauchy;
  return VerdictKind::Inconclusive;
}

}  // namespace detail

/// Streaming evaluation of the verdict rule over a sequence of R^d values fed
/// one by one for n = 1..final_depth. Keeps a ring of the trailing `window`
/// values and a snapshot at every probe depth; memory is O(window * d).
class VerdictTracker {
public:
  VerdictTracker(std::size_t dim, NormKind norm_kind, const TruncationSchedule& sched)
      : dim_(dim), norm_kind_(norm_kind), sched_(&sched), ring_(sched.window) {}

  void feed(const std::vector<double>& value) {
    ++n_;
    if (!detail::all_finite(value)) {
      throw AnalysisError("scan left the finite range at depth " + std::to_string(n_));
    }
    ring_[(n_ - 1) % ring_.size()] = value;
    if (next_depth_ < sched_->depths.size() && n_ == sched_->depths[next_depth_]) {
      snapshots_.push_back(value);
      ++next_depth_;
    }
  }

  void feed(double value) {
    scalar_buf_.assign(1, value);
    feed(scalar_buf_);
  }

  std::size_t fed() const noexcept { return n_; }
  bool done() const noexcept { return n_ >= sched_->final_depth(); }

  /// Assemble the verdict; requires the full schedule to have been fed.
  ConvergenceVerdict verdict() const {
    if (n_ < sched_->final_depth()) {
      throw AnalysisError("verdict requested before the final probe depth");
    }
    const std::vector<double>& last = ring_[(n_ - 1) % ring_.size()];
    double window_osc = 0.0;
    const std::size_t have = std::min<std::size_t>(n_, ring_.size());
    for (std::size_t i = 0; i < have; ++i) {
      window_osc = std::max(window_osc, diff_norm(ring_[i], last, norm_kind_));
    }
    std::vector<double> depth_norms;
    depth_norms.reserve(snapshots_.size());
    for (const auto& s : snapshots_) depth_norms.push_back(norm_of(s, norm_kind_));
    double drift = 0.0;
    if (snapshots_.size() >= 2) {
      drift = diff_norm(snapshots_[snapshots_.size() - 2], snapshots_.back(), norm_kind_);
    }
    ConvergenceVerdict v;
    v.kind = detail::classify(window_osc, drift, depth_norms, sched_->tol);
    v.residual = window_osc;
    v.drift = drift;
    v.depth_used = n_;
    v.depth_norms = std::move(depth_norms);
    if (v.kind == VerdictKind::Converged) v.limit = FiniteVector(last);
    return v;
  }

  /// Final value fed (the estimator value at the last depth), regardless of
  /// the verdict kind. Used by best-effort reference estimates.
  FiniteVector last_value() const {
    if (n_ == 0) throw AnalysisError("no values fed");
    return FiniteVector(ring_[(n_ - 1) % ring_.size()]);
  }

private:
  std::size_t dim_;
  NormKind norm_kind_;
  const TruncationSchedule* sched_;
  std::vector<std::vector<double>> ring_;
  std::vector<std::vector<double>> snapshots_;
  std::vector<double> scalar_buf_;
  std::size_t n_ = 0;
  std::size_t next_depth_ = 0;
};

}  // namespace rieszlab
