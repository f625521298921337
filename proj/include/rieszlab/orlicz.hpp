#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "rieszlab/accumulate.hpp"
#include "rieszlab/core.hpp"
#include "rieszlab/membership.hpp"
#include "rieszlab/multiplier.hpp"
#include "rieszlab/series.hpp"
#include "rieszlab/summability.hpp"
#include "rieszlab/verdict.hpp"
#include "rieszlab/weights.hpp"

namespace rieszlab {

/// Residual comparison between the strong (vector-norm) and weak
/// (functional-wise) Riesz scans of the same partial sums. The two scans
/// share every intermediate value, so in this finite-dimensional model the
/// residuals agree up to dot-product rounding whenever both routes settle.
struct GapReport {
  double strong_residual = 0.0;
  double weak_residual = 0.0;
  double gap = 0.0;
  VerdictKind strong_kind = VerdictKind::Inconclusive;
  VerdictKind weak_kind = VerdictKind::Inconclusive;
  /// Distance between the two limit estimates; NaN unless both exist.
  double limit_gap = std::numeric_limits<double>::quiet_NaN();
};

inline GapReport weak_strong_gap(const OperatorSeries& series, const MultiplierSequence& x,
                                 const RieszWeights& w, const std::vector<Functional>& functionals,
                                 const TruncationSchedule& sched) {
  MembershipOptions opts;
  opts.run_almost = false;
  opts.run_cesaro = false;
  opts.functionals = functionals;
  const MembershipReport rep = membership(series, x, w, sched, opts);
  GapReport out;
  out.strong_residual = rep.riesz.residual;
  out.weak_residual = rep.weak_riesz.residual;
  out.gap = std::abs(out.strong_residual - out.weak_residual);
  out.strong_kind = rep.riesz.kind;
  out.weak_kind = rep.weak_riesz.kind;
  if (rep.riesz.limit && rep.weak_riesz.limit) {
    out.limit_gap =
        diff_norm(rep.riesz.limit->entries(), rep.weak_riesz.limit->entries(), series.range());
  }
  return out;
}

/// Increasing disjoint index blocks sigma_1 < sigma_2 < ... with nondecreasing
/// positive scalings t_j. The blocks select partial-sum segments; the scalings
/// stretch the multiplier column-wise and shrink the functionals row-wise.
/// Whether the scalings actually blow up is recorded as evidence, not
/// enforced: slowly growing scalings are a legitimate (weaker) probe.
class IntervalPartition {
public:
  IntervalPartition(std::vector<std::pair<std::size_t, std::size_t>> intervals,
                    std::vector<double> scalings)
      : intervals_(std::move(intervals)), scalings_(std::move(scalings)) {
    if (intervals_.empty()) throw ValidationError("partition: at least one interval required");
    if (intervals_.size() != scalings_.size()) {
      throw ValidationError("partition: one scaling per interval required");
    }
    for (std::size_t j = 0; j < intervals_.size(); ++j) {
      const auto& [lo, hi] = intervals_[j];
      if (lo == 0) throw ValidationError("partition: indices are 1-based");
      if (lo > hi) throw ValidationError("partition: interval bounds must satisfy lo <= hi");
      if (j > 0 && lo <= intervals_[j - 1].second) {
        throw ValidationError("partition: intervals must be increasing and disjoint");
      }
      if (!std::isfinite(scalings_[j]) || scalings_[j] <= 0.0) {
        throw ValidationError("partition: scalings must be positive and finite");
      }
      if (j > 0 && scalings_[j] < scalings_[j - 1]) {
        throw ValidationError("partition: scalings must be nondecreasing");
      }
    }
  }

  /// The canonical probe: sigma_j = {2j-1, 2j} with t_j = j.
  static IntervalPartition pairs(std::size_t blocks) {
    if (blocks == 0) throw ValidationError("partition: at least one block required");
    std::vector<std::pair<std::size_t, std::size_t>> iv;
    std::vector<double> sc;
    iv.reserve(blocks);
    sc.reserve(blocks);
    for (std::size_t j = 1; j <= blocks; ++j) {
      iv.emplace_back(2 * j - 1, 2 * j);
      sc.push_back(static_cast<double>(j));
    }
    return IntervalPartition(std::move(iv), std::move(sc));
  }

  const std::vector<std::pair<std::size_t, std::size_t>>& intervals() const noexcept {
    return intervals_;
  }
  const std::vector<double>& scalings() const noexcept { return scalings_; }
  std::size_t size() const noexcept { return intervals_.size(); }

  /// Final scaling at least tenfold the first: the finite-depth stand-in for
  /// an unbounded scaling sequence.
  bool growth_evidence() const noexcept {
    return scalings_.back() >= 10.0 * scalings_.front();
  }

private:
  std::vector<std::pair<std::size_t, std::size_t>> intervals_;
  std::vector<double> scalings_;
};

/// The test matrix h_ij = (f_i / t_i)(sum over sigma_j of T_m (t_j x_m)) with
/// its two decay diagnostics: the per-row sup (each column's size at row i)
/// and the diagonal. `consistent` holds when both fall below the tolerance
/// by the last index. The diagonal is additionally run through the Riesz
/// transform; both readings of "the diagonal converges to zero" are reported
/// because the intended one is ambiguous, and neither feeds `consistent`.
struct TestMatrix {
  std::vector<std::vector<double>> entries;
  std::vector<Functional> row_functionals;
  IntervalPartition column_partition;
  std::vector<double> row_sup;
  std::vector<double> diagonal;
  double decay_constant = 0.0;
  bool column_decay_ok = false;
  bool diagonal_ok = false;
  bool consistent = false;
  double tol = 0.0;
  ConvergenceVerdict diagonal_riesz;
};

inline TestMatrix antosik_matrix(const OperatorSeries& series, const MultiplierSequence& x,
                                 const IntervalPartition& part,
                                 const std::vector<Functional>& functionals,
                                 const RieszWeights& w, double tol = 0.02) {
  if (functionals.empty()) {
    throw ValidationError("antosik_matrix: at least one row functional required");
  }
  for (const auto& f : functionals) {
    if (f.dim() != series.dim_out()) {
      throw ValidationError("antosik_matrix: functional dimension does not match the range");
    }
  }
  if (functionals.size() > part.size()) {
    throw ValidationError("antosik_matrix: more row functionals than partition scalings");
  }
  if (x.dim() != series.dim_in()) {
    throw ValidationError("antosik_matrix: multiplier dimension does not match the domain");
  }
  if (part.intervals().back().second > 1000000) {
    throw ValidationError("antosik_matrix: partition reaches beyond the supported depth");
  }
  if (!std::isfinite(tol) || tol <= 0.0) {
    throw ValidationError("antosik_matrix: tolerance must be positive and finite");
  }

  const std::size_t rows = functionals.size();
  const std::size_t cols = part.size();
  const std::size_t dout = series.dim_out();

  // Block sums B_j = sum over sigma_j of T_m x_m; the scalings factor out of
  // the linear maps, so h_ij = (t_j / t_i) * f_i(B_j).
  std::vector<FiniteVector> blocks;
  blocks.reserve(cols);
  std::vector<double> term, sum;
  for (std::size_t j = 0; j < cols; ++j) {
    const auto& [lo, hi] = part.intervals()[j];
    CompensatedVector acc(dout);
    for (std::size_t m = lo; m <= hi; ++m) {
      series.apply_into(m, x.term(m).entries(), term);
      acc.add(term);
    }
    acc.value_into(sum);
    if (!detail::all_finite(sum)) {
      throw AnalysisError("antosik_matrix: block " + std::to_string(j + 1) +
                          " left the finite range");
    }
    blocks.push_back(FiniteVector(sum));
  }

  TestMatrix out{{},    functionals, part,  {}, {}, 0.0, false, false,
                 false, tol,         ConvergenceVerdict{}};
  out.entries.assign(rows, std::vector<double>(cols, 0.0));
  out.row_sup.assign(rows, 0.0);
  for (std::size_t i = 0; i < rows; ++i) {
    const double ti = part.scalings()[i];
    std::vector<double> fb(cols);
    for (std::size_t j = 0; j < cols; ++j) fb[j] = functionals[i](blocks[j].entries());
    for (std::size_t j = 0; j < cols; ++j) {
      const double h = (part.scalings()[j] / ti) * fb[j];
      if (!std::isfinite(h)) {
        throw AnalysisError("antosik_matrix: entry left the finite range");
      }
      out.entries[i][j] = h;
      out.row_sup[i] = std::max(out.row_sup[i], std::abs(h));
    }
    out.decay_constant = std::max(out.decay_constant, ti * out.row_sup[i]);
  }

  const std::size_t diag = std::min(rows, cols);
  out.diagonal.reserve(diag);
  for (std::size_t i = 0; i < diag; ++i) out.diagonal.push_back(out.entries[i][i]);

  out.column_decay_ok = out.row_sup.back() <= tol;
  out.diagonal_ok = std::abs(out.diagonal.back()) <= tol;
  out.consistent = out.column_decay_ok && out.diagonal_ok;

  if (diag >= 2) {
    const TruncationSchedule diag_sched({diag}, std::min<std::size_t>(50, diag - 1), tol);
    const auto& d = out.diagonal;
    out.diagonal_riesz = r_limit(
        w, [&d](std::size_t n) { return FiniteVector({d[n - 1]}); }, diag_sched);
  } else {
    out.diagonal_riesz.kind = VerdictKind::Inconclusive;
    out.diagonal_riesz.depth_used = diag;
  }
  return out;
}

}  // namespace rieszlab
