#pragma once

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rieszlab/accumulate.hpp"
#include "rieszlab/core.hpp"
#include "rieszlab/verdict.hpp"
#include "rieszlab/weights.hpp"

namespace rieszlab {

/// A sequence is any callable yielding the k-th term (1-based). Callers invoke
/// it with k = 1, 2, ... consecutively, so stateful incremental generators and
/// pure closures both qualify.
template <class G>
concept VectorSequence = requires(G& g, std::size_t k) {
  { g(k) } -> std::convertible_to<FiniteVector>;
};

/// Row n of the weighted-mean matrix: entries r_k / R_n for k = 1..n.
/// Computed in overflow-safe form for the geometric family, where both r_k
/// and R_n can leave double range while their quotient stays in (0, 1].
inline std::vector<double> riesz_row(const RieszWeights& w, std::size_t n) {
  if (n == 0) throw ValidationError("riesz_row: n must be at least 1");
  if (n > 1000000) throw ValidationError("riesz_row: rows above depth 1e6 are not materialized");
  std::vector<double> row(n);
  if (w.family() == RieszWeights::Family::Geometric) {
    const double q = w.parameter();
    // r_k / R_n = (1 - 1/q) q^{k-n} / (1 - q^{-n}), with both differences in
    // cancellation-free form so ratios barely above 1 stay normalized.
    const double log_q = std::log1p(q - 1.0);
    const double scale =
        ((q - 1.0) / q) / -std::expm1(-static_cast<double>(n) * log_q);
    for (std::size_t k = 1; k <= n; ++k) {
      row[k - 1] = scale * std::pow(q, static_cast<double>(k) - static_cast<double>(n));
    }
    return row;
  }
  CompensatedScalar total;
  for (std::size_t k = 1; k <= n; ++k) {
    row[k - 1] = w.weight(k);
    total.add(row[k - 1]);
  }
  const double r_n = total.value();
  for (auto& x : row) x /= r_n;
  return row;
}

/// Weighted means mu_n for n = 1..n_max via the incremental recurrence
/// mu_n = mu_{n-1} + (r_n / R_n)(x_n - mu_{n-1}), mu_1 = x_1. The direct
/// quotient of cumulative sums is never formed, so geometric weights cannot
/// overflow, and the update is compensated.
template <VectorSequence Gen>
std::vector<FiniteVector> riesz_transform(const RieszWeights& w, Gen&& seq, std::size_t n_max) {
  if (n_max == 0) throw ValidationError("riesz_transform: n_max must be at least 1");
  std::vector<FiniteVector> out;
  out.reserve(n_max);
  WeightCursor cur(w);
  std::optional<CompensatedMeanVector> mean;
  std::vector<double> mu;
  for (std::size_t n = 1; n <= n_max; ++n) {
    decltype(auto) tv = seq(n);
    const FiniteVector& v = tv;
    if (!mean) mean.emplace(v.dim());
    cur.advance();
    mean->step(cur.ratio(), v.entries());
    mean->value_into(mu);
    if (!detail::all_finite(mu)) {
      throw AnalysisError("riesz_transform: means left the finite range at depth " + std::to_string(n));
    }
    out.push_back(FiniteVector(mu));
  }
  return out;
}

/// Arithmetic means (1/n) sum_{k<=n} x_k computed from compensated prefix
/// sums. This is the independent route against which the recurrence with
/// constant weights is cross-checked; the two must agree to near machine
/// precision but share no arithmetic.
template <VectorSequence Gen>
std::vector<FiniteVector> cesaro_transform(Gen&& seq, std::size_t n_max) {
  if (n_max == 0) throw ValidationError("cesaro_transform: n_max must be at least 1");
  std::vector<FiniteVector> out;
  out.reserve(n_max);
  std::optional<CompensatedVector> acc;
  std::vector<double> sum, mean;
  for (std::size_t n = 1; n <= n_max; ++n) {
    decltype(auto) tv = seq(n);
    const FiniteVector& v = tv;
    if (!acc) acc.emplace(v.dim());
    acc->add(v.entries());
    acc->value_into(sum);
    mean.resize(sum.size());
    for (std::size_t i = 0; i < sum.size(); ++i) mean[i] = sum[i] / static_cast<double>(n);
    if (!detail::all_finite(mean)) {
      throw AnalysisError("cesaro_transform: means left the finite range at depth " + std::to_string(n));
    }
    out.push_back(FiniteVector(mean));
  }
  return out;
}

/// One pass over a sequence evaluating the verdict rule twice: on the raw
/// values (did the sequence itself settle) and on their weighted means.
struct SequenceScan {
  ConvergenceVerdict direct;
  ConvergenceVerdict riesz;
  FiniteVector direct_final;
  FiniteVector riesz_final;
};

template <VectorSequence Gen>
SequenceScan run_riesz_scan(const RieszWeights& w, Gen&& seq, const TruncationSchedule& sched,
                            NormKind norm_kind) {
  const std::size_t n_final = sched.final_depth();
  WeightCursor cur(w);
  std::optional<VerdictTracker> direct;
  std::optional<VerdictTracker> riesz;
  std::optional<CompensatedMeanVector> mean;
  std::vector<double> mu;
  for (std::size_t n = 1; n <= n_final; ++n) {
    decltype(auto) tv = seq(n);
    const FiniteVector& v = tv;
    if (!direct) {
      direct.emplace(v.dim(), norm_kind, sched);
      riesz.emplace(v.dim(), norm_kind, sched);
      mean.emplace(v.dim());
    }
    cur.advance();
    mean->step(cur.ratio(), v.entries());
    mean->value_into(mu);
    direct->feed(v.entries());
    riesz->feed(mu);
  }
  return SequenceScan{direct->verdict(), riesz->verdict(), direct->last_value(),
                      riesz->last_value()};
}

/// Two-tier limit estimate. When the raw sequence itself settles, its final
/// value is the sharper estimate of the common limit (the method is regular:
/// R_n grows without bound for the provided families, so plain convergence
/// transfers to the means with the same limit). Otherwise the weighted-mean
/// verdict stands on its own.
inline ConvergenceVerdict layered_verdict(const SequenceScan& scan) {
  if (scan.direct.kind == VerdictKind::Converged) {
    ConvergenceVerdict v = scan.direct;
    v.route = EstimateRoute::Direct;
    return v;
  }
  ConvergenceVerdict v = scan.riesz;
  v.route = EstimateRoute::Averaged;
  return v;
}

/// R-limit of a sequence under the given weights and schedule.
template <VectorSequence Gen>
ConvergenceVerdict r_limit(const RieszWeights& w, Gen&& seq, const TruncationSchedule& sched,
                           NormKind norm_kind = NormKind::sup()) {
  return layered_verdict(run_riesz_scan(w, seq, sched, norm_kind));
}

/// Adaptor turning a term sequence into its compensated partial-sum sequence.
template <class Gen>
class PartialSumSequence {
public:
  explicit PartialSumSequence(Gen& gen) : gen_(gen) {}

  const FiniteVector& operator()(std::size_t k) {
    decltype(auto) tv = gen_(k);
    const FiniteVector& t = tv;
    if (!acc_) acc_.emplace(t.dim());
    acc_->add(t.entries());
    acc_->value_into(buf_);
    if (!detail::all_finite(buf_)) {
      throw AnalysisError("partial sums left the finite range at depth " + std::to_string(k));
    }
    current_.emplace(buf_);
    return *current_;
  }

private:
  Gen& gen_;
  std::optional<CompensatedVector> acc_;
  std::vector<double> buf_;
  std::optional<FiniteVector> current_;
};

/// R-sum of a series given by its terms: the R-limit of the partial sums.
template <VectorSequence Gen>
ConvergenceVerdict r_sum(const RieszWeights& w, Gen&& terms, const TruncationSchedule& sched,
                         NormKind norm_kind = NormKind::sup()) {
  PartialSumSequence<std::remove_reference_t<Gen>> sums(terms);
  return r_limit(w, sums, sched, norm_kind);
}

/// Cesaro sum of a series: the arithmetic-mean limit of its partial sums,
/// which coincides with the triangular weighted form
/// (1/n) sum_{k<=n} (n - k + 1) x_k after exchanging the order of summation.
template <VectorSequence Gen>
ConvergenceVerdict cesaro_series_sum(Gen&& terms, const TruncationSchedule& sched,
                                     NormKind norm_kind = NormKind::sup()) {
  return r_sum(RieszWeights::constant(1.0), terms, sched, norm_kind);
}

/// Means over the sliding windows [n, n+p-1], n = 1..n_max, for one window
/// length p. A sequence is almost convergent when these stabilize uniformly
/// in n as p grows.
template <VectorSequence Gen>
std::vector<FiniteVector> almost_convergence_transform(Gen&& seq, std::size_t p,
                                                       std::size_t n_max) {
  if (p == 0) throw ValidationError("almost_convergence_transform: p must be at least 1");
  if (n_max == 0) throw ValidationError("almost_convergence_transform: n_max must be at least 1");
  std::vector<FiniteVector> terms;
  terms.reserve(n_max + p - 1);
  for (std::size_t k = 1; k <= n_max + p - 1; ++k) terms.push_back(FiniteVector(seq(k)));
  const std::size_t dim = terms.front().dim();
  std::vector<FiniteVector> out;
  out.reserve(n_max);
  std::vector<double> mean(dim);
  for (std::size_t n = 1; n <= n_max; ++n) {
    CompensatedVector acc(dim);
    for (std::size_t k = n; k < n + p; ++k) acc.add(terms[k - 1].entries());
    acc.value_into(mean);
    for (auto& x : mean) x /= static_cast<double>(p);
    out.push_back(FiniteVector(mean));
  }
  return out;
}

/// Streaming almost-convergence evidence across several window lengths.
/// For each p it tracks every window mean over starting indices up to
/// depth - p + 1 and records the coordinatewise min/max envelope; the spread
/// is the sup over coordinates of (max - min). Window sums slide by one term
/// and are rebuilt from scratch every p steps to stop error accumulation.
class AlmostWindowTracker {
public:
  AlmostWindowTracker(std::size_t dim, std::vector<std::size_t> ps)
      : dim_(dim), states_() {
    if (ps.empty()) throw ValidationError("almost windows: at least one window length");
    std::sort(ps.begin(), ps.end());
    if (ps.front() == 0) throw ValidationError("almost windows: lengths must be positive");
    ring_cap_ = ps.back() + 1;
    ring_.assign(ring_cap_, std::vector<double>(dim, 0.0));
    for (std::size_t p : ps) states_.push_back(State{p, std::vector<double>(dim, 0.0),
                                                     std::vector<double>(), std::vector<double>(),
                                                     std::vector<double>(dim, 0.0), 0});
  }

  void feed(const std::vector<double>& v) {
    ++n_;
    ring_[n_ % ring_cap_] = v;
    for (auto& st : states_) {
      if (n_ < st.p) continue;
      if ((n_ - st.p) % st.p == 0) {
        // Fresh compensated rebuild of the window [n - p + 1, n].
        CompensatedVector acc(dim_);
        for (std::size_t k = n_ - st.p + 1; k <= n_; ++k) acc.add(ring_[k % ring_cap_]);
        acc.value_into(st.sum);
      } else {
        const std::vector<double>& leaving = ring_[(n_ - st.p) % ring_cap_];
        for (std::size_t i = 0; i < dim_; ++i) st.sum[i] += v[i] - leaving[i];
      }
      for (std::size_t i = 0; i < dim_; ++i) {
        st.mean[i] = st.sum[i] / static_cast<double>(st.p);
      }
      if (st.count == 0) {
        st.lo = st.mean;
        st.hi = st.mean;
      } else {
        for (std::size_t i = 0; i < dim_; ++i) {
          st.lo[i] = std::min(st.lo[i], st.mean[i]);
          st.hi[i] = std::max(st.hi[i], st.mean[i]);
        }
      }
      ++st.count;
    }
  }

  /// Envelope spread for window length index j (sorted ascending).
  double spread(std::size_t j) const {
    const State& st = states_.at(j);
    if (st.count == 0) return std::numeric_limits<double>::infinity();
    double s = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) s = std::max(s, st.hi[i] - st.lo[i]);
    return s;
  }

  std::size_t window_length(std::size_t j) const { return states_.at(j).p; }
  std::size_t window_count() const noexcept { return states_.size(); }

  /// Mean of the last complete window at the largest p; the limit estimate
  /// when the spread certifies uniform stability.
  FiniteVector final_mean() const {
    const State& st = states_.back();
    if (st.count == 0) throw AnalysisError("almost windows: no complete window observed");
    return FiniteVector(st.mean);
  }

private:
  struct State {
    std::size_t p;
    std::vector<double> sum;
    std::vector<double> lo, hi;
    std::vector<double> mean;
    std::size_t count;
  };

  std::size_t dim_;
  std::size_t ring_cap_ = 0;
  std::vector<std::vector<double>> ring_;
  std::vector<State> states_;
  std::size_t n_ = 0;
};

/// Finite-depth test of the three regularity conditions for a triangular
/// summability matrix: (i) absolute row sums bounded, (ii) columns tending to
/// zero, (iii) row sums tending to one. Verdicts are evidence at the probed
/// depth, never a proof; `finite_depth_only` says so in the record.
struct RegularityReport {
  std::vector<std::size_t> probe_rows;
  double abs_row_sum_max = 0.0;
  double abs_row_bound = 0.0;
  bool bounded_ok = false;
  std::vector<double> column_first;
  std::vector<double> column_final;
  bool columns_ok = false;
  double final_row_sum = 0.0;
  double row_sum_tol = 0.0;
  bool row_sums_ok = false;
  bool overall = false;
  bool finite_depth_only = true;
};

namespace detail {

inline std::vector<std::size_t> regularity_probe_grid(std::size_t depth) {
  std::vector<std::size_t> grid;
  for (std::size_t base = 10; base < depth; base = base * 10) {
    if (base >= 10) grid.push_back(base);
    if (3 * base < depth) grid.push_back(3 * base);
  }
  grid.push_back(depth);
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  while (!grid.empty() && grid.front() > depth) grid.pop_back();
  return grid;
}

inline RegularityReport regularity_from_rows(
    const std::vector<std::size_t>& probe_rows,
    const std::vector<std::vector<double>>& rows, double bound, double row_sum_tol) {
  RegularityReport rep;
  rep.probe_rows = probe_rows;
  rep.abs_row_bound = bound;
  rep.row_sum_tol = row_sum_tol;
  const std::size_t col_count = std::min<std::size_t>(10, probe_rows.empty() ? 0 : probe_rows.back());
  rep.column_first.assign(col_count, 0.0);
  rep.column_final.assign(col_count, 0.0);
  std::vector<bool> first_set(col_count, false);
  for (std::size_t idx = 0; idx < rows.size(); ++idx) {
    const auto& row = rows[idx];
    CompensatedScalar abs_sum;
    for (double x : row) abs_sum.add(std::abs(x));
    rep.abs_row_sum_max = std::max(rep.abs_row_sum_max, abs_sum.value());
    for (std::size_t k = 0; k < col_count; ++k) {
      const double a = k < row.size() ? row[k] : 0.0;
      if (!first_set[k]) {
        rep.column_first[k] = a;
        first_set[k] = true;
      }
      rep.column_final[k] = a;
    }
    if (idx + 1 == rows.size()) {
      CompensatedScalar sum;
      for (double x : row) sum.add(x);
      rep.final_row_sum = sum.value();
    }
  }
  rep.bounded_ok = rep.abs_row_sum_max <= bound;
  rep.columns_ok = true;
  for (std::size_t k = 0; k < col_count; ++k) {
    const double first = std::abs(rep.column_first[k]);
    const double final_v = std::abs(rep.column_final[k]);
    if (!(final_v <= std::max(0.1 * first, 1e-12))) {
      rep.columns_ok = false;
      break;
    }
  }
  rep.row_sums_ok = std::abs(rep.final_row_sum - 1.0) <= row_sum_tol;
  rep.overall = rep.bounded_ok && rep.columns_ok && rep.row_sums_ok;
  return rep;
}

}  // namespace detail

/// Regularity evidence for the weighted-mean matrix of `w`, probing rows on a
/// coarse geometric grid up to `depth`.
inline RegularityReport check_regularity(const RieszWeights& w, std::size_t depth,
                                         double bound = 100.0, double row_sum_tol = 1e-6) {
  if (depth == 0) throw ValidationError("check_regularity: depth must be at least 1");
  const std::vector<std::size_t> grid = detail::regularity_probe_grid(depth);
  std::vector<std::vector<double>> rows;
  rows.reserve(grid.size());
  for (std::size_t n : grid) rows.push_back(riesz_row(w, n));
  return detail::regularity_from_rows(grid, rows, bound, row_sum_tol);
}

/// Regularity evidence for explicitly supplied matrix rows (row n may have up
/// to n entries; missing entries are zero).
inline RegularityReport check_regularity(const std::vector<std::vector<double>>& rows,
                                         double bound = 100.0, double row_sum_tol = 1e-6) {
  if (rows.empty()) throw ValidationError("check_regularity: at least one row required");
  std::vector<std::size_t> probe(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) probe[i] = i + 1;
  return detail::regularity_from_rows(probe, rows, bound, row_sum_tol);
}

}  // namespace rieszlab
