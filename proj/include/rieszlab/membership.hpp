#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rieszlab/accumulate.hpp"
#include "rieszlab/core.hpp"
#include "rieszlab/multiplier.hpp"
#include "rieszlab/rng.hpp"
#include "rieszlab/series.hpp"
#include "rieszlab/summability.hpp"
#include "rieszlab/verdict.hpp"
#include "rieszlab/weights.hpp"

namespace rieszlab {

/// The seven multiplier-space memberships one scan reports on. Ordinary is
/// plain convergence of the partial sums; the Cauchy variants accept a stable
/// window without inter-depth agreement; Almost/Cesaro/Riesz judge averaged
/// trajectories; WeakRiesz aggregates functional-wise scalar scans.
enum class SpaceId { Ordinary, Almost, Cesaro, Riesz, OrdinaryCauchy, RieszCauchy, WeakRiesz };

inline const char* space_token(SpaceId s) noexcept {
  switch (s) {
    case SpaceId::Ordinary: return "M";
    case SpaceId::Almost: return "M_f";
    case SpaceId::Cesaro: return "M_C";
    case SpaceId::Riesz: return "M_R";
    case SpaceId::OrdinaryCauchy: return "CM";
    case SpaceId::RieszCauchy: return "CM_R";
    case SpaceId::WeakRiesz: return "M_wR";
  }
  return "M";
}

inline constexpr SpaceId kAllSpaces[] = {
    SpaceId::Ordinary,      SpaceId::Almost,      SpaceId::Cesaro, SpaceId::Riesz,
    SpaceId::OrdinaryCauchy, SpaceId::RieszCauchy, SpaceId::WeakRiesz};

/// Window-mean stability evidence behind the Almost verdict. When the partial
/// sums converge outright the averaged machinery is bypassed (via_direct) and
/// the direct limit stands in for the window means.
struct AlmostEvidence {
  bool member = false;
  bool via_direct = false;
  std::vector<std::size_t> window_lengths;
  std::vector<double> spreads;
  std::optional<FiniteVector> limit;
  double residual = std::numeric_limits<double>::infinity();
};

struct MembershipOptions {
  /// Random unit functionals appended after the coordinate functionals.
  std::size_t extra_functionals = 4;
  std::uint64_t functional_seed = 0x8C2F9D4B1E6A3705ull;
  std::vector<std::size_t> almost_windows = {16, 64, 256};
  bool run_weak = true;
  bool run_almost = true;
  bool run_cesaro = true;
  /// Overrides the sampled battery. Must start with the dim_out coordinate
  /// functionals (the weak limit is reconstructed from them).
  std::optional<std::vector<Functional>> functionals;
};

struct MembershipReport {
  RieszWeights weights;
  TruncationSchedule schedule;
  ConvergenceVerdict ordinary;
  ConvergenceVerdict cesaro;
  ConvergenceVerdict riesz;
  ConvergenceVerdict almost_verdict;
  ConvergenceVerdict weak_riesz;
  AlmostEvidence almost;
  FiniteVector final_partial_sum;
  FiniteVector riesz_mean_final;
  std::size_t functional_count = 0;
  std::vector<VerdictKind> weak_kinds;

  const ConvergenceVerdict& verdict_for(SpaceId s) const noexcept {
    switch (s) {
      case SpaceId::Ordinary:
      case SpaceId::OrdinaryCauchy: return ordinary;
      case SpaceId::Almost: return almost_verdict;
      case SpaceId::Cesaro: return cesaro;
      case SpaceId::Riesz:
      case SpaceId::RieszCauchy: return riesz;
      case SpaceId::WeakRiesz: return weak_riesz;
    }
    return ordinary;
  }

  /// Membership semantics: convergence spaces demand Converged, the Cauchy
  /// spaces also accept Cauchy, Almost follows its window evidence.
  bool member(SpaceId s) const noexcept {
    switch (s) {
      case SpaceId::Ordinary: return ordinary.kind == VerdictKind::Converged;
      case SpaceId::OrdinaryCauchy:
        return ordinary.kind == VerdictKind::Converged || ordinary.kind == VerdictKind::Cauchy;
      case SpaceId::Almost: return almost.member;
      case SpaceId::Cesaro: return cesaro.kind == VerdictKind::Converged;
      case SpaceId::Riesz: return riesz.kind == VerdictKind::Converged;
      case SpaceId::RieszCauchy:
        return riesz.kind == VerdictKind::Converged || riesz.kind == VerdictKind::Cauchy;
      case SpaceId::WeakRiesz: return weak_riesz.kind == VerdictKind::Converged;
    }
    return false;
  }
};

/// Thrown when an operation requires a member multiplier; carries the full
/// membership evidence for the rejected input.
class NonMemberError : public AnalysisError {
public:
  NonMemberError(const std::string& message, MembershipReport report)
      : AnalysisError(message),
        report_(std::make_shared<const MembershipReport>(std::move(report))) {}

  const MembershipReport& report() const noexcept { return *report_; }

private:
  std::shared_ptr<const MembershipReport> report_;
};

/// s_n = sum_{k<=n} T_k x_k, compensated, materialized to n_max.
inline std::vector<FiniteVector> partial_sums(const OperatorSeries& series,
                                              const MultiplierSequence& x, std::size_t n_max) {
  if (n_max == 0) throw ValidationError("partial_sums: n_max must be at least 1");
  if (x.dim() != series.dim_in()) {
    throw ValidationError("partial_sums: multiplier dimension does not match the series domain");
  }
  std::vector<FiniteVector> out;
  out.reserve(n_max);
  CompensatedVector acc(series.dim_out());
  std::vector<double> term, sum;
  for (std::size_t k = 1; k <= n_max; ++k) {
    series.apply_into(k, x.term(k).entries(), term);
    acc.add(term);
    acc.value_into(sum);
    if (!detail::all_finite(sum)) {
      throw AnalysisError("partial_sums: sums left the finite range at depth " + std::to_string(k));
    }
    out.push_back(FiniteVector(sum));
  }
  return out;
}

/// One pass over s_n evaluating every space's evidence. The averaged verdicts
/// are layered: when the partial sums themselves converge, that sharper
/// verdict (and its exact final value) is reported for the averaged spaces
/// too, which realizes the textbook inclusions at finite depth.
inline MembershipReport membership(const OperatorSeries& series, const MultiplierSequence& x,
                                   const RieszWeights& w, const TruncationSchedule& sched,
                                   const MembershipOptions& opts = MembershipOptions{}) {
  if (x.dim() != series.dim_in()) {
    throw ValidationError("membership: multiplier dimension does not match the series domain");
  }
  const std::size_t dim = series.dim_out();
  const std::size_t n_final = sched.final_depth();
  const NormKind range = series.range();

  VerdictTracker direct(dim, range, sched);
  VerdictTracker riesz(dim, range, sched);
  std::optional<VerdictTracker> cesaro;
  if (opts.run_cesaro) cesaro.emplace(dim, range, sched);
  std::optional<AlmostWindowTracker> almost;
  if (opts.run_almost) almost.emplace(dim, opts.almost_windows);

  WeightCursor riesz_cur(w);
  const RieszWeights ones_w = RieszWeights::constant(1.0);
  WeightCursor cesaro_cur(ones_w);
  CompensatedMeanVector riesz_mean(dim);
  CompensatedMeanVector cesaro_mean(dim);

  std::vector<Functional> fs;
  std::vector<VerdictTracker> weak_direct;
  std::vector<VerdictTracker> weak_riesz;
  std::vector<CompensatedMean> weak_mean;
  std::vector<double> weak_last;
  if (opts.run_weak) {
    if (opts.functionals) {
      fs = *opts.functionals;
      if (fs.size() < dim) {
        throw ValidationError("membership: functional battery smaller than the range dimension");
      }
      for (std::size_t i = 0; i < fs.size(); ++i) {
        if (fs[i].dim() != dim) {
          throw ValidationError("membership: functional dimension does not match the range");
        }
        if (i < dim && !fs[i].is_coordinate(i)) {
          throw ValidationError(
              "membership: the battery must start with the coordinate functionals");
        }
      }
    } else {
      fs = sample_functionals(dim, std::max<std::size_t>(1, opts.extra_functionals),
                              opts.functional_seed, range);
    }
    weak_direct.reserve(fs.size());
    weak_riesz.reserve(fs.size());
    weak_mean.assign(fs.size(), CompensatedMean{});
    weak_last.assign(fs.size(), 0.0);
    for (std::size_t i = 0; i < fs.size(); ++i) {
      weak_direct.emplace_back(1, NormKind::sup(), sched);
      weak_riesz.emplace_back(1, NormKind::sup(), sched);
    }
  }

  CompensatedVector acc(dim);
  std::vector<double> term, sum, mu, cmu;
  for (std::size_t n = 1; n <= n_final; ++n) {
    series.apply_into(n, x.term(n).entries(), term);
    acc.add(term);
    acc.value_into(sum);
    if (!detail::all_finite(sum)) {
      throw AnalysisError("membership: partial sums left the finite range at depth " +
                          std::to_string(n));
    }
    direct.feed(sum);
    riesz_cur.advance();
    const double ratio = riesz_cur.ratio();
    riesz_mean.step(ratio, sum);
    riesz_mean.value_into(mu);
    riesz.feed(mu);
    if (cesaro) {
      cesaro_cur.advance();
      cesaro_mean.step(cesaro_cur.ratio(), sum);
      cesaro_mean.value_into(cmu);
      cesaro->feed(cmu);
    }
    if (almost) almost->feed(sum);
    for (std::size_t i = 0; i < fs.size(); ++i) {
      // Coordinate functionals shortcut to the coordinate itself; the plain
      // dot product would produce the same bits at O(dim) cost.
      const double fv = i < dim ? sum[i] : fs[i](sum);
      weak_last[i] = fv;
      weak_direct[i].feed(fv);
      weak_mean[i].step(ratio, fv);
      weak_riesz[i].feed(weak_mean[i].value());
    }
  }

  const ConvergenceVerdict direct_v = direct.verdict();
  const FiniteVector direct_final = direct.last_value();

  auto layered = [&](VerdictTracker& averaged) {
    SequenceScan scan{direct_v, averaged.verdict(), direct_final, averaged.last_value()};
    return layered_verdict(scan);
  };

  ConvergenceVerdict riesz_v = layered(riesz);
  ConvergenceVerdict cesaro_v;
  if (cesaro) {
    cesaro_v = layered(*cesaro);
  } else {
    cesaro_v.kind = VerdictKind::Inconclusive;
    cesaro_v.depth_used = n_final;
  }

  AlmostEvidence ev;
  ConvergenceVerdict almost_v;
  if (almost) {
    for (std::size_t j = 0; j < almost->window_count(); ++j) {
      ev.window_lengths.push_back(almost->window_length(j));
      ev.spreads.push_back(almost->spread(j));
    }
    if (direct_v.kind == VerdictKind::Converged) {
      ev.member = true;
      ev.via_direct = true;
      ev.residual = direct_v.residual;
      ev.limit = direct_v.limit;
    } else {
      ev.residual = ev.spreads.empty() ? std::numeric_limits<double>::infinity()
                                       : ev.spreads.back();
      ev.member = ev.residual <= sched.tol;
      if (ev.member) ev.limit = almost->final_mean();
    }
    almost_v.kind = ev.member ? VerdictKind::Converged : VerdictKind::Inconclusive;
    almost_v.residual = ev.residual;
    almost_v.limit = ev.limit;
    almost_v.depth_used = n_final;
    almost_v.route = ev.via_direct ? EstimateRoute::Direct : EstimateRoute::Averaged;
  } else {
    almost_v.kind = VerdictKind::Inconclusive;
    almost_v.depth_used = n_final;
  }

  ConvergenceVerdict weak_v;
  std::vector<VerdictKind> weak_kinds;
  if (opts.run_weak) {
    weak_v.kind = VerdictKind::Converged;
    weak_v.depth_used = n_final;
    weak_v.route = EstimateRoute::Direct;
    std::vector<double> weak_limit(dim, 0.0);
    bool any_averaged = false;
    for (std::size_t i = 0; i < fs.size(); ++i) {
      const ConvergenceVerdict dv = weak_direct[i].verdict();
      ConvergenceVerdict pick;
      double pick_last;
      if (dv.kind == VerdictKind::Converged) {
        pick = dv;
        pick.route = EstimateRoute::Direct;
        pick_last = weak_last[i];
      } else {
        pick = weak_riesz[i].verdict();
        pick.route = EstimateRoute::Averaged;
        pick_last = weak_mean[i].value();
        any_averaged = true;
      }
      weak_kinds.push_back(pick.kind);
      if (severity(pick.kind) > severity(weak_v.kind)) weak_v.kind = pick.kind;
      weak_v.residual = std::max(weak_v.residual, pick.residual);
      weak_v.drift = std::max(weak_v.drift, pick.drift);
      if (i < dim) weak_limit[i] = pick_last;
    }
    if (any_averaged) weak_v.route = EstimateRoute::Averaged;
    if (weak_v.kind == VerdictKind::Converged) weak_v.limit = FiniteVector(weak_limit);
  } else {
    weak_v.kind = VerdictKind::Inconclusive;
    weak_v.depth_used = n_final;
  }

  return MembershipReport{w,
                          sched,
                          direct_v,
                          cesaro_v,
                          riesz_v,
                          almost_v,
                          weak_v,
                          std::move(ev),
                          direct_final,
                          riesz.last_value(),
                          fs.size(),
                          std::move(weak_kinds)};
}

namespace detail {

/// Candidate directions for aligned greedy trials: the normalized all-ones
/// vector first (ties resolve to it), its negation, then signed coordinate
/// vectors. Every candidate has unit norm in `kind`.
inline std::vector<std::vector<double>> aligned_directions(std::size_t dim, NormKind kind) {
  std::vector<std::vector<double>> dict;
  std::vector<double> ones(dim, 1.0);
  const double nrm = norm_of(ones, kind);
  for (auto& v : ones) v /= nrm;
  dict.push_back(ones);
  std::vector<double> neg = ones;
  for (auto& v : neg) v = -v;
  dict.push_back(std::move(neg));
  for (std::size_t i = 0; i < dim; ++i) {
    std::vector<double> e(dim, 0.0);
    e[i] = 1.0;
    dict.push_back(e);
    e[i] = -1.0;
    dict.push_back(std::move(e));
  }
  return dict;
}

}  // namespace detail

/// Lower/upper bracket for the uniform bound H on ||sum_{k<=n} T_k v_k|| over
/// unit choices v_k. Scalar series admit the exact closed form (align every
/// sign); operator series get a certified lower bound from a greedy aligned
/// trial plus seeded unit-vector trials, and the sum of exact term norms as
/// an upper bracket when available.
struct HBoundResult {
  double value = 0.0;
  bool exact = false;
  std::optional<double> upper;
  std::size_t depth = 0;
  std::size_t samples = 0;
  std::size_t best_trial = 0;
  std::size_t best_prefix = 0;
};

inline HBoundResult h_bound(const OperatorSeries& series, std::size_t depth,
                            std::size_t sphere_samples, std::uint64_t seed) {
  if (depth == 0) throw ValidationError("h_bound: depth must be at least 1");
  HBoundResult out;
  out.depth = depth;
  out.samples = sphere_samples;

  if (series.kind() == OperatorSeries::Kind::Scalar) {
    double s = 0.0;
    std::size_t best_n = 0;
    double best = 0.0;
    for (std::size_t k = 1; k <= depth; ++k) {
      s += std::abs(series.rule().value(k));
      if (s > best) {
        best = s;
        best_n = k;
      }
    }
    out.value = best;
    out.exact = true;
    out.upper = best;
    out.best_prefix = best_n;
    return out;
  }

  const std::size_t din = series.dim_in();
  const std::size_t dout = series.dim_out();
  const NormKind domain = series.domain();
  const NormKind range = series.range();

  const std::vector<std::vector<double>> dict = detail::aligned_directions(din, domain);

  std::vector<double> s(dout, 0.0), term, cand(dout);
  auto run_greedy = [&]() {
    std::fill(s.begin(), s.end(), 0.0);
    for (std::size_t k = 1; k <= depth; ++k) {
      double best_norm = -1.0;
      std::size_t best_c = 0;
      for (std::size_t c = 0; c < dict.size(); ++c) {
        series.apply_into(k, dict[c], term);
        for (std::size_t j = 0; j < dout; ++j) cand[j] = s[j] + term[j];
        const double nn = norm_of(cand, range);
        if (nn > best_norm) {
          best_norm = nn;
          best_c = c;
        }
      }
      series.apply_into(k, dict[best_c], term);
      for (std::size_t j = 0; j < dout; ++j) s[j] += term[j];
      const double cur = norm_of(s, range);
      if (cur > out.value) {
        out.value = cur;
        out.best_trial = 0;
        out.best_prefix = k;
      }
    }
  };
  run_greedy();

  for (std::size_t trial = 1; trial <= sphere_samples; ++trial) {
    SplitMix64 rng(detail::mix_seed(seed, trial));
    std::fill(s.begin(), s.end(), 0.0);
    for (std::size_t k = 1; k <= depth; ++k) {
      const std::vector<double> v = detail::unit_vector(din, domain, rng);
      series.apply_into(k, v, term);
      for (std::size_t j = 0; j < dout; ++j) s[j] += term[j];
      const double cur = norm_of(s, range);
      if (cur > out.value) {
        out.value = cur;
        out.best_trial = trial;
        out.best_prefix = k;
      }
    }
  }

  CompensatedScalar upper_sum;
  bool all_exact = true;
  for (std::size_t k = 1; k <= depth && all_exact; ++k) {
    const OperatorNormEstimate tn = series.term_norm(k);
    if (!tn.exact) all_exact = false;
    upper_sum.add(tn.value);
  }
  if (all_exact) out.upper = upper_sum.value();
  return out;
}

/// One probe trial's outcome under the plain partial-sum verdict.
struct ProbeTrial {
  std::size_t index = 0;
  VerdictKind kind = VerdictKind::Inconclusive;
  double residual = 0.0;
};

struct ProbeReport {
  SequenceClass probed = SequenceClass::Bounded;
  std::size_t trials = 0;
  std::size_t depth = 0;
  std::size_t converged = 0;
  std::size_t cauchy = 0;
  std::size_t diverging = 0;
  std::size_t inconclusive = 0;
  ProbeTrial worst;
  std::vector<ProbeTrial> records;

  bool all_converged() const noexcept { return converged == trials; }
};

/// Draws `trials` multipliers from the named class and scans the plain
/// partial sums of each (the probe carries no weights, so the ordinary
/// verdict is the honest reading). The bounded class always injects the
/// all-ones multiplier as trial 0; trial i derives its seed as seed + i.
inline ProbeReport multiplier_probe(const OperatorSeries& series, SequenceClass klass,
                                    std::size_t trials, std::uint64_t seed,
                                    const TruncationSchedule& sched) {
  if (trials == 0) throw ValidationError("multiplier_probe: trials must be at least 1");
  if (klass == SequenceClass::Phi) {
    throw ValidationError("multiplier_probe: probes draw from the c0 or linf classes");
  }
  ProbeReport rep;
  rep.probed = klass;
  rep.trials = trials;
  rep.depth = sched.final_depth();
  rep.records.reserve(trials);
  const std::size_t din = series.dim_in();
  const NormKind domain = series.domain();
  for (std::size_t i = 0; i < trials; ++i) {
    MultiplierSequence x =
        (klass == SequenceClass::Null)
            ? MultiplierSequence::seeded_null(seed + i, din, domain)
            : (i == 0 ? MultiplierSequence::ones(din)
                      : MultiplierSequence::seeded_bounded(seed + i, din, domain));
    VerdictTracker direct(series.dim_out(), series.range(), sched);
    CompensatedVector acc(series.dim_out());
    std::vector<double> term, sum;
    for (std::size_t k = 1; k <= rep.depth; ++k) {
      series.apply_into(k, x.term(k).entries(), term);
      acc.add(term);
      acc.value_into(sum);
      if (!detail::all_finite(sum)) {
        throw AnalysisError("multiplier_probe: sums left the finite range at depth " +
                            std::to_string(k));
      }
      direct.feed(sum);
    }
    const ConvergenceVerdict v = direct.verdict();
    ProbeTrial t{i, v.kind, v.residual};
    rep.records.push_back(t);
    switch (v.kind) {
      case VerdictKind::Converged: ++rep.converged; break;
      case VerdictKind::Cauchy: ++rep.cauchy; break;
      case VerdictKind::Diverging: ++rep.diverging; break;
      case VerdictKind::Inconclusive: ++rep.inconclusive; break;
    }
    if (rep.records.size() == 1 || severity(t.kind) > severity(rep.worst.kind)) rep.worst = t;
  }
  return rep;
}

/// Ordered verdict tuple over the inclusion ladder with a monotonicity check:
/// membership earlier in the ladder must imply membership later. A violation
/// is a counterexample candidate; the four verdicts are the evidence dump.
struct ChainReport {
  bool in_ordinary = false;
  bool in_almost = false;
  bool in_cesaro = false;
  bool in_riesz = false;
  bool consistent = true;
  ConvergenceVerdict ordinary;
  ConvergenceVerdict almost;
  ConvergenceVerdict cesaro;
  ConvergenceVerdict riesz;
};

inline ChainReport inclusion_chain_probe(const OperatorSeries& series,
                                         const MultiplierSequence& x, const RieszWeights& w,
                                         const TruncationSchedule& sched) {
  MembershipOptions opts;
  opts.run_weak = false;
  const MembershipReport rep = membership(series, x, w, sched, opts);
  ChainReport out;
  out.in_ordinary = rep.member(SpaceId::Ordinary);
  out.in_almost = rep.member(SpaceId::Almost);
  out.in_cesaro = rep.member(SpaceId::Cesaro);
  out.in_riesz = rep.member(SpaceId::Riesz);
  out.ordinary = rep.ordinary;
  out.almost = rep.almost_verdict;
  out.cesaro = rep.cesaro;
  out.riesz = rep.riesz;
  const bool chain[4] = {out.in_ordinary, out.in_almost, out.in_cesaro, out.in_riesz};
  for (std::size_t i = 0; i < 4 && out.consistent; ++i) {
    for (std::size_t j = i + 1; j < 4; ++j) {
      if (chain[i] && !chain[j]) {
        out.consistent = false;
        break;
      }
    }
  }
  return out;
}

}  // namespace rieszlab
