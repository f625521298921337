#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "rieszlab/config.hpp"
#include "rieszlab/core.hpp"
#include "rieszlab/membership.hpp"
#include "rieszlab/multiplier.hpp"
#include "rieszlab/orlicz.hpp"
#include "rieszlab/series.hpp"
#include "rieszlab/summing.hpp"
#include "rieszlab/verdict.hpp"
#include "rieszlab/weights.hpp"

namespace rieszlab {

/// One flat line of an experiment report. The numeric columns carry the
/// analysis-specific payload; README documents the per-analysis vocabulary.
struct ReportRow {
  std::string scenario;
  std::string analysis;
  std::string metric;
  std::string verdict;
  double limit_norm = std::numeric_limits<double>::quiet_NaN();
  double residual = std::numeric_limits<double>::quiet_NaN();
  std::size_t depth = 0;
  std::uint64_t seed = 0;
};

/// Frozen: golden-file tests depend on this exact header.
inline constexpr const char* kReportHeader =
    "scenario,analysis,metric,verdict,limit_norm,residual,depth,seed";

namespace detail {

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

/// Non-finite doubles are not valid JSON numbers; encode them as strings.
inline nlohmann::ordered_json json_number(double v) {
  if (std::isfinite(v)) return v;
  return format_g17(v);
}

}  // namespace detail

inline std::string render_csv(const std::vector<ReportRow>& rows) {
  std::string out = kReportHeader;
  out += '\n';
  for (const ReportRow& r : rows) {
    out += detail::csv_field(r.scenario);
    out += ',';
    out += detail::csv_field(r.analysis);
    out += ',';
    out += detail::csv_field(r.metric);
    out += ',';
    out += detail::csv_field(r.verdict);
    out += ',';
    out += detail::format_g17(r.limit_norm);
    out += ',';
    out += detail::format_g17(r.residual);
    out += ',';
    out += std::to_string(r.depth);
    out += ',';
    out += std::to_string(r.seed);
    out += '\n';
  }
  return out;
}

/// Everything one scenario produced: report rows, structured detail for the
/// summary line, and the error messages of analyses that threw. Errors do
/// not stop the remaining analyses.
struct ScenarioOutcome {
  std::string name;
  std::uint64_t seed = 0;
  std::vector<ReportRow> rows;
  std::vector<std::string> errors;
  std::vector<std::string> analyses;
  nlohmann::ordered_json detail = nlohmann::ordered_json::object();
};

/// Runs one analysis against already-realized inputs, appending its report
/// rows and detail record. Failures propagate as exceptions: run_scenario
/// turns them into error rows, the CLI maps them onto exit codes.
inline void run_analysis(const ScenarioConfig& sc, Analysis a, const OperatorSeries& series,
                         const RieszWeights& weights, const MultiplierSequence& x,
                         const TruncationSchedule& sched, std::vector<ReportRow>& rows,
                         nlohmann::ordered_json& detail_out) {
  const NormKind range = series.range();
  const std::uint64_t battery_seed = MembershipOptions{}.functional_seed;
  const std::string aname = to_string(a);

  auto push = [&](const std::string& metric, const std::string& verdict, double limit_norm,
                  double residual, std::size_t depth) {
    rows.push_back(
        ReportRow{sc.name, aname, metric, verdict, limit_norm, residual, depth, sc.seed});
  };

  switch (a) {
    case Analysis::Membership: {
      MembershipOptions opts;
      opts.extra_functionals = sc.functionals;
      const MembershipReport rep = membership(series, x, weights, sched, opts);
      nlohmann::ordered_json spaces = nlohmann::ordered_json::object();
      for (SpaceId s : kAllSpaces) {
        const ConvergenceVerdict& v = rep.verdict_for(s);
        push(space_token(s), to_string(v.kind), v.limit_norm(range), v.residual, v.depth_used);
        spaces[space_token(s)] = rep.member(s);
      }
      detail_out["membership"] = std::move(spaces);
      break;
    }
    case Analysis::HBound: {
      const HBoundResult hb = h_bound(series, sc.hbound_depth, sc.hbound_samples, sc.seed);
      push("h_bound", hb.exact ? "Exact" : "Lower", hb.value,
           std::numeric_limits<double>::quiet_NaN(), hb.depth);
      if (hb.upper) {
        push("h_upper", "Upper", *hb.upper, std::numeric_limits<double>::quiet_NaN(), hb.depth);
      }
      detail_out["h_bound"] = {
          {"value", detail::json_number(hb.value)},
          {"exact", hb.exact},
          {"upper", hb.upper ? detail::json_number(*hb.upper) : nlohmann::ordered_json()}};
      break;
    }
    case Analysis::Summing: {
      const SummingResult sr = summing_apply(series, x, weights, sched);
      push("r_sum", to_string(sr.kind), sr.value.norm(range), sr.residual, sr.depth_used);
      const double est = summing_norm_estimate(series, weights, sc.norm_trials, sc.seed, sched);
      push("norm_estimate", "Lower", est, std::numeric_limits<double>::quiet_NaN(),
           sched.final_depth());
      const ContinuityWitness cw = continuity_witness(series, x, weights, sched);
      push("continuity", cw.holds ? (cw.h_is_upper ? "Holds" : "HoldsLower") : "Violated",
           cw.lhs, cw.rhs, sched.final_depth());
      detail_out["summing"] = {{"value_norm", detail::json_number(sr.value.norm(range))},
                               {"residual", detail::json_number(sr.residual)},
                               {"route", to_string(sr.route)},
                               {"norm_estimate", detail::json_number(est)},
                               {"continuity_holds", cw.holds}};
      break;
    }
    case Analysis::Tail: {
      const TailProfile tp =
          tail_decay_profile(series, weights, sc.tail_depths, sc.tail_trials, sc.seed);
      for (std::size_t i = 0; i < tp.depths.size(); ++i) {
        push("tail", tp.decaying ? "Decaying" : "Flat", tp.tail_norms[i],
             std::numeric_limits<double>::quiet_NaN(), tp.depths[i]);
      }
      nlohmann::ordered_json norms = nlohmann::ordered_json::array();
      for (double t : tp.tail_norms) norms.push_back(detail::json_number(t));
      detail_out["tail"] = {{"decaying", tp.decaying},
                            {"tail_norms", std::move(norms)},
                            {"reference_depth", tp.reference_depth}};
      break;
    }
    case Analysis::Gap: {
      const std::vector<Functional> fs = sample_functionals(
          series.dim_out(), std::max<std::size_t>(1, sc.functionals), battery_seed, range);
      const GapReport gr = weak_strong_gap(series, x, weights, fs, sched);
      push("strong", to_string(gr.strong_kind), std::numeric_limits<double>::quiet_NaN(),
           gr.strong_residual, sched.final_depth());
      push("weak", to_string(gr.weak_kind), std::numeric_limits<double>::quiet_NaN(),
           gr.weak_residual, sched.final_depth());
      const bool both =
          gr.strong_kind == VerdictKind::Converged && gr.weak_kind == VerdictKind::Converged;
      push("gap", both ? (gr.gap <= 1e-10 ? "Agree" : "Disagree") : "Undecided", gr.limit_gap,
           gr.gap, sched.final_depth());
      detail_out["gap"] = {{"strong_residual", detail::json_number(gr.strong_residual)},
                           {"weak_residual", detail::json_number(gr.weak_residual)},
                           {"gap", detail::json_number(gr.gap)},
                           {"limit_gap", detail::json_number(gr.limit_gap)}};
      break;
    }
    case Analysis::Antosik: {
      const IntervalPartition part = IntervalPartition::pairs(sc.antosik_blocks);
      const std::vector<Functional> fs = sample_functionals(
          series.dim_out(), std::max<std::size_t>(1, sc.functionals), battery_seed, range);
      const TestMatrix tm = antosik_matrix(series, x, part, fs, weights, sc.antosik_tol);
      push("column_decay", tm.column_decay_ok ? "Pass" : "Fail", tm.row_sup.back(),
           std::numeric_limits<double>::quiet_NaN(), tm.row_sup.size());
      push("diagonal", tm.diagonal_ok ? "Pass" : "Fail", std::abs(tm.diagonal.back()),
           std::numeric_limits<double>::quiet_NaN(), tm.diagonal.size());
      push("diagonal_riesz", to_string(tm.diagonal_riesz.kind),
           tm.diagonal_riesz.limit_norm(range), tm.diagonal_riesz.residual,
           tm.diagonal_riesz.depth_used);
      detail_out["antosik"] = {{"consistent", tm.consistent},
                               {"column_decay_ok", tm.column_decay_ok},
                               {"diagonal_ok", tm.diagonal_ok},
                               {"decay_constant", detail::json_number(tm.decay_constant)}};
      break;
    }
    case Analysis::Chain: {
      const ChainReport cr = inclusion_chain_probe(series, x, weights, sched);
      push("chain", cr.consistent ? "Consistent" : "Violation",
           std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN(),
           sched.final_depth());
      detail_out["chain"] = {{"M", cr.in_ordinary},
                             {"M_f", cr.in_almost},
                             {"M_C", cr.in_cesaro},
                             {"M_R", cr.in_riesz},
                             {"consistent", cr.consistent}};
      break;
    }
    case Analysis::Probe: {
      const SequenceClass klass =
          sc.probe_class == "c0" ? SequenceClass::Null : SequenceClass::Bounded;
      const ProbeReport pr = multiplier_probe(series, klass, sc.probe_trials, sc.seed, sched);
      push(std::string("probe_") + sc.probe_class, to_string(pr.worst.kind),
           std::numeric_limits<double>::quiet_NaN(), pr.worst.residual, pr.depth);
      detail_out["probe"] = {{"class", sc.probe_class},
                             {"trials", pr.trials},
                             {"converged", pr.converged},
                             {"cauchy", pr.cauchy},
                             {"diverging", pr.diverging},
                             {"inconclusive", pr.inconclusive}};
      break;
    }
  }
}

inline ScenarioOutcome run_scenario(const ScenarioConfig& sc) {
  ScenarioOutcome out;
  out.name = sc.name;
  out.seed = sc.seed;
  for (Analysis a : sc.analyses) out.analyses.push_back(to_string(a));

  auto error_row = [&](const std::string& analysis, const std::string& message) {
    out.errors.push_back(analysis + ": " + message);
    ReportRow r;
    r.scenario = sc.name;
    r.analysis = analysis;
    r.metric = "error";
    r.verdict = "Error";
    r.seed = sc.seed;
    out.rows.push_back(std::move(r));
  };

  std::optional<OperatorSeries> series;
  std::optional<RieszWeights> weights;
  std::optional<MultiplierSequence> x;
  std::optional<TruncationSchedule> sched;
  try {
    series.emplace(sc.series.realize());
    weights.emplace(sc.weights.realize());
    sched.emplace(sc.schedule());
    x.emplace(sc.multiplier.realize(series->dim_in(), sc.seed, series->domain()));
  } catch (const std::exception& e) {
    error_row("setup", e.what());
    return out;
  }
  for (Analysis a : sc.analyses) {
    try {
      run_analysis(sc, a, *series, *weights, *x, *sched, out.rows, out.detail);
    } catch (const std::exception& e) {
      error_row(to_string(a), e.what());
    }
  }
  return out;
}

struct RunSummary {
  std::size_t scenarios = 0;
  std::size_t errored = 0;
  std::size_t rows = 0;

  bool ok() const noexcept { return errored == 0; }
};

namespace detail {

inline void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path.string());
  out << content;
  out.flush();
  if (!out) throw IoError("write failed: " + path.string());
}

/// Scenario names become file names; refuse anything that could escape the
/// output directory.
inline void check_file_safe_name(const std::string& name) {
  if (name.empty() || name.front() == '.' ||
      name.find_first_of("/\\\0") != std::string::npos) {
    throw ValidationError("scenario name is not usable as a file name: '" + name + "'");
  }
}

}  // namespace detail

/// Runs every scenario in config order, writing `<name>.csv` per scenario
/// and a `summary.jsonl` with one record per scenario. Analysis errors are
/// recorded, not fatal; I/O failures throw.
inline RunSummary run_scenarios(const std::vector<ScenarioConfig>& cfgs,
                                const std::string& out_dir) {
  for (std::size_t i = 0; i < cfgs.size(); ++i) {
    detail::check_file_safe_name(cfgs[i].name);
    for (std::size_t j = i + 1; j < cfgs.size(); ++j) {
      if (cfgs[i].name == cfgs[j].name) {
        throw ValidationError("duplicate scenario name '" + cfgs[i].name + "'");
      }
    }
  }
  const std::filesystem::path dir(out_dir);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory: " + out_dir + " (" + ec.message() + ")");

  RunSummary summary;
  std::string jsonl;
  for (const ScenarioConfig& sc : cfgs) {
    const ScenarioOutcome outcome = run_scenario(sc);
    detail::write_file(dir / (sc.name + ".csv"), render_csv(outcome.rows));
    nlohmann::ordered_json rec;
    rec["scenario"] = outcome.name;
    rec["seed"] = outcome.seed;
    rec["status"] = outcome.errors.empty() ? "ok" : "error";
    rec["rows"] = outcome.rows.size();
    rec["analyses"] = outcome.analyses;
    rec["errors"] = outcome.errors;
    rec["detail"] = outcome.detail;
    jsonl += rec.dump();
    jsonl += '\n';
    ++summary.scenarios;
    summary.rows += outcome.rows.size();
    if (!outcome.errors.empty()) ++summary.errored;
  }
  detail::write_file(dir / "summary.jsonl", jsonl);
  return summary;
}

}  // namespace rieszlab
