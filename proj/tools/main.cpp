// Command line front end. Every analysis subcommand maps onto one library
// analysis and prints the same row vocabulary the batch runner writes to
// disk, so ad-hoc runs and report files stay comparable.
//
// Exit codes: 0 success, 1 validation or parse failure, 2 analysis failure,
// 3 I/O failure.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "CLI11.hpp"
#include "rieszlab/rieszlab.hpp"

using namespace rieszlab;

namespace {

struct GlobalFlags {
  std::optional<double> tol;
  std::optional<std::uint64_t> seed;
  std::optional<std::vector<std::size_t>> depths;
  std::string format = "csv";
};

struct AnalysisArgs {
  std::string series;
  std::string multiplier = "ones";
  std::string weights = "constant:1";
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void apply_overrides(ScenarioConfig& sc, const GlobalFlags& g) {
  if (g.tol) sc.tol = *g.tol;
  if (g.seed) sc.seed = *g.seed;
  if (g.depths) sc.depths = *g.depths;
  (void)sc.schedule();  // surface bad flag combinations as validation errors
}

nlohmann::ordered_json row_json(const ReportRow& r) {
  return nlohmann::ordered_json{{"scenario", r.scenario},
                                {"analysis", r.analysis},
                                {"metric", r.metric},
                                {"verdict", r.verdict},
                                {"limit_norm", detail::json_number(r.limit_norm)},
                                {"residual", detail::json_number(r.residual)},
                                {"depth", r.depth},
                                {"seed", r.seed}};
}

void print_rows(const std::vector<ReportRow>& rows, const nlohmann::ordered_json& extra,
                const std::string& format) {
  if (format == "csv") {
    std::fputs(render_csv(rows).c_str(), stdout);
    return;
  }
  for (const ReportRow& r : rows) std::printf("%s\n", row_json(r).dump().c_str());
  if (!extra.empty()) {
    std::printf("%s\n", nlohmann::ordered_json{{"detail", extra}}.dump().c_str());
  }
}

int run_single(ScenarioConfig sc, Analysis a, const GlobalFlags& g) {
  apply_overrides(sc, g);
  sc.analyses = {a};
  const OperatorSeries series = sc.series.realize();
  const RieszWeights weights = sc.weights.realize();
  const TruncationSchedule sched = sc.schedule();
  const MultiplierSequence x = sc.multiplier.realize(series.dim_in(), sc.seed, series.domain());
  std::vector<ReportRow> rows;
  nlohmann::ordered_json detail_out = nlohmann::ordered_json::object();
  run_analysis(sc, a, series, weights, x, sched, rows, detail_out);
  print_rows(rows, detail_out, g.format);
  return 0;
}

int do_run(const std::string& config_path, const std::string& out_dir, const GlobalFlags& g) {
  std::vector<ScenarioConfig> cfgs =
      config_path.empty() ? builtin_suite() : parse_config(slurp(config_path));
  for (ScenarioConfig& sc : cfgs) apply_overrides(sc, g);
  const RunSummary sum = run_scenarios(cfgs, out_dir);
  std::printf("%zu scenario(s), %zu errored, %zu report row(s) -> %s\n", sum.scenarios,
              sum.errored, sum.rows, out_dir.c_str());
  if (!sum.ok()) {
    std::fprintf(stderr, "run: some scenarios recorded errors; see %s/summary.jsonl\n",
                 out_dir.c_str());
    return 2;
  }
  return 0;
}

int do_transform(const std::string& weights_str, const std::string& seq_str, std::size_t depth,
                 std::size_t dim, const GlobalFlags& g) {
  const RieszWeights w = WeightsSpec::parse(weights_str).realize();
  const std::uint64_t seed = g.seed.value_or(ScenarioConfig{}.seed);
  MultiplierSequence seq = MultiplierSpec::parse(seq_str).realize(dim, seed, NormKind::sup());
  auto gen = [&seq](std::size_t k) { return seq.term(k); };
  const std::vector<FiniteVector> means = riesz_transform(w, gen, depth);
  if (g.format == "csv") {
    std::string header = "n";
    for (std::size_t j = 0; j < dim; ++j) header += ",m" + std::to_string(j);
    std::printf("%s\n", header.c_str());
    for (std::size_t n = 0; n < means.size(); ++n) {
      std::string line = std::to_string(n + 1);
      for (std::size_t j = 0; j < dim; ++j) line += "," + detail::format_g17(means[n][j]);
      std::printf("%s\n", line.c_str());
    }
    return 0;
  }
  for (std::size_t n = 0; n < means.size(); ++n) {
    nlohmann::ordered_json mean = nlohmann::ordered_json::array();
    for (std::size_t j = 0; j < dim; ++j) mean.push_back(detail::json_number(means[n][j]));
    nlohmann::ordered_json rec{{"n", n + 1}, {"mean", std::move(mean)}};
    std::printf("%s\n", rec.dump().c_str());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"summability workbench for operator-valued series"};
  app.fallthrough();
  app.require_subcommand(0, 1);

  GlobalFlags g;
  double tol = 0.0;
  std::uint64_t seed = 0;
  std::string depths_str;
  auto* tol_opt = app.add_option("--tol", tol, "verdict tolerance override");
  auto* seed_opt =
      app.add_option("--seed", seed, "seed override for seeded multipliers and probes");
  auto* depths_opt = app.add_option(
      "--depths", depths_str, "probe depth ladder, comma separated (e.g. 1000,10000,100000)");
  app.add_option("--format", g.format, "output format")
      ->check(CLI::IsMember({"csv", "jsonl"}))
      ->capture_default_str();

  auto* cmd_run = app.add_subcommand(
      "run", "run scenarios from a config file (default: built-in suite) and write reports");
  std::string run_config_pos;
  std::string run_config_opt;
  std::string run_out = "reports";
  cmd_run->add_option("config_file", run_config_pos, "scenario config file");
  cmd_run->add_option("--config", run_config_opt, "scenario config file (same as positional)");
  cmd_run->add_option("--out", run_out, "report output directory")->capture_default_str();

  auto* cmd_transform =
      app.add_subcommand("transform", "print the weighted means of a sequence");
  std::string tr_weights = "constant:1";
  std::string tr_seq;
  std::size_t tr_depth = 1000;
  std::size_t tr_dim = 1;
  cmd_transform->add_option("--weights", tr_weights, "weight spec")->capture_default_str();
  cmd_transform->add_option("--seq", tr_seq, "sequence spec (multiplier grammar)")->required();
  cmd_transform->add_option("--depth", tr_depth, "number of means to print")
      ->check(CLI::PositiveNumber);
  cmd_transform->add_option("--dim", tr_dim, "sequence dimension")->check(CLI::PositiveNumber);

  auto add_common = [](CLI::App* cmd, AnalysisArgs& args) {
    cmd->add_option("--series", args.series, "series spec")->required();
    cmd->add_option("--multiplier", args.multiplier, "multiplier spec")->capture_default_str();
    cmd->add_option("--weights", args.weights, "weight spec")->capture_default_str();
  };

  AnalysisArgs cl_args;
  auto* cmd_classify =
      app.add_subcommand("classify", "membership verdicts across all convergence spaces");
  add_common(cmd_classify, cl_args);

  auto* cmd_probe = app.add_subcommand("probe", "scan seeded multipliers from a named class");
  std::string pr_series;
  std::string pr_class = "linf";
  std::size_t pr_trials = ScenarioConfig{}.probe_trials;
  cmd_probe->add_option("--series", pr_series, "series spec")->required();
  cmd_probe->add_option("--class", pr_class, "multiplier class")
      ->check(CLI::IsMember({"c0", "linf"}))
      ->capture_default_str();
  cmd_probe->add_option("--trials", pr_trials, "number of seeded trials")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  AnalysisArgs su_args;
  auto* cmd_summing =
      app.add_subcommand("summing", "apply the summing map and its continuity check");
  add_common(cmd_summing, su_args);

  AnalysisArgs gp_args;
  std::size_t gp_functionals = ScenarioConfig{}.functionals;
  auto* cmd_gap = app.add_subcommand("gap", "weak vs strong residual comparison");
  add_common(cmd_gap, gp_args);
  cmd_gap->add_option("--functionals", gp_functionals,
                      "extra functionals beyond the coordinate battery")
      ->capture_default_str();

  AnalysisArgs an_args;
  std::size_t an_blocks = ScenarioConfig{}.antosik_blocks;
  double an_tol = ScenarioConfig{}.antosik_tol;
  std::size_t an_functionals = ScenarioConfig{}.functionals;
  auto* cmd_antosik = app.add_subcommand("antosik", "paired-block test matrix diagnostics");
  add_common(cmd_antosik, an_args);
  cmd_antosik->add_option("--blocks", an_blocks, "number of paired blocks")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd_antosik->add_option("--matrix-tol", an_tol, "column decay tolerance")
      ->capture_default_str();
  cmd_antosik
      ->add_option("--functionals", an_functionals,
                   "extra functionals beyond the coordinate battery")
      ->capture_default_str();

  AnalysisArgs ch_args;
  auto* cmd_chain = app.add_subcommand("chain", "inclusion chain consistency probe");
  add_common(cmd_chain, ch_args);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  if (tol_opt->count() > 0) g.tol = tol;
  if (seed_opt->count() > 0) g.seed = seed;

  try {
    if (depths_opt->count() > 0) g.depths = detail::parse_size_list(depths_str);

    auto base = [](const AnalysisArgs& args) {
      ScenarioConfig sc;
      sc.name = "cli";
      sc.series = SeriesSpec::parse(args.series);
      sc.multiplier = MultiplierSpec::parse(args.multiplier);
      sc.weights = WeightsSpec::parse(args.weights);
      return sc;
    };

    if (cmd_run->parsed()) {
      if (!run_config_pos.empty() && !run_config_opt.empty() &&
          run_config_pos != run_config_opt) {
        throw ValidationError("run: config file given twice with different values");
      }
      return do_run(run_config_opt.empty() ? run_config_pos : run_config_opt, run_out, g);
    }
    if (cmd_transform->parsed()) return do_transform(tr_weights, tr_seq, tr_depth, tr_dim, g);
    if (cmd_classify->parsed()) return run_single(base(cl_args), Analysis::Membership, g);
    if (cmd_probe->parsed()) {
      AnalysisArgs args;
      args.series = pr_series;
      ScenarioConfig sc = base(args);
      sc.probe_class = pr_class;
      sc.probe_trials = pr_trials;
      return run_single(sc, Analysis::Probe, g);
    }
    if (cmd_summing->parsed()) return run_single(base(su_args), Analysis::Summing, g);
    if (cmd_gap->parsed()) {
      ScenarioConfig sc = base(gp_args);
      sc.functionals = gp_functionals;
      return run_single(sc, Analysis::Gap, g);
    }
    if (cmd_antosik->parsed()) {
      ScenarioConfig sc = base(an_args);
      sc.antosik_blocks = an_blocks;
      sc.antosik_tol = an_tol;
      sc.functionals = an_functionals;
      return run_single(sc, Analysis::Antosik, g);
    }
    if (cmd_chain->parsed()) return run_single(base(ch_args), Analysis::Chain, g);

    std::fputs(app.help().c_str(), stdout);
    return 0;
  } catch (const ValidationError& e) {
    std::fprintf(stderr, "validation error: %s\n", e.what());
    return 1;
  } catch (const IoError& e) {
    std::fprintf(stderr, "io error: %s\n", e.what());
    return 3;
  } catch (const AnalysisError& e) {
    std::fprintf(stderr, "analysis error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
