#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "rieszlab/rieszlab.hpp"

using namespace rieszlab;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ScenarioConfig zero_scenario() {
  ScenarioConfig sc;
  sc.name = "zero_small";
  sc.series = SeriesSpec{SeriesSpec::Family::Zero, 2.0, 2, ""};
  sc.depths = {100, 400};
  sc.window = 10;
  sc.seed = 5;
  sc.analyses = {Analysis::Membership, Analysis::HBound, Analysis::Summing, Analysis::Tail,
                 Analysis::Gap};
  return sc;
}

ScenarioConfig divergent_scenario() {
  ScenarioConfig sc;
  sc.name = "divergent_small";
  sc.series = SeriesSpec{SeriesSpec::Family::DiagonalGeometric, 1.0, 1, ""};
  sc.depths = {400, 5000};
  sc.tol = 1e-4;
  sc.seed = 6;
  sc.analyses = {Analysis::Summing, Analysis::Chain};
  return sc;
}

}  // namespace

TEST_CASE("report header is frozen") {
  CHECK(std::string(kReportHeader) ==
        "scenario,analysis,metric,verdict,limit_norm,residual,depth,seed");
}

TEST_CASE("csv fields quote only when needed") {
  CHECK(detail::csv_field("plain") == "plain");
  CHECK(detail::csv_field("with space") == "with space");
  CHECK(detail::csv_field("a,b") == "\"a,b\"");
  CHECK(detail::csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
  CHECK(detail::csv_field("line\nbreak") == "\"line\nbreak\"");
  CHECK(detail::csv_field("") == "");
}

TEST_CASE("csv rendering is exact") {
  ReportRow quoted;
  quoted.scenario = "s,1";
  quoted.analysis = "a\"b";
  quoted.metric = "m";
  quoted.verdict = "V";
  quoted.limit_norm = 0.5;
  quoted.residual = std::numeric_limits<double>::quiet_NaN();
  quoted.depth = 3;
  quoted.seed = 9;

  ReportRow plain;
  plain.scenario = "s";
  plain.analysis = "a";
  plain.metric = "m";
  plain.verdict = "V";
  plain.limit_norm = 1.0 / 3.0;
  plain.residual = 0.0;
  plain.depth = 10;
  plain.seed = 42;

  const std::string csv = render_csv({quoted, plain});
  const std::string expected =
      "scenario,analysis,metric,verdict,limit_norm,residual,depth,seed\n"
      "\"s,1\",\"a\"\"b\",m,V,0.5,nan,3,9\n"
      "s,a,m,V,0.33333333333333331,0,10,42\n";
  CHECK(csv == expected);
  CHECK(csv.find('\r') == std::string::npos);

  CHECK(render_csv({}) == std::string(kReportHeader) + "\n");
}

TEST_CASE("json numbers fall back to strings when non-finite") {
  CHECK(detail::json_number(2.5) == nlohmann::ordered_json(2.5));
  CHECK(detail::json_number(std::numeric_limits<double>::quiet_NaN()) ==
        nlohmann::ordered_json("nan"));
  CHECK(detail::json_number(std::numeric_limits<double>::infinity()) ==
        nlohmann::ordered_json("inf"));
}

TEST_CASE("scenario run produces the documented row vocabulary") {
  const ScenarioOutcome out = run_scenario(zero_scenario());

  CHECK(out.name == "zero_small");
  CHECK(out.seed == 5);
  CHECK(out.errors.empty());
  CHECK(out.analyses ==
        std::vector<std::string>{"membership", "h_bound", "summing", "tail", "gap"});

  // membership 7 + h_bound 2 + summing 3 + tail 3 + gap 3
  REQUIRE(out.rows.size() == 18);
  for (const ReportRow& r : out.rows) {
    CHECK(r.scenario == "zero_small");
    CHECK(r.seed == 5);
  }

  const std::vector<std::string> space_order = {"M", "M_f", "M_C", "M_R", "CM", "CM_R", "M_wR"};
  for (std::size_t i = 0; i < 7; ++i) {
    CHECK(out.rows[i].analysis == "membership");
    CHECK(out.rows[i].metric == space_order[i]);
    CHECK(out.rows[i].verdict == "Converged");
    CHECK(out.rows[i].limit_norm == 0.0);
  }

  CHECK(out.rows[7].metric == "h_bound");
  CHECK(out.rows[7].verdict == "Exact");
  CHECK(out.rows[7].limit_norm == 0.0);
  CHECK(out.rows[8].metric == "h_upper");
  CHECK(out.rows[8].verdict == "Upper");

  CHECK(out.rows[9].metric == "r_sum");
  CHECK(out.rows[9].verdict == "Converged");
  CHECK(out.rows[9].limit_norm == 0.0);
  CHECK(out.rows[9].depth == 400);
  CHECK(out.rows[10].metric == "norm_estimate");
  CHECK(out.rows[10].verdict == "Lower");
  CHECK(out.rows[10].limit_norm == 0.0);
  CHECK(out.rows[11].metric == "continuity");
  CHECK(out.rows[11].verdict == "Holds");

  for (std::size_t i = 12; i < 15; ++i) {
    CHECK(out.rows[i].metric == "tail");
    CHECK(out.rows[i].verdict == "Decaying");
    CHECK(out.rows[i].limit_norm == 0.0);
  }
  CHECK(out.rows[12].depth == 8);
  CHECK(out.rows[14].depth == 32);

  CHECK(out.rows[15].metric == "strong");
  CHECK(out.rows[16].metric == "weak");
  CHECK(out.rows[17].metric == "gap");
  CHECK(out.rows[17].verdict == "Agree");

  CHECK(out.detail.contains("membership"));
  CHECK(out.detail["membership"]["M"] == true);
  CHECK(out.detail["h_bound"]["exact"] == true);
  CHECK(out.detail["summing"]["route"] == "direct");
  CHECK(out.detail["tail"]["decaying"] == true);
  CHECK(out.detail.contains("gap"));
}

TEST_CASE("analysis failures are recorded and do not stop the run") {
  const ScenarioOutcome out = run_scenario(divergent_scenario());

  REQUIRE(out.errors.size() == 1);
  CHECK(out.errors[0].rfind("summing: ", 0) == 0);

  REQUIRE(out.rows.size() == 2);
  CHECK(out.rows[0].analysis == "summing");
  CHECK(out.rows[0].metric == "error");
  CHECK(out.rows[0].verdict == "Error");
  CHECK(out.rows[0].depth == 0);
  CHECK(out.rows[1].analysis == "chain");
  CHECK(out.rows[1].metric == "chain");
  CHECK(out.rows[1].verdict == "Consistent");

  CHECK(!out.detail.contains("summing"));
  CHECK(out.detail["chain"]["M"] == false);
  CHECK(out.detail["chain"]["M_R"] == false);
}

TEST_CASE("setup failures short-circuit the scenario") {
  ScenarioConfig sc;
  sc.name = "missing_file";
  sc.series = SeriesSpec{SeriesSpec::Family::ExplicitFile, 2.0, 2, "runner_no_such_file.txt"};
  sc.analyses = {Analysis::Membership, Analysis::Chain};
  const ScenarioOutcome out = run_scenario(sc);

  REQUIRE(out.errors.size() == 1);
  CHECK(out.errors[0].rfind("setup: ", 0) == 0);
  REQUIRE(out.rows.size() == 1);
  CHECK(out.rows[0].analysis == "setup");
  CHECK(out.rows[0].verdict == "Error");
  CHECK(out.analyses == std::vector<std::string>{"membership", "chain"});
}

TEST_CASE("run_scenarios writes per-scenario reports and a summary") {
  const std::filesystem::path dir =
      std::filesystem::temp_directory_path() / "rieszlab_runner_out";
  std::filesystem::remove_all(dir);

  const std::vector<ScenarioConfig> cfgs = {zero_scenario(), divergent_scenario()};
  const RunSummary summary = run_scenarios(cfgs, dir.string());

  CHECK(summary.scenarios == 2);
  CHECK(summary.errored == 1);
  CHECK(summary.rows == 20);
  CHECK(!summary.ok());

  REQUIRE(std::filesystem::exists(dir / "zero_small.csv"));
  REQUIRE(std::filesystem::exists(dir / "divergent_small.csv"));
  REQUIRE(std::filesystem::exists(dir / "summary.jsonl"));

  const std::string csv = slurp(dir / "zero_small.csv");
  CHECK(csv.rfind(kReportHeader, 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 19);

  const std::string jsonl = slurp(dir / "summary.jsonl");
  std::vector<std::string> lines;
  std::istringstream ss(jsonl);
  for (std::string line; std::getline(ss, line);) lines.push_back(line);
  REQUIRE(lines.size() == 2);

  const nlohmann::json first = nlohmann::json::parse(lines[0]);
  CHECK(first["scenario"] == "zero_small");
  CHECK(first["status"] == "ok");
  CHECK(first["rows"] == 18);
  CHECK(first["errors"].empty());
  CHECK(first["detail"]["membership"]["M_R"] == true);

  const nlohmann::json second = nlohmann::json::parse(lines[1]);
  CHECK(second["scenario"] == "divergent_small");
  CHECK(second["status"] == "error");
  CHECK(second["errors"].size() == 1);

  std::filesystem::remove_all(dir);
}

TEST_CASE("repeated runs are byte-identical") {
  ScenarioConfig sc;
  sc.name = "geo_repeat";
  sc.series = SeriesSpec{SeriesSpec::Family::DiagonalGeometric, 2.0, 2, ""};
  sc.depths = {200, 2000};
  sc.window = 20;
  sc.seed = 77;
  sc.analyses = {Analysis::Membership, Analysis::Tail, Analysis::Gap, Analysis::Probe};

  const std::filesystem::path base = std::filesystem::temp_directory_path();
  const std::filesystem::path a = base / "rieszlab_repeat_a";
  const std::filesystem::path b = base / "rieszlab_repeat_b";
  std::filesystem::remove_all(a);
  std::filesystem::remove_all(b);

  run_scenarios({sc}, a.string());
  run_scenarios({sc}, b.string());

  CHECK(slurp(a / "geo_repeat.csv") == slurp(b / "geo_repeat.csv"));
  CHECK(slurp(a / "summary.jsonl") == slurp(b / "summary.jsonl"));

  std::filesystem::remove_all(a);
  std::filesystem::remove_all(b);
}

TEST_CASE("scenario names must be usable and unique") {
  ScenarioConfig ok = zero_scenario();

  ScenarioConfig dup = zero_scenario();
  CHECK_THROWS_AS(run_scenarios({ok, dup}, "unused_dir"), ValidationError);

  ScenarioConfig escape = zero_scenario();
  escape.name = "../evil";
  CHECK_THROWS_AS(run_scenarios({escape}, "unused_dir"), ValidationError);

  ScenarioConfig hidden = zero_scenario();
  hidden.name = ".hidden";
  CHECK_THROWS_AS(run_scenarios({hidden}, "unused_dir"), ValidationError);

  ScenarioConfig slash = zero_scenario();
  slash.name = "a\\b";
  CHECK_THROWS_AS(run_scenarios({slash}, "unused_dir"), ValidationError);
}
