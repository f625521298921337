#pragma once

#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>
#include <utility>
#include <vector>

#include "rieszlab/core.hpp"
#include "rieszlab/multiplier.hpp"
#include "rieszlab/series.hpp"
#include "rieszlab/verdict.hpp"
#include "rieszlab/weights.hpp"

namespace rieszlab {

/// Parse failure with the offending 1-based line number baked into the
/// message and kept accessible for tooling.
class ConfigError : public ValidationError {
public:
  ConfigError(std::size_t line, const std::string& message)
      : ValidationError("config line " + std::to_string(line) + ": " + message), line_(line) {}

  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

enum class Analysis { Membership, HBound, Summing, Tail, Gap, Antosik, Chain, Probe };

inline const char* to_string(Analysis a) noexcept {
  switch (a) {
    case Analysis::Membership: return "membership";
    case Analysis::HBound: return "h_bound";
    case Analysis::Summing: return "summing";
    case Analysis::Tail: return "tail";
    case Analysis::Gap: return "gap";
    case Analysis::Antosik: return "antosik";
    case Analysis::Chain: return "chain";
    case Analysis::Probe: return "probe";
  }
  return "membership";
}

namespace detail {

inline std::string trim(const std::string& s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    if (pos == std::string::npos) {
      out.push_back(s.substr(start));
      return out;
    }
    out.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

inline double parse_double(const std::string& s) {
  const std::string t = trim(s);
  if (t.empty()) throw ValidationError("expected a number, got an empty value");
  char* end = nullptr;
  const double v = std::strtod(t.c_str(), &end);
  if (end != t.c_str() + t.size()) throw ValidationError("not a number: '" + t + "'");
  return v;
}

inline std::uint64_t parse_u64(const std::string& s) {
  const std::string t = trim(s);
  if (t.empty() || t[0] == '-') throw ValidationError("expected a nonnegative integer: '" + t + "'");
  char* end = nullptr;
  const unsigned long long v = std::strtoull(t.c_str(), &end, 10);
  if (end != t.c_str() + t.size()) throw ValidationError("not an integer: '" + t + "'");
  return static_cast<std::uint64_t>(v);
}

inline std::size_t parse_size(const std::string& s) {
  return static_cast<std::size_t>(parse_u64(s));
}

inline std::vector<double> parse_double_list(const std::string& s) {
  std::vector<double> out;
  for (const std::string& part : split(s, ',')) out.push_back(parse_double(part));
  return out;
}

inline std::vector<std::size_t> parse_size_list(const std::string& s) {
  std::vector<std::size_t> out;
  for (const std::string& part : split(s, ',')) out.push_back(parse_size(part));
  return out;
}

/// 17 significant digits: enough to round-trip any finite double exactly.
inline std::string format_g17(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return std::string(buf);
}

inline std::string join_doubles(const std::vector<double>& vs) {
  std::string out;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (i) out += ',';
    out += format_g17(vs[i]);
  }
  return out;
}

inline std::string join_sizes(const std::vector<std::size_t>& vs) {
  std::string out;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(vs[i]);
  }
  return out;
}

/// Splits "family:params" into the family name and the raw parameter string
/// (empty when there is no colon).
inline std::pair<std::string, std::string> split_spec(const std::string& text) {
  const std::string t = trim(text);
  const std::size_t pos = t.find(':');
  if (pos == std::string::npos) return {t, ""};
  return {trim(t.substr(0, pos)), trim(t.substr(pos + 1))};
}

}  // namespace detail

/// Declarative series choice with a text grammar `family:param1,param2`.
/// `realize()` constructs the operator series; explicit_file reads a
/// whitespace-separated token stream `count dim_out dim_in` followed by
/// count row-major dim_out x dim_in blocks.
struct SeriesSpec {
  enum class Family { Grandi, DiagonalGeometric, DiagonalHarmonic, RankOne, Zero, ExplicitFile };

  Family family = Family::Grandi;
  double ratio = 2.0;
  std::size_t dim = 2;
  std::string path;

  bool operator==(const SeriesSpec&) const = default;

  std::string render() const {
    switch (family) {
      case Family::Grandi: return "grandi";
      case Family::DiagonalGeometric:
        return "diagonal_geometric:" + detail::format_g17(ratio) + "," + std::to_string(dim);
      case Family::DiagonalHarmonic: return "diagonal_harmonic:" + std::to_string(dim);
      case Family::RankOne: return "rank_one:" + std::to_string(dim);
      case Family::Zero: return "zero";
      case Family::ExplicitFile: return "explicit_file:" + path;
    }
    return "grandi";
  }

  static SeriesSpec parse(const std::string& text) {
    const auto [name, params] = detail::split_spec(text);
    SeriesSpec s;
    if (name == "grandi") {
      s.family = Family::Grandi;
      if (!params.empty()) throw ValidationError("series grandi takes no parameters");
      return s;
    }
    if (name == "zero") {
      s.family = Family::Zero;
      if (!params.empty()) throw ValidationError("series zero takes no parameters");
      return s;
    }
    if (name == "diagonal_geometric") {
      s.family = Family::DiagonalGeometric;
      if (params.empty()) throw ValidationError("series diagonal_geometric needs q[,dim]");
      const auto parts = detail::split(params, ',');
      if (parts.size() > 2) throw ValidationError("series diagonal_geometric takes q[,dim]");
      s.ratio = detail::parse_double(parts[0]);
      if (parts.size() == 2) s.dim = detail::parse_size(parts[1]);
      return s;
    }
    if (name == "diagonal_harmonic") {
      s.family = Family::DiagonalHarmonic;
      if (!params.empty()) s.dim = detail::parse_size(params);
      return s;
    }
    if (name == "rank_one") {
      s.family = Family::RankOne;
      if (params.empty()) throw ValidationError("series rank_one needs a dimension");
      s.dim = detail::parse_size(params);
      return s;
    }
    if (name == "explicit_file") {
      s.family = Family::ExplicitFile;
      if (params.empty()) throw ValidationError("series explicit_file needs a path");
      s.path = params;
      return s;
    }
    throw ValidationError("unknown series family '" + name + "'");
  }

  OperatorSeries realize() const {
    switch (family) {
      case Family::Grandi: return OperatorSeries::scalar(CoefficientRule::alternating_unit());
      case Family::DiagonalGeometric:
        return OperatorSeries::diagonal(CoefficientRule::geometric(ratio), dim);
      case Family::DiagonalHarmonic:
        return OperatorSeries::diagonal(CoefficientRule::harmonic(), dim);
      case Family::RankOne: return OperatorSeries::rank_one(CoefficientRule::constant(1.0), dim);
      case Family::Zero: return OperatorSeries::scalar(CoefficientRule::zero());
      case Family::ExplicitFile: {
        std::ifstream in(path);
        if (!in) throw IoError("cannot open series file: " + path);
        std::size_t count = 0, dout = 0, din = 0;
        if (!(in >> count >> dout >> din) || count == 0 || dout == 0 || din == 0) {
          throw ValidationError("series file must start with 'count dim_out dim_in', all positive");
        }
        if (count > 100000 || dout > 10000 || din > 10000) {
          throw ValidationError("series file dimensions exceed the supported size");
        }
        std::vector<LinearOperator> terms;
        terms.reserve(count);
        for (std::size_t c = 0; c < count; ++c) {
          std::vector<double> entries(dout * din);
          for (double& e : entries) {
            if (!(in >> e)) {
              throw ValidationError("series file ends before term " + std::to_string(c + 1) +
                                    " is complete");
            }
          }
          terms.emplace_back(dout, din, std::move(entries));
        }
        return OperatorSeries::explicit_terms(std::move(terms));
      }
    }
    return OperatorSeries::scalar(CoefficientRule::zero());
  }
};

/// The builtin series families by name, e.g. "diagonal_geometric:2,2".
inline SeriesSpec builtin_series(const std::string& text) { return SeriesSpec::parse(text); }

struct WeightsSpec {
  enum class Family { Constant, Power, Geometric, Explicit };

  Family family = Family::Constant;
  double parameter = 1.0;
  std::vector<double> values;

  bool operator==(const WeightsSpec&) const = default;

  std::string render() const {
    switch (family) {
      case Family::Constant: return "constant:" + detail::format_g17(parameter);
      case Family::Power: return "power:" + detail::format_g17(parameter);
      case Family::Geometric: return "geometric:" + detail::format_g17(parameter);
      case Family::Explicit: return "explicit:" + detail::join_doubles(values);
    }
    return "constant:1";
  }

  static WeightsSpec parse(const std::string& text) {
    const auto [name, params] = detail::split_spec(text);
    WeightsSpec w;
    if (name == "constant" || name == "power" || name == "geometric") {
      w.family = name == "constant" ? Family::Constant
                                    : (name == "power" ? Family::Power : Family::Geometric);
      if (params.empty()) throw ValidationError("weights " + name + " needs one parameter");
      w.parameter = detail::parse_double(params);
      return w;
    }
    if (name == "explicit") {
      w.family = Family::Explicit;
      if (params.empty()) throw ValidationError("weights explicit needs a value list");
      w.values = detail::parse_double_list(params);
      return w;
    }
    throw ValidationError("unknown weights family '" + name + "'");
  }

  RieszWeights realize() const {
    switch (family) {
      case Family::Constant: return RieszWeights::constant(parameter);
      case Family::Power: return RieszWeights::power(parameter);
      case Family::Geometric: return RieszWeights::geometric(parameter);
      case Family::Explicit: return RieszWeights::explicit_list(values);
    }
    return RieszWeights::constant(1.0);
  }
};

struct MultiplierSpec {
  enum class Family { Ones, Alternating, Support, GeometricDecay, SeededNull, SeededBounded };

  Family family = Family::Ones;
  double parameter = 1.0;
  std::vector<double> coeffs;

  bool operator==(const MultiplierSpec&) const = default;

  std::string render() const {
    switch (family) {
      case Family::Ones: return "ones";
      case Family::Alternating: return "alternating:" + detail::format_g17(parameter);
      case Family::Support: return "support:" + detail::join_doubles(coeffs);
      case Family::GeometricDecay: return "geometric_decay:" + detail::format_g17(parameter);
      case Family::SeededNull: return "seeded_null";
      case Family::SeededBounded: return "seeded_bounded";
    }
    return "ones";
  }

  static MultiplierSpec parse(const std::string& text) {
    const auto [name, params] = detail::split_spec(text);
    MultiplierSpec m;
    if (name == "ones" || name == "seeded_null" || name == "seeded_bounded") {
      m.family = name == "ones" ? Family::Ones
                                : (name == "seeded_null" ? Family::SeededNull
                                                         : Family::SeededBounded);
      if (!params.empty()) throw ValidationError("multiplier " + name + " takes no parameters");
      return m;
    }
    if (name == "alternating" || name == "geometric_decay") {
      m.family = name == "alternating" ? Family::Alternating : Family::GeometricDecay;
      if (params.empty()) throw ValidationError("multiplier " + name + " needs one parameter");
      m.parameter = detail::parse_double(params);
      return m;
    }
    if (name == "support") {
      m.family = Family::Support;
      if (params.empty()) throw ValidationError("multiplier support needs a coefficient list");
      m.coeffs = detail::parse_double_list(params);
      return m;
    }
    throw ValidationError("unknown multiplier family '" + name + "'");
  }

  /// Seeded kinds take the scenario seed; the dimension and norm kind come
  /// from the series domain.
  MultiplierSequence realize(std::size_t dim, std::uint64_t seed, NormKind kind) const {
    switch (family) {
      case Family::Ones: return MultiplierSequence::ones(dim);
      case Family::Alternating: return MultiplierSequence::alternating(parameter, dim);
      case Family::Support: return MultiplierSequence::finite_support(coeffs, dim);
      case Family::GeometricDecay: return MultiplierSequence::geometric_decay(parameter, dim);
      case Family::SeededNull: return MultiplierSequence::seeded_null(seed, dim, kind);
      case Family::SeededBounded: return MultiplierSequence::seeded_bounded(seed, dim, kind);
    }
    return MultiplierSequence::ones(dim);
  }
};

/// One experiment: a (series, weights, multiplier, schedule) quadruple plus
/// the list of analyses to run and their knobs. Every field has a documented
/// default except `name`, which must be set and unique within a run.
struct ScenarioConfig {
  std::string name;
  SeriesSpec series;
  WeightsSpec weights;
  MultiplierSpec multiplier;
  std::vector<std::size_t> depths = {1000, 10000, 100000};
  std::size_t window = 50;
  double tol = 1e-8;
  std::uint64_t seed = 42;
  std::vector<Analysis> analyses = {Analysis::Membership};
  std::string probe_class = "linf";
  std::size_t probe_trials = 8;
  std::vector<std::size_t> tail_depths = {8, 16, 32};
  std::size_t tail_trials = 4;
  std::size_t hbound_depth = 64;
  std::size_t hbound_samples = 8;
  std::size_t antosik_blocks = 32;
  double antosik_tol = 0.02;
  std::size_t functionals = 4;
  std::size_t norm_trials = 8;

  bool operator==(const ScenarioConfig&) const = default;

  TruncationSchedule schedule() const { return TruncationSchedule(depths, window, tol); }
};

namespace detail {

inline Analysis parse_analysis(const std::string& s) {
  const std::string t = trim(s);
  if (t == "membership") return Analysis::Membership;
  if (t == "h_bound") return Analysis::HBound;
  if (t == "summing") return Analysis::Summing;
  if (t == "tail") return Analysis::Tail;
  if (t == "gap") return Analysis::Gap;
  if (t == "antosik") return Analysis::Antosik;
  if (t == "chain") return Analysis::Chain;
  if (t == "probe") return Analysis::Probe;
  throw ValidationError("unknown analysis '" + t + "'");
}

inline void apply_key(ScenarioConfig& sc, const std::string& key, const std::string& value) {
  if (key == "name") {
    if (value.empty()) throw ValidationError("name must be nonempty");
    sc.name = value;
  } else if (key == "series") {
    sc.series = SeriesSpec::parse(value);
  } else if (key == "weights") {
    sc.weights = WeightsSpec::parse(value);
  } else if (key == "multiplier") {
    sc.multiplier = MultiplierSpec::parse(value);
  } else if (key == "depths") {
    sc.depths = parse_size_list(value);
  } else if (key == "window") {
    sc.window = parse_size(value);
  } else if (key == "tol") {
    sc.tol = parse_double(value);
  } else if (key == "seed") {
    sc.seed = parse_u64(value);
  } else if (key == "analyses") {
    sc.analyses.clear();
    for (const std::string& part : split(value, ',')) {
      const Analysis a = parse_analysis(part);
      for (Analysis seen : sc.analyses) {
        if (seen == a) throw ValidationError("duplicate analysis '" + trim(part) + "'");
      }
      sc.analyses.push_back(a);
    }
  } else if (key == "probe_class") {
    if (value != "c0" && value != "linf") {
      throw ValidationError("probe_class must be c0 or linf");
    }
    sc.probe_class = value;
  } else if (key == "probe_trials") {
    sc.probe_trials = parse_size(value);
  } else if (key == "tail_depths") {
    sc.tail_depths = parse_size_list(value);
  } else if (key == "tail_trials") {
    sc.tail_trials = parse_size(value);
  } else if (key == "hbound_depth") {
    sc.hbound_depth = parse_size(value);
  } else if (key == "hbound_samples") {
    sc.hbound_samples = parse_size(value);
  } else if (key == "antosik_blocks") {
    sc.antosik_blocks = parse_size(value);
  } else if (key == "antosik_tol") {
    sc.antosik_tol = parse_double(value);
  } else if (key == "functionals") {
    sc.functionals = parse_size(value);
  } else if (key == "norm_trials") {
    sc.norm_trials = parse_size(value);
  } else {
    throw ValidationError("unknown key '" + key + "'");
  }
}

}  // namespace detail

/// Parses the line-oriented scenario format: `[scenario]` headers, `key =
/// value` pairs, `#` comments. Unknown keys and malformed values are hard
/// errors carrying the line number; scenario-level violations (missing or
/// duplicate name, empty analyses, bad schedule) point at the header line.
inline std::vector<ScenarioConfig> parse_config(const std::string& text) {
  std::vector<ScenarioConfig> out;
  std::vector<std::string> seen_names;
  std::size_t header_line = 0;
  bool open = false;
  ScenarioConfig current;

  auto finalize = [&]() {
    if (!open) return;
    if (current.name.empty()) {
      throw ConfigError(header_line, "scenario is missing a name");
    }
    for (const std::string& n : seen_names) {
      if (n == current.name) {
        throw ConfigError(header_line, "duplicate scenario name '" + current.name + "'");
      }
    }
    if (current.analyses.empty()) {
      throw ConfigError(header_line, "scenario '" + current.name + "': analyses must be nonempty");
    }
    try {
      (void)current.schedule();
    } catch (const ValidationError& e) {
      throw ConfigError(header_line, "scenario '" + current.name + "': " + e.what());
    }
    seen_names.push_back(current.name);
    out.push_back(current);
    current = ScenarioConfig{};
    open = false;
  };

  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t nl = text.find('\n', start);
    std::string line =
        nl == std::string::npos ? text.substr(start) : text.substr(start, nl - start);
    ++line_no;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = detail::trim(line);
    if (!line.empty()) {
      if (line == "[scenario]") {
        finalize();
        open = true;
        header_line = line_no;
      } else if (line.front() == '[') {
        throw ConfigError(line_no, "unknown section '" + line + "'");
      } else {
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) {
          throw ConfigError(line_no, "expected 'key = value', got '" + line + "'");
        }
        if (!open) {
          throw ConfigError(line_no, "key outside of a [scenario] section");
        }
        const std::string key = detail::trim(line.substr(0, eq));
        const std::string value = detail::trim(line.substr(eq + 1));
        try {
          detail::apply_key(current, key, value);
        } catch (const ConfigError&) {
          throw;
        } catch (const ValidationError& e) {
          throw ConfigError(line_no, e.what());
        }
      }
    }
    if (nl == std::string::npos) break;
    start = nl + 1;
  }
  finalize();
  return out;
}

/// Canonical emission: every field explicit, floats with 17 significant
/// digits, LF endings. parse_config(render_config(cfgs)) reproduces cfgs.
inline std::string render_config(const std::vector<ScenarioConfig>& cfgs) {
  std::string out;
  for (const ScenarioConfig& sc : cfgs) {
    out += "[scenario]\n";
    out += "name = " + sc.name + "\n";
    out += "series = " + sc.series.render() + "\n";
    out += "weights = " + sc.weights.render() + "\n";
    out += "multiplier = " + sc.multiplier.render() + "\n";
    out += "depths = " + detail::join_sizes(sc.depths) + "\n";
    out += "window = " + std::to_string(sc.window) + "\n";
    out += "tol = " + detail::format_g17(sc.tol) + "\n";
    out += "seed = " + std::to_string(sc.seed) + "\n";
    std::string names;
    for (std::size_t i = 0; i < sc.analyses.size(); ++i) {
      if (i) names += ',';
      names += to_string(sc.analyses[i]);
    }
    out += "analyses = " + names + "\n";
    out += "probe_class = " + sc.probe_class + "\n";
    out += "probe_trials = " + std::to_string(sc.probe_trials) + "\n";
    out += "tail_depths = " + detail::join_sizes(sc.tail_depths) + "\n";
    out += "tail_trials = " + std::to_string(sc.tail_trials) + "\n";
    out += "hbound_depth = " + std::to_string(sc.hbound_depth) + "\n";
    out += "hbound_samples = " + std::to_string(sc.hbound_samples) + "\n";
    out += "antosik_blocks = " + std::to_string(sc.antosik_blocks) + "\n";
    out += "antosik_tol = " + detail::format_g17(sc.antosik_tol) + "\n";
    out += "functionals = " + std::to_string(sc.functionals) + "\n";
    out += "norm_trials = " + std::to_string(sc.norm_trials) + "\n";
    out += "\n";
  }
  return out;
}

/// The built-in suite: small, deterministic scenarios covering every
/// analysis, used by the CLI's zero-argument run mode and the determinism
/// tests. Names, seeds, and knobs are frozen; goldens depend on them.
inline std::vector<ScenarioConfig> builtin_suite() {
  std::vector<ScenarioConfig> out;

  ScenarioConfig grandi_cesaro;
  grandi_cesaro.name = "grandi_cesaro";
  grandi_cesaro.series = SeriesSpec{SeriesSpec::Family::Grandi, 2.0, 2, ""};
  grandi_cesaro.weights = WeightsSpec{WeightsSpec::Family::Constant, 1.0, {}};
  grandi_cesaro.tol = 1e-4;
  grandi_cesaro.seed = 42;
  grandi_cesaro.analyses = {Analysis::Membership, Analysis::Summing, Analysis::Gap,
                            Analysis::Chain};
  out.push_back(grandi_cesaro);

  ScenarioConfig grandi_linear;
  grandi_linear.name = "grandi_riesz_linear";
  grandi_linear.series = SeriesSpec{SeriesSpec::Family::Grandi, 2.0, 2, ""};
  grandi_linear.weights = WeightsSpec{WeightsSpec::Family::Power, 1.0, {}};
  grandi_linear.tol = 1e-4;
  grandi_linear.seed = 43;
  grandi_linear.analyses = {Analysis::Membership, Analysis::Summing};
  out.push_back(grandi_linear);

  ScenarioConfig geo;
  geo.name = "geometric_diagonal";
  geo.series = SeriesSpec{SeriesSpec::Family::DiagonalGeometric, 2.0, 2, ""};
  geo.seed = 44;
  geo.analyses = {Analysis::Membership, Analysis::HBound, Analysis::Summing, Analysis::Tail,
                  Analysis::Gap,        Analysis::Antosik, Analysis::Chain};
  geo.antosik_blocks = 64;
  out.push_back(geo);

  ScenarioConfig harmonic;
  harmonic.name = "harmonic_diagonal";
  harmonic.series = SeriesSpec{SeriesSpec::Family::DiagonalHarmonic, 2.0, 2, ""};
  harmonic.seed = 45;
  harmonic.analyses = {Analysis::Membership, Analysis::Tail, Analysis::Probe};
  out.push_back(harmonic);

  ScenarioConfig rank;
  rank.name = "rank_one_probe";
  rank.series = SeriesSpec{SeriesSpec::Family::RankOne, 2.0, 100, ""};
  rank.multiplier = MultiplierSpec{MultiplierSpec::Family::SeededNull, 1.0, {}};
  rank.seed = 46;
  rank.probe_class = "c0";
  rank.analyses = {Analysis::Membership, Analysis::Probe};
  out.push_back(rank);

  ScenarioConfig phi;
  phi.name = "phi_support";
  phi.series = SeriesSpec{SeriesSpec::Family::Grandi, 2.0, 2, ""};
  phi.weights = WeightsSpec{WeightsSpec::Family::Power, 1.0, {}};
  phi.multiplier = MultiplierSpec{MultiplierSpec::Family::Support, 1.0, {1.0, -2.0, 3.0}};
  phi.seed = 47;
  phi.analyses = {Analysis::Membership, Analysis::HBound, Analysis::Summing, Analysis::Chain};
  out.push_back(phi);

  ScenarioConfig divergent;
  divergent.name = "divergent_ones";
  divergent.series = SeriesSpec{SeriesSpec::Family::DiagonalGeometric, 1.0, 1, ""};
  divergent.seed = 48;
  divergent.analyses = {Analysis::Membership, Analysis::Chain};
  out.push_back(divergent);

  ScenarioConfig zero;
  zero.name = "zero_series";
  zero.series = SeriesSpec{SeriesSpec::Family::Zero, 2.0, 2, ""};
  zero.seed = 49;
  zero.analyses = {Analysis::Membership, Analysis::HBound, Analysis::Summing, Analysis::Tail,
                   Analysis::Gap};
  out.push_back(zero);

  return out;
}

}  // namespace rieszlab
