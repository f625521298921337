#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdint>
#include <vector>

#include "rieszlab/orlicz.hpp"

using namespace rieszlab;

namespace {

OperatorSeries geometric_diagonal(std::size_t dim = 2) {
  return OperatorSeries::diagonal(CoefficientRule::geometric(2.0), dim);
}

constexpr std::uint64_t kBatterySeed = 0x8C2F9D4B1E6A3705ull;

}  // namespace

TEST_CASE("weak and strong residuals coincide on converged scans") {
  const TruncationSchedule sched({300, 3000}, 30, 1e-6);
  const auto fs = sample_functionals(2, 3, kBatterySeed, NormKind::sup());

  SECTION("direct route: absolutely summable diagonal") {
    const GapReport gr = weak_strong_gap(geometric_diagonal(), MultiplierSequence::ones(2),
                                         RieszWeights::power(1.0), fs, sched);
    CHECK(gr.strong_kind == VerdictKind::Converged);
    CHECK(gr.weak_kind == VerdictKind::Converged);
    CHECK(gr.gap <= 1e-10);
    CHECK(gr.limit_gap <= 1e-12);
  }

  SECTION("averaged route: the alternating unit series") {
    const OperatorSeries g = OperatorSeries::scalar(CoefficientRule::alternating_unit());
    const auto fs1 = sample_functionals(1, 3, kBatterySeed, NormKind::sup());
    const GapReport gr = weak_strong_gap(g, MultiplierSequence::ones(1),
                                         RieszWeights::constant(1.0), fs1,
                                         TruncationSchedule({2000, 20000}, 50, 1e-3));
    CHECK(gr.strong_kind == VerdictKind::Converged);
    CHECK(gr.weak_kind == VerdictKind::Converged);
    // the coordinate functional replays the strong scan bit for bit, and on
    // R^1 every unit functional is +/- the identity
    CHECK(gr.gap <= 1e-10);
    CHECK(gr.limit_gap <= 1e-10);
    CHECK(gr.strong_residual > 0.0);
  }

  SECTION("divergent input: no limits, NaN limit gap") {
    const OperatorSeries divergent = OperatorSeries::scalar(CoefficientRule::constant(1.0));
    const auto fs1 = sample_functionals(1, 2, kBatterySeed, NormKind::sup());
    const GapReport gr = weak_strong_gap(divergent, MultiplierSequence::ones(1),
                                         RieszWeights::constant(1.0), fs1,
                                         TruncationSchedule({400, 5000}, 50, 1e-4));
    CHECK(gr.strong_kind != VerdictKind::Converged);
    CHECK(gr.weak_kind != VerdictKind::Converged);
    CHECK(std::isnan(gr.limit_gap));
  }
}

TEST_CASE("interval partitions validate their structure") {
  using IV = std::vector<std::pair<std::size_t, std::size_t>>;
  CHECK_THROWS_AS(IntervalPartition(IV{}, {}), ValidationError);
  CHECK_THROWS_AS(IntervalPartition(IV{{1, 2}}, {1.0, 2.0}), ValidationError);
  CHECK_THROWS_AS(IntervalPartition(IV{{0, 2}}, {1.0}), ValidationError);
  CHECK_THROWS_AS(IntervalPartition(IV{{3, 2}}, {1.0}), ValidationError);
  CHECK_THROWS_AS(IntervalPartition(IV{{1, 3}, {3, 4}}, {1.0, 2.0}), ValidationError);
  CHECK_THROWS_AS(IntervalPartition(IV{{1, 2}}, {0.0}), ValidationError);
  CHECK_THROWS_AS(IntervalPartition(IV{{1, 2}, {3, 4}}, {2.0, 1.0}), ValidationError);

  const IntervalPartition p = IntervalPartition::pairs(4);
  REQUIRE(p.size() == 4);
  CHECK(p.intervals()[0] == std::pair<std::size_t, std::size_t>{1, 2});
  CHECK(p.intervals()[3] == std::pair<std::size_t, std::size_t>{7, 8});
  CHECK(p.scalings() == std::vector<double>{1.0, 2.0, 3.0, 4.0});
  CHECK_FALSE(p.growth_evidence());
  CHECK(IntervalPartition::pairs(10).growth_evidence());
  CHECK_THROWS_AS(IntervalPartition::pairs(0), ValidationError);
}

TEST_CASE("test matrix entries follow the closed form on a geometric diagonal") {
  const IntervalPartition part = IntervalPartition::pairs(8);
  const auto fs = sample_functionals(2, 2, kBatterySeed, NormKind::sup());
  const TestMatrix tm = antosik_matrix(geometric_diagonal(), MultiplierSequence::ones(2), part,
                                       fs, RieszWeights::power(1.0), 0.02);

  REQUIRE(tm.entries.size() == 4);
  REQUIRE(tm.entries[0].size() == 8);
  const std::vector<double> ones_v{1.0, 1.0};
  for (std::size_t i = 0; i < 4; ++i) {
    const double fi_ones = fs[i](ones_v);
    double expected_sup = 0.0;
    for (std::size_t j = 0; j < 8; ++j) {
      // block j sums 2^{-(2j+1)} + 2^{-(2j+2)} = 3 * 4^{-(j+1)} on each axis
      const double expected = ((j + 1.0) / (i + 1.0)) * 3.0 *
                              std::pow(4.0, -static_cast<double>(j + 1)) * fi_ones;
      CHECK(tm.entries[i][j] == Catch::Approx(expected).margin(1e-12));
      expected_sup = std::max(expected_sup, std::abs(expected));
    }
    CHECK(tm.row_sup[i] == Catch::Approx(expected_sup).margin(1e-12));
    // the j = 1 block dominates: row_sup_i = 0.75 |f_i(ones)| / t_i
    CHECK(tm.row_sup[i] == Catch::Approx(0.75 * std::abs(fi_ones) / (i + 1.0)).margin(1e-12));
    CHECK(tm.diagonal[i] ==
          Catch::Approx(3.0 * std::pow(4.0, -static_cast<double>(i + 1)) * fi_ones)
              .margin(1e-12));
  }
  // the coordinate rows attain t_i * row_sup_i = 0.75 exactly
  CHECK(tm.decay_constant == Catch::Approx(0.75).margin(1e-12));
  CHECK(tm.diagonal_riesz.depth_used == 4);
}

TEST_CASE("consistency flags respond to the tolerance") {
  const IntervalPartition part = IntervalPartition::pairs(8);
  const std::vector<Functional> coords{
      Functional(FiniteVector({1.0, 0.0}), NormKind::sup(), true),
      Functional(FiniteVector({0.0, 1.0}), NormKind::sup(), true)};

  // with the coordinate battery: final row sup 0.75/2 = 0.375 and final
  // diagonal entry 3/16
  const TestMatrix loose = antosik_matrix(geometric_diagonal(), MultiplierSequence::ones(2),
                                          part, coords, RieszWeights::power(1.0), 0.5);
  CHECK(loose.column_decay_ok);
  CHECK(loose.diagonal_ok);
  CHECK(loose.consistent);

  const TestMatrix tight = antosik_matrix(geometric_diagonal(), MultiplierSequence::ones(2),
                                          part, coords, RieszWeights::power(1.0), 1e-6);
  CHECK_FALSE(tight.column_decay_ok);
  CHECK_FALSE(tight.diagonal_ok);
  CHECK_FALSE(tight.consistent);
}

TEST_CASE("the matrix depends on scalings only through their ratios") {
  using IV = std::vector<std::pair<std::size_t, std::size_t>>;
  const IV iv{{1, 2}, {3, 4}, {5, 6}};
  const IntervalPartition a(iv, {1.0, 2.0, 4.0});
  const IntervalPartition b(iv, {2.0, 4.0, 8.0});
  const auto fs = sample_functionals(2, 1, kBatterySeed, NormKind::sup());
  const TestMatrix ta = antosik_matrix(geometric_diagonal(), MultiplierSequence::ones(2), a, fs,
                                       RieszWeights::power(1.0), 0.02);
  const TestMatrix tb = antosik_matrix(geometric_diagonal(), MultiplierSequence::ones(2), b, fs,
                                       RieszWeights::power(1.0), 0.02);
  for (std::size_t i = 0; i < ta.entries.size(); ++i) {
    for (std::size_t j = 0; j < ta.entries[i].size(); ++j) {
      CHECK(ta.entries[i][j] == Catch::Approx(tb.entries[i][j]).margin(1e-15));
    }
  }
}

TEST_CASE("antosik_matrix validates its inputs") {
  const IntervalPartition part = IntervalPartition::pairs(4);
  const auto fs = sample_functionals(2, 1, kBatterySeed, NormKind::sup());
  const OperatorSeries d = geometric_diagonal();
  const RieszWeights w = RieszWeights::power(1.0);

  CHECK_THROWS_AS(antosik_matrix(d, MultiplierSequence::ones(2), part, {}, w), ValidationError);
  // more functionals than blocks
  const auto big = sample_functionals(2, 10, kBatterySeed, NormKind::sup());
  CHECK_THROWS_AS(antosik_matrix(d, MultiplierSequence::ones(2), part, big, w),
                  ValidationError);
  // multiplier dimension mismatch
  CHECK_THROWS_AS(antosik_matrix(d, MultiplierSequence::ones(3), part, fs, w),
                  ValidationError);
  // functional dimension mismatch
  const auto fs3 = sample_functionals(3, 1, kBatterySeed, NormKind::sup());
  CHECK_THROWS_AS(antosik_matrix(d, MultiplierSequence::ones(2), part, fs3, w),
                  ValidationError);
  // blocks reaching past the materialization cap
  using IV = std::vector<std::pair<std::size_t, std::size_t>>;
  const IntervalPartition deep(IV{{1, 2000000}}, {1.0});
  CHECK_THROWS_AS(antosik_matrix(d, MultiplierSequence::ones(2), deep, fs, w),
                  ValidationError);
  // tolerance must be positive
  CHECK_THROWS_AS(antosik_matrix(d, MultiplierSequence::ones(2), part, fs, w, 0.0),
                  ValidationError);
}
