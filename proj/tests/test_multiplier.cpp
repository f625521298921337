#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdint>
#include <vector>

#include "rieszlab/membership.hpp"
#include "rieszlab/multiplier.hpp"
#include "rieszlab/oracle.hpp"
#include "rieszlab/series.hpp"

using namespace rieszlab;

TEST_CASE("coefficient rules evaluate their closed forms") {
  CHECK(CoefficientRule::zero().value(5) == 0.0);
  CHECK(CoefficientRule::alternating_unit().value(1) == 1.0);
  CHECK(CoefficientRule::alternating_unit().value(2) == -1.0);
  CHECK(CoefficientRule::geometric(2.0).value(3) == 0.125);
  CHECK(CoefficientRule::geometric(1.0).value(9) == 1.0);
  CHECK(CoefficientRule::harmonic().value(4) == 0.25);
  CHECK(CoefficientRule::constant(-2.5).value(7) == -2.5);
  const CoefficientRule e = CoefficientRule::explicit_list({1.0, -2.0});
  CHECK(e.value(2) == -2.0);
  CHECK(e.value(3) == 0.0);  // zero beyond the list
  CHECK_THROWS_AS(e.value(0), ValidationError);
  CHECK_THROWS_AS(CoefficientRule::geometric(0.9), ValidationError);
  CHECK_THROWS_AS(CoefficientRule::explicit_list({}), ValidationError);
}

TEST_CASE("operator series shapes") {
  SECTION("scalar terms multiply") {
    const OperatorSeries s = OperatorSeries::scalar(CoefficientRule::alternating_unit());
    CHECK(s.dim_in() == 1);
    CHECK(s.dim_out() == 1);
    CHECK(s.apply(2, FiniteVector({3.0})) == FiniteVector({-3.0}));
    CHECK(s.term_norm(2).value == 1.0);
    CHECK(s.term_norm(2).exact);
  }

  SECTION("diagonal terms scale the identity") {
    const OperatorSeries d = OperatorSeries::diagonal(CoefficientRule::geometric(2.0), 3);
    CHECK(d.apply(2, FiniteVector({4.0, -8.0, 0.0})) == FiniteVector({1.0, -2.0, 0.0}));
    CHECK(d.term_norm(2).value == 0.25);
    CHECK(d.term_norm(2).exact);
    CHECK_THROWS_AS(
        OperatorSeries::diagonal(CoefficientRule::zero(), 2, NormKind::p1(), NormKind::sup()),
        ValidationError);
  }

  SECTION("rank-one terms send t to t times a basis vector, vanishing past d") {
    const OperatorSeries r = OperatorSeries::rank_one(CoefficientRule::constant(1.0), 3);
    CHECK(r.dim_in() == 1);
    CHECK(r.dim_out() == 3);
    CHECK(r.apply(2, FiniteVector({5.0})) == FiniteVector({0.0, 5.0, 0.0}));
    CHECK(r.apply(4, FiniteVector({5.0})) == FiniteVector({0.0, 0.0, 0.0}));
    CHECK(r.term_norm(2).value == 1.0);
    CHECK(r.term_norm(4).value == 0.0);
    CHECK(r.support_bound() == 3);
  }

  SECTION("explicit terms must share a shape and extend by zero") {
    const OperatorSeries e = OperatorSeries::explicit_terms(
        {LinearOperator(2, 2, {1.0, 0.0, 0.0, 1.0}), LinearOperator(2, 2, {0.0, 1.0, 1.0, 0.0})});
    CHECK(e.apply(2, FiniteVector({1.0, 2.0})) == FiniteVector({2.0, 1.0}));
    CHECK(e.apply(3, FiniteVector({1.0, 2.0})) == FiniteVector({0.0, 0.0}));
    CHECK(e.support_bound() == 2);
    CHECK_THROWS_AS(OperatorSeries::explicit_terms(
                        {LinearOperator::identity(2), LinearOperator::identity(3)}),
                    ValidationError);
  }

  SECTION("unbounded-support rules have no support bound") {
    CHECK(OperatorSeries::scalar(CoefficientRule::harmonic()).support_bound() ==
          static_cast<std::size_t>(-1));
    CHECK(OperatorSeries::scalar(CoefficientRule::zero()).support_bound() == 0);
  }
}

TEST_CASE("multiplier sequences") {
  SECTION("deterministic kinds") {
    CHECK(MultiplierSequence::ones(2).term(9) == FiniteVector({1.0, 1.0}));
    const MultiplierSequence alt = MultiplierSequence::alternating(1.5, 1);
    CHECK(alt.term(1) == FiniteVector({1.5}));
    CHECK(alt.term(2) == FiniteVector({-1.5}));
    const MultiplierSequence fs = MultiplierSequence::finite_support({1.0, -2.0, 3.0}, 1);
    CHECK(fs.term(3) == FiniteVector({3.0}));
    CHECK(fs.term(4) == FiniteVector({0.0}));
    CHECK(fs.support_bound() == 3);
    CHECK(fs.claimed_class() == SequenceClass::Phi);
    CHECK(MultiplierSequence::geometric_decay(2.0, 1).term(3) == FiniteVector({0.125}));
  }

  SECTION("scaling multiplies every term") {
    const MultiplierSequence x = MultiplierSequence::finite_support({1.0, -2.0}, 2).scaled(3.0);
    CHECK(x.term(2) == FiniteVector({-6.0, -6.0}));
    CHECK(x.term(5) == FiniteVector({0.0, 0.0}));
  }

  SECTION("seeded kinds are pure in (seed, k)") {
    const MultiplierSequence a = MultiplierSequence::seeded_bounded(7, 4);
    const MultiplierSequence b = MultiplierSequence::seeded_bounded(7, 4);
    CHECK(a.term(11) == b.term(11));
    CHECK(a.term(3) == a.term(3));
    CHECK_FALSE(a.term(3) == MultiplierSequence::seeded_bounded(8, 4).term(3));
  }

  SECTION("seeded bounded terms have unit sup norm") {
    const MultiplierSequence x = MultiplierSequence::seeded_bounded(99, 5);
    for (std::size_t k = 1; k <= 40; ++k) {
      CHECK(x.term(k).norm(NormKind::sup()) == 1.0);
    }
    CHECK(x.sup_norm(40) == 1.0);
  }

  SECTION("seeded null norms decay geometrically") {
    const MultiplierSequence x = MultiplierSequence::seeded_null(5, 3);
    for (std::size_t k = 1; k <= 60; ++k) {
      const double n = x.term(k).norm(NormKind::sup());
      const double cap = std::pow(0.95, static_cast<double>(k));
      CHECK(n <= cap * (1.0 + 1e-12));
      CHECK(n >= 0.5 * cap * (1.0 - 1e-12));
    }
  }

  SECTION("class evidence") {
    CHECK(MultiplierSequence::finite_support({1.0}, 1).class_evidence(10).consistent);
    CHECK(MultiplierSequence::geometric_decay(2.0, 1).class_evidence(100).consistent);
    CHECK(MultiplierSequence::seeded_null(3, 2).class_evidence(800).consistent);
    CHECK(MultiplierSequence::ones(2).class_evidence(100).consistent);
    // a claimed-null sequence that never decays is flagged
    const MultiplierSequence fake = MultiplierSequence::explicit_list(
        std::vector<FiniteVector>(4, FiniteVector({1.0})), SequenceClass::Null);
    CHECK(fake.class_evidence(3).consistent == false);
  }

  SECTION("validation") {
    CHECK_THROWS_AS(MultiplierSequence::ones(0), ValidationError);
    CHECK_THROWS_AS(MultiplierSequence::alternating(0.0, 1), ValidationError);
    CHECK_THROWS_AS(MultiplierSequence::geometric_decay(1.0, 1), ValidationError);
    CHECK_THROWS_AS(MultiplierSequence::finite_support({}, 1), ValidationError);
    CHECK_THROWS_AS(MultiplierSequence::ones(1).term(0), ValidationError);
    CHECK_THROWS_AS(MultiplierSequence::ones(1).sup_norm(0), ValidationError);
  }
}

namespace {

OperatorSeries grandi_series() {
  return OperatorSeries::scalar(CoefficientRule::alternating_unit());
}

}  // namespace

TEST_CASE("membership of a finitely supported multiplier: every space, one limit") {
  const MultiplierSequence x = MultiplierSequence::finite_support({1.0, -2.0, 3.0}, 1);
  const TruncationSchedule sched({500, 5000}, 50, 1e-8);
  const MembershipReport rep =
      membership(grandi_series(), x, RieszWeights::power(1.0), sched, MembershipOptions{});

  // sum of (-1)^{k+1} x_k = 1 + 2 + 3; the sums are constant from depth 3 on
  for (SpaceId s : kAllSpaces) {
    CHECK(rep.member(s));
    const ConvergenceVerdict& v = rep.verdict_for(s);
    CHECK(v.kind == VerdictKind::Converged);
    REQUIRE(v.limit.has_value());
    CHECK((*v.limit)[0] == 6.0);
    CHECK(v.route == EstimateRoute::Direct);
  }
  CHECK(rep.final_partial_sum[0] == 6.0);
  CHECK(rep.almost.via_direct);
  CHECK(rep.functional_count >= 1);
}

TEST_CASE("membership tuple of the alternating unit series with the ones multiplier") {
  const TruncationSchedule sched({2000, 20000}, 50, 1e-4);
  const MembershipReport rep = membership(grandi_series(), MultiplierSequence::ones(1),
                                          RieszWeights::constant(1.0), sched,
                                          MembershipOptions{});
  CHECK_FALSE(rep.member(SpaceId::Ordinary));
  CHECK_FALSE(rep.member(SpaceId::OrdinaryCauchy));  // the sums oscillate by 1
  CHECK(rep.member(SpaceId::Almost));
  CHECK(rep.member(SpaceId::Cesaro));
  CHECK(rep.member(SpaceId::Riesz));
  CHECK(rep.member(SpaceId::RieszCauchy));
  CHECK(rep.member(SpaceId::WeakRiesz));
  REQUIRE(rep.verdict_for(SpaceId::Riesz).limit.has_value());
  CHECK((*rep.verdict_for(SpaceId::Riesz).limit)[0] == Catch::Approx(0.5).margin(1e-4));
  CHECK(rep.verdict_for(SpaceId::Riesz).route == EstimateRoute::Averaged);
  CHECK_FALSE(rep.almost.via_direct);
}

TEST_CASE("membership of a divergent constant series is empty") {
  const OperatorSeries ones_series = OperatorSeries::scalar(CoefficientRule::constant(1.0));
  // 5000 > 10 * 400 strictly, so the growth witness can fire on s_n = n
  const TruncationSchedule sched({400, 5000}, 50, 1e-4);
  const MembershipReport rep = membership(ones_series, MultiplierSequence::ones(1),
                                          RieszWeights::constant(1.0), sched,
                                          MembershipOptions{});
  for (SpaceId s : kAllSpaces) CHECK_FALSE(rep.member(s));
  CHECK(rep.ordinary.kind == VerdictKind::Diverging);
  CHECK(rep.riesz.kind == VerdictKind::Diverging);
}

TEST_CASE("membership options validate functional overrides") {
  const TruncationSchedule sched({200, 400}, 20, 1e-4);
  MembershipOptions opts;
  // battery must start with the coordinate functionals
  opts.functionals = std::vector<Functional>{
      Functional(FiniteVector({0.5, 0.5}), NormKind::sup(), true)};
  const OperatorSeries d = OperatorSeries::diagonal(CoefficientRule::geometric(2.0), 2);
  CHECK_THROWS_AS(membership(d, MultiplierSequence::ones(2), RieszWeights::constant(1.0),
                             sched, opts),
                  ValidationError);
}

TEST_CASE("h_bound closed form, brackets and growth") {
  SECTION("scalar series: exact prefix supremum") {
    const OperatorSeries s =
        OperatorSeries::scalar(CoefficientRule::explicit_list({1.0, -2.0, 3.0}));
    const HBoundResult hb = h_bound(s, 10, 0, 0);
    CHECK(hb.exact);
    CHECK(hb.value == 6.0);
    REQUIRE(hb.upper.has_value());
    CHECK(*hb.upper == 6.0);
    CHECK(hb.best_prefix == 3);
    CHECK(hb.value == oracle::exhaustive_h_scalar({1.0, -2.0, 3.0}));
  }

  SECTION("the bound grows with depth for non-summable rules") {
    const OperatorSeries g = grandi_series();
    CHECK(h_bound(g, 10, 0, 0).value == 10.0);
    CHECK(h_bound(g, 20, 0, 0).value == 20.0);
  }

  SECTION("diagonal geometric: greedy reaches the absolute sum") {
    const OperatorSeries d = OperatorSeries::diagonal(CoefficientRule::geometric(2.0), 2);
    const HBoundResult hb = h_bound(d, 30, 4, 42);
    REQUIRE(hb.upper.has_value());
    // all coefficients positive: the aligned trial is already extremal
    CHECK(hb.value == Catch::Approx(1.0 - std::pow(2.0, -30.0)).epsilon(1e-15));
    CHECK(hb.value <= *hb.upper);
    CHECK(*hb.upper == Catch::Approx(1.0 - std::pow(2.0, -30.0)).epsilon(1e-15));
  }

  SECTION("rank-one: sup-norm partial sums saturate at the coefficient size") {
    const OperatorSeries r = OperatorSeries::rank_one(CoefficientRule::constant(1.0), 5);
    const HBoundResult hb = h_bound(r, 8, 4, 42);
    CHECK(hb.value == 1.0);
    REQUIRE(hb.upper.has_value());
    CHECK(*hb.upper == 5.0);  // sum of term norms over the support
  }

  CHECK_THROWS_AS(h_bound(grandi_series(), 0, 0, 0), ValidationError);
}

TEST_CASE("probes draw from the requested class") {
  const TruncationSchedule sched({500, 5000}, 50, 1e-4);

  SECTION("null probes of an absolutely summable diagonal all converge") {
    const OperatorSeries d = OperatorSeries::diagonal(CoefficientRule::geometric(2.0), 3);
    const ProbeReport rep = multiplier_probe(d, SequenceClass::Null, 6, 11, sched);
    CHECK(rep.trials == 6);
    CHECK(rep.converged == 6);
    CHECK(rep.all_converged());
    CHECK(rep.worst.kind == VerdictKind::Converged);
    CHECK(rep.records.size() == 6);
  }

  SECTION("bounded probes of the harmonic diagonal do not all converge") {
    const OperatorSeries h = OperatorSeries::diagonal(CoefficientRule::harmonic(), 2);
    const ProbeReport rep = multiplier_probe(h, SequenceClass::Bounded, 5, 11, sched);
    CHECK(rep.trials == 5);
    CHECK(rep.converged < 5);
    CHECK(severity(rep.worst.kind) > severity(VerdictKind::Converged));
    // counts partition the trials
    CHECK(rep.converged + rep.cauchy + rep.diverging + rep.inconclusive == rep.trials);
  }

  SECTION("the probe rejects the phi class and zero trials") {
    CHECK_THROWS_AS(multiplier_probe(grandi_series(), SequenceClass::Phi, 3, 1, sched),
                    ValidationError);
    CHECK_THROWS_AS(multiplier_probe(grandi_series(), SequenceClass::Null, 0, 1, sched),
                    ValidationError);
  }
}

TEST_CASE("inclusion chain over the four averaged spaces") {
  const TruncationSchedule sched({2000, 20000}, 50, 1e-4);

  SECTION("alternating unit series with ones: ordinary fails, the rest hold") {
    const ChainReport cr = inclusion_chain_probe(grandi_series(), MultiplierSequence::ones(1),
                                                 RieszWeights::constant(1.0), sched);
    CHECK_FALSE(cr.in_ordinary);
    CHECK(cr.in_almost);
    CHECK(cr.in_cesaro);
    CHECK(cr.in_riesz);
    CHECK(cr.consistent);
  }

  SECTION("divergent constant series: all four fail, consistently") {
    const OperatorSeries ones_series = OperatorSeries::scalar(CoefficientRule::constant(1.0));
    const ChainReport cr = inclusion_chain_probe(ones_series, MultiplierSequence::ones(1),
                                                 RieszWeights::constant(1.0),
                                                 TruncationSchedule({500, 5000}, 50, 1e-4));
    CHECK_FALSE(cr.in_ordinary);
    CHECK_FALSE(cr.in_almost);
    CHECK_FALSE(cr.in_cesaro);
    CHECK_FALSE(cr.in_riesz);
    CHECK(cr.consistent);
  }

  SECTION("finitely supported multiplier: all four hold") {
    const ChainReport cr = inclusion_chain_probe(
        grandi_series(), MultiplierSequence::finite_support({2.0, 1.0}, 1),
        RieszWeights::power(1.0), TruncationSchedule({500, 5000}, 50, 1e-6));
    CHECK(cr.in_ordinary);
    CHECK(cr.in_almost);
    CHECK(cr.in_cesaro);
    CHECK(cr.in_riesz);
    CHECK(cr.consistent);
  }

  SECTION("seeded decaying multipliers keep the chain consistent") {
    const OperatorSeries d = OperatorSeries::diagonal(CoefficientRule::geometric(2.0), 2);
    const TruncationSchedule cheap({300, 3000}, 30, 1e-3);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const ChainReport cr = inclusion_chain_probe(
          d, MultiplierSequence::seeded_bounded(seed, 2), RieszWeights::power(1.0), cheap);
      CHECK(cr.consistent);
      CHECK(cr.in_ordinary);  // absolutely summable terms converge outright
    }
  }
}
