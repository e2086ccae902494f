#include <gtest/gtest.h>

#include <set>

#include "arena/arena.hpp"
#include "oracle.hpp"
#include "test_util.hpp"

using namespace arena;
using arena::testing::suite;

namespace {
const CostModel kExp = CostModel::exponential();
const CostModel kLinear = CostModel::linear_sum();
}  // namespace

TEST(Optimum, Examples) {
  EXPECT_EQ(optimal_social_cost(gen_fig2(5).game).social_cost, 1u);
  EXPECT_EQ(optimal_social_cost(arena::testing::single_player()).social_cost, 1u);
  const auto bridge = arena::testing::bridge_pair();
  EXPECT_EQ(optimal_social_cost(bridge).social_cost, 2u);
  EXPECT_EQ(forced_congestion(bridge), 2u);
}

TEST(Optimum, PrunedMatchesPlainScanAndOracle) {
  for (const GameInstance& game : suite(50)) {
    const auto pruned = optimal_social_cost(game, {kDefaultProfileCap, true});
    const auto plain = optimal_social_cost(game, {kDefaultProfileCap, false});
    EXPECT_EQ(pruned.social_cost, plain.social_cost);
    EXPECT_EQ(pruned.routing, plain.routing);
    EXPECT_EQ(pruned.social_cost, oracle::optimum(game));
    EXPECT_EQ(social_cost(game, pruned.routing), pruned.social_cost);
    EXPECT_LE(forced_congestion(game), pruned.social_cost);
    EXPECT_GE(reachable_congestion(game), pruned.social_cost);
  }
}

TEST(Optimum, CapEnforced) {
  try {
    optimal_social_cost(gen_fig2(5).game, {10, true});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::instance_too_large);
  }
}

TEST(Nash, MultiNashWitness) {
  const auto game = gen_multi_nash_witness().game;
  const auto nash = enumerate_nash(game, kExp);
  ASSERT_GE(nash.size(), 2u);
  std::set<std::uint32_t> costs;
  for (const auto& n : nash) costs.insert(n.social_cost);
  EXPECT_EQ(costs, (std::set<std::uint32_t>{1, 2}));
}

TEST(Nash, Fig2LinearIncludesAllOnE) {
  const auto gen = gen_fig2(5);
  const auto nash = enumerate_nash(gen.game, kLinear);
  EXPECT_NE(std::find_if(nash.begin(), nash.end(),
                         [&](const NashEntry& n) { return n.routing == *gen.intended; }),
            nash.end());
}

TEST(Nash, SinglePlayerPicksCheapest) {
  const auto game = arena::testing::single_player();
  const auto nash = enumerate_nash(game, kExp);
  ASSERT_EQ(nash.size(), 1u);
  EXPECT_EQ(nash[0].routing, Routing{{0}});  // the direct edge
}

TEST(Nash, MatchesOracle) {
  for (const GameInstance& game : suite(50))
    for (const CostModel& m : arena::testing::all_models()) {
      const auto got = enumerate_nash(game, m);
      const auto want = oracle::nash_set(game, m);
      ASSERT_EQ(got.size(), want.size()) << m.name();
      for (std::size_t k = 0; k < got.size(); ++k) {
        EXPECT_EQ(got[k].routing, want[k]);
        EXPECT_EQ(got[k].social_cost, oracle::social_cost(game, want[k]));
      }
      if (m.is_exponential()) {
        EXPECT_FALSE(got.empty());
      }
    }
}

TEST(Analyze, Examples) {
  const auto witness = analyze(gen_multi_nash_witness().game, kExp);
  EXPECT_EQ(witness.optimal_sc, 1u);
  EXPECT_EQ(witness.poa, make_rational(2, 1));
  EXPECT_EQ(witness.pos, make_rational(1, 1));
  EXPECT_EQ(to_string(witness.poa), "2/1");

  EXPECT_GE(price_of_anarchy(gen_fig2(5).game, kLinear), make_rational(5, 1));
  EXPECT_GE(price_of_anarchy(gen_fig2(4).game, kLinear), make_rational(4, 1));

  const auto solo = analyze(arena::testing::single_player(), kExp);
  EXPECT_EQ(solo.poa, make_rational(1, 1));
  EXPECT_EQ(solo.pos, make_rational(1, 1));
}

TEST(Analyze, PoaTimesOptimumIsWorstNash) {
  for (const GameInstance& game : suite(30)) {
    const auto rep = analyze(game, kExp);
    std::uint32_t worst = 0, best = UINT32_MAX;
    for (const auto& n : rep.nash_routings) {
      worst = std::max(worst, n.social_cost);
      best = std::min(best, n.social_cost);
    }
    EXPECT_EQ(rep.poa * rep.optimal_sc, Rational(worst));
    EXPECT_EQ(rep.pos * rep.optimal_sc, Rational(best));
    EXPECT_LE(rep.pos, rep.poa);
    EXPECT_GE(rep.pos, Rational(1));
  }
}

TEST(Analyze, EveryModelHasPureEquilibria) {
  // All four models are congestion games with a potential, so no_equilibrium
  // is only a guard.
  for (const GameInstance& game : suite(50))
    for (const CostModel& m : arena::testing::all_models())
      EXPECT_NO_THROW(analyze(game, m)) << m.name();
}

TEST(BoundCheck, Examples) {
  const auto game = gen_multi_nash_witness().game;
  const auto rep = analyze(game, kExp);
  const auto check = poa_bound_check(game, rep, make_rational(10, 1));
  EXPECT_TRUE(check.holds);
  EXPECT_GT(check.margin, 0.0);
  for (const GameInstance& g : suite(10))
    EXPECT_TRUE(poa_bound_check(g, make_rational(1, 1), make_rational(1, 1)).holds);
}

TEST(Bracket, ChainIsExact) {
  const auto chain = gen_expansion_chain(5, 2);
  const auto& inst = chain.instance;
  const auto b = bracket_poa(inst.game, kExp, *inst.intended, *inst.optimum);
  EXPECT_TRUE(b.witness_is_nash);
  EXPECT_TRUE(b.exact());
  EXPECT_EQ(b.upper, make_rational(5, 1));
}

TEST(Bracket, NonNashWitnessHasNoLowerEnd) {
  const auto gen = gen_fig2(4);
  const auto b = bracket_poa(gen.game, kExp, *gen.intended, *gen.optimum);
  EXPECT_FALSE(b.witness_is_nash);
  EXPECT_FALSE(b.lower.has_value());
}
