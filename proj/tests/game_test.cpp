#include <gtest/gtest.h>

#include "arena/arena.hpp"
#include "oracle.hpp"
#include "test_util.hpp"

using namespace arena;
using arena::testing::all_models;
using arena::testing::suite;

TEST(Game, Validation) {
  Graph g(3, {{0, 1}, {1, 2}});
  EXPECT_THROW(GameInstance(g, {}), Error);
  EXPECT_THROW(GameInstance(Graph(2, {}), {Player{0, 1, {}}}), Error);
  EXPECT_THROW(GameInstance(g, {Player{0, 2, {}}}), Error);
  EXPECT_THROW(GameInstance(g, {Player{0, 0, {Path{0, 0, {0}}}}}), Error);
  EXPECT_THROW(GameInstance(g, {Player{0, 2, {Path{0, 1, {0}}}}}), Error);
  EXPECT_THROW(GameInstance(g, {Player{0, 2, {Path{0, 2, {1, 0}}}}}), Error);
  EXPECT_THROW(GameInstance(g, {Player{0, 2, {Path{0, 2, {0, 1}}, Path{0, 2, {0, 1}}}}}), Error);
  const GameInstance ok(g, {Player{0, 2, {Path{0, 2, {0, 1}}}}});
  EXPECT_EQ(ok.max_path_length(), 2u);
  EXPECT_EQ(ok.profile_count(), 1);
}

TEST(Game, RoutingChecks) {
  const GameInstance game = gen_fig2(3).game;
  EXPECT_THROW(check_routing(game, Routing{{0, 0}}), Error);
  EXPECT_THROW(check_routing(game, Routing{{0, 0, 3}}), Error);
  try {
    player_cost(game, all_first(game), 7, CostModel::linear_sum());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::invalid_player);
  }
}

TEST(Congestion, Counts) {
  Graph g(3, {{0, 1}, {1, 2}, {0, 2}});
  const GameInstance game(g, {Player{0, 2, {Path{0, 2, {0, 1}}}}, Player{1, 2, {Path{1, 2, {1}}}}});
  const auto prof = congestion(game, all_first(game));
  EXPECT_EQ(prof.counts, (std::vector<std::uint32_t>{1, 2, 0}));
  EXPECT_EQ(prof.counts, congestion(game, all_first(game)).counts);
}

TEST(Congestion, Fig2AllOnE) {
  const auto gen = gen_fig2(5);
  const auto prof = congestion(gen.game, all_first(gen.game));
  EXPECT_EQ(prof[0], 5u);
  for (EdgeId e = 1; e < gen.game.edge_count(); ++e) EXPECT_EQ(prof[e], 0u);
}

TEST(CostModel, ParseAndName) {
  for (const char* s : {"exp", "max", "linear", "poly:3"})
    EXPECT_EQ(CostModel::parse(s).name(), s);
  for (const char* s : {"", "poly:0", "poly:9", "poly:x", "cubic"})
    EXPECT_THROW(CostModel::parse(s), Error) << s;
}

TEST(PlayerCost, ExponentialExamples) {
  // Player on edges at congestion (2, 1) pays 4 + 2.
  Graph g(3, {{0, 1}, {1, 2}});
  const GameInstance game(
      g, {Player{0, 2, {Path{0, 2, {0, 1}}}}, Player{0, 1, {Path{0, 1, {0}}}}});
  EXPECT_EQ(player_cost(game, all_first(game), 0, CostModel::exponential()), 6);
  const GameInstance solo(Graph(2, {{0, 1}}), {Player{0, 1, {Path{0, 1, {0}}}}});
  EXPECT_EQ(player_cost(solo, all_first(solo), 0, CostModel::exponential()), 2);
}

TEST(PlayerCost, Fig2Linear) {
  const auto game = gen_fig2(5).game;
  for (const auto& c : player_costs(game, all_first(game), CostModel::linear_sum()))
    EXPECT_EQ(c, 5);
}

TEST(SocialCost, Fig2) {
  const auto gen = gen_fig2(5);
  EXPECT_EQ(social_cost(gen.game, *gen.intended), 5u);
  EXPECT_EQ(social_cost(gen.game, *gen.optimum), 1u);
  const auto solo = arena::testing::single_player();
  EXPECT_EQ(social_cost(solo, Routing{{1}}), 1u);
}

TEST(Potential, Examples) {
  Graph g(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
  const GameInstance game(g, {Player{0, 2, {Path{0, 2, {0, 1}}}}});
  EXPECT_EQ(potential(game, all_first(game)), 6);
  const auto fig = gen_fig2(3).game;
  EXPECT_EQ(potential(fig, all_first(fig)), 14);
  EXPECT_EQ(potential(gen_fig2(5).game, all_first(gen_fig2(5).game)), 52);
}

TEST(Potential, FunctionOfProfileOnly) {
  const auto game = gen_fig2(4).game;
  // Players 0 and 1 swap paths: same profile.
  EXPECT_EQ(potential(game, Routing{{1, 2, 0, 0}}), potential(game, Routing{{2, 1, 0, 0}}));
}

TEST(Properties, AgainstOracleOnRandomRoutings) {
  Rng rng(11);
  std::size_t checked = 0;
  for (const GameInstance& game : suite(50)) {
    for (int rep = 0; rep < 25; ++rep) {
      const Routing r = acceptance::detail::random_routing(game, rng);
      const auto prof = congestion(game, r);
      const auto want = oracle::edge_counts(game, r);
      std::uint64_t lengths = 0;
      for (std::size_t i = 0; i < game.player_count(); ++i) lengths += game.strategy(i, r[i]).length();
      EXPECT_EQ(prof.total(), lengths);  // conservation
      for (EdgeId e = 0; e < game.edge_count(); ++e) EXPECT_EQ(prof[e], want[e]);
      EXPECT_EQ(social_cost(game, r), oracle::social_cost(game, r));
      EXPECT_EQ(potential(game, r), oracle::potential(game, r));
      EXPECT_GE(potential(game, r), ExactCost(game.edge_count() + 1));
      for (const CostModel& m : all_models())
        for (std::size_t i = 0; i < game.player_count(); ++i)
          EXPECT_EQ(player_cost(game, r, i, m), oracle::cost(game, r, i, m));
      // Max model: the worst player pays exactly SC.
      const auto costs = player_costs(game, r, CostModel::bottleneck_max());
      EXPECT_EQ(*std::max_element(costs.begin(), costs.end()), ExactCost(social_cost(game, r)));
      ++checked;
    }
  }
  EXPECT_GE(checked, 1000u);
}

TEST(Properties, ExponentialCostMonotone) {
  // Adding a player to someone's edges never lowers that player's cost.
  const auto game = gen_fig2(4).game;
  const auto exp = CostModel::exponential();
  Routing r{{1, 0, 0, 0}};
  const ExactCost alone = player_cost(game, r, 0, exp);
  r.choices[1] = 1;
  EXPECT_GT(player_cost(game, r, 0, exp), alone);
}

TEST(Dilation, LongestChosenPath) {
  const auto gen = gen_fig2(4);
  EXPECT_EQ(dilation(gen.game, *gen.intended), 1u);
  EXPECT_EQ(dilation(gen.game, *gen.optimum), 4u);
}
