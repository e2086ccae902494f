#include <gtest/gtest.h>

#include "arena/arena.hpp"
#include "oracle.hpp"
#include "test_util.hpp"

using namespace arena;

namespace {
const CostModel kExp = CostModel::exponential();
const CostModel kLinear = CostModel::linear_sum();
}  // namespace

TEST(Fig2, Shape) {
  for (std::size_t k = 2; k <= 6; ++k) {
    const auto gen = gen_fig2(k);
    const auto& game = gen.game;
    EXPECT_EQ(game.graph().node_count(), 2 + (k - 1) * (k - 1)) << k;
    EXPECT_EQ(game.edge_count(), 1 + k * (k - 1)) << k;
    EXPECT_EQ(game.player_count(), k);
    for (const Player& p : game.players()) {
      ASSERT_EQ(p.strategies.size(), k);
      EXPECT_EQ(p.strategies[0].edges, std::vector<EdgeId>{0});
      for (std::size_t j = 1; j < k; ++j) EXPECT_EQ(p.strategies[j].length(), k);
    }
  }
  const auto k3 = gen_fig2(3).game;
  EXPECT_EQ(k3.graph().node_count(), 6u);
  EXPECT_EQ(k3.edge_count(), 7u);
  const auto k5 = gen_fig2(5).game;
  EXPECT_EQ(k5.graph().node_count(), 18u);
  EXPECT_EQ(k5.edge_count(), 21u);
  EXPECT_THROW(gen_fig2(1), Error);
}

TEST(Fig2, LinearPoaAtLeastK) {
  for (std::size_t k = 3; k <= 6; ++k) {
    const auto gen = gen_fig2(k);
    EXPECT_TRUE(is_nash(gen.game, *gen.intended, kLinear));
    EXPECT_EQ(social_cost(gen.game, *gen.intended), k);
    EXPECT_EQ(social_cost(gen.game, *gen.optimum), 1u);
    if (gen.game.profile_count() <= 100'000) {
      EXPECT_GE(price_of_anarchy(gen.game, kLinear), make_rational(k, 1));
    }
  }
}

TEST(Fig2, TwoPlayersExponentialWeaklyStable) {
  const auto gen = gen_fig2(2);
  // Both on e pay 4; the long path would also cost 4.
  EXPECT_TRUE(is_nash(gen.game, *gen.intended, kExp));
}

TEST(MultiNash, Certified) {
  const auto gen = gen_multi_nash_witness();
  ASSERT_TRUE(gen.intended && gen.optimum);
  EXPECT_EQ(social_cost(gen.game, *gen.intended), 2u);
  EXPECT_EQ(player_costs(gen.game, *gen.intended, kExp), (std::vector<ExactCost>{4, 8, 6}));
  EXPECT_EQ(social_cost(gen.game, *gen.optimum), 1u);
  EXPECT_EQ(player_costs(gen.game, *gen.optimum, kExp), (std::vector<ExactCost>{2, 6, 6}));
  EXPECT_TRUE(oracle::is_nash(gen.game, *gen.intended, kExp));
  EXPECT_TRUE(oracle::is_nash(gen.game, *gen.optimum, kExp));
  const auto rep = analyze(gen.game, kExp);
  EXPECT_EQ(rep.poa, make_rational(2, 1));
  EXPECT_EQ(rep.pos, make_rational(1, 1));
}

TEST(MultiNash, CorruptedTopologyRejected) {
  try {
    certify_multi_nash_witness(acceptance::detail::corrupted_witness());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::construction_failed);
  }
}

TEST(Random, Deterministic) {
  RandomSpec spec;
  spec.seed = 42;
  const auto a = gen_random(spec);
  const auto b = gen_random(spec);
  EXPECT_EQ(a.game, b.game);
  EXPECT_EQ(io::format_instance(a), io::format_instance(b));
  spec.seed = 43;
  EXPECT_NE(io::format_instance(gen_random(spec)), io::format_instance(a));
}

TEST(Random, PostConditionsAndConvergence) {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const RandomSpec spec = acceptance::detail::suite_spec(seed);
    const auto gen = gen_random(spec);
    const auto& game = gen.game;
    EXPECT_EQ(game.graph().node_count(), spec.nodes);
    EXPECT_EQ(game.edge_count(), spec.edges);
    EXPECT_EQ(game.player_count(), spec.players);
    EXPECT_LE(game.profile_count(), ExactCost(spec.profile_cap));
    for (const Player& p : game.players()) {
      EXPECT_FALSE(p.strategies.empty());
      EXPECT_EQ(p.strategies.size(),
                oracle::simple_paths(game.graph(), p.source, p.destination, spec.max_len).size());
    }
    const auto trace = run_best_response(game, all_first(game), kExp, Schedule::round_robin());
    EXPECT_TRUE(trace.converged);
    EXPECT_TRUE(is_nash(game, trace.final, kExp));
  }
}

TEST(Random, BadSpecs) {
  RandomSpec spec;
  spec.edges = 2;  // fewer than n - 1
  EXPECT_THROW(gen_random(spec), Error);
  spec = {};
  spec.edges = 100;
  EXPECT_THROW(gen_random(spec), Error);
  spec = {};
  spec.players = 0;
  EXPECT_THROW(gen_random(spec), Error);
  spec = {};
  spec.nodes = 8;
  spec.edges = 28;
  spec.players = 8;
  spec.max_len = 7;
  spec.profile_cap = 10;
  try {
    gen_random(spec);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::generation_failed);
  }
}

TEST(Chain, EdgeCountMatchesBuild) {
  for (std::uint32_t l_star : {2u, 4u})
    for (std::uint32_t c_hat = 2; c_hat <= 8; ++c_hat) {
      if (chain_edge_count(c_hat, l_star) > 10'000) continue;
      const auto chain = gen_expansion_chain(c_hat, l_star);
      EXPECT_EQ(ExactCost(chain.instance.game.edge_count()), chain_edge_count(c_hat, l_star));
    }
}

TEST(Chain, StatsAndEquilibrium) {
  for (std::uint32_t l_star : {2u, 4u})
    for (std::uint32_t c_hat = 2; c_hat <= 8; ++c_hat) {
      if (chain_edge_count(c_hat, l_star) > 10'000) continue;
      const auto chain = gen_expansion_chain(c_hat, l_star);
      const auto& st = chain.stats;
      const auto& game = chain.instance.game;
      const Routing& seated = *chain.instance.intended;
      const Routing& spread = *chain.instance.optimum;
      EXPECT_EQ(congestion(game, seated)[0], c_hat);
      EXPECT_EQ(social_cost(game, seated), c_hat);
      EXPECT_EQ(social_cost(game, spread), 1u);
      EXPECT_TRUE(is_nash(game, seated, kExp)) << c_hat << " " << l_star;
      ASSERT_EQ(st.congestion.size(), st.depth + 1);
      for (std::uint32_t k = 1; k <= st.depth; ++k)
        EXPECT_EQ(st.congestion[k], st.congestion[k - 1] - st.log_l_star - 1);
      // Edges beyond the root: the expansion levels match the closed form.
      ExactCost expansion = 0;
      for (auto e : st.expansion_edges) expansion += e;
      EXPECT_EQ(expansion + 1, st.ecmin_partial_sum);
      EXPECT_EQ(ExactCost(game.edge_count()), st.ecmin_partial_sum + st.terminal_edges);
      EXPECT_FALSE(st.beyond_threshold);
    }
}

TEST(Chain, DepthOneRange) {
  // l* = 1 for L* = 2: depth 1 exactly when 2 < C_hat <= 4.
  EXPECT_EQ(gen_expansion_chain(2, 2).stats.depth, 0u);
  EXPECT_EQ(gen_expansion_chain(3, 2).stats.depth, 1u);
  EXPECT_EQ(gen_expansion_chain(4, 2).stats.depth, 1u);
  EXPECT_EQ(gen_expansion_chain(5, 2).stats.depth, 2u);
}

TEST(Chain, Errors) {
  EXPECT_THROW(gen_expansion_chain(5, 3), Error);
  EXPECT_THROW(gen_expansion_chain(1, 2), Error);
  try {
    gen_expansion_chain(14, 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::instance_too_large);
  }
}

TEST(Generate, VariantDispatch) {
  EXPECT_EQ(generate(Fig2Spec{4}).game, gen_fig2(4).game);
  EXPECT_EQ(generate(MultiNashSpec{}).name, "multi-nash");
  EXPECT_EQ(generate(ChainSpec{3, 2}).game, gen_expansion_chain(3, 2).instance.game);
}
