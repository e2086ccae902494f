#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "arena/analysis.hpp"
#include "arena/dynamics.hpp"
#include "arena/error.hpp"
#include "arena/exact.hpp"
#include "arena/game.hpp"
#include "arena/graph.hpp"
#include "arena/rng.hpp"

namespace arena {

/// A generated game plus the routings the construction intends, if any.
struct GeneratedInstance {
  GameInstance game;
  std::string name;
  std::string spec;
  std::optional<std::uint64_t> seed;
  std::optional<Routing> intended;  // high-congestion equilibrium candidate
  std::optional<Routing> optimum;   // a routing attaining C*
};

// ---------------------------------------------------------------------------
// Linear-cost lower-bound family: k players u->v, a direct edge e and k-1
// edge-disjoint u->v paths of length k.

inline GeneratedInstance gen_fig2(std::size_t k) {
  if (k < 2) throw Error(Errc::validation, "fig2 needs k >= 2");
  const NodeId u = 0;
  const NodeId v = 1;
  std::vector<Edge> edges{{u, v}};
  NodeId next = 2;
  for (std::size_t j = 0; j + 1 < k; ++j) {
    NodeId at = u;
    for (std::size_t t = 0; t + 1 < k; ++t) {
      edges.push_back({at, next});
      at = next++;
    }
    edges.push_back({at, v});
  }
  Graph g(next, std::move(edges));
  auto strategies = enumerate_simple_paths(g, u, v, k);
  std::vector<Player> players(k, Player{u, v, strategies});

  GeneratedInstance out{GameInstance(std::move(g), std::move(players)),
                        "fig2-k" + std::to_string(k), "fig2 k=" + std::to_string(k),
                        std::nullopt, std::nullopt, std::nullopt};
  out.intended = all_first(out.game);  // everyone on e
  Routing spread;
  for (std::size_t i = 0; i < k; ++i) spread.choices.push_back(i);  // one per path
  out.optimum = spread;
  return out;
}

// ---------------------------------------------------------------------------
// Three-player exponential game with two Nash-routings: social cost 2 with
// player costs (4, 8, 6) and social cost 1 with player costs (2, 6, 6).
//
//   a = 0-1 (players 0 and 1 share it at SC 2), b = 1-2, c = 2-3,
//   player 1's spread path 0-4-3-2, player 2's spread path 1-5-6-3.

inline GameInstance multi_nash_witness_topology() {
  Graph g(7, {{0, 1}, {1, 2}, {2, 3}, {0, 4}, {4, 3}, {1, 5}, {5, 6}, {6, 3}});
  std::vector<Player> players;
  for (auto [s, d] : {std::pair<NodeId, NodeId>{0, 1}, {0, 2}, {1, 3}})
    players.push_back({s, d, enumerate_simple_paths(g, s, d, kUnboundedLength)});
  return GameInstance(std::move(g), std::move(players));
}

struct WitnessCertificate {
  Routing congested;  // SC 2, costs (4, 8, 6)
  Routing spread;     // SC 1, costs (2, 6, 6)
};

/// Finds both certified routings among the exponential-model Nash set and
/// checks C* = 1 with no Nash-routing above SC 2; throws construction_failed
/// otherwise.
inline WitnessCertificate certify_multi_nash_witness(const GameInstance& game) {
  const CostModel exp = CostModel::exponential();
  const std::vector<ExactCost> want_congested{4, 8, 6};
  const std::vector<ExactCost> want_spread{2, 6, 6};
  std::optional<Routing> congested;
  std::optional<Routing> spread;
  std::uint32_t worst = 0;
  for (const NashEntry& n : enumerate_nash(game, exp)) {
    worst = std::max(worst, n.social_cost);
    const auto costs = player_costs(game, n.routing, exp);
    if (!congested && n.social_cost == 2 && costs == want_congested) congested = n.routing;
    if (!spread && n.social_cost == 1 && costs == want_spread) spread = n.routing;
  }
  if (!congested || !spread)
    throw Error(Errc::construction_failed,
                "multi-Nash witness lost a certified Nash-routing");
  if (worst != 2 || optimal_social_cost(game).social_cost != 1)
    throw Error(Errc::construction_failed, "multi-Nash witness no longer has PoA 2");
  return {*congested, *spread};
}

inline GeneratedInstance gen_multi_nash_witness() {
  GameInstance game = multi_nash_witness_topology();
  WitnessCertificate cert = certify_multi_nash_witness(game);
  return {std::move(game), "multi-nash", "multi-nash", std::nullopt,
          std::move(cert.congested), std::move(cert.spread)};
}

// ---------------------------------------------------------------------------
// Seeded random instances.

struct RandomSpec {
  std::size_t nodes = 6;
  std::size_t edges = 8;
  std::size_t players = 3;
  std::size_t max_len = 3;
  std::uint64_t seed = 0;
  std::uint64_t profile_cap = kDefaultProfileCap;
};

inline std::string describe(const RandomSpec& s) {
  return "random nodes=" + std::to_string(s.nodes) + " edges=" + std::to_string(s.edges) +
         " players=" + std::to_string(s.players) + " max_len=" + std::to_string(s.max_len) +
         " seed=" + std::to_string(s.seed);
}

/// Connected random graph (random spanning tree plus random extra edges) and
/// random distinct endpoint pairs whose strategy sets are all simple paths up
/// to max_len. Pairs without a path are redrawn.
inline GeneratedInstance gen_random(const RandomSpec& spec) {
  const std::size_t n = spec.nodes;
  if (n < 2) throw Error(Errc::validation, "random instance needs at least 2 nodes");
  const std::size_t max_edges = n * (n - 1) / 2;
  if (spec.edges < n - 1 || spec.edges > max_edges)
    throw Error(Errc::validation, "edge count must be in " + std::to_string(n - 1) + ".." +
                                      std::to_string(max_edges) + " for a connected simple graph");
  if (spec.players == 0) throw Error(Errc::validation, "random instance needs a player");
  if (spec.max_len == 0) throw Error(Errc::validation, "max_len must be at least 1");

  Rng rng(spec.seed);
  std::vector<NodeId> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = static_cast<NodeId>(i);
  shuffle(order, rng);

  std::vector<std::vector<bool>> adjacent(n, std::vector<bool>(n, false));
  std::vector<Edge> edges;
  auto link = [&](NodeId a, NodeId b) {
    if (a > b) std::swap(a, b);
    adjacent[a][b] = true;
    edges.push_back({a, b});
  };
  for (std::size_t i = 1; i < n; ++i)
    link(order[i], order[uniform_below(rng, i)]);
  std::vector<Edge> spare;
  for (NodeId a = 0; a < n; ++a)
    for (NodeId b = a + 1; b < n; ++b)
      if (!adjacent[a][b]) spare.push_back({a, b});
  shuffle(spare, rng);
  for (std::size_t i = 0; edges.size() < spec.edges; ++i) link(spare[i].u, spare[i].v);
  std::sort(edges.begin(), edges.end(),
            [](const Edge& x, const Edge& y) { return std::pair(x.u, x.v) < std::pair(y.u, y.v); });
  Graph g(n, std::move(edges));

  constexpr int kAttempts = 200;
  for (int attempt = 0; attempt < kAttempts; ++attempt) {
    std::vector<Player> players;
    ExactCost profiles = 1;
    for (std::size_t i = 0; i < spec.players; ++i) {
      std::vector<Path> paths;
      NodeId s = 0;
      NodeId d = 0;
      for (int tries = 0; tries < kAttempts && paths.empty(); ++tries) {
        s = static_cast<NodeId>(uniform_below(rng, n));
        d = static_cast<NodeId>(uniform_below(rng, n - 1));
        if (d >= s) ++d;
        paths = enumerate_simple_paths(g, s, d, spec.max_len);
      }
      if (paths.empty())
        throw Error(Errc::generation_failed, "could not draw a connected endpoint pair");
      profiles *= paths.size();
      players.push_back({s, d, std::move(paths)});
    }
    if (profiles > ExactCost(spec.profile_cap)) continue;
    return {GameInstance(std::move(g), std::move(players)), "random", describe(spec), spec.seed,
            std::nullopt, std::nullopt};
  }
  throw Error(Errc::generation_failed,
              "no player draw stayed under the profile cap after " + std::to_string(kAttempts) +
                  " attempts");
}

// ---------------------------------------------------------------------------
// Expansion chains: a root edge carrying C_hat players, each supported by an
// optimal path of L* fresh edges whose own occupants sit at congestion
// C_hat - k(l*+1) at depth k, down to short fresh terminal paths.

struct ChainStats {
  std::uint32_t c_hat = 0;
  std::uint32_t l_star = 0;
  std::uint32_t log_l_star = 0;
  std::uint32_t depth = 0;                     // number of expansion levels
  std::vector<std::uint32_t> congestion;       // C_k for k = 0..depth
  std::vector<std::uint64_t> expansion_edges;  // E_k for k = 1..depth, counted
  std::uint64_t terminal_edges = 0;
  ExactCost ecmin_partial_sum;  // 1 + sum_k (L*)^k (C_hat-1) prod_{t<k} C_t
  bool beyond_threshold = false;  // C_hat > l* + 11
};

struct ExpansionChain {
  GeneratedInstance instance;
  ChainStats stats;
};

inline constexpr std::uint64_t kDefaultChainEdgeCap = 100'000;

namespace detail {

inline std::uint32_t exact_log2(std::uint32_t x) {
  std::uint32_t l = 0;
  while ((1u << l) < x) ++l;
  return l;
}

inline std::uint64_t terminal_path_length(std::uint32_t c) {
  return std::max<std::uint64_t>(2, std::uint64_t{1} << (c - 1));
}

}  // namespace detail

/// Edges the chain would have, computed arithmetically before building.
inline ExactCost chain_edge_count(std::uint32_t c_hat, std::uint32_t l_star) {
  const std::uint32_t l = detail::exact_log2(l_star);
  ExactCost total = 1;
  ExactCost supported = c_hat - 1;  // players needing an optimal path
  std::int64_t c = c_hat;
  while (supported > 0) {
    if (c > static_cast<std::int64_t>(l) + 1) {
      const ExactCost level_edges = supported * l_star;
      total += level_edges;
      c -= l + 1;
      supported = level_edges * c;
    } else {
      total += supported * detail::terminal_path_length(static_cast<std::uint32_t>(c));
      break;
    }
  }
  return total;
}

inline ExpansionChain gen_expansion_chain(std::uint32_t c_hat, std::uint32_t l_star,
                                          std::uint64_t edge_cap = kDefaultChainEdgeCap) {
  if (l_star < 2 || (l_star & (l_star - 1)) != 0)
    throw Error(Errc::validation, "L* must be a power of two >= 2");
  if (c_hat < 2) throw Error(Errc::validation, "C_hat must be at least 2");
  const ExactCost predicted = chain_edge_count(c_hat, l_star);
  if (predicted > ExactCost(edge_cap))
    throw Error(Errc::instance_too_large, "expansion chain needs " + predicted.str() +
                                              " edges, cap is " + std::to_string(edge_cap));

  ChainStats st;
  st.c_hat = c_hat;
  st.l_star = l_star;
  st.log_l_star = detail::exact_log2(l_star);
  st.beyond_threshold = c_hat > st.log_l_star + 11;

  std::vector<Edge> edges{{0, 1}};
  NodeId next_node = 2;
  struct Pending {
    NodeId source;
    NodeId destination;
    EdgeId seat;  // single-edge equilibrium path
    std::vector<EdgeId> optimal;
  };
  std::vector<Pending> all;
  for (std::uint32_t i = 0; i < c_hat; ++i) all.push_back({0, 1, 0, {}});

  auto fresh_path = [&](NodeId from, NodeId to, std::uint64_t len) {
    std::vector<EdgeId> ids;
    NodeId at = from;
    for (std::uint64_t t = 0; t < len; ++t) {
      const NodeId nxt = (t + 1 == len) ? to : next_node++;
      ids.push_back(static_cast<EdgeId>(edges.size()));
      edges.push_back({at, nxt});
      at = nxt;
    }
    return ids;
  };

  // Root player 0 keeps e as its only (and optimal) path.
  std::size_t level_begin = 1;
  std::size_t level_end = all.size();
  std::uint32_t c = c_hat;
  st.congestion.push_back(c);
  while (level_begin < level_end) {
    if (c > st.log_l_star + 1) {
      const std::uint32_t c_next = c - st.log_l_star - 1;
      std::uint64_t level_edges = 0;
      for (std::size_t p = level_begin; p < level_end; ++p) {
        const std::vector<EdgeId> opt = fresh_path(all[p].source, all[p].destination, l_star);
        all[p].optimal = opt;
        level_edges += l_star;
        for (EdgeId e : opt)
          for (std::uint32_t s = 0; s < c_next; ++s)
            all.push_back({edges[e].u, edges[e].v, e, {}});
      }
      st.expansion_edges.push_back(level_edges);
      st.congestion.push_back(c_next);
      ++st.depth;
      c = c_next;
      level_begin = level_end;
      level_end = all.size();
    } else {
      const std::uint64_t len = detail::terminal_path_length(c);
      for (std::size_t p = level_begin; p < level_end; ++p) {
        all[p].optimal = fresh_path(all[p].source, all[p].destination, len);
        st.terminal_edges += len;
      }
      break;
    }
  }

  st.ecmin_partial_sum = 1;
  ExactCost term = ExactCost(c_hat - 1);
  for (std::uint32_t k = 1; k <= st.depth; ++k) {
    term *= l_star;
    if (k > 1) term *= st.congestion[k - 1];
    st.ecmin_partial_sum += term;
  }

  Graph g(next_node, std::move(edges));
  std::vector<Player> players;
  players.reserve(all.size());
  Routing seated;
  Routing spread;
  for (const Pending& p : all) {
    Player pl{p.source, p.destination, {Path{p.source, p.destination, {p.seat}}}};
    if (!p.optimal.empty()) pl.strategies.push_back(Path{p.source, p.destination, p.optimal});
    seated.choices.push_back(0);
    spread.choices.push_back(pl.strategies.size() - 1);
    players.push_back(std::move(pl));
  }
  const std::string spec =
      "chain c_hat=" + std::to_string(c_hat) + " l_star=" + std::to_string(l_star);
  return {{GameInstance(std::move(g), std::move(players)),
           "chain-c" + std::to_string(c_hat) + "-l" + std::to_string(l_star), spec, std::nullopt,
           std::move(seated), std::move(spread)},
          std::move(st)};
}

// ---------------------------------------------------------------------------

struct Fig2Spec {
  std::size_t k = 3;
};
struct MultiNashSpec {};
struct ChainSpec {
  std::uint32_t c_hat = 3;
  std::uint32_t l_star = 2;
};

using GeneratorSpec = std::variant<Fig2Spec, MultiNashSpec, RandomSpec, ChainSpec>;

inline GeneratedInstance generate(const GeneratorSpec& spec) {
  struct Visit {
    GeneratedInstance operator()(const Fig2Spec& s) const { return gen_fig2(s.k); }
    GeneratedInstance operator()(const MultiNashSpec&) const { return gen_multi_nash_witness(); }
    GeneratedInstance operator()(const RandomSpec& s) const { return gen_random(s); }
    GeneratedInstance operator()(const ChainSpec& s) const {
      return gen_expansion_chain(s.c_hat, s.l_star).instance;
    }
  };
  return std::visit(Visit{}, spec);
}

}  // namespace arena
