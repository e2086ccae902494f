#pragma once

// Brute-force reference implementations. Nothing here reuses the library's
// cost tables, incremental congestion or search code: every quantity is
// recomputed from the raw strategy paths.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <set>
#include <vector>

#include "arena/exact.hpp"
#include "arena/game.hpp"
#include "arena/graph.hpp"

namespace arena::oracle {

/// Recursive DFS over the raw edge list.
inline std::set<std::vector<EdgeId>> simple_paths(const Graph& g, NodeId u, NodeId v,
                                                  std::size_t max_len) {
  std::set<std::vector<EdgeId>> out;
  std::vector<bool> visited(g.node_count(), false);
  std::vector<EdgeId> current;
  std::function<void(NodeId)> walk = [&](NodeId at) {
    if (at == v) {
      out.insert(current);
      return;
    }
    if (current.size() == max_len) return;
    for (EdgeId id = 0; id < g.edge_count(); ++id) {
      const Edge& e = g.edge(id);
      NodeId next;
      if (e.u == at) next = e.v;
      else if (!g.directed() && e.v == at) next = e.u;
      else continue;
      if (visited[next]) continue;
      visited[next] = true;
      current.push_back(id);
      walk(next);
      current.pop_back();
      visited[next] = false;
    }
  };
  visited[u] = true;
  walk(u);
  return out;
}

inline std::vector<std::uint64_t> edge_counts(const GameInstance& game, const Routing& r) {
  std::vector<std::uint64_t> c(game.edge_count(), 0);
  for (std::size_t i = 0; i < game.player_count(); ++i)
    for (std::size_t e = 0; e < game.edge_count(); ++e)
      for (EdgeId x : game.player(i).strategies[r.choices[i]].edges)
        if (x == e) ++c[e];
  return c;
}

inline ExactCost power(std::uint64_t base, std::uint64_t exp) {
  ExactCost r = 1;
  for (std::uint64_t k = 0; k < exp; ++k) r *= base;
  return r;
}

inline ExactCost cost(const GameInstance& game, const Routing& r, std::size_t i,
                      const CostModel& m) {
  const auto c = edge_counts(game, r);
  ExactCost total = 0;
  for (EdgeId e : game.player(i).strategies[r.choices[i]].edges) {
    switch (m.kind()) {
      case CostModel::Kind::exponential: total += power(2, c[e]); break;
      case CostModel::Kind::linear_sum: total += c[e]; break;
      case CostModel::Kind::polynomial_sum: total += power(c[e], m.degree()); break;
      case CostModel::Kind::bottleneck_max:
        if (ExactCost(c[e]) > total) total = c[e];
        break;
    }
  }
  return total;
}

inline ExactCost potential(const GameInstance& game, const Routing& r) {
  ExactCost total = 0;
  for (std::uint64_t c : edge_counts(game, r)) total += power(2, c);
  return total;
}

inline std::uint64_t social_cost(const GameInstance& game, const Routing& r) {
  std::uint64_t best = 0;
  for (std::uint64_t c : edge_counts(game, r)) best = std::max(best, c);
  return best;
}

/// Tries every unilateral deviation of every player.
inline bool is_nash(const GameInstance& game, const Routing& r, const CostModel& m) {
  for (std::size_t i = 0; i < game.player_count(); ++i) {
    const ExactCost here = oracle::cost(game, r, i, m);
    for (std::size_t j = 0; j < game.player(i).strategies.size(); ++j) {
      Routing dev = r;
      dev.choices[i] = j;
      if (oracle::cost(game, dev, i, m) < here) return false;
    }
  }
  return true;
}

/// Decodes profile number `index` in mixed radix (last player fastest).
inline Routing decode(const GameInstance& game, std::uint64_t index) {
  Routing r{std::vector<std::size_t>(game.player_count(), 0)};
  for (std::size_t k = game.player_count(); k-- > 0;) {
    const std::uint64_t radix = game.player(k).strategies.size();
    r.choices[k] = index % radix;
    index /= radix;
  }
  return r;
}

inline std::uint64_t profile_total(const GameInstance& game) {
  std::uint64_t n = 1;
  for (const Player& p : game.players()) n *= p.strategies.size();
  return n;
}

inline std::vector<Routing> nash_set(const GameInstance& game, const CostModel& m) {
  std::vector<Routing> out;
  const std::uint64_t n = profile_total(game);
  for (std::uint64_t idx = 0; idx < n; ++idx) {
    Routing r = oracle::decode(game, idx);
    if (oracle::is_nash(game, r, m)) out.push_back(std::move(r));
  }
  return out;
}

inline std::uint64_t optimum(const GameInstance& game) {
  std::uint64_t best = UINT64_MAX;
  const std::uint64_t n = profile_total(game);
  for (std::uint64_t idx = 0; idx < n; ++idx)
    best = std::min(best, oracle::social_cost(game, oracle::decode(game, idx)));
  return best;
}

}  // namespace arena::oracle
