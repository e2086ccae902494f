#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "arena/error.hpp"
#include "arena/exact.hpp"
#include "arena/graph.hpp"

namespace arena {

struct Player {
  NodeId source = 0;
  NodeId destination = 0;
  std::vector<Path> strategies;
};

/// Immutable problem statement: a graph, its players and their explicit
/// strategy sets. `max_path_length()` (L) is always recomputed here.
class GameInstance {
 public:
  GameInstance() = default;

  GameInstance(Graph graph, std::vector<Player> players)
      : graph_(std::move(graph)), players_(std::move(players)) {
    if (players_.empty()) throw Error(Errc::validation, "a game needs at least one player");
    if (graph_.edge_count() == 0) throw Error(Errc::validation, "a game needs at least one edge");
    for (std::size_t i = 0; i < players_.size(); ++i) {
      const Player& p = players_[i];
      const std::string who = "player " + std::to_string(i);
      if (p.source >= graph_.node_count() || p.destination >= graph_.node_count())
        throw Error(Errc::validation, who + " has an endpoint outside the graph");
      if (p.source == p.destination)
        throw Error(Errc::validation, who + " has source equal to destination");
      if (p.strategies.empty()) throw Error(Errc::validation, who + " has an empty strategy set");
      std::set<std::vector<EdgeId>> distinct;
      for (std::size_t j = 0; j < p.strategies.size(); ++j) {
        const Path& s = p.strategies[j];
        if (s.source != p.source || s.destination != p.destination)
          throw Error(Errc::validation,
                      who + " strategy " + std::to_string(j) + " has the wrong endpoints");
        if (!validate_path(graph_, s))
          throw Error(Errc::validation,
                      who + " strategy " + std::to_string(j) + " is not a simple path");
        if (!distinct.insert(s.edges).second)
          throw Error(Errc::validation,
                      who + " strategy " + std::to_string(j) + " is a duplicate");
        max_len_ = std::max(max_len_, s.length());
      }
    }
  }

  const Graph& graph() const noexcept { return graph_; }
  const std::vector<Player>& players() const noexcept { return players_; }
  const Player& player(std::size_t i) const { return players_.at(i); }
  std::size_t player_count() const noexcept { return players_.size(); }
  std::size_t edge_count() const noexcept { return graph_.edge_count(); }
  std::size_t max_path_length() const noexcept { return max_len_; }

  const Path& strategy(std::size_t player, std::size_t choice) const {
    return players_.at(player).strategies.at(choice);
  }

  /// Number of pure strategy profiles, prod_i |strategy set of i|.
  ExactCost profile_count() const {
    ExactCost n = 1;
    for (const Player& p : players_) n *= p.strategies.size();
    return n;
  }

  friend bool operator==(const GameInstance& a, const GameInstance& b) {
    if (!(a.graph_ == b.graph_) || a.players_.size() != b.players_.size()) return false;
    for (std::size_t i = 0; i < a.players_.size(); ++i) {
      const Player& x = a.players_[i];
      const Player& y = b.players_[i];
      if (x.source != y.source || x.destination != y.destination ||
          x.strategies != y.strategies)
        return false;
    }
    return true;
  }

 private:
  Graph graph_;
  std::vector<Player> players_;
  std::size_t max_len_ = 0;
};

/// A pure strategy profile: one strategy-set index per player.
struct Routing {
  std::vector<std::size_t> choices;

  std::size_t size() const noexcept { return choices.size(); }
  std::size_t operator[](std::size_t i) const { return choices[i]; }

  friend auto operator<=>(const Routing&, const Routing&) = default;
  friend bool operator==(const Routing&, const Routing&) = default;
};

inline Routing all_first(const GameInstance& game) {
  return Routing{std::vector<std::size_t>(game.player_count(), 0)};
}

inline void check_routing(const GameInstance& game, const Routing& r) {
  if (r.size() != game.player_count())
    throw Error(Errc::invalid_routing, "routing has " + std::to_string(r.size()) +
                                           " choices for " +
                                           std::to_string(game.player_count()) + " players");
  for (std::size_t i = 0; i < r.size(); ++i)
    if (r[i] >= game.player(i).strategies.size())
      throw Error(Errc::invalid_routing,
                  "player " + std::to_string(i) + " choice " + std::to_string(r[i]) +
                      " out of range (strategy set has " +
                      std::to_string(game.player(i).strategies.size()) + ")");
}

inline void check_player(const GameInstance& game, std::size_t i) {
  if (i >= game.player_count())
    throw Error(Errc::invalid_player, "player index " + std::to_string(i) + " out of range");
}

/// Edge-congestion C_e for every edge id.
struct CongestionProfile {
  std::vector<std::uint32_t> counts;

  std::uint32_t operator[](EdgeId e) const { return counts[e]; }

  /// Network congestion C.
  std::uint32_t max() const noexcept {
    return counts.empty() ? 0 : *std::max_element(counts.begin(), counts.end());
  }
  std::uint64_t total() const noexcept {
    return std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
  }

  void add(const Path& p) {
    for (EdgeId e : p.edges) ++counts[e];
  }
  void remove(const Path& p) {
    for (EdgeId e : p.edges) --counts[e];
  }

  friend bool operator==(const CongestionProfile&, const CongestionProfile&) = default;
};

inline CongestionProfile congestion(const GameInstance& game, const Routing& r) {
  check_routing(game, r);
  CongestionProfile prof{std::vector<std::uint32_t>(game.edge_count(), 0)};
  for (std::size_t i = 0; i < r.size(); ++i) prof.add(game.strategy(i, r[i]));
  return prof;
}

/// Selects how a player's cost is computed from the congestion on its path.
class CostModel {
 public:
  enum class Kind { exponential, bottleneck_max, linear_sum, polynomial_sum };

  static constexpr unsigned kMaxDegree = 8;

  static CostModel exponential() { return CostModel(Kind::exponential, 0); }
  static CostModel bottleneck_max() { return CostModel(Kind::bottleneck_max, 0); }
  static CostModel linear_sum() { return CostModel(Kind::linear_sum, 1); }
  static CostModel polynomial_sum(unsigned degree) {
    if (degree < 1 || degree > kMaxDegree)
      throw Error(Errc::validation, "polynomial degree must be in 1.." +
                                        std::to_string(kMaxDegree));
    return CostModel(Kind::polynomial_sum, degree);
  }

  /// Parses the CLI spelling: exp | max | linear | poly:d.
  static CostModel parse(std::string_view s) {
    if (s == "exp") return exponential();
    if (s == "max") return bottleneck_max();
    if (s == "linear") return linear_sum();
    if (s.starts_with("poly:")) {
      auto d = s.substr(5);
      if (d.empty() || d.size() > 2 ||
          !std::all_of(d.begin(), d.end(), [](char c) { return c >= '0' && c <= '9'; }))
        throw Error(Errc::validation, "bad polynomial degree in '" + std::string(s) + "'");
      return polynomial_sum(static_cast<unsigned>(std::stoul(std::string(d))));
    }
    throw Error(Errc::validation, "unknown cost model '" + std::string(s) + "'");
  }

  Kind kind() const noexcept { return kind_; }
  unsigned degree() const noexcept { return degree_; }
  bool is_exponential() const noexcept { return kind_ == Kind::exponential; }

  std::string name() const {
    switch (kind_) {
      case Kind::exponential: return "exp";
      case Kind::bottleneck_max: return "max";
      case Kind::linear_sum: return "linear";
      case Kind::polynomial_sum: return "poly:" + std::to_string(degree_);
    }
    return "?";
  }

  /// Contribution of one edge at congestion `c`. For bottleneck_max this is
  /// c itself and path costs combine with max instead of +.
  ExactCost edge_term(std::uint32_t c) const {
    switch (kind_) {
      case Kind::exponential: return pow2(c);
      case Kind::bottleneck_max:
      case Kind::linear_sum: return ExactCost(c);
      case Kind::polynomial_sum: return ipow(c, degree_);
    }
    return 0;
  }

  bool combines_with_max() const noexcept { return kind_ == Kind::bottleneck_max; }

  friend bool operator==(const CostModel&, const CostModel&) = default;

 private:
  CostModel(Kind k, unsigned d) : kind_(k), degree_(d) {}

  Kind kind_;
  unsigned degree_;
};

/// Edge terms for congestions 0..max_congestion, computed once per model so
/// the inner loops of the analyses only add.
class CostTable {
 public:
  CostTable(const CostModel& model, std::size_t max_congestion)
      : model_(model) {
    terms_.reserve(max_congestion + 1);
    for (std::size_t c = 0; c <= max_congestion; ++c)
      terms_.push_back(model.edge_term(static_cast<std::uint32_t>(c)));
  }

  const CostModel& model() const noexcept { return model_; }
  const ExactCost& term(std::uint32_t c) const { return terms_.at(c); }

  /// Cost of `p` when each edge e carries counts[e] + extra paths.
  ExactCost path_cost(const Path& p, const CongestionProfile& prof,
                      std::int32_t extra = 0) const {
    ExactCost total = 0;
    for (EdgeId e : p.edges) {
      const auto c = static_cast<std::uint32_t>(static_cast<std::int64_t>(prof[e]) + extra);
      if (model_.combines_with_max()) {
        if (terms_.at(c) > total) total = terms_[c];
      } else {
        total += terms_.at(c);
      }
    }
    return total;
  }

 private:
  CostModel model_;
  std::vector<ExactCost> terms_;
};

/// Cost of candidate path `cand` for a player whose current path `own` is
/// already counted in `prof`: own path removed, candidate added.
inline ExactCost deviation_cost(const CostTable& table, const CongestionProfile& prof,
                                const Path& own, const Path& cand) {
  const bool max_combine = table.model().combines_with_max();
  ExactCost total = 0;
  for (EdgeId e : cand.edges) {
    std::uint32_t c = prof[e] + 1;
    if (std::find(own.edges.begin(), own.edges.end(), e) != own.edges.end()) --c;
    const ExactCost& t = table.term(c);
    if (max_combine) {
      if (t > total) total = t;
    } else {
      total += t;
    }
  }
  return total;
}

/// pc_i under `model`, including player i's own contribution to congestion.
inline ExactCost player_cost(const GameInstance& game, const Routing& r, std::size_t i,
                             const CostModel& model) {
  check_player(game, i);
  const CongestionProfile prof = congestion(game, r);
  const CostTable table(model, game.player_count());
  return table.path_cost(game.strategy(i, r[i]), prof);
}

inline std::vector<ExactCost> player_costs(const GameInstance& game, const Routing& r,
                                           const CostModel& model) {
  const CongestionProfile prof = congestion(game, r);
  const CostTable table(model, game.player_count());
  std::vector<ExactCost> out;
  out.reserve(game.player_count());
  for (std::size_t i = 0; i < game.player_count(); ++i)
    out.push_back(table.path_cost(game.strategy(i, r[i]), prof));
  return out;
}

/// SC = C, the maximum edge-congestion.
inline std::uint32_t social_cost(const GameInstance& game, const Routing& r) {
  return congestion(game, r).max();
}

/// f = sum over all edges of 2^{C_e}; unused edges contribute 1 each.
inline ExactCost potential(const CongestionProfile& prof) {
  ExactCost total = 0;
  for (std::uint32_t c : prof.counts) total += pow2(c);
  return total;
}

inline ExactCost potential(const GameInstance& game, const Routing& r) {
  return potential(congestion(game, r));
}

/// D: longest chosen path. Reported only.
inline std::size_t dilation(const GameInstance& game, const Routing& r) {
  check_routing(game, r);
  std::size_t d = 0;
  for (std::size_t i = 0; i < r.size(); ++i) d = std::max(d, game.strategy(i, r[i]).length());
  return d;
}

}  // namespace arena
