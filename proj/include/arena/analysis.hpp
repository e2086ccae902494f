#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "arena/dynamics.hpp"
#include "arena/error.hpp"
#include "arena/exact.hpp"
#include "arena/game.hpp"

namespace arena {

inline constexpr std::uint64_t kDefaultProfileCap = 10'000'000;

inline void check_profile_cap(const GameInstance& game, std::uint64_t cap) {
  const ExactCost n = game.profile_count();
  if (n > ExactCost(cap))
    throw Error(Errc::instance_too_large,
                n.str() + " strategy profiles exceed the cap of " + std::to_string(cap));
}

namespace detail {

/// Walks every profile in lexicographic order (last player fastest) while
/// keeping the congestion profile current.
class ProfileWalker {
 public:
  explicit ProfileWalker(const GameInstance& game)
      : game_(game), routing_(all_first(game)), profile_(congestion(game, routing_)) {}

  const Routing& routing() const noexcept { return routing_; }
  const CongestionProfile& profile() const noexcept { return profile_; }

  bool advance() {
    for (std::size_t k = game_.player_count(); k-- > 0;) {
      const std::size_t size = game_.player(k).strategies.size();
      profile_.remove(game_.strategy(k, routing_[k]));
      if (routing_[k] + 1 < size) {
        ++routing_.choices[k];
        profile_.add(game_.strategy(k, routing_[k]));
        return true;
      }
      routing_.choices[k] = 0;
      profile_.add(game_.strategy(k, 0));
    }
    return false;
  }

 private:
  const GameInstance& game_;
  Routing routing_;
  CongestionProfile profile_;
};

inline bool stable_under(const GameInstance& game, const Routing& r,
                         const CongestionProfile& prof, const CostTable& table) {
  for (std::size_t i = 0; i < game.player_count(); ++i) {
    const Path& own = game.strategy(i, r[i]);
    const ExactCost current = table.path_cost(own, prof);
    const auto& strategies = game.player(i).strategies;
    for (std::size_t j = 0; j < strategies.size(); ++j) {
      if (j == r[i]) continue;
      if (deviation_cost(table, prof, own, strategies[j]) < current) return false;
    }
  }
  return true;
}

}  // namespace detail

struct OptimalRouting {
  std::uint32_t social_cost = 0;
  Routing routing;
};

struct OptimumOptions {
  std::uint64_t cap = kDefaultProfileCap;
  bool prune = true;
};

/// Lower bound on C*: 1, or the number of players forced onto a single edge
/// because every one of their strategies uses it.
inline std::uint32_t forced_congestion(const GameInstance& game) {
  std::vector<std::uint32_t> forced(game.edge_count(), 0);
  for (const Player& p : game.players()) {
    std::vector<std::uint32_t> hits(game.edge_count(), 0);
    for (const Path& s : p.strategies)
      for (EdgeId e : s.edges) ++hits[e];
    for (std::size_t e = 0; e < hits.size(); ++e)
      if (hits[e] == p.strategies.size()) ++forced[e];
  }
  return std::max<std::uint32_t>(1, *std::max_element(forced.begin(), forced.end()));
}

/// Upper bound on any profile's social cost: the most players that could
/// ever share one edge.
inline std::uint32_t reachable_congestion(const GameInstance& game) {
  std::vector<std::uint32_t> reach(game.edge_count(), 0);
  std::vector<std::size_t> stamp(game.edge_count(), SIZE_MAX);
  for (std::size_t i = 0; i < game.player_count(); ++i)
    for (const Path& s : game.player(i).strategies)
      for (EdgeId e : s.edges)
        if (stamp[e] != i) {
          stamp[e] = i;
          ++reach[e];
        }
  return *std::max_element(reach.begin(), reach.end());
}

/// Minimum social cost C* over all profiles, with the lexicographically
/// smallest profile attaining it. With pruning, a depth-first search cuts
/// any partial profile whose congestion already reaches the incumbent.
inline OptimalRouting optimal_social_cost(const GameInstance& game, OptimumOptions opts = {}) {
  check_profile_cap(game, opts.cap);
  OptimalRouting best;
  best.social_cost = UINT32_MAX;

  if (!opts.prune) {
    detail::ProfileWalker walk(game);
    do {
      const std::uint32_t sc = walk.profile().max();
      if (sc < best.social_cost) {
        best.social_cost = sc;
        best.routing = walk.routing();
      }
    } while (walk.advance());
    return best;
  }

  const std::size_t n = game.player_count();
  const std::uint32_t floor = forced_congestion(game);
  std::vector<std::uint32_t> counts(game.edge_count(), 0);
  Routing r{std::vector<std::size_t>(n, 0)};
  // running[k] is the congestion after players 0..k-1 are placed.
  std::vector<std::uint32_t> running(n + 1, 0);
  std::size_t depth = 0;
  std::vector<std::size_t> next(n, 0);
  bool done = false;
  while (!done) {
    if (depth == n) {
      if (running[n] < best.social_cost) {
        best.social_cost = running[n];
        best.routing = r;
        if (best.social_cost <= floor) break;
      }
      --depth;
      for (EdgeId e : game.strategy(depth, r[depth]).edges) --counts[e];
      continue;
    }
    const auto& strategies = game.player(depth).strategies;
    bool descended = false;
    while (next[depth] < strategies.size()) {
      const std::size_t j = next[depth]++;
      std::uint32_t peak = running[depth];
      for (EdgeId e : strategies[j].edges) peak = std::max(peak, counts[e] + 1);
      if (peak >= best.social_cost) continue;
      for (EdgeId e : strategies[j].edges) ++counts[e];
      r.choices[depth] = j;
      running[depth + 1] = peak;
      ++depth;
      if (depth < n) next[depth] = 0;
      descended = true;
      break;
    }
    if (descended) continue;
    if (depth == 0) {
      done = true;
    } else {
      --depth;
      for (EdgeId e : game.strategy(depth, r[depth]).edges) --counts[e];
    }
  }
  return best;
}

struct NashEntry {
  Routing routing;
  std::uint32_t social_cost = 0;

  friend bool operator==(const NashEntry&, const NashEntry&) = default;
};

/// Every pure Nash-routing in lexicographic profile order.
inline std::vector<NashEntry> enumerate_nash(const GameInstance& game, const CostModel& model,
                                             std::uint64_t cap = kDefaultProfileCap) {
  check_profile_cap(game, cap);
  const CostTable table(model, game.player_count());
  std::vector<NashEntry> out;
  detail::ProfileWalker walk(game);
  do {
    if (detail::stable_under(game, walk.routing(), walk.profile(), table))
      out.push_back({walk.routing(), walk.profile().max()});
  } while (walk.advance());
  return out;
}

struct AnalysisReport {
  std::string model;
  std::uint64_t profile_count = 0;
  std::uint32_t optimal_sc = 0;
  Routing optimal_routing;
  std::vector<NashEntry> nash_routings;
  Rational poa;
  Rational pos;
};

/// Full exhaustive analysis. Throws no_equilibrium when no pure Nash-routing
/// exists (never the case under the exponential model).
inline AnalysisReport analyze(const GameInstance& game, const CostModel& model,
                              std::uint64_t cap = kDefaultProfileCap) {
  check_profile_cap(game, cap);
  AnalysisReport rep;
  rep.model = model.name();
  rep.profile_count = game.profile_count().convert_to<std::uint64_t>();
  const OptimalRouting opt = optimal_social_cost(game, {cap, true});
  rep.optimal_sc = opt.social_cost;
  rep.optimal_routing = opt.routing;
  rep.nash_routings = enumerate_nash(game, model, cap);
  if (rep.nash_routings.empty())
    throw Error(Errc::no_equilibrium, "no pure Nash-routing under model " + model.name());
  std::uint32_t worst = 0;
  std::uint32_t best = UINT32_MAX;
  for (const NashEntry& n : rep.nash_routings) {
    worst = std::max(worst, n.social_cost);
    best = std::min(best, n.social_cost);
  }
  rep.poa = make_rational(worst, rep.optimal_sc);
  rep.pos = make_rational(best, rep.optimal_sc);
  return rep;
}

inline Rational price_of_anarchy(const GameInstance& game, const CostModel& model,
                                 std::uint64_t cap = kDefaultProfileCap) {
  return analyze(game, model, cap).poa;
}

inline Rational price_of_stability(const GameInstance& game, const CostModel& model,
                                   std::uint64_t cap = kDefaultProfileCap) {
  return analyze(game, model, cap).pos;
}

struct BoundCheck {
  bool holds = false;
  double bound = 0.0;
  double margin = 0.0;  // bound - poa; negative when violated
};

/// Compares a PoA value against alpha (1 + log2 L)(1 + log2 |E|). The bound
/// is asymptotic, so a violation is reported, never thrown.
inline BoundCheck poa_bound_check(const GameInstance& game, const Rational& poa,
                                  const Rational& alpha) {
  const double l = static_cast<double>(std::max<std::size_t>(1, game.max_path_length()));
  const double e = static_cast<double>(game.edge_count());
  BoundCheck out;
  out.bound = alpha.convert_to<double>() * (1.0 + std::log2(l)) * (1.0 + std::log2(e));
  out.margin = out.bound - poa.convert_to<double>();
  out.holds = out.margin >= 0.0;
  return out;
}

inline BoundCheck poa_bound_check(const GameInstance& game, const AnalysisReport& report,
                                  const Rational& alpha) {
  return poa_bound_check(game, report.poa, alpha);
}

/// PoA bracket for instances too large to enumerate. The upper end divides
/// the reachable congestion by the forced-congestion bound on C* and holds
/// unconditionally; the lower end needs `nash_witness` to be a Nash-routing
/// and uses an optimum witness as the upper bound on C*.
struct PoaBracket {
  bool witness_is_nash = false;
  std::optional<Rational> lower;
  Rational upper;
  std::uint32_t c_star_lower = 0;
  std::uint32_t c_star_upper = 0;
  bool exact() const { return lower && *lower == upper; }
};

inline PoaBracket bracket_poa(const GameInstance& game, const CostModel& model,
                              const Routing& nash_witness, const Routing& optimum_witness) {
  PoaBracket b;
  b.c_star_lower = forced_congestion(game);
  b.c_star_upper = social_cost(game, optimum_witness);
  if (b.c_star_lower > b.c_star_upper)
    throw Error(Errc::validation, "optimum witness beats the forced congestion bound");
  b.upper = make_rational(reachable_congestion(game), b.c_star_lower);
  b.witness_is_nash = is_nash(game, nash_witness, model);
  if (b.witness_is_nash)
    b.lower = make_rational(social_cost(game, nash_witness), b.c_star_upper);
  return b;
}

}  // namespace arena
