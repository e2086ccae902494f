#pragma once

#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "arena/error.hpp"
#include "arena/exact.hpp"
#include "arena/game.hpp"
#include "arena/rng.hpp"

namespace arena {

struct MoveRecord {
  std::size_t player = 0;
  std::size_t from_choice = 0;
  std::size_t to_choice = 0;
  ExactCost pc_before;
  ExactCost pc_after;
  ExactCost potential_before;
  ExactCost potential_after;

  friend bool operator==(const MoveRecord&, const MoveRecord&) = default;
};

struct DynamicsTrace {
  Routing initial;
  std::vector<MoveRecord> moves;
  Routing final;
  bool converged = false;
};

/// Order in which players are offered a move.
///
/// round_robin scans from the player after the last mover. max_gain takes
/// the available greedy move that lowers the potential the most (so the
/// smallest gains come last). random draws a fresh player order per step.
class Schedule {
 public:
  enum class Kind { round_robin, max_gain, random };

  static Schedule round_robin() { return Schedule(Kind::round_robin, 0); }
  static Schedule max_gain() { return Schedule(Kind::max_gain, 0); }
  static Schedule random(std::uint64_t seed) { return Schedule(Kind::random, seed); }

  /// CLI spelling: rr | gain | random:SEED.
  static Schedule parse(std::string_view s) {
    if (s == "rr") return round_robin();
    if (s == "gain") return max_gain();
    if (s.starts_with("random:")) {
      auto d = s.substr(7);
      if (d.empty() || d.size() > 19 ||
          d.find_first_not_of("0123456789") != std::string_view::npos)
        throw Error(Errc::validation, "bad schedule seed in '" + std::string(s) + "'");
      return random(std::stoull(std::string(d)));
    }
    throw Error(Errc::validation, "unknown schedule '" + std::string(s) + "'");
  }

  Kind kind() const noexcept { return kind_; }

  std::string name() const {
    switch (kind_) {
      case Kind::round_robin: return "rr";
      case Kind::max_gain: return "gain";
      case Kind::random: return "random:" + std::to_string(seed_);
    }
    return "?";
  }

  std::vector<std::size_t> order(std::size_t players) {
    std::vector<std::size_t> out(players);
    if (kind_ == Kind::random) {
      std::iota(out.begin(), out.end(), std::size_t{0});
      shuffle(out, rng_);
    } else {
      for (std::size_t k = 0; k < players; ++k) out[k] = (cursor_ + k) % players;
    }
    return out;
  }

  void moved(std::size_t player, std::size_t players) {
    cursor_ = (player + 1) % players;
  }

 private:
  Schedule(Kind k, std::uint64_t seed) : kind_(k), seed_(seed), rng_(seed) {}

  Kind kind_;
  std::uint64_t seed_;
  std::size_t cursor_ = 0;
  Rng rng_;
};

namespace detail {

/// Holds the congestion of one routing and applies moves to it in place.
class Stepper {
 public:
  Stepper(const GameInstance& game, Routing r, const CostModel& model)
      : game_(game), routing_(std::move(r)), table_(model, game.player_count()) {
    profile_ = congestion(game_, routing_);
    potential_ = potential(profile_);
  }

  const Routing& routing() const noexcept { return routing_; }
  const ExactCost& current_potential() const noexcept { return potential_; }

  ExactCost cost_of(std::size_t i) const {
    return table_.path_cost(game_.strategy(i, routing_[i]), profile_);
  }

  /// Lowest-index strategy with the minimum strictly improving cost.
  std::optional<std::pair<std::size_t, ExactCost>> best_response(std::size_t i) const {
    const Path& own = game_.strategy(i, routing_[i]);
    const ExactCost current = table_.path_cost(own, profile_);
    std::optional<std::pair<std::size_t, ExactCost>> best;
    const auto& strategies = game_.player(i).strategies;
    for (std::size_t j = 0; j < strategies.size(); ++j) {
      if (j == routing_[i]) continue;
      ExactCost c = deviation_cost(table_, profile_, own, strategies[j]);
      if (c < current && (!best || c < best->second)) best.emplace(j, std::move(c));
    }
    return best;
  }

  /// Potential after player i switches to `to`, without applying the move.
  ExactCost potential_if(std::size_t i, std::size_t to) const {
    CongestionProfile next = profile_;
    next.remove(game_.strategy(i, routing_[i]));
    next.add(game_.strategy(i, to));
    return potential(next);
  }

  MoveRecord apply(std::size_t i, std::size_t to, ExactCost pc_after) {
    MoveRecord rec;
    rec.player = i;
    rec.from_choice = routing_[i];
    rec.to_choice = to;
    rec.pc_before = cost_of(i);
    rec.pc_after = std::move(pc_after);
    rec.potential_before = potential_;
    // Incremental update: leaving an edge at congestion c lowers its term
    // by 2^{c-1}; joining one at c raises it by 2^c.
    const Path& from = game_.strategy(i, routing_[i]);
    const Path& into = game_.strategy(i, to);
    for (EdgeId e : from.edges) {
      potential_ -= pow2(profile_[e] - 1);
      --profile_.counts[e];
    }
    for (EdgeId e : into.edges) {
      potential_ += pow2(profile_[e]);
      ++profile_.counts[e];
    }
    routing_.choices[i] = to;
    rec.potential_after = potential_;
    return rec;
  }

  std::optional<MoveRecord> step(Schedule& schedule) {
    const std::size_t n = game_.player_count();
    if (schedule.kind() == Schedule::Kind::max_gain) {
      std::optional<std::size_t> pick;
      std::optional<std::pair<std::size_t, ExactCost>> pick_move;
      ExactCost best_drop;
      for (std::size_t i = 0; i < n; ++i) {
        auto br = best_response(i);
        if (!br) continue;
        ExactCost drop = potential_ - potential_if(i, br->first);
        if (!pick || drop > best_drop) {
          pick = i;
          pick_move = std::move(br);
          best_drop = std::move(drop);
        }
      }
      if (!pick) return std::nullopt;
      schedule.moved(*pick, n);
      return apply(*pick, pick_move->first, std::move(pick_move->second));
    }
    for (std::size_t i : schedule.order(n)) {
      auto br = best_response(i);
      if (!br) continue;
      schedule.moved(i, n);
      return apply(i, br->first, std::move(br->second));
    }
    return std::nullopt;
  }

 private:
  const GameInstance& game_;
  Routing routing_;
  CostTable table_;
  CongestionProfile profile_;
  ExactCost potential_;
};

}  // namespace detail

/// Index of player i's best strictly improving strategy, or nothing if i is
/// locally optimal. Ties go to the lowest index; equal cost never moves.
inline std::optional<std::size_t> best_response(const GameInstance& game, const Routing& r,
                                                 std::size_t i, const CostModel& model) {
  check_routing(game, r);
  check_player(game, i);
  detail::Stepper s(game, r, model);
  auto br = s.best_response(i);
  if (!br) return std::nullopt;
  return br->first;
}

inline bool is_nash(const GameInstance& game, const Routing& r, const CostModel& model) {
  check_routing(game, r);
  detail::Stepper s(game, r, model);
  for (std::size_t i = 0; i < game.player_count(); ++i)
    if (s.best_response(i)) return false;
  return true;
}

/// One greedy move by the first improvable player in schedule order, or
/// nothing when `r` is a Nash-routing.
inline std::optional<std::pair<Routing, MoveRecord>> greedy_step(const GameInstance& game,
                                                                 const Routing& r,
                                                                 const CostModel& model,
                                                                 Schedule& schedule) {
  check_routing(game, r);
  detail::Stepper s(game, r, model);
  auto rec = s.step(schedule);
  if (!rec) return std::nullopt;
  return std::make_pair(s.routing(), std::move(*rec));
}

/// Step budget used when the caller does not give one: potential(initial) - |E|
/// under the exponential model, 10 N L otherwise.
inline std::uint64_t default_max_steps(const GameInstance& game, const Routing& initial,
                                       const CostModel& model) {
  if (model.is_exponential())
    return saturate_u64(potential(game, initial) - ExactCost(game.edge_count()));
  return 10ull * game.player_count() * game.max_path_length();
}

class NonConvergence : public Error {
 public:
  NonConvergence(const std::string& what, DynamicsTrace trace)
      : Error(Errc::non_convergence, what), trace_(std::move(trace)) {}

  const DynamicsTrace& trace() const noexcept { return trace_; }

 private:
  DynamicsTrace trace_;
};

/// Repeats greedy moves until none exists or `max_steps` moves were made.
/// Running out of steps throws NonConvergence for non-exponential models;
/// under the exponential model it returns the trace with converged = false.
inline DynamicsTrace run_best_response(const GameInstance& game, const Routing& initial,
                                       const CostModel& model, Schedule schedule,
                                       std::optional<std::uint64_t> max_steps = std::nullopt) {
  check_routing(game, initial);
  const std::uint64_t budget = max_steps.value_or(default_max_steps(game, initial, model));
  if (budget == 0) throw Error(Errc::validation, "max_steps must be at least 1");

  DynamicsTrace trace;
  trace.initial = initial;
  detail::Stepper s(game, initial, model);
  while (true) {
    if (trace.moves.size() == budget) {
      // Budget spent; one more probe decides whether we happen to be done.
      detail::Stepper probe(game, s.routing(), model);
      bool stable = true;
      for (std::size_t i = 0; i < game.player_count() && stable; ++i)
        stable = !probe.best_response(i);
      trace.converged = stable;
      break;
    }
    auto rec = s.step(schedule);
    if (!rec) {
      trace.converged = true;
      break;
    }
    trace.moves.push_back(std::move(*rec));
  }
  trace.final = s.routing();
  if (!trace.converged && !model.is_exponential())
    throw NonConvergence("no Nash-routing reached within " + std::to_string(budget) +
                             " moves under model " + model.name(),
                         std::move(trace));
  return trace;
}

/// Applies the recorded moves to the recorded initial routing.
inline Routing replay(const GameInstance& game, const DynamicsTrace& trace) {
  check_routing(game, trace.initial);
  Routing r = trace.initial;
  for (const MoveRecord& m : trace.moves) {
    check_player(game, m.player);
    if (r[m.player] != m.from_choice)
      throw Error(Errc::invalid_routing, "trace move for player " + std::to_string(m.player) +
                                             " does not start from its current choice");
    r.choices[m.player] = m.to_choice;
    check_routing(game, r);
  }
  return r;
}

/// Checks, exactly, that the potential drop caused by player i switching
/// paths equals C~_A(after) - C~_B(after)/2 with A = E(p_i)\E(p'_i) and
/// B = E(p'_i)\E(p_i). Both potentials are recomputed from scratch.
inline bool verify_lemma1_identity(const GameInstance& game, const Routing& before,
                                   const Routing& after, std::size_t i) {
  check_routing(game, before);
  check_routing(game, after);
  check_player(game, i);
  for (std::size_t j = 0; j < game.player_count(); ++j)
    if (j != i && before[j] != after[j])
      throw Error(Errc::malformed_pair, "routings also differ for player " + std::to_string(j));

  const Path& old_path = game.strategy(i, before[i]);
  const Path& new_path = game.strategy(i, after[i]);
  auto contains = [](const Path& p, EdgeId e) {
    return std::find(p.edges.begin(), p.edges.end(), e) != p.edges.end();
  };

  const CongestionProfile post = congestion(game, after);
  ExactCost tilde_a = 0;
  for (EdgeId e : old_path.edges)
    if (!contains(new_path, e)) tilde_a += pow2(post[e]);
  ExactCost tilde_b = 0;
  for (EdgeId e : new_path.edges)
    if (!contains(old_path, e)) tilde_b += pow2(post[e]);
  // Every edge of B carries player i afterwards, so each term is >= 2.
  if (tilde_b % 2 != 0) return false;

  const ExactCost drop = potential(game, before) - potential(post);
  return drop == tilde_a - tilde_b / 2;
}

}  // namespace arena
