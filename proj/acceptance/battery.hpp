#pragma once

// The acceptance battery: every exit criterion as an executable check.
// Manifest text is a pure function of the code, so two runs on the same
// build must agree byte for byte; timings are reported separately.

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "arena/arena.hpp"
#include "oracle.hpp"

namespace arena::acceptance {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
  double budget_seconds = 0.0;
};

struct BatteryOptions {
  // Deliberate corruptions used to prove the battery can fail:
  // "multi-nash" breaks the witness topology, "fig2" builds the k-1 family.
  std::set<std::string> faults;
};

struct BatteryResult {
  std::vector<CriterionResult> criteria;

  bool all_pass() const {
    return std::all_of(criteria.begin(), criteria.end(),
                       [](const CriterionResult& c) { return c.pass; });
  }

  std::vector<int> failed() const {
    std::vector<int> out;
    for (const auto& c : criteria)
      if (!c.pass) out.push_back(c.id);
    return out;
  }

  std::string manifest() const {
    std::ostringstream out;
    out << "# arena verify-paper manifest\n";
    for (const auto& c : criteria)
      out << "criterion " << c.id << " " << (c.pass ? "PASS" : "FAIL") << " " << c.name << ": "
          << c.detail << "\n";
    out << "overall " << (all_pass() ? "PASS" : "FAIL") << "\n";
    return out.str();
  }
};

// Pinned thresholds.
inline constexpr std::size_t kMinIdentityMoves = 1000;
inline constexpr std::size_t kRandomSeeds = 50;
inline constexpr std::size_t kMinConvergenceRuns = 100;
inline constexpr std::size_t kMinConvergenceInstances = 20;
inline constexpr std::size_t kStartsPerInstance = 12;
inline constexpr std::uint64_t kOracleProfileLimit = 100'000;
inline constexpr std::uint64_t kRandomProfileCap = 100'000;
inline constexpr std::uint64_t kChainEdgeLimit = 10'000;

namespace detail {

struct SuiteInstance {
  GeneratedInstance gen;
  std::vector<Routing> converged_endpoints;  // exponential model
};

/// Criteria parameters: at most 6 nodes, at most 12 edges, at most 5 players,
/// max_len at most 4, seeds 1..50.
inline RandomSpec suite_spec(std::uint64_t seed) {
  RandomSpec s;
  s.seed = seed;
  s.nodes = 5 + seed % 2;
  s.players = 3 + seed % 3;
  s.max_len = s.players == 5 ? 3 : 3 + seed % 2;
  const std::size_t max_edges = s.players == 5 ? 10 : std::min<std::size_t>(12, s.nodes * (s.nodes - 1) / 2);
  s.edges = s.nodes + 1 + seed % (max_edges - s.nodes);
  s.profile_cap = kRandomProfileCap;
  return s;
}

inline Routing random_routing(const GameInstance& game, Rng& rng) {
  Routing r;
  for (const Player& p : game.players())
    r.choices.push_back(static_cast<std::size_t>(uniform_below(rng, p.strategies.size())));
  return r;
}

inline Schedule schedule_for(std::size_t run) {
  switch (run % 3) {
    case 0: return Schedule::round_robin();
    case 1: return Schedule::max_gain();
    default: return Schedule::random(run);
  }
}

inline GameInstance corrupted_witness() {
  // Drops the last edge, which removes player 2's spread path.
  Graph g(7, {{0, 1}, {1, 2}, {2, 3}, {0, 4}, {4, 3}, {1, 5}, {5, 6}});
  std::vector<Player> players;
  for (auto [s, d] : {std::pair<NodeId, NodeId>{0, 1}, {0, 2}, {1, 3}})
    players.push_back({s, d, enumerate_simple_paths(g, s, d, kUnboundedLength)});
  return GameInstance(std::move(g), std::move(players));
}

template <class F>
CriterionResult timed(int id, std::string name, double budget, F&& body) {
  CriterionResult c;
  c.id = id;
  c.name = std::move(name);
  c.budget_seconds = budget;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    std::tie(c.pass, c.detail) = body();
  } catch (const std::exception& e) {
    c.pass = false;
    c.detail = std::string("exception: ") + e.what();
  }
  c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return c;
}

inline bool contains(const std::vector<NashEntry>& set, const Routing& r) {
  return std::any_of(set.begin(), set.end(), [&](const NashEntry& n) { return n.routing == r; });
}

}  // namespace detail

/// Runs criteria 1 through 6.
inline BatteryResult run_battery(const BatteryOptions& opts = {}) {
  using detail::SuiteInstance;
  const CostModel exp = CostModel::exponential();
  const CostModel linear = CostModel::linear_sum();
  BatteryResult result;

  std::vector<SuiteInstance> suite;
  for (std::uint64_t seed = 1; seed <= kRandomSeeds; ++seed)
    suite.push_back({gen_random(detail::suite_spec(seed)), {}});

  // Dynamics runs feed criteria 1, 2 and 5.
  struct Run {
    std::size_t instance;
    Routing initial;
    DynamicsTrace trace;
  };
  std::vector<Run> runs;

  result.criteria.push_back(detail::timed(1, "potential-identity", 10.0, [&] {
    for (std::size_t k = 0; k < suite.size(); ++k) {
      const GameInstance& game = suite[k].gen.game;
      Rng rng(1000 + k);
      for (std::size_t s = 0; s < kStartsPerInstance; ++s) {
        Routing start = detail::random_routing(game, rng);
        runs.push_back({k, start, run_best_response(game, start, exp, detail::schedule_for(s))});
      }
    }
    std::size_t moves = 0;
    std::size_t bad = 0;
    for (const Run& run : runs) {
      const GameInstance& game = suite[run.instance].gen.game;
      Routing before = run.trace.initial;
      for (const MoveRecord& m : run.trace.moves) {
        Routing after = before;
        after.choices[m.player] = m.to_choice;
        const ExactCost pb = oracle::potential(game, before);
        const ExactCost pa = oracle::potential(game, after);
        const bool ok = verify_lemma1_identity(game, before, after, m.player) &&
                        pb == m.potential_before && pa == m.potential_after && pa < pb &&
                        m.pc_after < m.pc_before;
        if (!ok) ++bad;
        ++moves;
        before = std::move(after);
      }
    }
    const bool pass = bad == 0 && moves >= kMinIdentityMoves;
    return std::pair(pass, "moves=" + std::to_string(moves) + " violations=" +
                               std::to_string(bad) + " instances=" + std::to_string(suite.size()));
  }));

  result.criteria.push_back(detail::timed(2, "convergence", 30.0, [&] {
    std::size_t bad = 0;
    std::set<std::size_t> instances;
    for (const Run& run : runs) {
      const GameInstance& game = suite[run.instance].gen.game;
      instances.insert(run.instance);
      const ExactCost bound = potential(game, run.initial) - ExactCost(game.edge_count());
      const bool ok = run.trace.converged && ExactCost(run.trace.moves.size()) <= bound &&
                      replay(game, run.trace) == run.trace.final &&
                      is_nash(game, run.trace.final, exp) &&
                      oracle::is_nash(game, run.trace.final, exp);
      if (!ok) ++bad;
      if (run.trace.converged) suite[run.instance].converged_endpoints.push_back(run.trace.final);
    }
    const bool pass = bad == 0 && runs.size() >= kMinConvergenceRuns &&
                      instances.size() >= kMinConvergenceInstances;
    return std::pair(pass, "runs=" + std::to_string(runs.size()) + " instances=" +
                               std::to_string(instances.size()) + " failures=" +
                               std::to_string(bad));
  }));

  std::vector<GeneratedInstance> fig2s;
  result.criteria.push_back(detail::timed(3, "fig2-linear-poa", 10.0, [&] {
    std::ostringstream detail;
    bool pass = true;
    for (std::size_t k : {3u, 4u, 5u}) {
      const std::size_t built = opts.faults.count("fig2") ? k - 1 : k;
      GeneratedInstance gen = gen_fig2(built);
      const GameInstance& game = gen.game;
      const Routing all_on_e = all_first(game);
      const bool lin_nash = is_nash(game, all_on_e, linear);
      const std::uint32_t sc = social_cost(game, all_on_e);
      const std::uint32_t c_star = optimal_social_cost(game).social_cost;
      const Rational poa = price_of_anarchy(game, linear);
      const bool poa_ok = poa >= Rational(k) && c_star == 1;
      // Exponential: staying costs 2^k, the best deviation costs 2k.
      const ExactCost stay = player_cost(game, all_on_e, 0, exp);
      const auto br = best_response(game, all_on_e, 0, exp);
      ExactCost deviate = 0;
      if (br) {
        Routing moved = all_on_e;
        moved.choices[0] = *br;
        deviate = player_cost(game, moved, 0, exp);
      }
      const bool exp_ok = !is_nash(game, all_on_e, exp) && stay == pow2(k) &&
                          deviate == ExactCost(2 * k);
      const bool ok = lin_nash && sc == k && poa_ok && exp_ok;
      pass = pass && ok;
      detail << "k=" << k << "[sc=" << sc << " c*=" << c_star << " poa=" << to_string(poa)
             << " exp " << stay << " vs " << deviate << (ok ? "" : " FAIL") << "] ";
      fig2s.push_back(std::move(gen));
    }
    std::string d = detail.str();
    d.pop_back();
    return std::pair(pass, d);
  }));

  std::optional<GameInstance> witness;
  result.criteria.push_back(detail::timed(4, "multi-nash-witness", 5.0, [&] {
    witness = opts.faults.count("multi-nash") ? detail::corrupted_witness()
                                              : multi_nash_witness_topology();
    const GameInstance& game = *witness;
    const auto nash = enumerate_nash(game, exp);
    bool congested = false;
    bool spread = false;
    for (const NashEntry& n : nash) {
      const auto costs = player_costs(game, n.routing, exp);
      congested |= n.social_cost == 2 && costs == std::vector<ExactCost>{4, 8, 6};
      spread |= n.social_cost == 1 && costs == std::vector<ExactCost>{2, 6, 6};
    }
    const AnalysisReport rep = analyze(game, exp);
    const bool pass = congested && spread && rep.poa == Rational(2) && rep.pos == Rational(1);
    return std::pair(pass, std::string("sc2(4,8,6)=") + (congested ? "found" : "missing") +
                               " sc1(2,6,6)=" + (spread ? "found" : "missing") +
                               " poa=" + to_string(rep.poa) + " pos=" + to_string(rep.pos));
  }));

  result.criteria.push_back(detail::timed(5, "oracle-agreement", 60.0, [&] {
    std::size_t checked = 0;
    std::size_t skipped = 0;
    std::size_t mismatches = 0;
    std::size_t endpoints = 0;
    auto compare = [&](const GameInstance& game, const CostModel& m,
                       const std::vector<Routing>& endpoints_to_check) {
      if (game.profile_count() > ExactCost(kOracleProfileLimit)) {
        ++skipped;
        return;
      }
      ++checked;
      const auto fast = enumerate_nash(game, m);
      const auto slow = oracle::nash_set(game, m);
      std::vector<Routing> fast_routings;
      for (const NashEntry& n : fast) {
        fast_routings.push_back(n.routing);
        if (n.social_cost != oracle::social_cost(game, n.routing)) ++mismatches;
      }
      if (fast_routings != slow) ++mismatches;
      for (const Routing& r : endpoints_to_check) {
        ++endpoints;
        if (!detail::contains(fast, r)) ++mismatches;
      }
    };
    for (const SuiteInstance& s : suite) compare(s.gen.game, exp, s.converged_endpoints);
    for (const GeneratedInstance& g : fig2s) {
      compare(g.game, linear, {});
      compare(g.game, exp, {});
    }
    if (witness) compare(*witness, exp, {});
    const bool pass = mismatches == 0 && checked > 0;
    return std::pair(pass, "instances=" + std::to_string(checked) + " skipped=" +
                               std::to_string(skipped) + " endpoints=" +
                               std::to_string(endpoints) + " mismatches=" +
                               std::to_string(mismatches));
  }));

  result.criteria.push_back(detail::timed(6, "poa-bound", 60.0, [&] {
    const Rational alpha(10);
    std::size_t checked = 0;
    std::size_t violations = 0;
    double min_margin = 1e300;
    for (const SuiteInstance& s : suite) {
      const AnalysisReport rep = analyze(s.gen.game, exp);
      const BoundCheck b = poa_bound_check(s.gen.game, rep, alpha);
      ++checked;
      if (!b.holds) ++violations;
      min_margin = std::min(min_margin, b.margin);
    }
    std::ostringstream chains;
    for (std::uint32_t l_star : {2u, 4u, 8u}) {
      for (std::uint32_t c_hat = 2; c_hat <= 40; ++c_hat) {
        if (chain_edge_count(c_hat, l_star) > ExactCost(kChainEdgeLimit)) break;
        const ExpansionChain ch = gen_expansion_chain(c_hat, l_star);
        const GameInstance& game = ch.instance.game;
        const PoaBracket br = bracket_poa(game, exp, *ch.instance.intended, *ch.instance.optimum);
        const BoundCheck b = poa_bound_check(game, br.upper, alpha);
        ++checked;
        if (!b.holds) ++violations;
        min_margin = std::min(min_margin, b.margin);
        chains << " c" << c_hat << "l" << l_star << "=" << to_string(br.upper)
               << (br.exact() ? "" : "~");
      }
    }
    const bool pass = violations == 0 && checked > kRandomSeeds;
    return std::pair(pass, "instances=" + std::to_string(checked) + " violations=" +
                               std::to_string(violations) + " min_margin=" +
                               io::detail::format_fixed(min_margin) + " chains:" + chains.str());
  }));

  return result;
}

/// Criteria 1-6 twice, plus criterion 7 comparing the two manifests.
inline BatteryResult run_full_battery(const BatteryOptions& opts = {}) {
  BatteryResult first = run_battery(opts);
  const std::string first_manifest = first.manifest();
  std::string second_manifest;
  first.criteria.push_back(detail::timed(7, "determinism", 180.0, [&] {
    second_manifest = run_battery(opts).manifest();
    const bool same = first_manifest == second_manifest;
    return std::pair(same, std::string(same ? "manifests identical" : "manifests differ") +
                               " bytes=" + std::to_string(first_manifest.size()));
  }));
  return first;
}

}  // namespace arena::acceptance
