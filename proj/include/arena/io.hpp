#pragma once

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "arena/analysis.hpp"
#include "arena/dynamics.hpp"
#include "arena/error.hpp"
#include "arena/exact.hpp"
#include "arena/game.hpp"
#include "arena/generators.hpp"
#include "arena/graph.hpp"

namespace arena::io {

// Instance files
// --------------
//
//   # arena instance v1
//   [metadata]
//   name = fig2-k3
//   generator = fig2 k=3
//   seed = 7                      (optional)
//
//   [graph]
//   nodes = 6
//   directed = false
//   edge 0: 0 1                   (ids dense, in order)
//
//   [players]
//   player 0: 0 -> 1              (explicit strategy paths follow)
//     path 0
//     path 1 2 3
//   player 1: 0 -> 1 auto 3       (all simple paths of length <= 3)
//
// Blank lines and lines starting with '#' are ignored.

struct InstanceMeta {
  std::string name;
  std::string generator;
  std::optional<std::uint64_t> seed;
};

struct LoadedInstance {
  GameInstance game;
  InstanceMeta meta;
};

inline void write_atomic(const std::filesystem::path& target, const std::string& content) {
  std::filesystem::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(Errc::io, "cannot open " + tmp.string() + " for writing");
    out << content;
    out.flush();
    if (!out) throw Error(Errc::io, "write to " + tmp.string() + " failed");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, target, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw Error(Errc::io, "cannot move " + tmp.string() + " to " + target.string());
  }
}

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw Error(Errc::io, "cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline std::vector<std::string> words(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  std::string w;
  while (in >> w) out.push_back(w);
  return out;
}

[[noreturn]] inline void fail_at(std::size_t line, const std::string& msg) {
  throw Error(Errc::parse, "line " + std::to_string(line) + ": " + msg);
}

inline std::uint64_t to_uint(std::string_view s, std::size_t line, std::string_view what) {
  if (s.empty() || s.size() > 19 || s.find_first_not_of("0123456789") != std::string_view::npos)
    fail_at(line, "expected a nonnegative integer for " + std::string(what) + ", got '" +
                      std::string(s) + "'");
  return std::stoull(std::string(s));
}

inline std::string join(const std::vector<std::size_t>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(v[i]);
  }
  return out;
}

inline std::string format_fixed(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

/// "key = value" lines; keys must be unique and drawn from `allowed`.
class KeyValues {
 public:
  KeyValues(std::string_view text, const std::vector<std::string>& allowed,
            const std::vector<std::string>& repeatable = {}) {
    std::size_t line_no = 0;
    std::istringstream in{std::string(text)};
    std::string raw;
    while (std::getline(in, raw)) {
      ++line_no;
      const auto line = trim(raw);
      if (line.empty() || line.front() == '#') continue;
      const auto eq = line.find('=');
      if (eq == std::string_view::npos) fail_at(line_no, "expected 'key = value'");
      std::string key(trim(line.substr(0, eq)));
      std::string value(trim(line.substr(eq + 1)));
      const bool known = std::find(allowed.begin(), allowed.end(), key) != allowed.end();
      const bool multi = std::find(repeatable.begin(), repeatable.end(), key) != repeatable.end();
      if (!known && !multi) fail_at(line_no, "unknown key '" + key + "'");
      if (multi) {
        multi_[key].emplace_back(line_no, value);
      } else if (!single_.emplace(key, std::make_pair(line_no, value)).second) {
        fail_at(line_no, "duplicate key '" + key + "'");
      }
    }
  }

  const std::string& get(const std::string& key) const {
    auto it = single_.find(key);
    if (it == single_.end()) throw Error(Errc::parse, "missing key '" + key + "'");
    return it->second.second;
  }
  std::size_t line_of(const std::string& key) const {
    auto it = single_.find(key);
    return it == single_.end() ? 0 : it->second.first;
  }
  bool has(const std::string& key) const { return single_.count(key) != 0; }
  const std::vector<std::pair<std::size_t, std::string>>& all(const std::string& key) const {
    static const std::vector<std::pair<std::size_t, std::string>> none;
    auto it = multi_.find(key);
    return it == multi_.end() ? none : it->second;
  }

  std::uint64_t get_uint(const std::string& key) const {
    return to_uint(get(key), line_of(key), key);
  }
  bool get_bool(const std::string& key) const {
    const std::string& v = get(key);
    if (v == "true") return true;
    if (v == "false") return false;
    fail_at(line_of(key), "expected true or false for " + key);
  }
  Routing get_routing(const std::string& key) const {
    return parse_choices(get(key), line_of(key));
  }

  static Routing parse_choices(std::string_view text, std::size_t line) {
    Routing r;
    for (const auto& w : words(text)) r.choices.push_back(to_uint(w, line, "choice"));
    return r;
  }

 private:
  std::map<std::string, std::pair<std::size_t, std::string>> single_;
  std::map<std::string, std::vector<std::pair<std::size_t, std::string>>> multi_;
};

}  // namespace detail

inline std::string format_instance(const GameInstance& game, const InstanceMeta& meta) {
  std::ostringstream out;
  out << "# arena instance v1\n[metadata]\n";
  out << "name = " << meta.name << "\n";
  out << "generator = " << meta.generator << "\n";
  if (meta.seed) out << "seed = " << *meta.seed << "\n";
  const Graph& g = game.graph();
  out << "\n[graph]\nnodes = " << g.node_count() << "\n";
  out << "directed = " << (g.directed() ? "true" : "false") << "\n";
  for (std::size_t id = 0; id < g.edge_count(); ++id)
    out << "edge " << id << ": " << g.edge(static_cast<EdgeId>(id)).u << " "
        << g.edge(static_cast<EdgeId>(id)).v << "\n";
  out << "\n[players]\n";
  for (std::size_t i = 0; i < game.player_count(); ++i) {
    const Player& p = game.player(i);
    out << "player " << i << ": " << p.source << " -> " << p.destination << "\n";
    for (const Path& s : p.strategies) {
      out << "  path";
      for (EdgeId e : s.edges) out << " " << e;
      out << "\n";
    }
  }
  return out.str();
}

inline std::string format_instance(const GeneratedInstance& gen) {
  return format_instance(gen.game, {gen.name, gen.spec, gen.seed});
}

inline LoadedInstance parse_instance(std::string_view text) {
  using detail::fail_at;
  using detail::to_uint;
  enum class Section { none, metadata, graph, players };
  Section section = Section::none;
  InstanceMeta meta;
  std::optional<std::size_t> nodes;
  bool directed = false;
  std::vector<Edge> edges;
  std::optional<Graph> graph;

  struct RawPlayer {
    std::size_t line;
    NodeId source;
    NodeId destination;
    std::optional<std::size_t> auto_len;
    std::vector<std::pair<std::size_t, std::vector<EdgeId>>> paths;
  };
  std::vector<RawPlayer> raw;

  std::size_t line_no = 0;
  std::istringstream in{std::string(text)};
  std::string buf;
  auto ensure_graph = [&](std::size_t at) -> const Graph& {
    if (!graph) {
      if (!nodes) fail_at(at, "graph section is missing 'nodes'");
      try {
        graph.emplace(*nodes, edges, directed);
      } catch (const Error& e) {
        fail_at(at, e.what());
      }
    }
    return *graph;
  };

  while (std::getline(in, buf)) {
    ++line_no;
    const auto line = detail::trim(buf);
    if (line.empty() || line.front() == '#') continue;
    if (line == "[metadata]") { section = Section::metadata; continue; }
    if (line == "[graph]") { section = Section::graph; continue; }
    if (line == "[players]") {
      section = Section::players;
      ensure_graph(line_no);
      continue;
    }
    if (line.front() == '[') fail_at(line_no, "unknown section " + std::string(line));

    switch (section) {
      case Section::none:
        fail_at(line_no, "content before the first section");
      case Section::metadata: {
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) fail_at(line_no, "expected 'key = value'");
        const std::string key(detail::trim(line.substr(0, eq)));
        const std::string value(detail::trim(line.substr(eq + 1)));
        if (key == "name") meta.name = value;
        else if (key == "generator") meta.generator = value;
        else if (key == "seed") meta.seed = to_uint(value, line_no, "seed");
        else fail_at(line_no, "unknown metadata key '" + key + "'");
        break;
      }
      case Section::graph: {
        if (graph) fail_at(line_no, "graph is already complete");
        if (line.starts_with("edge ")) {
          const auto colon = line.find(':');
          if (colon == std::string_view::npos) fail_at(line_no, "expected 'edge ID: U V'");
          const auto id = to_uint(detail::trim(line.substr(5, colon - 5)), line_no, "edge id");
          if (id != edges.size())
            fail_at(line_no, "edge ids must be dense and in order; expected " +
                                 std::to_string(edges.size()));
          const auto ends = detail::words(line.substr(colon + 1));
          if (ends.size() != 2) fail_at(line_no, "edge needs exactly two endpoints");
          const auto u = to_uint(ends[0], line_no, "endpoint");
          const auto v = to_uint(ends[1], line_no, "endpoint");
          if (!nodes) fail_at(line_no, "'nodes' must precede the edge list");
          if (u >= *nodes || v >= *nodes) fail_at(line_no, "edge endpoint outside the graph");
          if (u == v) fail_at(line_no, "self-loop");
          edges.push_back({static_cast<NodeId>(u), static_cast<NodeId>(v)});
          break;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) fail_at(line_no, "expected 'key = value' or an edge");
        const std::string key(detail::trim(line.substr(0, eq)));
        const std::string value(detail::trim(line.substr(eq + 1)));
        if (key == "nodes") {
          nodes = to_uint(value, line_no, "nodes");
        } else if (key == "directed") {
          if (value != "true" && value != "false") fail_at(line_no, "directed must be true or false");
          directed = value == "true";
        } else {
          fail_at(line_no, "unknown graph key '" + key + "'");
        }
        break;
      }
      case Section::players: {
        const auto w = detail::words(line);
        if (w[0] == "player") {
          // player ID: S -> D [auto LEN]
          if (w.size() < 5 || w[1].back() != ':' || w[3] != "->")
            fail_at(line_no, "expected 'player ID: S -> D [auto MAXLEN]'");
          const auto id = to_uint(std::string_view(w[1]).substr(0, w[1].size() - 1), line_no,
                                  "player id");
          if (id != raw.size())
            fail_at(line_no, "player ids must be dense and in order; expected " +
                                 std::to_string(raw.size()));
          RawPlayer p{line_no, static_cast<NodeId>(to_uint(w[2], line_no, "source")),
                      static_cast<NodeId>(to_uint(w[4], line_no, "destination")), std::nullopt,
                      {}};
          if (w.size() == 7 && w[5] == "auto") {
            p.auto_len = to_uint(w[6], line_no, "auto max_len");
          } else if (w.size() != 5) {
            fail_at(line_no, "unexpected trailing tokens after player header");
          }
          if (p.source >= graph->node_count() || p.destination >= graph->node_count())
            fail_at(line_no, "player endpoint outside the graph");
          if (p.source == p.destination)
            fail_at(line_no, "player source equals destination");
          raw.push_back(std::move(p));
        } else if (w[0] == "path") {
          if (raw.empty()) fail_at(line_no, "path before any player");
          if (raw.back().auto_len) fail_at(line_no, "explicit path on an auto player");
          std::vector<EdgeId> ids;
          for (std::size_t k = 1; k < w.size(); ++k)
            ids.push_back(static_cast<EdgeId>(to_uint(w[k], line_no, "edge id")));
          raw.back().paths.emplace_back(line_no, std::move(ids));
        } else {
          fail_at(line_no, "expected 'player' or 'path'");
        }
        break;
      }
    }
  }

  const Graph& g = ensure_graph(line_no);
  std::vector<Player> players;
  for (const RawPlayer& rp : raw) {
    Player p{rp.source, rp.destination, {}};
    if (rp.auto_len) {
      if (*rp.auto_len == 0) fail_at(rp.line, "auto max_len must be at least 1");
      try {
        p.strategies = enumerate_simple_paths(g, rp.source, rp.destination, *rp.auto_len);
      } catch (const Error& e) {
        fail_at(rp.line, e.what());
      }
      if (p.strategies.empty()) fail_at(rp.line, "no path within the auto max_len");
    } else {
      if (rp.paths.empty()) fail_at(rp.line, "player has no strategy paths");
      for (const auto& [at, ids] : rp.paths) {
        Path path{rp.source, rp.destination, ids};
        if (!validate_path(g, path)) fail_at(at, "not a simple path from source to destination");
        if (std::find(p.strategies.begin(), p.strategies.end(), path) != p.strategies.end())
          fail_at(at, "duplicate strategy path");
        p.strategies.push_back(std::move(path));
      }
    }
    players.push_back(std::move(p));
  }
  if (players.empty()) fail_at(line_no, "instance has no players");
  try {
    return {GameInstance(g, std::move(players)), std::move(meta)};
  } catch (const Error& e) {
    fail_at(line_no, e.what());
  }
}

inline LoadedInstance load_instance(const std::filesystem::path& p) {
  return parse_instance(read_file(p));
}

// Routing sidecar files: "choices = 0 2 1".

inline std::string format_routing(const Routing& r) {
  return "# arena routing\nchoices = " + detail::join(r.choices) + "\n";
}

inline Routing parse_routing(std::string_view text) {
  detail::KeyValues kv(text, {"choices"});
  return kv.get_routing("choices");
}

// Dynamics traces: CSV with a header row, one greedy move per row.

inline constexpr std::string_view kTraceHeader =
    "step,player,from,to,pc_before,pc_after,potential_before,potential_after";

inline std::string format_trace(const DynamicsTrace& trace) {
  std::ostringstream out;
  out << kTraceHeader << "\n";
  for (std::size_t s = 0; s < trace.moves.size(); ++s) {
    const MoveRecord& m = trace.moves[s];
    out << s + 1 << "," << m.player << "," << m.from_choice << "," << m.to_choice << ","
        << m.pc_before << "," << m.pc_after << "," << m.potential_before << ","
        << m.potential_after << "\n";
  }
  return out.str();
}

inline std::vector<MoveRecord> parse_trace(std::string_view text) {
  std::vector<MoveRecord> out;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  auto big = [](const std::string& s, std::size_t at) {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
      detail::fail_at(at, "expected a nonnegative integer, got '" + s + "'");
    return ExactCost(s);
  };
  while (std::getline(in, line)) {
    ++line_no;
    const auto t = detail::trim(line);
    if (line_no == 1) {
      if (t != kTraceHeader) detail::fail_at(1, "unexpected trace header");
      continue;
    }
    if (t.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss{std::string(t)};
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (cells.size() != 8) detail::fail_at(line_no, "expected 8 columns");
    if (detail::to_uint(cells[0], line_no, "step") != out.size() + 1)
      detail::fail_at(line_no, "steps must be consecutive from 1");
    MoveRecord m;
    m.player = detail::to_uint(cells[1], line_no, "player");
    m.from_choice = detail::to_uint(cells[2], line_no, "from");
    m.to_choice = detail::to_uint(cells[3], line_no, "to");
    m.pc_before = big(cells[4], line_no);
    m.pc_after = big(cells[5], line_no);
    m.potential_before = big(cells[6], line_no);
    m.potential_after = big(cells[7], line_no);
    out.push_back(std::move(m));
  }
  if (line_no == 0) detail::fail_at(1, "empty trace");
  return out;
}

struct DynamicsSummary {
  std::string model;
  std::string schedule;
  bool converged = false;
  std::uint64_t steps = 0;
  std::uint64_t max_steps = 0;
  Routing initial;
  Routing final;
  std::uint32_t final_social_cost = 0;
  ExactCost initial_potential;
  ExactCost final_potential;
};

inline DynamicsSummary summarize(const GameInstance& game, const DynamicsTrace& trace,
                                 const CostModel& model, const Schedule& schedule,
                                 std::uint64_t max_steps) {
  DynamicsSummary s;
  s.model = model.name();
  s.schedule = schedule.name();
  s.converged = trace.converged;
  s.steps = trace.moves.size();
  s.max_steps = max_steps;
  s.initial = trace.initial;
  s.final = trace.final;
  s.final_social_cost = social_cost(game, trace.final);
  s.initial_potential = potential(game, trace.initial);
  s.final_potential = potential(game, trace.final);
  return s;
}

inline std::string format_summary(const DynamicsSummary& s) {
  std::ostringstream out;
  out << "# arena dynamics summary\n"
      << "model = " << s.model << "\n"
      << "schedule = " << s.schedule << "\n"
      << "converged = " << (s.converged ? "true" : "false") << "\n"
      << "steps = " << s.steps << "\n"
      << "max_steps = " << s.max_steps << "\n"
      << "initial = " << detail::join(s.initial.choices) << "\n"
      << "final = " << detail::join(s.final.choices) << "\n"
      << "final_social_cost = " << s.final_social_cost << "\n"
      << "initial_potential = " << s.initial_potential << "\n"
      << "final_potential = " << s.final_potential << "\n";
  return out.str();
}

inline DynamicsSummary parse_summary(std::string_view text) {
  detail::KeyValues kv(text, {"model", "schedule", "converged", "steps", "max_steps", "initial",
                              "final", "final_social_cost", "initial_potential",
                              "final_potential"});
  DynamicsSummary s;
  s.model = kv.get("model");
  s.schedule = kv.get("schedule");
  s.converged = kv.get_bool("converged");
  s.steps = kv.get_uint("steps");
  s.max_steps = kv.get_uint("max_steps");
  s.initial = kv.get_routing("initial");
  s.final = kv.get_routing("final");
  s.final_social_cost = static_cast<std::uint32_t>(kv.get_uint("final_social_cost"));
  s.initial_potential = ExactCost(kv.get("initial_potential"));
  s.final_potential = ExactCost(kv.get("final_potential"));
  return s;
}

// Analysis reports.

struct BoundSection {
  Rational alpha;
  BoundCheck check;
};

inline std::string format_report(const AnalysisReport& r,
                                 const std::optional<BoundSection>& bound) {
  std::ostringstream out;
  out << "# arena analysis report\n"
      << "model = " << r.model << "\n"
      << "profiles = " << r.profile_count << "\n"
      << "optimal_sc = " << r.optimal_sc << "\n"
      << "optimal_routing = " << detail::join(r.optimal_routing.choices) << "\n"
      << "nash_count = " << r.nash_routings.size() << "\n";
  for (const NashEntry& n : r.nash_routings)
    out << "nash = " << n.social_cost << " : " << detail::join(n.routing.choices) << "\n";
  out << "poa = " << to_string(r.poa) << "\n"
      << "pos = " << to_string(r.pos) << "\n";
  if (bound) {
    out << "bound_alpha = " << to_string(bound->alpha) << "\n"
        << "bound_value = " << detail::format_fixed(bound->check.bound) << "\n"
        << "bound_margin = " << detail::format_fixed(bound->check.margin) << "\n"
        << "bound_holds = " << (bound->check.holds ? "true" : "false") << "\n";
  }
  return out.str();
}

/// Reads back the exact fields of a report; the bound section is ignored.
inline AnalysisReport parse_report(std::string_view text) {
  detail::KeyValues kv(text,
                       {"model", "profiles", "optimal_sc", "optimal_routing", "nash_count", "poa",
                        "pos", "bound_alpha", "bound_value", "bound_margin", "bound_holds"},
                       {"nash"});
  AnalysisReport r;
  r.model = kv.get("model");
  r.profile_count = kv.get_uint("profiles");
  r.optimal_sc = static_cast<std::uint32_t>(kv.get_uint("optimal_sc"));
  r.optimal_routing = kv.get_routing("optimal_routing");
  for (const auto& [line, value] : kv.all("nash")) {
    const auto colon = value.find(':');
    if (colon == std::string::npos) detail::fail_at(line, "expected 'SC : choices'");
    NashEntry n;
    n.social_cost = static_cast<std::uint32_t>(
        detail::to_uint(detail::trim(std::string_view(value).substr(0, colon)), line, "sc"));
    n.routing = detail::KeyValues::parse_choices(std::string_view(value).substr(colon + 1), line);
    r.nash_routings.push_back(std::move(n));
  }
  if (kv.get_uint("nash_count") != r.nash_routings.size())
    detail::fail_at(kv.line_of("nash_count"), "nash_count does not match the listed routings");
  r.poa = parse_rational(kv.get("poa"));
  r.pos = parse_rational(kv.get("pos"));
  return r;
}

}  // namespace arena::io
