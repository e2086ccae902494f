#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "arena/error.hpp"

namespace arena {

using NodeId = std::uint32_t;
using EdgeId = std::uint32_t;

struct Edge {
  NodeId u = 0;
  NodeId v = 0;
  friend bool operator==(const Edge&, const Edge&) = default;
};

/// An edge leaving a node, as seen from that node.
struct Incidence {
  EdgeId edge = 0;
  NodeId other = 0;
};

/// Simple graph with dense, stable edge ids. Undirected unless told
/// otherwise; self-loops and parallel edges are rejected at construction.
class Graph {
 public:
  Graph() = default;

  Graph(std::size_t node_count, std::vector<Edge> edges, bool directed = false)
      : node_count_(node_count), edges_(std::move(edges)), directed_(directed) {
    if (node_count_ > std::numeric_limits<NodeId>::max())
      throw Error(Errc::validation, "node count too large");
    out_.resize(node_count_);
    std::vector<std::pair<NodeId, NodeId>> keys;
    keys.reserve(edges_.size());
    for (std::size_t id = 0; id < edges_.size(); ++id) {
      const Edge& e = edges_[id];
      if (e.u >= node_count_ || e.v >= node_count_)
        throw Error(Errc::validation, "edge " + std::to_string(id) +
                                          " has an endpoint outside 0.." +
                                          std::to_string(node_count_ - 1));
      if (e.u == e.v)
        throw Error(Errc::validation, "edge " + std::to_string(id) + " is a self-loop");
      keys.emplace_back(directed_ ? e.u : std::min(e.u, e.v),
                        directed_ ? e.v : std::max(e.u, e.v));
      auto eid = static_cast<EdgeId>(id);
      out_[e.u].push_back({eid, e.v});
      if (!directed_) out_[e.v].push_back({eid, e.u});
    }
    std::sort(keys.begin(), keys.end());
    if (std::adjacent_find(keys.begin(), keys.end()) != keys.end())
      throw Error(Errc::validation, "parallel edges are not allowed");
  }

  std::size_t node_count() const noexcept { return node_count_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  bool directed() const noexcept { return directed_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const Edge& edge(EdgeId id) const { return edges_.at(id); }

  /// Edges usable when leaving `n`, in increasing edge-id order.
  const std::vector<Incidence>& outgoing(NodeId n) const { return out_.at(n); }

  /// Node reached by traversing `id` from `from`, if that traversal is legal.
  std::optional<NodeId> traverse(EdgeId id, NodeId from) const {
    if (id >= edges_.size()) return std::nullopt;
    const Edge& e = edges_[id];
    if (e.u == from) return e.v;
    if (!directed_ && e.v == from) return e.u;
    return std::nullopt;
  }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.node_count_ == b.node_count_ && a.directed_ == b.directed_ &&
           a.edges_ == b.edges_;
  }

 private:
  std::size_t node_count_ = 0;
  std::vector<Edge> edges_;
  bool directed_ = false;
  std::vector<std::vector<Incidence>> out_;
};

struct Path {
  NodeId source = 0;
  NodeId destination = 0;
  std::vector<EdgeId> edges;

  std::size_t length() const noexcept { return edges.size(); }

  friend bool operator==(const Path&, const Path&) = default;
};

/// Shortest first, then lexicographic by edge-id sequence.
struct ShortLex {
  bool operator()(const Path& a, const Path& b) const {
    if (a.edges.size() != b.edges.size()) return a.edges.size() < b.edges.size();
    return a.edges < b.edges;
  }
};

/// True iff `p` is a node-simple walk in `g` from its source to its
/// destination. Empty paths never validate.
inline bool validate_path(const Graph& g, const Path& p) noexcept {
  if (p.edges.empty()) return false;
  if (p.source >= g.node_count() || p.destination >= g.node_count()) return false;
  std::vector<bool> seen(g.node_count(), false);
  NodeId at = p.source;
  seen[at] = true;
  for (EdgeId id : p.edges) {
    auto next = g.traverse(id, at);
    if (!next || seen[*next]) return false;
    seen[*next] = true;
    at = *next;
  }
  return at == p.destination;
}

inline constexpr std::size_t kUnboundedLength = std::numeric_limits<std::size_t>::max();
inline constexpr std::size_t kDefaultPathCap = 1'000'000;

/// Every node-simple path from `u` to `v` with at most `max_len` edges, in
/// ShortLex order. Throws instance_too_large once more than `cap` paths exist.
inline std::vector<Path> enumerate_simple_paths(const Graph& g, NodeId u, NodeId v,
                                                std::size_t max_len,
                                                std::size_t cap = kDefaultPathCap) {
  if (u >= g.node_count() || v >= g.node_count())
    throw Error(Errc::validation, "path endpoint outside the graph");
  if (u == v) throw Error(Errc::validation, "source equals destination");
  if (max_len == 0) throw Error(Errc::validation, "max_len must be at least 1");
  max_len = std::min(max_len, g.node_count() - 1);

  std::vector<Path> out;
  std::vector<bool> on_path(g.node_count(), false);
  std::vector<EdgeId> stack;

  // Explicit DFS frames keep deep graphs off the call stack.
  struct Frame {
    NodeId node;
    std::size_t next;
  };
  std::vector<Frame> frames{{u, 0}};
  on_path[u] = true;
  while (!frames.empty()) {
    Frame& f = frames.back();
    const auto& adj = g.outgoing(f.node);
    if (f.next == adj.size() || stack.size() == max_len) {
      on_path[f.node] = false;
      frames.pop_back();
      if (!stack.empty()) stack.pop_back();
      continue;
    }
    const Incidence inc = adj[f.next++];
    if (on_path[inc.other]) continue;
    if (inc.other == v) {
      Path p{u, v, stack};
      p.edges.push_back(inc.edge);
      out.push_back(std::move(p));
      if (out.size() > cap)
        throw Error(Errc::instance_too_large,
                    "more than " + std::to_string(cap) + " simple paths between " +
                        std::to_string(u) + " and " + std::to_string(v));
      continue;
    }
    on_path[inc.other] = true;
    stack.push_back(inc.edge);
    frames.push_back({inc.other, 0});
  }
  std::sort(out.begin(), out.end(), ShortLex{});
  return out;
}

}  // namespace arena
