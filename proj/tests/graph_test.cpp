#include <gtest/gtest.h>

#include <set>
#include <vector>

#include "arena/graph.hpp"
#include "arena/rng.hpp"
#include "oracle.hpp"

using namespace arena;

namespace {

Graph triangle() { return Graph(3, {{0, 1}, {1, 2}, {0, 2}}); }

std::vector<std::vector<EdgeId>> ids(const std::vector<Path>& paths) {
  std::vector<std::vector<EdgeId>> out;
  for (const Path& p : paths) out.push_back(p.edges);
  return out;
}

}  // namespace

TEST(Graph, RejectsBadEdges) {
  EXPECT_THROW(Graph(2, {{0, 2}}), Error);
  EXPECT_THROW(Graph(2, {{1, 1}}), Error);
  EXPECT_THROW(Graph(2, {{0, 1}, {1, 0}}), Error);
  EXPECT_NO_THROW(Graph(2, {{0, 1}, {1, 0}}, true));
}

TEST(Graph, TraverseFollowsDirection) {
  const Graph und = triangle();
  EXPECT_EQ(und.traverse(0, 1), NodeId{0});
  const Graph dir(3, {{0, 1}}, true);
  EXPECT_EQ(dir.traverse(0, 0), NodeId{1});
  EXPECT_FALSE(dir.traverse(0, 1).has_value());
}

TEST(Paths, TriangleShortestFirst) {
  const auto paths = enumerate_simple_paths(triangle(), 0, 2, kUnboundedLength);
  EXPECT_EQ(ids(paths), (std::vector<std::vector<EdgeId>>{{2}, {0, 1}}));
  EXPECT_EQ(ids(enumerate_simple_paths(triangle(), 0, 2, 1)),
            (std::vector<std::vector<EdgeId>>{{2}}));
}

TEST(Paths, ErrorsAndCap) {
  const Graph g = triangle();
  EXPECT_THROW(enumerate_simple_paths(g, 0, 0, 3), Error);
  EXPECT_THROW(enumerate_simple_paths(g, 0, 1, 0), Error);
  EXPECT_THROW(enumerate_simple_paths(g, 0, 5, 3), Error);
  try {
    enumerate_simple_paths(g, 0, 2, 3, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::instance_too_large);
  }
}

TEST(Paths, DisconnectedGivesNothing) {
  const Graph g(4, {{0, 1}, {2, 3}});
  EXPECT_TRUE(enumerate_simple_paths(g, 0, 3, 3).empty());
}

TEST(Paths, ValidatePath) {
  const Graph g = triangle();
  EXPECT_TRUE(validate_path(g, Path{0, 2, {0, 1}}));
  EXPECT_FALSE(validate_path(g, Path{0, 2, {}}));
  EXPECT_FALSE(validate_path(g, Path{0, 2, {1, 0}}));
  EXPECT_FALSE(validate_path(g, Path{0, 1, {0, 1, 2, 0}}));
  EXPECT_FALSE(validate_path(g, Path{0, 2, {9}}));
}

TEST(Paths, MatchesOracleOnRandomGraphs) {
  Rng rng(7);
  for (int round = 0; round < 60; ++round) {
    const std::size_t n = 3 + uniform_below(rng, 6);  // up to 8 nodes
    const bool directed = round % 3 == 0;
    std::vector<Edge> edges;
    std::set<std::pair<NodeId, NodeId>> seen;
    for (NodeId a = 0; a < n; ++a)
      for (NodeId b = 0; b < n; ++b) {
        if (a == b || (!directed && b < a)) continue;
        if (uniform_below(rng, 100) < 45) edges.push_back({a, b});
      }
    if (edges.empty()) continue;
    const Graph g(n, edges, directed);
    const NodeId u = static_cast<NodeId>(uniform_below(rng, n));
    NodeId v = static_cast<NodeId>(uniform_below(rng, n - 1));
    if (v >= u) ++v;
    const std::size_t max_len = 1 + uniform_below(rng, n);
    const auto got = enumerate_simple_paths(g, u, v, max_len);
    const auto want = oracle::simple_paths(g, u, v, max_len);
    std::set<std::vector<EdgeId>> got_set;
    for (const Path& p : got) {
      EXPECT_TRUE(validate_path(g, p));
      EXPECT_LE(p.length(), max_len);
      got_set.insert(p.edges);
    }
    EXPECT_EQ(got_set.size(), got.size()) << "duplicates";
    EXPECT_EQ(got_set, want);
    EXPECT_TRUE(std::is_sorted(got.begin(), got.end(), ShortLex{}));
  }
}
