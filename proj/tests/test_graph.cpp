#include <gtest/gtest.h>

#include <sstream>

#include "cayleysep/errors.hpp"
#include "cayleysep/graph.hpp"
#include "cayleysep/rng.hpp"

using namespace cayleysep;
using namespace cayleysep::builders;

TEST(VertexSet, SortsAndDeduplicates) {
  auto s = VertexSet::from_unsorted({5, 1, 3, 1});
  EXPECT_EQ(std::vector<VertexId>(s.begin(), s.end()), (std::vector<VertexId>{1, 3, 5}));
  EXPECT_TRUE(s.contains(3));
  EXPECT_FALSE(s.contains(2));
  EXPECT_THROW(VertexSet::from_sorted({2, 1}), ArgumentError);
  EXPECT_THROW(VertexSet::from_sorted({1, 1}), ArgumentError);
  EXPECT_THROW(s.mask(4), ArgumentError);
}

TEST(Graph, FromEdgesMergesDuplicates) {
  std::vector<Edge> edges{{0, 1}, {1, 0}, {1, 2}};
  auto g = Graph::from_edges(3, edges);
  EXPECT_EQ(g.vertex_count(), 3u);
  EXPECT_EQ(g.edge_count(), 2u);
  EXPECT_TRUE(g.has_edge(2, 1));
  EXPECT_FALSE(g.has_edge(0, 2));
  std::vector<Edge> loop{{1, 1}};
  EXPECT_THROW(Graph::from_edges(3, loop), ArgumentError);
  std::vector<Edge> out{{0, 3}};
  EXPECT_THROW(Graph::from_edges(3, out), ArgumentError);
}

TEST(Bfs, PathDistances) {
  auto g = path_graph(3);
  EXPECT_EQ(bfs_distances(g, VertexSet{0}), (std::vector<int>{0, 1, 2}));
}

TEST(Bfs, DisconnectedIsUnreachable) {
  auto g = Graph::from_edges(2, {});
  EXPECT_EQ(bfs_distances(g, VertexSet{0})[1], kUnreachable);
}

TEST(Bfs, GridCorner) {
  auto g = grid_graph(3, 3);
  EXPECT_EQ(bfs_distances(g, VertexSet{0})[8], 4);
}

TEST(Bfs, TriangleInequalityOnRandomGraphs) {
  Rng rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    auto g = random_connected_graph(30, 15, rng);
    std::vector<std::vector<int>> d;
    for (VertexId v = 0; v < 30; ++v) d.push_back(bfs_distances(g, VertexSet{v}));
    for (int k = 0; k < 200; ++k) {
      auto a = rng.below(30), b = rng.below(30), c = rng.below(30);
      EXPECT_LE(d[a][c], d[a][b] + d[b][c]);
    }
  }
}

TEST(Neighborhood, Examples) {
  auto c6 = cycle_graph(6);
  EXPECT_EQ(neighborhood(c6, VertexSet{0, 3}, 0, true), (VertexSet{0, 3}));
  EXPECT_TRUE(neighborhood(c6, VertexSet{0}, 0, false).empty());
  auto single = Graph::from_edges(1, {});
  EXPECT_EQ(neighborhood(single, VertexSet{0}, 1, false), (VertexSet{0}));
  EXPECT_EQ(neighborhood(c6, VertexSet{0}, 2, true).size(), 5u);
}

TEST(Annulus, Examples) {
  auto p5 = path_graph(5);
  EXPECT_EQ(annulus(p5, VertexSet{2}, 1, 2), (VertexSet{0, 1, 3, 4}));
  auto g = grid_graph(4, 4);
  EXPECT_EQ(annulus(g, VertexSet{5}, 0, 2), neighborhood(g, VertexSet{5}, 2, true));
  auto sphere = annulus(g, VertexSet{0}, 3, 3);
  auto d = bfs_distances(g, VertexSet{0});
  for (VertexId v = 0; v < 16; ++v) EXPECT_EQ(sphere.contains(v), d[v] == 3);
  EXPECT_THROW(annulus(g, VertexSet{0}, 3, 2), ArgumentError);
}

TEST(Neighborhood, ClosedContainsOpenAndAnnulusDisjoint) {
  Rng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    auto g = random_connected_graph(25, 10, rng);
    VertexSet V{static_cast<VertexId>(rng.below(25))};
    for (int r = 0; r < 5; ++r) {
      auto open = neighborhood(g, V, r, false);
      auto closed = neighborhood(g, V, r, true);
      for (auto v : open) EXPECT_TRUE(closed.contains(v));
      for (int R = r; R < 6; ++R) {
        for (auto v : annulus(g, V, r, R)) EXPECT_FALSE(open.contains(v));
      }
    }
  }
}

TEST(InducedSubgraph, Examples) {
  auto g = grid_graph(3, 3);
  auto one = induced_subgraph(g, VertexSet{4});
  EXPECT_EQ(one.graph.vertex_count(), 1u);
  EXPECT_EQ(one.graph.edge_count(), 0u);
  VertexSet all = VertexSet::from_unsorted({0, 1, 2, 3, 4, 5, 6, 7, 8});
  EXPECT_EQ(induced_subgraph(g, all).graph.edges(), g.edges());
  // removing the middle column (x = 1) of a 3x3 grid
  auto rest = induced_subgraph(g, VertexSet{0, 2, 3, 5, 6, 8});
  EXPECT_EQ(connected_components(rest.graph).size(), 2u);
}

TEST(Components, Examples) {
  auto star = star_graph(6);
  auto parts = connected_components(star, VertexSet{0});
  EXPECT_EQ(parts.size(), 6u);
  for (const auto& p : parts) EXPECT_LE(p.size(), star.vertex_count() / 2);
  auto c6 = cycle_graph(6);
  auto halves = connected_components(c6, VertexSet{0, 3});
  ASSERT_EQ(halves.size(), 2u);
  EXPECT_EQ(halves[0].size(), 2u);
  EXPECT_EQ(halves[1].size(), 2u);
  EXPECT_EQ(connected_components(c6).size(), 1u);
}

TEST(Components, SizesSumToRemaining) {
  Rng rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    auto g = random_connected_graph(20, 5, rng);
    std::vector<VertexId> ids;
    for (VertexId v = 0; v < 20; ++v) {
      if (rng.below(4) == 0) ids.push_back(v);
    }
    auto removed = VertexSet::from_sorted(ids);
    std::size_t total = 0;
    for (const auto& c : connected_components(g, removed)) total += c.size();
    EXPECT_EQ(total, 20 - removed.size());
  }
}

TEST(EdgeList, ParsesAndRoundTrips) {
  std::istringstream in("0 1\n1 2\n");
  auto g = parse_edge_list(in);
  EXPECT_EQ(g.vertex_count(), 3u);
  EXPECT_EQ(g.edge_count(), 2u);
  std::ostringstream out;
  write_edge_list(g, out);
  std::istringstream back(out.str());
  EXPECT_EQ(parse_edge_list(back).edges(), g.edges());
}

TEST(EdgeList, CommentsOnlyIsAnError) {
  std::istringstream in("# nothing here\n# still nothing\n");
  EXPECT_THROW(parse_edge_list(in), ParseError);
}

TEST(EdgeList, GarbageIsAParseError) {
  std::istringstream in("0 1\n1 x\n");
  try {
    parse_edge_list(in);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2);
  }
}

TEST(Builders, Sierpinski) {
  EXPECT_EQ(sierpinski_graph(0).vertex_count(), 3u);
  EXPECT_EQ(sierpinski_graph(1).vertex_count(), 6u);
  EXPECT_EQ(sierpinski_graph(1).edge_count(), 9u);
  EXPECT_EQ(sierpinski_graph(2).vertex_count(), 15u);
  EXPECT_TRUE(is_connected(sierpinski_graph(3)));
}

TEST(Builders, RandomConnectedIsConnectedAndSeeded) {
  Rng a(5), b(5);
  auto g = random_connected_graph(12, 4, a);
  EXPECT_TRUE(is_connected(g));
  EXPECT_EQ(g, random_connected_graph(12, 4, b));
}
