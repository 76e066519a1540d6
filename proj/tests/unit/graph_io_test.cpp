#include <gtest/gtest.h>

#include "c4free/error.hpp"
#include "c4free/generators.hpp"
#include "c4free/graph_io.hpp"

using namespace c4free;

TEST(Graph6, KnownEncodings) {
  // nauty: K4 is "C~", the path 0-1-2 is "Bg", the empty graph on 0 vertices is "?"
  EXPECT_EQ(to_graph6(complete_graph(4)), "C~");
  EXPECT_EQ(to_graph6(Graph(0)), "?");
  EXPECT_EQ(to_graph6(petersen_graph()), "IheA@GUAo");
  EXPECT_TRUE(from_graph6(">>graph6<<C~\n").same_adjacency(complete_graph(4)));
}

TEST(Graph6, RoundTripFuzz) {
  for (std::uint64_t seed = 0; seed < 10000; ++seed) {
    const auto n = static_cast<std::size_t>(seed % 70);
    const double p = static_cast<double>(seed % 11) / 10.0;
    const auto g = gen_gnp(n, p, Seed{seed});
    ASSERT_TRUE(from_graph6(to_graph6(g)).same_adjacency(g)) << "seed " << seed;
  }
}

TEST(Graph6, LargeOrderHeader) {
  const auto g = cycle_graph(300);
  const auto text = to_graph6(g);
  EXPECT_EQ(text[0], '~');
  EXPECT_TRUE(from_graph6(text).same_adjacency(g));
}

TEST(Graph6, RejectsMalformed) {
  EXPECT_THROW(from_graph6("C"), Error);
  EXPECT_THROW(from_graph6("C\x01"), Error);
}

TEST(Sparse6, RoundTrip) {
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    const auto n = static_cast<std::size_t>(seed % 40);
    const auto g = gen_gnp(n, 0.15, Seed{seed});
    ASSERT_TRUE(from_sparse6(to_sparse6(g)).same_adjacency(g)) << "seed " << seed;
  }
  for (std::size_t n : {1u, 2u, 4u, 8u, 16u, 64u}) {
    const auto g = path_graph(n);
    EXPECT_TRUE(from_sparse6(to_sparse6(g)).same_adjacency(g)) << n;
  }
}

TEST(EdgeList, CommentsLabelsAndIsolatedVertices) {
  const auto g = from_edge_list("# n 5\n0 1\n1 2 # trailing\n\n");
  EXPECT_EQ(g.vertex_count(), 5u);
  EXPECT_EQ(g.edge_count(), 2u);

  const auto labelled = from_edge_list("alice bob\nbob carol\ndave\n");
  EXPECT_EQ(labelled.vertex_count(), 4u);
  EXPECT_EQ(labelled.label(0), "alice");
  EXPECT_EQ(labelled.label(3), "dave");
  EXPECT_TRUE(labelled.adjacent(1, 2));

  const auto h = petersen_graph();
  EXPECT_TRUE(from_edge_list(to_edge_list(h)).same_adjacency(h));
}

TEST(ReadGraph, SniffsFormats) {
  const auto g = heawood_graph();
  for (auto f : {GraphFormat::graph6, GraphFormat::sparse6, GraphFormat::edgelist})
    EXPECT_TRUE(read_graph(write_graph(g, f)).same_adjacency(g));
  EXPECT_EQ(parse_graph_format("graph6"), GraphFormat::graph6);
  EXPECT_THROW(parse_graph_format("dot"), Error);
}

TEST(Sidecar, RoundTrip) {
  const auto pg = projective_plane_incidence(3);
  const auto back = attach_sides(pg.graph(), bipartite_sidecar(pg));
  EXPECT_EQ(back.side_a(), pg.side_a());
  EXPECT_EQ(back.side_b(), pg.side_b());
}
