#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "c4free/error.hpp"
#include "c4free/generators.hpp"
#include "c4free/graph.hpp"
#include "c4free/oracles.hpp"
#include "naive.hpp"

using namespace c4free;

TEST(Graph, RejectsSelfLoopsAndCollapsesRepeats) {
  EXPECT_THROW(Graph(3, {{1, 1}}), Error);
  EXPECT_THROW(Graph(3, {{0, 3}}), Error);
  const Graph g(3, {{0, 1}, {1, 0}, {0, 1}});
  EXPECT_EQ(g.edge_count(), 1u);
  EXPECT_TRUE(g.adjacent(1, 0));
  EXPECT_FALSE(g.adjacent(1, 2));
}

TEST(Graph, AdjacencyIsSymmetric) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto g = gen_gnp(30, 0.2, Seed{seed});
    for (Vertex u = 0; u < 30; ++u) {
      EXPECT_FALSE(g.adjacent(u, u));
      for (auto v : g.neighbors(u)) EXPECT_TRUE(g.adjacent(v, u));
    }
  }
}

TEST(AverageDegree, Examples) {
  EXPECT_EQ(average_degree(cycle_graph(4)), Rational(2));
  EXPECT_EQ(average_degree(heawood_graph()), Rational(3));
  EXPECT_EQ(average_degree(Graph(1)), Rational(0));
  EXPECT_THROW(average_degree(Graph(0)), Error);
  EXPECT_EQ(average_degree(path_graph(3)), Rational(4, 3));
}

TEST(MinDegreeCore, Examples) {
  EXPECT_TRUE(min_degree_core(star_graph(5), 2).empty());
  EXPECT_EQ(min_degree_core(cycle_graph(5), 2).size(), 5u);
  EXPECT_EQ(min_degree_core(petersen_graph(), 3).size(), 10u);
}

// The core has min degree >= t and each removed vertex had < t neighbours
// among the vertices alive when it went.
TEST(MinDegreeCore, MaximalityProperty) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto g = gen_gnp(25, 0.05 + 0.01 * static_cast<double>(seed % 20), Seed{seed});
    for (std::size_t t = 1; t <= 4; ++t) {
      const auto core = min_degree_core(g, t);
      if (!core.empty()) EXPECT_GE(min_degree(induced(g, core)), t);
      // Anything outside the core cannot be added back: the t-core of g restricted
      // to core ∪ {v} is still core.
      for (Vertex v = 0; v < 25; ++v) {
        if (contains(core, v)) continue;
        auto plus = set_union(core, {v});
        const auto sub = induced(g, plus);
        EXPECT_LT(min_degree(sub), t);
      }
    }
  }
}

TEST(MinDegreeCore, NonemptyWhenDenseEnough) {
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const auto g = gen_gnp(20, 0.1 + 0.0005 * static_cast<double>(seed), Seed{seed});
    const auto d = average_degree(g);
    for (std::size_t t = 1; t <= 6; ++t)
      if (d >= Rational(static_cast<std::int64_t>(2 * t - 1))) EXPECT_FALSE(min_degree_core(g, t).empty());
  }
}

TEST(Degeneracy, Examples) {
  EXPECT_EQ(degeneracy(path_graph(7)).value, 1u);
  EXPECT_EQ(degeneracy(star_graph(4)).value, 1u);
  EXPECT_EQ(degeneracy(complete_graph(5)).value, 4u);
  EXPECT_EQ(degeneracy(heawood_graph()).value, 3u);
}

TEST(Degeneracy, OrderingCertifiesValue) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto g = gen_gnp(30, 0.15, Seed{seed});
    const auto dg = degeneracy(g);
    ASSERT_EQ(dg.order.size(), 30u);
    std::vector<std::size_t> pos(30);
    for (std::size_t i = 0; i < 30; ++i) pos[dg.order[i]] = i;
    std::size_t worst = 0;
    for (Vertex v = 0; v < 30; ++v) {
      std::size_t later = 0;
      for (auto u : g.neighbors(v)) later += pos[u] > pos[v];
      worst = std::max(worst, later);
    }
    EXPECT_EQ(worst, dg.value);
    // each vertex charges at most `value` edges, so e <= value * n and value >= d/2
    EXPECT_GE(Rational(static_cast<std::int64_t>(dg.value)), average_degree(g) / 2);
  }
}

TEST(PeelToFixedPoint, HalfDegreeProperty) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto g = gen_gnp(30, 0.2, Seed{seed});
    if (g.edge_count() == 0) continue;
    const auto core = peel_to_fixed_point(g);
    ASSERT_FALSE(core.empty());
    const auto h = induced(g, core);
    const auto d = average_degree(h);
    EXPECT_GE(Rational(static_cast<std::int64_t>(min_degree(h))), d / 2);
    EXPECT_GE(d, average_degree(g));
  }
}

TEST(Induced, Examples) {
  const auto p3 = induced(cycle_graph(4), {0, 1, 2});
  EXPECT_EQ(p3.vertex_count(), 3u);
  EXPECT_EQ(p3.edge_count(), 2u);
  EXPECT_TRUE(p3.same_adjacency(path_graph(3)));

  const auto g = gen_gnp(12, 0.4, Seed{3});
  EXPECT_TRUE(induced(g, all_vertices(g)).same_adjacency(g));

  const auto ring = induced(petersen_graph(), {0, 1, 2, 3, 4});
  EXPECT_TRUE(ring.same_adjacency(cycle_graph(5)));
}

TEST(Induced, LabelsFollowParent) {
  const auto sub = induced(cycle_graph(6), {1, 3, 4});
  EXPECT_EQ(sub.label(0), "1");
  EXPECT_EQ(sub.label(2), "4");
}

TEST(SetHelpers, Basics) {
  EXPECT_EQ(normalized({3, 1, 3, 2}), (VertexSet{1, 2, 3}));
  EXPECT_EQ(set_union({1, 3}, {2, 3}), (VertexSet{1, 2, 3}));
  EXPECT_EQ(set_intersection({1, 3}, {2, 3}), (VertexSet{3}));
  EXPECT_EQ(set_difference({1, 2, 3}, {2}), (VertexSet{1, 3}));
  const auto g = complete_graph(5);
  EXPECT_EQ(edges_within(g, {0, 1, 2}), 3u);
  EXPECT_EQ(edges_between(g, {0, 1}, {2, 3, 4}), 6u);
}

TEST(TwoColoring, BipartiteIffNoOddCycle) {
  EXPECT_TRUE(two_coloring(heawood_graph()).has_value());
  EXPECT_FALSE(two_coloring(petersen_graph()).has_value());
  const auto col = two_coloring(cycle_graph(6));
  ASSERT_TRUE(col);
  for (const auto& e : cycle_graph(6).edges()) EXPECT_NE((*col)[e.u], (*col)[e.v]);
}

TEST(BipartiteGraph, RejectsBadSides) {
  const auto kab = complete_bipartite(2, 3);
  EXPECT_EQ(kab.side_a(), (VertexSet{0, 1}));
  EXPECT_THROW(BipartiteGraph(complete_graph(3), {0}, {1, 2}), Error);
  EXPECT_THROW(BipartiteGraph(path_graph(3), {0}, {1}), Error);
}

TEST(Generators, GnpExtremesAndDeterminism) {
  EXPECT_EQ(gen_gnp(5, 0.0, Seed{9}).edge_count(), 0u);
  EXPECT_TRUE(gen_gnp(5, 1.0, Seed{9}).same_adjacency(complete_graph(5)));
  EXPECT_EQ(gen_gnp(40, 0.3, Seed{11}).edges(), gen_gnp(40, 0.3, Seed{11}).edges());
  EXPECT_NE(gen_gnp(40, 0.3, Seed{11}).edges(), gen_gnp(40, 0.3, Seed{12}).edges());
}

TEST(Generators, GnpEdgeCountConcentrates) {
  const double tol = 4.0 * std::sqrt(4950.0 * 0.25);
  int outside = 0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const auto e = static_cast<double>(gen_gnp(100, 0.5, Seed{seed}).edge_count());
    outside += std::abs(e - 2475.0) > tol;
  }
  EXPECT_LE(outside, 1);
}

TEST(Generators, ProjectivePlanes) {
  for (std::uint32_t q : {2u, 3u, 5u}) {
    const auto pg = projective_plane_incidence(q);
    const auto& g = pg.graph();
    const std::size_t pts = q * q + q + 1;
    EXPECT_EQ(g.vertex_count(), 2 * pts);
    EXPECT_EQ(g.edge_count(), (q + 1) * pts);
    for (Vertex v = 0; v < g.vertex_count(); ++v) EXPECT_EQ(g.degree(v), q + 1);
    EXPECT_FALSE(find_c4(g).has_value());
    EXPECT_FALSE(find_c3(g).has_value());
    EXPECT_EQ(naive::girth(naive::matrix(g)), 6u);
  }
  EXPECT_THROW(projective_plane_incidence(4), Error);
}

TEST(Generators, HeawoodGirthByBruteForce) {
  const auto m = naive::matrix(heawood_graph());
  const auto all = naive::all(14);
  EXPECT_FALSE(naive::has_c3(m, all));
  EXPECT_FALSE(naive::has_c4(m, all));
  EXPECT_EQ(heawood_graph().edge_count(), 21u);
}

TEST(Generators, Lopsided) {
  const auto trivial = gen_lopsided(8, 4, 1, 2, Seed{1});
  for (auto a : trivial.side_a()) EXPECT_EQ(trivial.graph().degree(a), 1u);

  const auto g = gen_lopsided(40, 10, 2, 2, Seed{5});
  for (auto a : g.side_a()) EXPECT_EQ(g.graph().degree(a), 2u);
  EXPECT_FALSE(find_c4(g.graph()).has_value());

  EXPECT_THROW(gen_lopsided(1000, 10, 9, 2, Seed{1}), Error);
  // 100 vertices of degree 2 into 10 need 100 distinct pairs; only 45 exist
  EXPECT_THROW(gen_lopsided(100, 10, 2, 2, Seed{1}), Error);
}

TEST(Generators, LopsidedIsBicliqueFreeForLargerS) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto g = gen_lopsided(60, 20, 4, 3, Seed{seed});
    EXPECT_FALSE(contains_biclique(g.graph(), 3).has_value());
  }
}
