#include <gtest/gtest.h>

#include "c4free/error.hpp"
#include "c4free/generators.hpp"
#include "c4free/oracles.hpp"
#include "c4free/reductions.hpp"
#include "naive.hpp"

using namespace c4free;

namespace {

Rational crossing_degree(const Graph& g, const Sides& s) {
  const auto both = set_union(s.a, s.b);
  return Rational(2 * static_cast<std::int64_t>(edges_between(g, s.a, s.b)), static_cast<std::int64_t>(both.size()));
}

std::size_t crossing_max_degree(const Graph& g, const Sides& s) {
  std::size_t best = 0;
  for (auto a : s.a) best = std::max(best, edges_between(g, {a}, s.b));
  for (auto b : s.b) best = std::max(best, edges_between(g, {b}, s.a));
  return best;
}

void expect_reduction_post(const BipartiteGraph& gamma, const Sides& out, const Rational& l) {
  const auto& g = gamma.graph();
  const Sides in{gamma.side_a(), gamma.side_b()};
  const auto d_in = crossing_degree(g, in);
  const auto d_out = crossing_degree(g, out);
  EXPECT_GE(d_out, d_in / 4);
  EXPECT_LE(Rational(static_cast<std::int64_t>(crossing_max_degree(g, out))), Rational(24) * l * d_out);
  EXPECT_TRUE(set_intersection(out.a, out.b).empty());
}

BipartiteGraph matching(std::size_t m) {
  std::vector<std::pair<Vertex, Vertex>> edges;
  VertexSet a, b;
  for (Vertex i = 0; i < m; ++i) {
    edges.emplace_back(i, static_cast<Vertex>(m + i));
    a.push_back(i);
    b.push_back(static_cast<Vertex>(m + i));
  }
  return BipartiteGraph(Graph(2 * m, edges), a, b);
}

}  // namespace

TEST(BiregularityFactor, RegularGraphsHaveFactorOne) {
  const auto pg = projective_plane_incidence(2);
  EXPECT_EQ(biregularity_factor(pg.graph(), pg.side_a(), pg.side_b()), Rational(1));
  const auto m = matching(5);
  EXPECT_EQ(biregularity_factor(m.graph(), m.side_a(), m.side_b()), Rational(1));
  EXPECT_EQ(biregularity_factor(Graph(4), {0, 1}, {2, 3}), Rational(0));
}

TEST(AlmostBiregularReduce, EmptyEdgeSetIsIdentity) {
  const BipartiteGraph empty(Graph(5), {0, 1}, {2, 3, 4});
  const auto out = almost_biregular_reduce(empty, Rational(1), Seed{1});
  EXPECT_EQ(out.a, empty.side_a());
  EXPECT_EQ(out.b, empty.side_b());
}

TEST(AlmostBiregularReduce, HeawoodAndMatching) {
  const auto heawood = projective_plane_incidence(2);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto out = almost_biregular_reduce(heawood, Rational(1), Seed{seed});
    expect_reduction_post(heawood, out, Rational(1));
    EXPECT_GE(crossing_degree(heawood.graph(), out), Rational(3, 4));
  }
  const auto m = matching(12);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto out = almost_biregular_reduce(m, Rational(1), Seed{seed});
    expect_reduction_post(m, out, Rational(1));
    EXPECT_GE(crossing_degree(m.graph(), out), Rational(1, 4));
  }
}

TEST(AlmostBiregularReduce, RejectsIrregularInput) {
  const BipartiteGraph g(Graph(6, {{0, 2}, {0, 3}, {0, 4}, {1, 5}}), {0, 1}, {2, 3, 4, 5});
  try {
    almost_biregular_reduce(g, Rational(1), Seed{1});
    FAIL() << "expected not_biregular";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::not_biregular);
  }
  // with the measured factor it goes through
  const auto l = biregularity_factor(g.graph(), g.side_a(), g.side_b());
  expect_reduction_post(g, almost_biregular_reduce(g, l, Seed{1}), l);
}

TEST(AlmostBiregularReduce, RandomBipartiteProperty) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const auto g = gen_lopsided(30, 20, 3 + seed % 3, 3, Seed{seed});
    const auto l = biregularity_factor(g.graph(), g.side_a(), g.side_b());
    try {
      expect_reduction_post(g, almost_biregular_reduce(g, l, Seed{seed}), l);
    } catch (const ExtractionFailure&) {
      // allowed: budget exhausted; nothing was returned
    }
  }
}

TEST(Sparsify, OutputIsAlwaysShortCycleFree) {
  const Rational delta(1, 20);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto pet = sparsify_short_cycles(petersen_graph(), 2, delta, Seed{seed});
    const auto m = naive::matrix(petersen_graph());
    EXPECT_FALSE(naive::has_c3(m, pet));
    EXPECT_FALSE(naive::has_c4(m, pet));
    EXPECT_FALSE(pet.empty());
  }
}

TEST(Sparsify, FourCycleNeverSurvivesWhole) {
  SparsifyOptions opts;
  opts.check_precondition = false;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    try {
      const auto out = sparsify_short_cycles(cycle_graph(4), 2, Rational(1, 20), Seed{seed}, opts);
      EXPECT_LT(out.size(), 4u);
    } catch (const ExtractionFailure& e) {
      EXPECT_LT(e.best_attempt().size(), 4u);
    }
  }
}

TEST(Sparsify, ProjectivePlaneQ5) {
  const auto pg = projective_plane_incidence(5).graph();
  SparsifyOptions opts;
  opts.retry.retries = 100;
  const auto out = sparsify_short_cycles(pg, 2, Rational(1, 20), Seed{3}, opts);
  EXPECT_FALSE(out.empty());
  EXPECT_FALSE(find_c4(induced(pg, out)));
  EXPECT_FALSE(find_c3(induced(pg, out)));
}

TEST(Sparsify, DomainAndPrecondition) {
  EXPECT_THROW(sparsify_short_cycles(petersen_graph(), 1, Rational(1, 20), Seed{1}), Error);
  EXPECT_THROW(sparsify_short_cycles(petersen_graph(), 2, Rational(1, 10), Seed{1}), Error);
  try {
    sparsify_short_cycles(complete_graph(5), 2, Rational(1, 20), Seed{1});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::precondition);
  }
}

TEST(Sparsify, SameSeedSameOutput) {
  const auto g = gen_gnp(60, 0.1, Seed{4});
  SparsifyOptions opts;
  opts.check_precondition = false;
  EXPECT_EQ(sparsify_short_cycles(g, 3, Rational(1, 20), Seed{9}, opts),
            sparsify_short_cycles(g, 3, Rational(1, 20), Seed{9}, opts));
}

TEST(ExtremeSplit, RegularGraphsAreNearRegular) {
  for (const auto& g : {heawood_graph(), petersen_graph()}) {
    const auto out = extreme_split(g, Rational(1, 10), Seed{1});
    EXPECT_EQ(out.kind, SplitOutcome::Kind::near_regular);
    EXPECT_FALSE(out.subgraph.empty());
    EXPECT_EQ(out.stats.average_degree, average_degree(induced(g, out.subgraph)));
    EXPECT_EQ(out.stats.max_degree, max_degree(induced(g, out.subgraph)));
  }
  const auto pet = extreme_split(petersen_graph(), Rational(1, 10), Seed{1});
  EXPECT_EQ(Rational(static_cast<std::int64_t>(pet.stats.max_degree)) / pet.stats.average_degree, Rational(1));
}

TEST(ExtremeSplit, StarForestIsLopsided) {
  // two K_{1,20} and a K5: n = 47, e = 50
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (Vertex i = 1; i <= 20; ++i) edges.emplace_back(0, i);
  for (Vertex i = 22; i <= 41; ++i) edges.emplace_back(21, i);
  for (Vertex i = 42; i < 47; ++i)
    for (Vertex j = i + 1; j < 47; ++j) edges.emplace_back(i, j);
  const Graph g(47, edges);
  const auto out = extreme_split(g, Rational(1, 10), Seed{1});
  ASSERT_EQ(out.kind, SplitOutcome::Kind::lopsided);
  EXPECT_EQ(out.b_side, (VertexSet{0, 21}));
  EXPECT_EQ(set_union(out.a_side, out.b_side), all_vertices(g));
  EXPECT_TRUE(set_intersection(out.a_side, out.b_side).empty());
  // e(A,B) >= n d / 4 = e(G) / 2, exactly
  EXPECT_GE(Rational(static_cast<std::int64_t>(edges_between(g, out.a_side, out.b_side))),
            Rational(47) * average_degree(g) / 4);
}

TEST(ExtremeSplit, OutcomeInvariantsOnRandomGraphs) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const auto g = gen_gnp(40, 0.12, Seed{seed});
    if (average_degree(g) < Rational(2)) continue;
    try {
      const auto out = extreme_split(g, Rational(1, 20), Seed{seed});
      if (out.kind == SplitOutcome::Kind::near_regular) {
        EXPECT_FALSE(out.subgraph.empty());
      } else {
        EXPECT_EQ(set_union(out.a_side, out.b_side), all_vertices(g));
        EXPECT_GE(Rational(static_cast<std::int64_t>(edges_between(g, out.a_side, out.b_side))),
                  Rational(40) * average_degree(g) / 4);
      }
      const auto again = extreme_split(g, Rational(1, 20), Seed{seed});
      EXPECT_EQ(again.subgraph, out.subgraph);
      EXPECT_EQ(again.b_side, out.b_side);
    } catch (const ExtractionFailure&) {
    }
  }
  EXPECT_THROW(extreme_split(path_graph(4), Rational(1, 10), Seed{1}), Error);
}

TEST(BipartiteRegularize, PerfectMatching) {
  const auto m = matching(10);
  const auto out = bipartite_regularize(m.graph(), m.side_a(), m.side_b(), 2, 1, Seed{1});
  EXPECT_FALSE(out.a.empty());
  for (auto a : out.a) EXPECT_EQ(edges_between(m.graph(), {a}, out.b), 1u);
  EXPECT_EQ(out.a.size(), out.b.size());
}

TEST(BipartiteRegularize, LowDegreeVertexNeverEnters) {
  // A-vertices 0..5 of degree 2 on private neighbours, vertex 6 of degree 1
  std::vector<std::pair<Vertex, Vertex>> edges;
  VertexSet a, b;
  for (Vertex i = 0; i < 6; ++i) {
    edges.emplace_back(i, 7 + 2 * i);
    edges.emplace_back(i, 8 + 2 * i);
    a.push_back(i);
  }
  a.push_back(6);
  edges.emplace_back(6, 19);
  for (Vertex v = 7; v < 20; ++v) b.push_back(v);
  const Graph g(20, edges);
  RegularizeOptions opts;
  opts.d = 4;
  opts.sample_rate = 0.5;
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto out = bipartite_regularize(g, a, b, 2, 1, Seed{seed}, opts);
    EXPECT_FALSE(contains(out.a, 6));
    for (auto x : out.a) EXPECT_EQ(edges_between(g, {x}, out.b), 1u);
  }
}

TEST(BipartiteRegularize, LopsidedInputProperty) {
  int successes = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto g = gen_lopsided(40, 20, 3, 2, Seed{seed});
    try {
      const auto out = bipartite_regularize(g.graph(), g.side_a(), g.side_b(), 2, 2, Seed{seed});
      ++successes;
      EXPECT_EQ(edges_within(g.graph(), out.a), 0u);
      EXPECT_EQ(edges_within(g.graph(), out.b), 0u);
      for (auto x : out.a) EXPECT_EQ(edges_between(g.graph(), {x}, out.b), 2u);
      for (auto y : out.b) EXPECT_GE(edges_between(g.graph(), {y}, out.a), 1u);
    } catch (const ExtractionFailure&) {
    }
  }
  EXPECT_GT(successes, 10);
}
