#include <gtest/gtest.h>

#include <set>

#include "c4free/error.hpp"
#include "c4free/generators.hpp"
#include "c4free/subdivisions.hpp"
#include "naive.hpp"

using namespace c4free;

namespace {

// Independent witness check: endpoints, host edges, internal disjointness and,
// when claimed, that the host induces nothing beyond the witness edges.
bool naive_witness_ok(const Graph& g, const SubdivisionWitness& w, std::size_t k) {
  const auto m = naive::matrix(g);
  if (w.branch.size() != k || w.paths.size() != k * (k - 1) / 2) return false;
  std::vector<int> uses(g.vertex_count(), 0);
  for (auto b : w.branch) uses[b] += 100;
  std::set<std::pair<Vertex, Vertex>> witness_edges;
  for (const auto& [ij, path] : w.paths) {
    if (path.size() < 2 || path.front() != w.branch[ij.first] || path.back() != w.branch[ij.second]) return false;
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
      if (!m[path[i]][path[i + 1]]) return false;
      witness_edges.insert(std::minmax(path[i], path[i + 1]));
    }
    for (std::size_t i = 1; i + 1 < path.size(); ++i) ++uses[path[i]];
  }
  for (auto u : uses)
    if (u != 0 && u != 1 && u != 100) return false;
  if (w.induced) {
    const auto vs = w.vertices();
    if (naive::edges_in(m, vs) != witness_edges.size()) return false;
  }
  return true;
}

}  // namespace

TEST(FindSubdivision, CompleteGraphIsItsOwnSubdivision) {
  const auto g = complete_graph(4);
  const auto w = find_subdivision(g, 4, Seed{1});
  ASSERT_TRUE(w);
  for (const auto& [ij, path] : w->paths) EXPECT_EQ(path.size(), 2u);
  EXPECT_TRUE(verify_subdivision(g, *w));
  EXPECT_TRUE(naive_witness_ok(g, *w, 4));
}

TEST(FindSubdivision, PetersenContainsK4Subdivision) {
  const auto g = petersen_graph();
  const auto w = find_subdivision(g, 4, Seed{1});
  ASSERT_TRUE(w);
  EXPECT_TRUE(verify_subdivision(g, *w));
  EXPECT_TRUE(naive_witness_ok(g, *w, 4));
}

TEST(FindSubdivision, TreesHaveNoCycle) {
  EXPECT_FALSE(find_subdivision(path_graph(8), 3, Seed{1}));
  EXPECT_FALSE(find_subdivision(star_graph(6), 3, Seed{1}));
  EXPECT_THROW(find_subdivision(path_graph(3), 1, Seed{1}), Error);
}

TEST(FindSubdivision, RandomGraphsProduceValidWitnesses) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const auto g = gen_gnp(10 + seed % 15, 0.3, Seed{seed});
    for (std::size_t k = 3; k <= 5; ++k) {
      const auto w = find_subdivision(g, k, Seed{seed});
      if (!w) continue;
      EXPECT_TRUE(verify_subdivision(g, *w));
      EXPECT_TRUE(naive_witness_ok(g, *w, k));
    }
  }
}

TEST(VerifySubdivision, RejectsSharedInternalVertex) {
  // K3 subdivision on a 6-cycle, then reroute one path through another's interior
  const auto g = cycle_graph(6);
  SubdivisionWitness w;
  w.branch = {0, 2, 4};
  w.paths[{0, 1}] = {0, 1, 2};
  w.paths[{1, 2}] = {2, 3, 4};
  w.paths[{0, 2}] = {0, 5, 4};
  EXPECT_TRUE(verify_subdivision(g, w));
  EXPECT_TRUE(is_induced_witness(g, w));
  auto bad = w;
  bad.paths[{0, 2}] = {0, 1, 2, 3, 4};
  EXPECT_FALSE(verify_subdivision(g, bad));
  auto non_edge = w;
  non_edge.paths[{0, 2}] = {0, 4};
  EXPECT_FALSE(verify_subdivision(g, non_edge));
  // claiming inducedness on a chorded host is caught
  const Graph chorded(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 0}, {1, 4}});
  auto claimed = w;
  claimed.induced = true;
  EXPECT_FALSE(verify_subdivision(chorded, claimed));
}

TEST(SubdivisionJson, RoundTrip) {
  const auto g = petersen_graph();
  const auto w = find_subdivision(g, 4, Seed{2});
  ASSERT_TRUE(w);
  const auto j = to_json(*w);
  EXPECT_TRUE(j.contains("branch"));
  EXPECT_TRUE(j["paths"].contains("0-1"));
  const auto back = subdivision_from_json(j);
  EXPECT_EQ(back.branch, w->branch);
  EXPECT_EQ(back.paths, w->paths);
  EXPECT_EQ(back.induced, w->induced);
}

TEST(InducedSubdivision, HeawoodGivesInducedCycle) {
  const auto g = heawood_graph();
  const auto w = induced_subdivision(g, 2, 3, Seed{1});
  ASSERT_TRUE(w);
  EXPECT_TRUE(w->induced);
  EXPECT_GE(w->vertices().size(), 6u);
  EXPECT_TRUE(verify_subdivision(g, *w));
  EXPECT_TRUE(naive_witness_ok(g, *w, 3));
}

TEST(InducedSubdivision, CompleteBipartiteHasInducedCycle) {
  // K_{3,3} has no induced C6 (any six vertices induce all nine edges) but an induced C4 works
  const auto g = complete_bipartite(3, 3).graph();
  const auto w = induced_subdivision(g, 3, 3, Seed{1});
  ASSERT_TRUE(w);
  EXPECT_TRUE(w->induced);
  EXPECT_TRUE(naive_witness_ok(g, *w, 3));
}

TEST(InducedSubdivision, EdgelessAndDomain) {
  EXPECT_FALSE(induced_subdivision(Graph(6), 2, 3, Seed{1}));
  EXPECT_THROW(induced_subdivision(petersen_graph(), 1, 3, Seed{1}), Error);
  EXPECT_THROW(induced_subdivision(petersen_graph(), 2, 1, Seed{1}), Error);
}

TEST(InducedSubdivision, LopsidedInputsLiftSoundly) {
  int found = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto g = gen_lopsided(20, 15, 3, 2, Seed{seed});
    InducedSubdivisionOptions opts;
    opts.retries = 5;
    opts.fallback_limit = 0;
    const auto report = induced_subdivision_report(g.graph(), 2, 3, Seed{seed}, opts);
    if (!report.witness) continue;
    ++found;
    EXPECT_TRUE(report.witness->induced);
    EXPECT_TRUE(verify_subdivision(g.graph(), *report.witness));
    EXPECT_TRUE(naive_witness_ok(g.graph(), *report.witness, 3));
  }
  EXPECT_GT(found, 0);
}

TEST(ExhaustiveInduced, SmallCases) {
  const auto w = exhaustive_induced_subdivision(cycle_graph(5), 3);
  ASSERT_TRUE(w);
  EXPECT_TRUE(w->induced);
  const auto tri = exhaustive_induced_subdivision(complete_graph(4), 3);
  ASSERT_TRUE(tri);
  EXPECT_EQ(tri->vertices().size(), 3u);
  const auto k4 = exhaustive_induced_subdivision(complete_graph(4), 4);
  ASSERT_TRUE(k4);
  EXPECT_TRUE(naive_witness_ok(complete_graph(4), *k4, 4));
}
