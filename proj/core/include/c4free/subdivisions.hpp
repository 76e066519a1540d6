#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "c4free/certificate.hpp"
#include "c4free/graph.hpp"
#include "c4free/random.hpp"

namespace c4free {

/// Subdivision of K_k: branch vertices (ascending) and one path per branch pair
/// (i, j), i < j, running from branch[i] to branch[j].
struct SubdivisionWitness {
  std::vector<Vertex> branch;
  std::map<std::pair<std::size_t, std::size_t>, std::vector<Vertex>> paths;
  bool induced = false;

  VertexSet vertices() const;
};

nlohmann::json to_json(const SubdivisionWitness& w);
SubdivisionWitness subdivision_from_json(const nlohmann::json& j);

/// Rechecks every structural invariant; when w.induced is claimed, also checks that
/// g induces exactly the witness edges on the witness vertices.
bool verify_subdivision(const Graph& g, const SubdivisionWitness& w);

/// True when g induces exactly the witness's edges (the witness must already be valid).
bool is_induced_witness(const Graph& g, const SubdivisionWitness& w);

struct SubdivisionOptions {
  std::size_t rotations = 64;
  std::size_t exhaustive_limit = 12;
  std::size_t node_budget = 2'000'000;
};

/// Heuristic routing from high-degree branch sets, then exact packing for small graphs.
/// nullopt means "not found", not "does not exist". Requires k >= 2.
std::optional<SubdivisionWitness> find_subdivision(const Graph& g, std::size_t k, Seed seed,
                                                   const SubdivisionOptions& options = {});

/// Exact search for an induced K_k subdivision in g with at most `limit` vertices.
std::optional<SubdivisionWitness> exhaustive_induced_subdivision(const Graph& g, std::size_t k,
                                                                 std::size_t limit = 20,
                                                                 std::size_t node_budget = 5'000'000);

struct InducedSubdivisionOptions {
  std::size_t retries = 50;
  std::size_t extraction_k = 2;  // average degree asked of the C4-free stage
  std::size_t fallback_limit = 20;
  unsigned threads = 1;
  SubdivisionOptions search;
};

struct InducedSubdivisionReport {
  std::optional<SubdivisionWitness> witness;
  std::string route;  // "bipartite", "near_regular", "fallback" or "none"
  std::size_t attempts = 0;
  std::size_t j_vertices = 0;  // |W| and e(J) = |U| of the last auxiliary graph built
  std::size_t j_edges = 0;
  std::size_t u_size = 0;
};

/// Induced subdivision via a C4-free extraction and an auxiliary graph J whose
/// edges are vertices of degree two; exhaustive fallback on small inputs.
InducedSubdivisionReport induced_subdivision_report(const Graph& g, std::size_t s, std::size_t k, Seed seed,
                                                    const InducedSubdivisionOptions& options = {});
std::optional<SubdivisionWitness> induced_subdivision(const Graph& g, std::size_t s, std::size_t k, Seed seed,
                                                      const InducedSubdivisionOptions& options = {});

}  // namespace c4free
