#pragma once

#include <array>
#include <cstddef>
#include <optional>

#include "c4free/graph.hpp"
#include "c4free/rational.hpp"

namespace c4free {

/// Vertices a-b-c-d-a of a 4-cycle subgraph, the lexicographically least such tuple.
std::optional<std::array<Vertex, 4>> find_c4(const Graph& g);

/// Triangle a < b < c, the lexicographically least one.
std::optional<std::array<Vertex, 3>> find_c3(const Graph& g);

/// No vertex pair has two common neighbours.
bool is_c4_free(const Graph& g);
bool is_c4_free(const Graph& g, const VertexSet& subset);

struct Biclique {
  VertexSet left;
  VertexSet right;
};

/// Some K_{s,s} (not necessarily induced), or none. s = 0 is a domain error;
/// s > n/2 is simply none.
std::optional<Biclique> contains_biclique(const Graph& g, std::size_t s);

/// All s^2 cross edges present, sides disjoint and of size s.
bool is_biclique(const Graph& g, const Biclique& b, std::size_t s);

struct OracleOptions {
  std::size_t limit = 22;
  unsigned threads = 1;
};

struct InducedOptimum {
  VertexSet vertices;
  Rational value;
};

/// Exhaustive maximum of d(g[S]) over nonempty S with g[S] C4-free; ties go to
/// smaller |S|, then lexicographically smaller S.
/// Throws oracle_limit above options.limit, domain on the empty graph.
InducedOptimum best_c4free_induced(const Graph& g, const OracleOptions& options = {});

/// Exact maximum independent set by branch and bound (bitmask, so limit <= 64).
VertexSet max_independent_set(const Graph& g, std::size_t limit = 64);

}  // namespace c4free
