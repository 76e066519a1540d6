#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "c4free/rational.hpp"

namespace c4free {

using Vertex = std::uint32_t;

/// Sorted, duplicate-free list of vertex ids. Every API returning a VertexSet
/// returns it normalized; APIs taking one normalize their copy.
using VertexSet = std::vector<Vertex>;

struct Edge {
  Vertex u = 0;  // u < v
  Vertex v = 0;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Finite simple undirected graph on vertices 0..n-1, immutable after construction.
///
/// Adjacency queries are O(1): graphs up to kDenseLimit vertices keep a bit
/// matrix, larger ones a hash set of edge keys. Optional labels carry the
/// input's own vertex names so witnesses can be reported in that naming.
class Graph {
 public:
  static constexpr std::size_t kDenseLimit = 4096;

  Graph() = default;
  explicit Graph(std::size_t vertex_count);

  /// Self-loops and out-of-range endpoints throw a domain error; repeated edges collapse.
  Graph(std::size_t vertex_count, std::span<const std::pair<Vertex, Vertex>> edges,
        std::vector<std::string> labels = {});
  Graph(std::size_t vertex_count, std::initializer_list<std::pair<Vertex, Vertex>> edges)
      : Graph(vertex_count, std::span<const std::pair<Vertex, Vertex>>(edges.begin(), edges.size())) {}

  std::size_t vertex_count() const noexcept { return adjacency_.size(); }
  std::size_t edge_count() const noexcept { return edge_count_; }

  std::span<const Vertex> neighbors(Vertex v) const { return adjacency_[v]; }
  std::size_t degree(Vertex v) const { return adjacency_[v].size(); }
  bool adjacent(Vertex u, Vertex v) const;

  /// All edges with u < v in lexicographic order.
  std::vector<Edge> edges() const;

  bool has_labels() const noexcept { return !labels_.empty(); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  /// The vertex's label, or its decimal id when the graph is unlabeled.
  std::string label(Vertex v) const;

  /// Same vertex count and adjacency relation; labels are ignored.
  bool same_adjacency(const Graph& other) const;

 private:
  std::vector<std::vector<Vertex>> adjacency_;
  std::size_t edge_count_ = 0;
  std::vector<std::uint64_t> bits_;  // row-major bit matrix when dense
  std::size_t words_per_row_ = 0;
  std::unordered_set<std::uint64_t> edge_keys_;  // when sparse
  std::vector<std::string> labels_;
};

/// Bipartite graph with an explicit side assignment; sides partition the vertex
/// set and every edge crosses.
class BipartiteGraph {
 public:
  BipartiteGraph(Graph graph, VertexSet side_a, VertexSet side_b);

  const Graph& graph() const noexcept { return graph_; }
  const VertexSet& side_a() const noexcept { return side_a_; }
  const VertexSet& side_b() const noexcept { return side_b_; }

 private:
  Graph graph_;
  VertexSet side_a_;
  VertexSet side_b_;
};

VertexSet normalized(VertexSet set);
bool contains(const VertexSet& set, Vertex v);
VertexSet set_union(const VertexSet& a, const VertexSet& b);
VertexSet set_difference(const VertexSet& a, const VertexSet& b);
VertexSet set_intersection(const VertexSet& a, const VertexSet& b);
VertexSet all_vertices(const Graph& g);

/// d(G) = 2e(G)/|G| exactly. Throws a domain error on the empty graph.
Rational average_degree(const Graph& g);

std::size_t max_degree(const Graph& g);
std::size_t min_degree(const Graph& g);

/// Maximal vertex set S with every vertex of g[S] of degree >= t (the t-core), possibly empty.
VertexSet min_degree_core(const Graph& g, std::size_t t);

struct Degeneracy {
  std::size_t value = 0;
  /// Elimination order: each vertex has at most `value` neighbours later in the order.
  std::vector<Vertex> order;
};

Degeneracy degeneracy(const Graph& g);

/// Repeatedly passes to the ceil(d/2)-core until the core is the whole graph.
/// The result has minimum degree >= ceil(d/2) for its own average degree d.
VertexSet peel_to_fixed_point(const Graph& g);

/// Induced subgraph on `subset`. Vertex i of the result is the i-th smallest
/// member of `subset`; labels carry the parent's labels (or its ids).
Graph induced(const Graph& g, const VertexSet& subset);

/// Number of edges with both ends in `subset`.
std::size_t edges_within(const Graph& g, const VertexSet& subset);

/// Number of edges with one end in `a` and the other in `b` (a, b disjoint).
std::size_t edges_between(const Graph& g, const VertexSet& a, const VertexSet& b);

/// Proper 2-colouring (0/1 per vertex) if g is bipartite.
std::optional<std::vector<int>> two_coloring(const Graph& g);

}  // namespace c4free
