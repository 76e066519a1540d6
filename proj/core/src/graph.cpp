#include "c4free/graph.hpp"

#include <algorithm>
#include <deque>
#include <iterator>
#include <numeric>

#include "c4free/error.hpp"

namespace c4free {

namespace {

std::uint64_t edge_key(Vertex u, Vertex v) {
  if (u > v) std::swap(u, v);
  return (static_cast<std::uint64_t>(u) << 32) | v;
}

// t-core restricted to the vertices flagged in `alive`; clears flags of peeled vertices.
void peel_core(const Graph& g, std::vector<char>& alive, std::size_t t) {
  const auto n = g.vertex_count();
  std::vector<std::size_t> deg(n, 0);
  std::deque<Vertex> queue;
  for (Vertex v = 0; v < n; ++v) {
    if (!alive[v]) continue;
    for (auto w : g.neighbors(v)) deg[v] += alive[w] ? 1 : 0;
  }
  for (Vertex v = 0; v < n; ++v) {
    if (alive[v] && deg[v] < t) {
      alive[v] = 0;
      queue.push_back(v);
    }
  }
  while (!queue.empty()) {
    const auto v = queue.front();
    queue.pop_front();
    for (auto w : g.neighbors(v)) {
      if (!alive[w]) continue;
      if (--deg[w] < t) {
        alive[w] = 0;
        queue.push_back(w);
      }
    }
  }
}

}  // namespace

Graph::Graph(std::size_t vertex_count) : adjacency_(vertex_count) {
  if (vertex_count <= kDenseLimit) {
    words_per_row_ = (vertex_count + 63) / 64;
    bits_.assign(words_per_row_ * vertex_count, 0);
  }
}

Graph::Graph(std::size_t vertex_count, std::span<const std::pair<Vertex, Vertex>> edges,
             std::vector<std::string> labels)
    : Graph(vertex_count) {
  if (!labels.empty() && labels.size() != vertex_count) {
    throw Error(ErrorKind::domain, "label count does not match vertex count");
  }
  labels_ = std::move(labels);
  const bool dense = vertex_count <= kDenseLimit;
  for (auto [u, v] : edges) {
    if (u >= vertex_count || v >= vertex_count) {
      throw Error(ErrorKind::domain, "edge endpoint out of range: " + std::to_string(u) + " " +
                                         std::to_string(v));
    }
    if (u == v) throw Error(ErrorKind::domain, "self-loop at vertex " + std::to_string(u));
    if (dense) {
      auto& word = bits_[u * words_per_row_ + v / 64];
      const auto mask = std::uint64_t{1} << (v % 64);
      if (word & mask) continue;
      word |= mask;
      bits_[v * words_per_row_ + u / 64] |= std::uint64_t{1} << (u % 64);
    } else if (!edge_keys_.insert(edge_key(u, v)).second) {
      continue;
    }
    adjacency_[u].push_back(v);
    adjacency_[v].push_back(u);
    ++edge_count_;
  }
  for (auto& list : adjacency_) std::sort(list.begin(), list.end());
}

bool Graph::adjacent(Vertex u, Vertex v) const {
  if (u >= vertex_count() || v >= vertex_count() || u == v) return false;
  if (vertex_count() <= kDenseLimit) {
    return (bits_[u * words_per_row_ + v / 64] >> (v % 64)) & 1U;
  }
  return edge_keys_.contains(edge_key(u, v));
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count_);
  for (Vertex u = 0; u < vertex_count(); ++u) {
    for (auto v : adjacency_[u]) {
      if (u < v) out.push_back({u, v});
    }
  }
  return out;
}

std::string Graph::label(Vertex v) const {
  return labels_.empty() ? std::to_string(v) : labels_[v];
}

bool Graph::same_adjacency(const Graph& other) const {
  return adjacency_ == other.adjacency_;
}

BipartiteGraph::BipartiteGraph(Graph graph, VertexSet side_a, VertexSet side_b)
    : graph_(std::move(graph)), side_a_(normalized(std::move(side_a))),
      side_b_(normalized(std::move(side_b))) {
  const auto n = graph_.vertex_count();
  std::vector<int> side(n, -1);
  for (auto v : side_a_) {
    if (v >= n) throw Error(ErrorKind::domain, "side_a vertex out of range");
    side[v] = 0;
  }
  for (auto v : side_b_) {
    if (v >= n) throw Error(ErrorKind::domain, "side_b vertex out of range");
    if (side[v] == 0) throw Error(ErrorKind::domain, "sides overlap at vertex " + std::to_string(v));
    side[v] = 1;
  }
  for (std::size_t v = 0; v < n; ++v) {
    if (side[v] < 0) throw Error(ErrorKind::domain, "sides do not cover vertex " + std::to_string(v));
  }
  for (const auto& e : graph_.edges()) {
    if (side[e.u] == side[e.v]) {
      throw Error(ErrorKind::domain, "edge " + std::to_string(e.u) + "-" + std::to_string(e.v) +
                                         " does not cross the bipartition");
    }
  }
}

VertexSet normalized(VertexSet set) {
  std::sort(set.begin(), set.end());
  set.erase(std::unique(set.begin(), set.end()), set.end());
  return set;
}

bool contains(const VertexSet& set, Vertex v) {
  return std::binary_search(set.begin(), set.end(), v);
}

VertexSet set_union(const VertexSet& a, const VertexSet& b) {
  VertexSet out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

VertexSet set_difference(const VertexSet& a, const VertexSet& b) {
  VertexSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

VertexSet set_intersection(const VertexSet& a, const VertexSet& b) {
  VertexSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

VertexSet all_vertices(const Graph& g) {
  VertexSet out(g.vertex_count());
  std::iota(out.begin(), out.end(), Vertex{0});
  return out;
}

Rational average_degree(const Graph& g) {
  if (g.vertex_count() == 0) throw Error(ErrorKind::domain, "average degree of the empty graph");
  return Rational(2 * static_cast<std::int64_t>(g.edge_count()),
                  static_cast<std::int64_t>(g.vertex_count()));
}

std::size_t max_degree(const Graph& g) {
  std::size_t best = 0;
  for (Vertex v = 0; v < g.vertex_count(); ++v) best = std::max(best, g.degree(v));
  return best;
}

std::size_t min_degree(const Graph& g) {
  if (g.vertex_count() == 0) return 0;
  std::size_t best = g.degree(0);
  for (Vertex v = 1; v < g.vertex_count(); ++v) best = std::min(best, g.degree(v));
  return best;
}

VertexSet min_degree_core(const Graph& g, std::size_t t) {
  std::vector<char> alive(g.vertex_count(), 1);
  peel_core(g, alive, t);
  VertexSet out;
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (alive[v]) out.push_back(v);
  }
  return out;
}

Degeneracy degeneracy(const Graph& g) {
  // Matula-Beck bucket queue
  const auto n = g.vertex_count();
  Degeneracy out;
  out.order.reserve(n);
  if (n == 0) return out;
  std::vector<std::size_t> deg(n);
  std::size_t maxdeg = 0;
  for (Vertex v = 0; v < n; ++v) {
    deg[v] = g.degree(v);
    maxdeg = std::max(maxdeg, deg[v]);
  }
  std::vector<std::vector<Vertex>> buckets(maxdeg + 1);
  for (Vertex v = n; v-- > 0;) buckets[deg[v]].push_back(v);  // smallest id popped first
  std::vector<char> removed(n, 0);
  std::size_t cursor = 0;
  for (std::size_t step = 0; step < n; ++step) {
    cursor = cursor > 0 ? cursor - 1 : 0;
    Vertex v = 0;
    for (;;) {
      while (buckets[cursor].empty()) ++cursor;
      v = buckets[cursor].back();
      buckets[cursor].pop_back();
      if (!removed[v] && deg[v] == cursor) break;  // skip stale entries
    }
    removed[v] = 1;
    out.value = std::max(out.value, cursor);
    out.order.push_back(v);
    for (auto w : g.neighbors(v)) {
      if (removed[w]) continue;
      --deg[w];
      buckets[deg[w]].push_back(w);
    }
  }
  return out;
}

VertexSet peel_to_fixed_point(const Graph& g) {
  std::vector<char> alive(g.vertex_count(), 1);
  std::size_t size = g.vertex_count();
  while (size > 0) {
    std::size_t twice_edges = 0;
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
      if (!alive[v]) continue;
      for (auto w : g.neighbors(v)) twice_edges += alive[w] ? 1 : 0;
    }
    // t = ceil(d/2) = ceil(twice_edges / (2 * size))
    const auto t = (twice_edges + 2 * size - 1) / (2 * size);
    peel_core(g, alive, t);
    const auto next = static_cast<std::size_t>(std::count(alive.begin(), alive.end(), 1));
    if (next == size) break;
    size = next;
  }
  VertexSet out;
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (alive[v]) out.push_back(v);
  }
  return out;
}

Graph induced(const Graph& g, const VertexSet& subset) {
  const auto members = normalized(subset);
  if (!members.empty() && members.back() >= g.vertex_count()) {
    throw Error(ErrorKind::domain, "induced: vertex " + std::to_string(members.back()) + " out of range");
  }
  std::vector<std::int64_t> index(g.vertex_count(), -1);
  for (std::size_t i = 0; i < members.size(); ++i) index[members[i]] = static_cast<std::int64_t>(i);
  std::vector<std::pair<Vertex, Vertex>> edges;
  std::vector<std::string> labels;
  labels.reserve(members.size());
  for (std::size_t i = 0; i < members.size(); ++i) {
    const auto v = members[i];
    labels.push_back(g.label(v));
    for (auto w : g.neighbors(v)) {
      if (w > v && index[w] >= 0) edges.emplace_back(static_cast<Vertex>(i), static_cast<Vertex>(index[w]));
    }
  }
  return Graph(members.size(), edges, std::move(labels));
}

std::size_t edges_within(const Graph& g, const VertexSet& subset) {
  std::vector<char> in(g.vertex_count(), 0);
  for (auto v : subset) in[v] = 1;
  std::size_t count = 0;
  for (auto v : subset) {
    for (auto w : g.neighbors(v)) count += (w > v && in[w]) ? 1 : 0;
  }
  return count;
}

std::size_t edges_between(const Graph& g, const VertexSet& a, const VertexSet& b) {
  std::vector<char> in_b(g.vertex_count(), 0);
  for (auto v : b) in_b[v] = 1;
  std::size_t count = 0;
  for (auto v : a) {
    for (auto w : g.neighbors(v)) count += in_b[w] ? 1 : 0;
  }
  return count;
}

std::optional<std::vector<int>> two_coloring(const Graph& g) {
  std::vector<int> color(g.vertex_count(), -1);
  std::deque<Vertex> queue;
  for (Vertex s = 0; s < g.vertex_count(); ++s) {
    if (color[s] >= 0) continue;
    color[s] = 0;
    queue.push_back(s);
    while (!queue.empty()) {
      const auto v = queue.front();
      queue.pop_front();
      for (auto w : g.neighbors(v)) {
        if (color[w] < 0) {
          color[w] = 1 - color[v];
          queue.push_back(w);
        } else if (color[w] == color[v]) {
          return std::nullopt;
        }
      }
    }
  }
  return color;
}

}  // namespace c4free
