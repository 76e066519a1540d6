#include <algorithm>
#include <set>
#include <stdexcept>

#include "c4free/hypergraph.hpp"
#include "c4free/oracles.hpp"

namespace c4free {

namespace {

bool includes(const VertexSet& big, const VertexSet& small) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

// vertices given in host ids; edges already restricted to them
struct Level {
  VertexSet vertices;
  std::vector<VertexSet> edges;
};

std::pair<VertexSet, VertexSet> solve(const Level& level, std::size_t k) {
  // co-occurrence adjacency among level.vertices
  std::vector<VertexSet> nbr(level.vertices.size());
  auto index_of = [&](Vertex v) {
    return static_cast<std::size_t>(std::lower_bound(level.vertices.begin(), level.vertices.end(), v) -
                                    level.vertices.begin());
  };
  for (const auto& e : level.edges) {
    for (auto u : e) {
      auto& list = nbr[index_of(u)];
      for (auto w : e) {
        if (w != u) list.push_back(w);
      }
    }
  }
  for (auto& list : nbr) list = normalized(std::move(list));

  std::vector<std::size_t> order(level.vertices.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return nbr[a].size() < nbr[b].size(); });
  std::vector<char> blocked(order.size(), 0);
  std::vector<std::size_t> independent;
  for (auto i : order) {
    if (blocked[i]) continue;
    independent.push_back(i);
    for (auto w : nbr[i]) blocked[index_of(w)] = 1;
  }
  VertexSet base;
  for (std::size_t j = 0; j < independent.size() && j < k; ++j) base.push_back(level.vertices[independent[j]]);
  base = normalized(std::move(base));
  if (independent.size() >= k) return {{}, base};

  std::size_t x = independent.front();
  for (auto i : independent) {
    if (nbr[i].size() > nbr[x].size() || (nbr[i].size() == nbr[x].size() && i < x)) x = i;
  }
  if (nbr[x].empty()) return {{}, base};
  const auto xv = level.vertices[x];
  Level link;
  link.vertices = nbr[x];
  for (const auto& e : level.edges) {
    if (!std::binary_search(e.begin(), e.end(), xv)) continue;
    VertexSet rest;
    for (auto v : e) {
      if (v != xv) rest.push_back(v);
    }
    if (!rest.empty()) link.edges.push_back(std::move(rest));
  }
  auto [a, b] = solve(link, k);
  if (b.size() <= base.size()) return {{}, base};
  a.push_back(xv);
  return {normalized(std::move(a)), std::move(b)};
}

}  // namespace

bool verify_induced_pair(const Hypergraph& h, const VertexSet& a_in, const VertexSet& b_in) {
  const auto a = normalized(a_in);
  const auto b = normalized(b_in);
  if (!set_intersection(a, b).empty()) return false;
  for (auto v : b) {
    const bool extendable = std::any_of(h.edges().begin(), h.edges().end(), [&](const HyperEdge& e) {
      return includes(e, a) && std::binary_search(e.begin(), e.end(), v);
    });
    if (!extendable) return false;
  }
  for (const auto& e : h.edges()) {
    if (includes(e, a) && set_intersection(e, b).size() > 1) return false;
  }
  return true;
}

InducedPair find_induced_pair(const Hypergraph& h, std::size_t k) {
  if (k == 0) throw Error(ErrorKind::domain, "find_induced_pair: k must be positive");
  if (!h.is_covered()) throw Error(ErrorKind::precondition, "find_induced_pair: hypergraph is not covered");
  Level top;
  top.vertices = all_vertices(Graph(h.vertex_count()));
  for (const auto& e : h.edges()) {
    if (!e.empty()) top.edges.push_back(e);
  }
  auto [a, b] = solve(top, k);
  if (!verify_induced_pair(h, a, b)) throw std::logic_error("find_induced_pair produced an invalid pair");
  InducedPair out;
  out.order = b.size();
  out.reached = out.order >= k;
  out.a_set = std::move(a);
  out.b_set = std::move(b);
  return out;
}

std::size_t alpha_exact(const Hypergraph& h, std::size_t limit) {
  const auto n = h.vertex_count();
  if (n > limit) {
    throw Error(ErrorKind::oracle_limit, "hypergraph has " + std::to_string(n) + " vertices, alpha oracle limit is " +
                                             std::to_string(limit));
  }
  std::set<VertexSet> candidates{VertexSet{}};
  for (const auto& e : h.edges()) {
    if (e.size() > 24) throw Error(ErrorKind::oracle_limit, "alpha_exact: edge too large to enumerate");
    for (std::uint32_t mask = 1; mask < (1U << e.size()); ++mask) {
      VertexSet sub;
      for (std::size_t i = 0; i < e.size(); ++i) {
        if (mask & (1U << i)) sub.push_back(e[i]);
      }
      candidates.insert(std::move(sub));
    }
  }
  std::size_t best = 0;
  for (const auto& a : candidates) {
    std::vector<const HyperEdge*> over;
    for (const auto& e : h.edges()) {
      if (includes(e, a)) over.push_back(&e);
    }
    VertexSet eligible;
    for (const auto* e : over) {
      for (auto v : *e) {
        if (!std::binary_search(a.begin(), a.end(), v)) eligible.push_back(v);
      }
    }
    eligible = normalized(std::move(eligible));
    if (eligible.size() <= best) continue;
    std::vector<std::size_t> index(n, 0);
    for (std::size_t i = 0; i < eligible.size(); ++i) index[eligible[i]] = i;
    std::vector<std::pair<Vertex, Vertex>> conflicts;
    for (const auto* e : over) {
      VertexSet in_e;
      for (auto v : *e) {
        if (!std::binary_search(a.begin(), a.end(), v)) in_e.push_back(v);
      }
      for (std::size_t i = 0; i < in_e.size(); ++i) {
        for (std::size_t j = i + 1; j < in_e.size(); ++j) {
          conflicts.emplace_back(static_cast<Vertex>(index[in_e[i]]), static_cast<Vertex>(index[in_e[j]]));
        }
      }
    }
    const Graph conflict(eligible.size(), conflicts);
    best = std::max(best, max_independent_set(conflict).size());
  }
  return best;
}

}  // namespace c4free
