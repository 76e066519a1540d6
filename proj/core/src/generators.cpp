#include "c4free/generators.hpp"

#include <array>
#include <unordered_map>
#include <vector>

#include <boost/functional/hash.hpp>

#include "c4free/error.hpp"
#include "c4free/oracles.hpp"

namespace c4free {

namespace {

using EdgeList = std::vector<std::pair<Vertex, Vertex>>;

VertexSet range_set(std::size_t first, std::size_t count) {
  VertexSet out(count);
  for (std::size_t i = 0; i < count; ++i) out[i] = static_cast<Vertex>(first + i);
  return out;
}

}  // namespace

Graph complete_graph(std::size_t n) {
  EdgeList edges;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) edges.emplace_back(u, v);
  }
  return Graph(n, edges);
}

Graph cycle_graph(std::size_t n) {
  if (n < 3) throw Error(ErrorKind::domain, "cycle needs at least 3 vertices");
  EdgeList edges;
  for (Vertex v = 0; v < n; ++v) edges.emplace_back(v, static_cast<Vertex>((v + 1) % n));
  return Graph(n, edges);
}

Graph path_graph(std::size_t n) {
  EdgeList edges;
  for (Vertex v = 0; v + 1 < n; ++v) edges.emplace_back(v, v + 1);
  return Graph(n, edges);
}

Graph star_graph(std::size_t leaves) {
  EdgeList edges;
  for (Vertex v = 1; v <= leaves; ++v) edges.emplace_back(0, v);
  return Graph(leaves + 1, edges);
}

BipartiteGraph complete_bipartite(std::size_t a, std::size_t b) {
  EdgeList edges;
  for (Vertex u = 0; u < a; ++u) {
    for (std::size_t j = 0; j < b; ++j) edges.emplace_back(u, static_cast<Vertex>(a + j));
  }
  return BipartiteGraph(Graph(a + b, edges), range_set(0, a), range_set(a, b));
}

Graph petersen_graph() {
  EdgeList edges;
  for (Vertex i = 0; i < 5; ++i) {
    edges.emplace_back(i, (i + 1) % 5);
    edges.emplace_back(i, i + 5);
    edges.emplace_back(i + 5, (i + 2) % 5 + 5);
  }
  return Graph(10, edges);
}

Graph heawood_graph() { return projective_plane_incidence(2).graph(); }

Graph gen_gnp(std::size_t n, double p, Seed seed) {
  if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorKind::domain, "edge probability must lie in [0,1]");
  Rng rng(seed);
  EdgeList edges;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) {
      if (rng.bernoulli(p)) edges.emplace_back(u, v);
    }
  }
  return Graph(n, edges);
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

BipartiteGraph projective_plane_incidence(std::uint32_t q) {
  if (!is_prime(q)) {
    throw Error(ErrorKind::unsupported_parameter,
                "projective plane order " + std::to_string(q) + " is not prime");
  }
  // normalized representatives: first nonzero coordinate is 1
  std::vector<std::array<std::uint64_t, 3>> points;
  for (std::uint64_t y = 0; y < q; ++y) {
    for (std::uint64_t z = 0; z < q; ++z) points.push_back({1, y, z});
  }
  for (std::uint64_t z = 0; z < q; ++z) points.push_back({0, 1, z});
  points.push_back({0, 0, 1});
  const auto count = points.size();
  EdgeList edges;
  for (std::size_t i = 0; i < count; ++i) {
    for (std::size_t j = 0; j < count; ++j) {
      const auto& p = points[i];
      const auto& l = points[j];
      if ((p[0] * l[0] + p[1] * l[1] + p[2] * l[2]) % q == 0) {
        edges.emplace_back(static_cast<Vertex>(i), static_cast<Vertex>(count + j));
      }
    }
  }
  return BipartiteGraph(Graph(2 * count, edges), range_set(0, count), range_set(count, count));
}

BipartiteGraph gen_lopsided(std::size_t a_count, std::size_t b_count, std::size_t r, std::size_t s,
                            Seed seed, std::size_t attempts_per_vertex) {
  if (r > b_count) throw Error(ErrorKind::domain, "lopsided: r exceeds |B|");
  if (s == 0) throw Error(ErrorKind::domain, "lopsided: s must be positive");
  Rng rng(seed);
  // how many A-vertices already contain each s-subset of B
  std::unordered_map<std::vector<Vertex>, std::size_t, boost::hash<std::vector<Vertex>>> usage;
  const bool guard = r >= s;

  auto for_each_subset = [&](const std::vector<std::uint32_t>& nbhd, auto&& fn) {
    std::vector<std::size_t> idx(s);
    for (std::size_t i = 0; i < s; ++i) idx[i] = i;
    std::vector<Vertex> key(s);
    for (;;) {
      for (std::size_t i = 0; i < s; ++i) key[i] = nbhd[idx[i]];
      if (!fn(key)) return false;
      std::size_t i = s;
      while (i > 0 && idx[i - 1] == nbhd.size() - s + (i - 1)) --i;
      if (i == 0) return true;
      ++idx[i - 1];
      for (std::size_t j = i; j < s; ++j) idx[j] = idx[j - 1] + 1;
    }
  };

  EdgeList edges;
  edges.reserve(a_count * r);
  for (std::size_t a = 0; a < a_count; ++a) {
    bool placed = false;
    for (std::size_t attempt = 0; attempt < attempts_per_vertex && !placed; ++attempt) {
      const auto nbhd = rng.subset(static_cast<std::uint32_t>(b_count), static_cast<std::uint32_t>(r));
      if (guard) {
        const bool free = for_each_subset(nbhd, [&](const std::vector<Vertex>& key) {
          auto it = usage.find(key);
          return it == usage.end() || it->second + 1 < s;
        });
        if (!free) continue;
        for_each_subset(nbhd, [&](const std::vector<Vertex>& key) {
          ++usage[key];
          return true;
        });
      }
      for (auto b : nbhd) edges.emplace_back(static_cast<Vertex>(a), static_cast<Vertex>(a_count + b));
      placed = true;
    }
    if (!placed) {
      throw Error(ErrorKind::generation_failure,
                  "lopsided: vertex " + std::to_string(a) + " found no K_{s,s}-free neighbourhood after " +
                      std::to_string(attempts_per_vertex) + " attempts");
    }
  }
  BipartiteGraph out(Graph(a_count + b_count, edges), range_set(0, a_count), range_set(a_count, b_count));
  if (contains_biclique(out.graph(), s)) {
    throw Error(ErrorKind::generation_failure, "lopsided: output failed K_{s,s} certification");
  }
  return out;
}

}  // namespace c4free
