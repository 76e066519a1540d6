#include "c4free/oracles.hpp"

#include <algorithm>
#include <bit>
#include <tuple>

#include "c4free/error.hpp"
#include "c4free/parallel.hpp"

namespace c4free {

namespace {

using Mask = std::uint64_t;

std::vector<Mask> adjacency_masks(const Graph& g) {
  std::vector<Mask> out(g.vertex_count(), 0);
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    for (auto w : g.neighbors(v)) out[v] |= Mask{1} << w;
  }
  return out;
}

struct Candidate {
  Mask set = 0;
  std::size_t size = 0;
  std::size_t edges = 0;
  bool valid = false;
};

// true when a beats b under (value desc, size asc, lexicographic asc)
bool better(const Candidate& a, const Candidate& b) {
  if (!b.valid) return a.valid;
  if (!a.valid) return false;
  const auto lhs = static_cast<std::uint64_t>(a.edges) * b.size;
  const auto rhs = static_cast<std::uint64_t>(b.edges) * a.size;
  if (lhs != rhs) return lhs > rhs;
  if (a.size != b.size) return a.size < b.size;
  // equal-size sets: lexicographic order of sorted members is decided by the lowest differing bit
  const auto diff = a.set ^ b.set;
  if (diff == 0) return false;
  return (a.set >> std::countr_zero(diff)) & 1U;
}

class InducedSearch {
 public:
  explicit InducedSearch(const Graph& g) : adj_(adjacency_masks(g)), n_(g.vertex_count()) {}

  Candidate run_from(Vertex first) {
    best_ = {};
    extend(Mask{1} << first, 1, 0, first + 1);
    return best_;
  }

 private:
  // visits sets in lexicographic order, so only strict improvements replace best_
  void extend(Mask set, std::size_t size, std::size_t edges, std::size_t next) {
    Candidate here{set, size, edges, true};
    if (better(here, best_)) best_ = here;
    for (std::size_t v = next; v < n_; ++v) {
      if (creates_c4(set, static_cast<Vertex>(v))) continue;
      const auto added = static_cast<std::size_t>(std::popcount(adj_[v] & set));
      extend(set | (Mask{1} << v), size + 1, edges + added, v + 1);
    }
  }

  bool creates_c4(Mask set, Vertex v) const {
    const auto nv = adj_[v] & set;
    if (std::popcount(nv) < 2) return false;
    for (Mask rest = set; rest != 0; rest &= rest - 1) {
      const auto u = std::countr_zero(rest);
      if (std::popcount(adj_[u] & nv) >= 2) return true;
    }
    return false;
  }

  std::vector<Mask> adj_;
  std::size_t n_;
  Candidate best_;
};

class IndependentSearch {
 public:
  explicit IndependentSearch(const Graph& g) : adj_(adjacency_masks(g)) {}

  Mask run(Mask all) {
    solve(all, 0, 0);
    return best_;
  }

 private:
  void solve(Mask pool, Mask chosen, int size) {
    // vertices of degree <= 1 inside the pool are always safe to take
    for (;;) {
      Mask forced = 0;
      for (Mask rest = pool; rest != 0; rest &= rest - 1) {
        const auto v = std::countr_zero(rest);
        if (std::popcount(adj_[v] & pool) <= 1) {
          forced = Mask{1} << v;
          break;
        }
      }
      if (forced == 0) break;
      const auto v = std::countr_zero(forced);
      chosen |= forced;
      ++size;
      pool &= ~(forced | adj_[v]);
    }
    if (size + std::popcount(pool) <= best_size_) return;
    if (pool == 0) {
      best_ = chosen;
      best_size_ = size;
      return;
    }
    int pivot = -1;
    int pivot_degree = -1;
    for (Mask rest = pool; rest != 0; rest &= rest - 1) {
      const auto v = std::countr_zero(rest);
      const int deg = std::popcount(adj_[v] & pool);
      if (deg > pivot_degree) {
        pivot = v;
        pivot_degree = deg;
      }
    }
    const auto bit = Mask{1} << pivot;
    solve(pool & ~(bit | adj_[pivot]), chosen | bit, size + 1);
    solve(pool & ~bit, chosen, size);
  }

  std::vector<Mask> adj_;
  Mask best_ = 0;
  int best_size_ = -1;
};

VertexSet mask_members(Mask m) {
  VertexSet out;
  for (; m != 0; m &= m - 1) out.push_back(static_cast<Vertex>(std::countr_zero(m)));
  return out;
}

}  // namespace

std::optional<std::array<Vertex, 4>> find_c4(const Graph& g) {
  const auto n = g.vertex_count();
  std::vector<std::vector<Vertex>> common(n);
  std::vector<Vertex> touched;
  for (Vertex a = 0; a < n; ++a) {
    touched.clear();
    for (auto b : g.neighbors(a)) {
      for (auto c : g.neighbors(b)) {
        if (c == a) continue;
        if (common[c].empty()) touched.push_back(c);
        common[c].push_back(b);  // b ascending, so lists stay sorted
      }
    }
    std::optional<std::tuple<Vertex, Vertex, Vertex>> best;
    for (auto c : touched) {
      if (common[c].size() >= 2) {
        const std::tuple<Vertex, Vertex, Vertex> cand{common[c][0], c, common[c][1]};
        if (!best || cand < *best) best = cand;
      }
      common[c].clear();
    }
    if (best) {
      const auto [b, c, d] = *best;
      return std::array<Vertex, 4>{a, b, c, d};
    }
  }
  return std::nullopt;
}

std::optional<std::array<Vertex, 3>> find_c3(const Graph& g) {
  for (Vertex a = 0; a < g.vertex_count(); ++a) {
    const auto na = g.neighbors(a);
    for (std::size_t i = 0; i < na.size(); ++i) {
      if (na[i] < a) continue;
      for (std::size_t j = i + 1; j < na.size(); ++j) {
        if (g.adjacent(na[i], na[j])) return std::array<Vertex, 3>{a, na[i], na[j]};
      }
    }
  }
  return std::nullopt;
}

bool is_c4_free(const Graph& g) {
  const auto n = g.vertex_count();
  std::vector<Vertex> seen(n, static_cast<Vertex>(-1));
  for (Vertex a = 0; a < n; ++a) {
    for (auto b : g.neighbors(a)) {
      for (auto c : g.neighbors(b)) {
        if (c <= a) continue;
        if (seen[c] == a) return false;
        seen[c] = a;
      }
    }
  }
  return true;
}

bool is_c4_free(const Graph& g, const VertexSet& subset) { return is_c4_free(induced(g, subset)); }

std::optional<Biclique> contains_biclique(const Graph& g, std::size_t s) {
  if (s == 0) throw Error(ErrorKind::domain, "biclique size must be at least 1");
  const auto n = g.vertex_count();
  if (2 * s > n) return std::nullopt;
  if (s == 1) {
    for (Vertex v = 0; v < n; ++v) {
      if (g.degree(v) > 0) return Biclique{{v}, {g.neighbors(v)[0]}};
    }
    return std::nullopt;
  }
  if (s == 2) {
    if (auto c = find_c4(g)) return Biclique{normalized({(*c)[0], (*c)[2]}), normalized({(*c)[1], (*c)[3]})};
    return std::nullopt;
  }
  // left side grows in degree-descending order; common neighbourhood shrinks monotonically
  std::vector<Vertex> order;
  for (Vertex v = 0; v < n; ++v) {
    if (g.degree(v) >= s) order.push_back(v);
  }
  std::stable_sort(order.begin(), order.end(), [&](Vertex a, Vertex b) { return g.degree(a) > g.degree(b); });
  std::vector<std::size_t> rank(n, n);
  for (std::size_t i = 0; i < order.size(); ++i) rank[order[i]] = i;

  std::vector<Vertex> left;
  std::vector<std::size_t> mark(n, 0);
  std::size_t stamp = 0;
  std::optional<Biclique> found;

  auto intersect = [&](const VertexSet& cn, Vertex v) {
    VertexSet out;
    const auto nv = g.neighbors(v);
    std::set_intersection(cn.begin(), cn.end(), nv.begin(), nv.end(), std::back_inserter(out));
    return out;
  };

  auto search = [&](auto&& self, const VertexSet& cn, std::size_t last_rank) -> bool {
    if (left.size() == s) {
      found = Biclique{normalized(left), VertexSet(cn.begin(), cn.begin() + static_cast<std::ptrdiff_t>(s))};
      return true;
    }
    // next left vertex must share every member of cn's eventual s-subset, so it lies within 2 hops
    ++stamp;
    std::vector<Vertex> next;
    for (auto w : cn) {
      for (auto v : g.neighbors(w)) {
        if (rank[v] < n && rank[v] > last_rank && mark[v] != stamp) {
          mark[v] = stamp;
          next.push_back(v);
        }
      }
    }
    std::sort(next.begin(), next.end(), [&](Vertex a, Vertex b) { return rank[a] < rank[b]; });
    for (auto v : next) {
      auto narrowed = intersect(cn, v);
      if (narrowed.size() < s) continue;
      left.push_back(v);
      if (self(self, narrowed, rank[v])) return true;
      left.pop_back();
    }
    return false;
  };

  for (std::size_t i = 0; i < order.size(); ++i) {
    const auto v = order[i];
    VertexSet cn;
    for (auto w : g.neighbors(v)) {
      if (g.degree(w) >= s) cn.push_back(w);
    }
    if (cn.size() < s) continue;
    left.assign(1, v);
    if (search(search, cn, i)) return found;
  }
  return std::nullopt;
}

bool is_biclique(const Graph& g, const Biclique& b, std::size_t s) {
  if (b.left.size() != s || b.right.size() != s) return false;
  if (normalized(b.left).size() != s || normalized(b.right).size() != s) return false;
  if (!set_intersection(normalized(b.left), normalized(b.right)).empty()) return false;
  for (auto u : b.left) {
    for (auto v : b.right) {
      if (!g.adjacent(u, v)) return false;
    }
  }
  return true;
}

InducedOptimum best_c4free_induced(const Graph& g, const OracleOptions& options) {
  const auto n = g.vertex_count();
  if (n == 0) throw Error(ErrorKind::domain, "oracle on the empty graph");
  if (n > options.limit || n > 64) {
    throw Error(ErrorKind::oracle_limit, "graph has " + std::to_string(n) + " vertices, oracle limit is " +
                                             std::to_string(std::min<std::size_t>(options.limit, 64)));
  }
  std::vector<Candidate> per_first(n);
  parallel_for(n, options.threads, [&](std::size_t first) {
    InducedSearch search(g);
    per_first[first] = search.run_from(static_cast<Vertex>(first));
  });
  Candidate best;
  for (const auto& c : per_first) {
    if (better(c, best)) best = c;
  }
  return {mask_members(best.set),
          Rational(2 * static_cast<std::int64_t>(best.edges), static_cast<std::int64_t>(best.size))};
}

VertexSet max_independent_set(const Graph& g, std::size_t limit) {
  const auto n = g.vertex_count();
  if (n > limit || n > 64) {
    throw Error(ErrorKind::oracle_limit, "graph has " + std::to_string(n) +
                                             " vertices, independent-set oracle limit is " +
                                             std::to_string(std::min<std::size_t>(limit, 64)));
  }
  if (n == 0) return {};
  const Mask all = n == 64 ? ~Mask{0} : (Mask{1} << n) - 1;
  IndependentSearch search(g);
  return mask_members(search.run(all));
}

}  // namespace c4free
