#include <algorithm>
#include <bit>
#include <map>
#include <set>

#include "c4free/hypergraph.hpp"

namespace c4free {

namespace {

using Mask = std::uint32_t;

// Canonical form: minimum sorted edge-mask list over relabelings that respect an
// isomorphism-invariant vertex ordering (degree, sizes of incident edges).
std::vector<Mask> canonical_form(std::size_t n, const std::vector<Mask>& edges) {
  std::vector<std::vector<std::size_t>> invariant(n);
  for (std::size_t v = 0; v < n; ++v) {
    for (auto e : edges) {
      if (e & (Mask{1} << v)) invariant[v].push_back(static_cast<std::size_t>(std::popcount(e)));
    }
    std::sort(invariant[v].begin(), invariant[v].end());
  }
  std::vector<std::size_t> by_class(n);
  for (std::size_t v = 0; v < n; ++v) by_class[v] = v;
  std::stable_sort(by_class.begin(), by_class.end(),
                   [&](std::size_t a, std::size_t b) { return invariant[a] < invariant[b]; });
  // class boundaries in by_class
  std::vector<std::pair<std::size_t, std::size_t>> classes;
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j < n && invariant[by_class[j]] == invariant[by_class[i]]) ++j;
    classes.emplace_back(i, j);
    i = j;
  }
  std::vector<Mask> best;
  std::vector<std::size_t> slots = by_class;  // slots[position] = original vertex
  auto evaluate = [&] {
    std::vector<std::size_t> position(n);
    for (std::size_t p = 0; p < n; ++p) position[slots[p]] = p;
    std::vector<Mask> mapped;
    mapped.reserve(edges.size());
    for (auto e : edges) {
      Mask m = 0;
      for (std::size_t v = 0; v < n; ++v) {
        if (e & (Mask{1} << v)) m |= Mask{1} << position[v];
      }
      mapped.push_back(m);
    }
    std::sort(mapped.begin(), mapped.end());
    if (best.empty() || mapped < best) best = std::move(mapped);
  };
  auto recurse = [&](auto&& self, std::size_t c) -> void {
    if (c == classes.size()) {
      evaluate();
      return;
    }
    auto [lo, hi] = classes[c];
    std::sort(slots.begin() + static_cast<std::ptrdiff_t>(lo), slots.begin() + static_cast<std::ptrdiff_t>(hi));
    do {
      self(self, c + 1);
    } while (std::next_permutation(slots.begin() + static_cast<std::ptrdiff_t>(lo),
                                   slots.begin() + static_cast<std::ptrdiff_t>(hi)));
  };
  recurse(recurse, 0);
  return best;
}

Hypergraph from_masks(std::size_t n, const std::vector<Mask>& masks) {
  std::vector<HyperEdge> edges;
  for (auto m : masks) {
    HyperEdge e;
    for (std::size_t v = 0; v < n; ++v) {
      if (m & (Mask{1} << v)) e.push_back(static_cast<Vertex>(v));
    }
    edges.push_back(std::move(e));
  }
  return Hypergraph(n, std::move(edges));
}

struct ScanResult {
  std::optional<Hypergraph> counterexample;
  bool exhaustive = true;
};

// any covered ℓ-bounded antichain hypergraph on n vertices with α < k?
ScanResult scan(std::size_t n, std::size_t ell, std::size_t k, std::size_t& budget) {
  std::vector<Mask> candidates;  // sets of size 2..ℓ, larger first; singletons are forced at the leaves
  for (std::size_t size = std::min(ell, n); size >= 2; --size) {
    for (Mask m = 0; m < (Mask{1} << n); ++m) {
      if (static_cast<std::size_t>(std::popcount(m)) == size) candidates.push_back(m);
    }
  }
  std::set<std::vector<Mask>> seen;
  ScanResult result;
  std::vector<Mask> chosen;

  auto leaf = [&]() -> bool {
    Mask covered = 0;
    for (auto e : chosen) covered |= e;
    if (ell == 0) return false;
    std::vector<Mask> edges = chosen;
    for (std::size_t v = 0; v < n; ++v) {
      if (!(covered & (Mask{1} << v))) edges.push_back(Mask{1} << v);
    }
    auto canon = canonical_form(n, edges);
    if (!seen.insert(canon).second) return false;
    auto h = from_masks(n, canon);
    if (alpha_exact(h, 8) < k) {
      result.counterexample = std::move(h);
      return true;
    }
    return false;
  };

  auto dfs = [&](auto&& self, std::size_t idx) -> bool {
    if (budget == 0) {
      result.exhaustive = false;
      return true;
    }
    --budget;
    if (idx == candidates.size()) return leaf();
    const auto m = candidates[idx];
    const bool compatible = std::none_of(chosen.begin(), chosen.end(), [&](Mask e) {
      return (e & m) == m || (e & m) == e;
    });
    if (compatible) {
      chosen.push_back(m);
      if (self(self, idx + 1)) return true;
      chosen.pop_back();
    }
    return self(self, idx + 1);
  };
  dfs(dfs, 0);
  return result;
}

}  // namespace

nlohmann::json to_json(const FSearchResult& result) {
  nlohmann::json out{{"ell", result.ell}, {"k", result.k}, {"lower", result.lower}};
  out["upper"] = result.upper ? nlohmann::json(*result.upper) : nlohmann::json(nullptr);
  out["counterexample"] = result.counterexample ? to_json(*result.counterexample) : nlohmann::json(nullptr);
  return out;
}

FSearchResult f_search(std::size_t ell, std::size_t k, std::size_t n_max, const FSearchOptions& options) {
  if (ell > 3 || k == 0 || k > 5 || n_max > 8) {
    throw Error(ErrorKind::unsupported_parameter,
                "f_search supports ell <= 3, 1 <= k <= 5, n_max <= 8 (got ell=" + std::to_string(ell) +
                    ", k=" + std::to_string(k) + ", n_max=" + std::to_string(n_max) + ")");
  }
  FSearchResult out;
  out.ell = ell;
  out.k = k;
  out.lower = 1;  // the empty hypergraph has α = 0 < k
  out.counterexample = Hypergraph(0, {});
  std::size_t budget = options.node_budget;
  for (std::size_t n = 1; n <= n_max; ++n) {
    auto found = scan(n, ell, k, budget);
    if (found.counterexample) {
      // deleting a vertex never raises α, so counterexamples are closed downwards
      out.lower = n + 1;
      out.counterexample = std::move(found.counterexample);
      continue;
    }
    if (found.exhaustive) out.upper = n;
    return out;
  }
  return out;
}

}  // namespace c4free
