#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "c4free/error.hpp"
#include "c4free/graph.hpp"
#include "c4free/random.hpp"

namespace c4free {

using HyperEdge = VertexSet;

/// Vertex set 0..n-1 plus an ordered list of edges (each stored sorted).
/// Edge order is preserved because kernels refer to edges by index.
class Hypergraph {
 public:
  Hypergraph() = default;
  Hypergraph(std::size_t vertex_count, std::vector<HyperEdge> edges);

  std::size_t vertex_count() const noexcept { return vertex_count_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  const std::vector<HyperEdge>& edges() const noexcept { return edges_; }
  const HyperEdge& edge(std::size_t i) const { return edges_[i]; }

  bool is_covered() const;
  bool is_bounded(std::size_t ell) const;
  std::size_t max_edge_size() const;
  /// r when every edge has size r (and there is at least one edge).
  std::optional<std::size_t> uniformity() const;

 private:
  std::size_t vertex_count_ = 0;
  std::vector<HyperEdge> edges_;
};

/// "n m" then one edge per line as space-separated ids.
std::string to_text(const Hypergraph& h);
Hypergraph hypergraph_from_text(std::string_view text);

nlohmann::json to_json(const Hypergraph& h);

/// u ~ v iff some edge contains both.
Graph co_occurrence_graph(const Hypergraph& h);

// ---- kernels ----

struct PartiteKernel {
  std::vector<std::size_t> surviving_edges;  // indices into the source, ascending
  std::vector<std::uint32_t> coloring;       // colour in 0..r-1 per source vertex
  Hypergraph trace;                          // on colours 0..r-1; never contains the empty set
  std::size_t multiplicity = 0;              // t
  std::size_t s_bound = 0;                   // s
  std::size_t r = 0;
  std::vector<std::size_t> history;          // |E_0|, |E_1|, ..., |E_tau|
  bool final_peel = false;                   // last history step is the degree peel, not a reduction
};

struct KernelCheck {
  std::vector<std::uint32_t> element;  // e ⊆ [r], |e| <= s
  bool in_trace = false;
  std::size_t min_partners = 0;  // over surviving edges F, counting F itself
  std::size_t max_partners = 0;
  bool ok = true;
};

struct KernelReport {
  bool indices_ok = true;
  bool rainbow_ok = true;
  bool trace_shape_ok = true;
  std::vector<KernelCheck> elements;

  bool ok() const;
  const KernelCheck* first_failure() const;
};

nlohmann::json to_json(const KernelReport& report);
nlohmann::json to_json(const PartiteKernel& kernel);

/// Exhaustive replay of the kernel's promises against its source hypergraph.
/// "At least t extensions" counts F itself among the t (F ∩ F = F).
/// The empty set is implied: it belongs to the trace exactly when |E*| >= 2.
KernelReport verify_kernel(const Hypergraph& source, const PartiteKernel& kernel);

struct KernelOptions {
  std::size_t retries = 100;
  std::size_t colorings_per_attempt = 8;
  unsigned threads = 1;
  /// Try the degree peel at every round and keep it when edges survive, instead of
  /// only once traces are few. Outputs are verified either way.
  bool eager_peel = false;
};

class KernelFailure : public Error {
 public:
  KernelFailure(const std::string& what, std::optional<PartiteKernel> best, std::vector<std::uint32_t> failing)
      : Error(ErrorKind::kernel_failure, what), best_(std::move(best)), failing_(std::move(failing)) {}

  const std::optional<PartiteKernel>& best_attempt() const noexcept { return best_; }
  const std::vector<std::uint32_t>& failing_element() const noexcept { return failing_; }

 private:
  std::optional<PartiteKernel> best_;
  std::vector<std::uint32_t> failing_;
};

/// Nonempty r-partite sub-family with the trace dichotomy, verified before return.
PartiteKernel furedi_kernel(const Hypergraph& f, std::size_t s, std::size_t t, Seed seed,
                            const KernelOptions& options = {});

// ---- induced pairs ----

struct InducedPair {
  VertexSet a_set;
  VertexSet b_set;
  std::size_t order = 0;
  bool reached = false;  // order >= requested k
};

/// A ∩ B = ∅; every b has an edge containing A ∪ {b}; no edge containing A meets B twice.
bool verify_induced_pair(const Hypergraph& h, const VertexSet& a, const VertexSet& b);

/// Recursive maximal-independent-set / link construction; order >= k is guaranteed
/// once |V| >= Σ_{l<=ℓ} (k-1)^l. Below that, the best pair found is returned with reached = false.
InducedPair find_induced_pair(const Hypergraph& h, std::size_t k);

/// Exact α(h) by enumerating A over ∅ and all subsets of edges.
std::size_t alpha_exact(const Hypergraph& h, std::size_t limit = 12);

/// Σ_{l=0}^{ℓ} (k-1)^l.
std::size_t induced_pair_threshold(std::size_t ell, std::size_t k);

/// Keeps only edges not strictly contained in another edge (duplicates collapse).
Hypergraph maximal_edges(const Hypergraph& h);

// ---- F(ℓ,k) ----

struct FSearchOptions {
  std::size_t node_budget = 5'000'000;
};

struct FSearchResult {
  std::size_t ell = 0;
  std::size_t k = 0;
  std::size_t lower = 0;
  std::optional<std::size_t> upper;
  std::optional<Hypergraph> counterexample;  // on lower-1 vertices with α < k
};

nlohmann::json to_json(const FSearchResult& result);

/// Scans n = 0, 1, ... n_max for covered ℓ-bounded hypergraphs with α < k. Limits:
/// ℓ <= 3, 1 <= k <= 5, n_max <= 8.
FSearchResult f_search(std::size_t ell, std::size_t k, std::size_t n_max, const FSearchOptions& options = {});

}  // namespace c4free
