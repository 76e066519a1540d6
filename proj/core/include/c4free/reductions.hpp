#pragma once

#include <cstddef>
#include <optional>

#include "c4free/error.hpp"
#include "c4free/graph.hpp"
#include "c4free/las_vegas.hpp"
#include "c4free/random.hpp"
#include "c4free/rational.hpp"

namespace c4free {

/// Retry budget exhausted; carries the best attempt seen (a vertex set of the
/// input graph) and its average degree.
class ExtractionFailure : public Error {
 public:
  ExtractionFailure(const std::string& what, VertexSet best, Rational best_degree)
      : Error(ErrorKind::extraction_failure, what), best_(std::move(best)), best_degree_(best_degree) {}

  const VertexSet& best_attempt() const noexcept { return best_; }
  const Rational& best_average_degree() const noexcept { return best_degree_; }

 private:
  VertexSet best_;
  Rational best_degree_;
};

/// Two disjoint vertex sets of a host graph.
struct Sides {
  VertexSet a;
  VertexSet b;
};

/// Smallest L for which the crossing edges between a and b form an L-almost-biregular
/// graph: max over a of d(a)|A|/|E| and over b of d(b)|B|/|E|. Zero when there are no edges.
Rational biregularity_factor(const Graph& host, const VertexSet& a, const VertexSet& b);

/// Induced sub-pair (A', B') of the bipartite graph formed by the crossing edges
/// between a and b, with d >= d(Γ)/4 and Δ <= 24 L d. Edges inside a or inside b
/// are ignored. Returns the input sides when there are no crossing edges.
Sides almost_biregular_reduce(const Graph& host, const VertexSet& a, const VertexSet& b,
                              const Rational& l_factor, Seed seed, const RetryOptions& options = {});
Sides almost_biregular_reduce(const BipartiteGraph& gamma, const Rational& l_factor, Seed seed,
                              const RetryOptions& options = {});

struct SparsifyOptions {
  /// Accept only outputs whose average degree reaches this value.
  std::optional<Rational> min_average_degree;
  /// Multiplier on d^{(1/5-2δ)/s}; 0 disables that target, 1 is the strict form.
  double target_scale = 0.0;
  bool check_precondition = true;
  RetryOptions retry;
};

/// Nonempty {C3,C4}-free induced subgraph obtained by sampling vertices with
/// p = Δ^{1/(5s)-1} and deleting short cycles and overloaded survivors.
VertexSet sparsify_short_cycles(const Graph& g, std::size_t s, const Rational& delta, Seed seed,
                                const SparsifyOptions& options = {});

struct SplitOptions {
  std::optional<Rational> min_average_degree;
  /// Scale factors on 6d^{1-5δ} (lower bound on d) and 6d^{1+3δ} (upper bound on Δ).
  double low_scale = 0.0;
  double high_scale = 1.0;
  std::size_t inner_retries = 20;
  RetryOptions retry;

  static SplitOptions strict() {
    SplitOptions out;
    out.low_scale = 1.0;
    return out;
  }
};

struct SplitStats {
  Rational average_degree;
  std::size_t max_degree = 0;
  Rational side_ratio;  // |A|/|B| of the bipartite pair behind the outcome
};

struct SplitOutcome {
  enum class Kind { near_regular, lopsided };

  Kind kind = Kind::near_regular;
  VertexSet subgraph;  // near_regular
  VertexSet a_side;    // lopsided: low-degree side
  VertexSet b_side;    // lopsided: high-degree side
  SplitStats stats;
};

/// Either a near-regular induced subgraph or a partition A ∪ B carrying at least
/// half the edges across. Requires d(g) >= 2.
SplitOutcome extreme_split(const Graph& g, const Rational& delta, Seed seed, const SplitOptions& options = {});

struct RegularizeOptions {
  /// Density parameter; defaults to the degeneracy of g[a0 ∪ b].
  std::optional<std::size_t> d;
  /// Sampling rate for B0'; defaults to 1/d².
  std::optional<double> sample_rate;
  /// Required |A'| / |B'|.
  Rational min_side_ratio{0};
  RetryOptions retry;
};

/// Independent A' ⊆ a0 and B' ⊆ b with every a ∈ A' having exactly r neighbours in B'.
/// B' is trimmed to vertices that have a neighbour in A'.
Sides bipartite_regularize(const Graph& g, const VertexSet& a0, const VertexSet& b, std::size_t s,
                           std::size_t r, Seed seed, const RegularizeOptions& options = {});

}  // namespace c4free
