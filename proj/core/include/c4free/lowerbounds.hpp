#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <nlohmann/json.hpp>

#include "c4free/graph.hpp"
#include "c4free/random.hpp"
#include "c4free/rational.hpp"

namespace c4free {

/// Least integer >= n^{3/2}/2 + n/4 + 1, computed with integer square roots only.
Rational reiman_max_edges(std::uint64_t n);

/// (1 - p^4)^{C(floor(K/2), 2)}.
double q_upper(std::uint64_t big_k, double p);

/// K = k^2 - 3k; nonpositive for k <= 3.
std::int64_t subset_size_k(std::int64_t k);

struct LbConditions {
  std::uint64_t n = 0;
  double p = 0.0;
  std::size_t s = 0;
  std::size_t k = 0;
  double n2ps = 0.0;        // n^2 p^s
  double subset_term = 0.0; // n (1 - p^4)^{(k^2-3k-2)/4}
  double chernoff = 0.0;    // exp(-C(n,2) p / 4)
  bool trivial_k = false;   // k in {2, 3}: no nontrivial conclusion
  bool satisfied = false;
  double guaranteed_degree = 0.0;  // (n-1)p/2 when satisfied
  std::string claim;
};

/// Evaluates the three random-graph conditions (in log space, so huge n is fine).
LbConditions check_lb_conditions(std::uint64_t n, double p, std::size_t s, std::size_t k);

nlohmann::json to_json(const LbConditions& c);

/// Natural logs of the condition terms for parameter choices too large to
/// evaluate directly; `satisfied` when every term is at most its threshold.
struct SymbolicCheck {
  std::string name;
  double log_n = 0.0;
  double log_p = 0.0;
  std::vector<std::pair<std::string, double>> log_terms;
  double log_threshold = 0.0;
  bool satisfied = false;
};

/// n = k^{k/20}, p = k^{-1/5}, s = k: the diagonal construction.
SymbolicCheck symbolic_diagonal(double k);
/// n = s^{(1/4-eps)(k^2-3k-2)}, p = 1 - k^2 log(s)/s: fixed k, growing s.
SymbolicCheck symbolic_fixed_k(double s, double k, double eps);
/// p = n^{-(2+eps)/s}, n = k^{(1-eps)s/(2+eps)} with independent-set counting: fixed s, growing k.
SymbolicCheck symbolic_fixed_s(double s, double k, double eps);

nlohmann::json to_json(const SymbolicCheck& c);

/// C(a+b-2, b-1), an upper bound on the Ramsey number R(K_a, K_b).
boost::multiprecision::cpp_int erdos_szekeres_bound(std::uint64_t a, std::uint64_t b);

/// ½ C(n,s) C(n-s,s) p^{s^2}: expected number of K_{s,s} copies in G(n,p).
double expected_biclique_copies(std::uint64_t n, std::size_t s, double p);

/// Number of (unlabelled) K_{s,s} copies: pairs {S, T} of disjoint s-sets with all s^2 edges.
std::uint64_t count_biclique_copies(const Graph& g, std::size_t s);

struct LbOptions {
  std::uint64_t subset_budget = 1'000'000;
  bool require_exact_x = false;
  std::size_t sampled_subsets = 2000;
  unsigned threads = 1;
};

struct LbEstimate {
  double value = 0.0;
  double stderr_ = 0.0;
};

struct LbReport {
  std::uint64_t n = 0;
  double p = 0.0;
  std::size_t s = 0;
  std::size_t k = 0;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  std::int64_t big_k = 0;
  bool x_exact = true;
  bool x_applicable = true;
  LbEstimate p_x_zero;
  LbEstimate p_y_zero;
  LbEstimate p_dense;  // e(G) >= C(n,2) p / 2
  LbEstimate mean_edges;
  LbEstimate mean_y;
  double exact_ey = 0.0;
  LbConditions conditions;
};

/// Monte Carlo over G(n,p); trial i uses derive_seed(seed, i).
/// Throws unsupported_scale when exact X is required but C(n,K) exceeds the budget.
LbReport lb_experiment(std::uint64_t n, double p, std::size_t s, std::size_t k, std::size_t trials, Seed seed,
                       const LbOptions& options = {});

nlohmann::json to_json(const LbReport& r);
std::string csv_header();
std::string to_csv_row(const LbReport& r);

/// α(g) >= n/(3+√n), compared exactly. g must be C4-free (precondition error otherwise).
bool alpha_lb_check(const Graph& g, std::size_t limit = 64);

}  // namespace c4free
