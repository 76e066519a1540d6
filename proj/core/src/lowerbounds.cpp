#include "c4free/lowerbounds.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "c4free/error.hpp"
#include "c4free/generators.hpp"
#include "c4free/oracles.hpp"
#include "c4free/parallel.hpp"

namespace c4free {

namespace {

using boost::multiprecision::cpp_int;

const double kLogHalf = std::log(0.5);

cpp_int ceil_sqrt(const cpp_int& x) {
  cpp_int r = boost::multiprecision::sqrt(x);
  return r * r == x ? r : r + 1;
}

cpp_int binomial(std::uint64_t n, std::uint64_t r) {
  if (r > n) return 0;
  r = std::min(r, n - r);
  cpp_int out = 1;
  for (std::uint64_t i = 1; i <= r; ++i) out = out * (n - r + i) / i;
  return out;
}

double log_binomial2(double log_n) {
  // log C(n,2) for n = e^{log_n} >= 2
  const double n = std::exp(log_n);
  if (std::isfinite(n) && n < 1e8) return std::log(n * (n - 1) / 2.0);
  return 2.0 * log_n - std::log(2.0);
}

// ln(1 - x) for x in [0, 1]
double log1m(double x) { return x >= 1.0 ? -INFINITY : std::log1p(-x); }

bool subset_c4_free(const Graph& g, const std::vector<Vertex>& subset) {
  for (std::size_t i = 0; i < subset.size(); ++i) {
    for (std::size_t j = i + 1; j < subset.size(); ++j) {
      int common = 0;
      for (std::size_t x = 0; x < subset.size(); ++x) {
        if (x == i || x == j) continue;
        if (g.adjacent(subset[i], subset[x]) && g.adjacent(subset[j], subset[x]) && ++common >= 2) return false;
      }
    }
  }
  return true;
}

// any K-subset inducing a C4-free graph, scanning subsets in lexicographic order
bool some_subset_c4_free(const Graph& g, std::size_t big_k) {
  const auto n = g.vertex_count();
  if (big_k > n) return false;
  std::vector<Vertex> idx(big_k);
  for (std::size_t i = 0; i < big_k; ++i) idx[i] = static_cast<Vertex>(i);
  for (;;) {
    if (subset_c4_free(g, idx)) return true;
    std::size_t i = big_k;
    while (i > 0 && idx[i - 1] == n - big_k + (i - 1)) --i;
    if (i == 0) return false;
    ++idx[i - 1];
    for (std::size_t j = i; j < big_k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

LbEstimate proportion(std::size_t hits, std::size_t trials) {
  const double p = static_cast<double>(hits) / static_cast<double>(trials);
  return {p, std::sqrt(p * (1.0 - p) / static_cast<double>(trials))};
}

LbEstimate mean_of(const std::vector<double>& xs) {
  const double n = static_cast<double>(xs.size());
  double sum = 0.0;
  for (auto x : xs) sum += x;
  const double mean = sum / n;
  double ss = 0.0;
  for (auto x : xs) ss += (x - mean) * (x - mean);
  const double var = xs.size() > 1 ? ss / (n - 1.0) : 0.0;
  return {mean, std::sqrt(var / n)};
}

}  // namespace

Rational reiman_max_edges(std::uint64_t n) {
  const cpp_int big_n = n;
  const cpp_int root = ceil_sqrt(4 * big_n * big_n * big_n);  // ⌈√(4n³)⌉ = ⌈2 n^{3/2}⌉
  const cpp_int numer = root + big_n + 4;                    // (2n^{3/2} + n + 4) / 4 is the bound
  const cpp_int value = (numer + 3) / 4;
  return Rational(value.convert_to<std::int64_t>());
}

double q_upper(std::uint64_t big_k, double p) {
  const double half = static_cast<double>(big_k / 2);
  const double exponent = half * (half - 1.0) / 2.0;
  if (exponent <= 0.0) return 1.0;
  return std::pow(1.0 - std::pow(p, 4), exponent);
}

std::int64_t subset_size_k(std::int64_t k) { return k * k - 3 * k; }

LbConditions check_lb_conditions(std::uint64_t n, double p, std::size_t s, std::size_t k) {
  if (s < 2 || k < 2) throw Error(ErrorKind::domain, "check_lb_conditions needs s, k >= 2");
  if (p < 0.0 || p > 1.0) throw Error(ErrorKind::domain, "p must lie in [0, 1]");
  LbConditions c;
  c.n = n;
  c.p = p;
  c.s = s;
  c.k = k;
  const double nd = static_cast<double>(n);
  const double e = (static_cast<double>(k) * static_cast<double>(k) - 3.0 * static_cast<double>(k) - 2.0) / 4.0;
  c.n2ps = nd * nd * std::pow(p, static_cast<double>(s));
  c.subset_term = nd * std::pow(1.0 - std::pow(p, 4), e);
  c.chernoff = std::exp(-(nd * (nd - 1.0) / 2.0) * p / 4.0);
  c.trivial_k = k <= 3;
  if (c.trivial_k) {
    c.claim = "k <= 3: K = k^2-3k is not positive, nothing nontrivial is claimed";
    return c;
  }
  c.satisfied = std::max({c.n2ps, c.subset_term, c.chernoff}) <= 0.5;
  if (c.satisfied) {
    c.guaranteed_degree = (nd - 1.0) * p / 2.0;
    std::ostringstream claim;
    claim << "some " << n << "-vertex K_{" << s << "," << s << "}-free graph has d >= " << c.guaranteed_degree
          << " and every C4-free induced subgraph has d < " << k;
    c.claim = claim.str();
  } else {
    c.claim = "conditions not met";
  }
  return c;
}

nlohmann::json to_json(const LbConditions& c) {
  return {{"n", c.n},
          {"p", c.p},
          {"s", c.s},
          {"k", c.k},
          {"n2ps", c.n2ps},
          {"subset_term", c.subset_term},
          {"chernoff", c.chernoff},
          {"trivial_k", c.trivial_k},
          {"satisfied", c.satisfied},
          {"guaranteed_degree", c.guaranteed_degree},
          {"claim", c.claim}};
}

SymbolicCheck symbolic_diagonal(double k) {
  SymbolicCheck c;
  c.name = "diagonal";
  c.log_n = k / 20.0 * std::log(k);
  c.log_p = -std::log(k) / 5.0;
  const double s = k;
  const double e = (k * k - 3.0 * k - 2.0) / 4.0;
  c.log_terms.emplace_back("n2ps", 2.0 * c.log_n + s * c.log_p);
  c.log_terms.emplace_back("subset_term", c.log_n + e * log1m(std::exp(4.0 * c.log_p)));
  c.log_terms.emplace_back("chernoff", -std::exp(log_binomial2(c.log_n) + c.log_p) / 4.0);
  c.log_threshold = kLogHalf;
  c.satisfied = std::all_of(c.log_terms.begin(), c.log_terms.end(),
                            [&](const auto& t) { return t.second <= c.log_threshold; });
  return c;
}

SymbolicCheck symbolic_fixed_k(double s, double k, double eps) {
  SymbolicCheck c;
  c.name = "fixed_k";
  const double e4 = k * k - 3.0 * k - 2.0;
  c.log_n = (0.25 - eps) * e4 * std::log(s);
  const double one_minus_p = k * k * std::log(s) / s;
  c.log_p = log1m(one_minus_p);
  // 1 - p^4 = 1 - (1-q)^4 with q = 1 - p
  const double base = 1.0 - std::pow(1.0 - one_minus_p, 4);
  c.log_terms.emplace_back("n2ps", 2.0 * c.log_n + s * c.log_p);
  c.log_terms.emplace_back("subset_term", c.log_n + e4 / 4.0 * std::log(base));
  c.log_terms.emplace_back("chernoff", -std::exp(log_binomial2(c.log_n) + c.log_p) / 4.0);
  c.log_threshold = kLogHalf;
  c.satisfied = one_minus_p < 1.0 && std::all_of(c.log_terms.begin(), c.log_terms.end(),
                                                 [&](const auto& t) { return t.second <= c.log_threshold; });
  return c;
}

SymbolicCheck symbolic_fixed_s(double s, double k, double eps) {
  SymbolicCheck c;
  c.name = "fixed_s";
  c.log_n = (1.0 - eps) / (2.0 + eps) * s * std::log(k);
  c.log_p = -(2.0 + eps) / s * c.log_n;
  const double kp = k - 4.0;
  const double p = std::exp(c.log_p);
  // E[X] <= (n (1-p)^{k/4})^{k'}, E[Y] <= (n^2 p^s)^s, P(sparse) < exp(-C(n,2) p / 4)
  const double log_x = kp * (c.log_n + k / 4.0 * log1m(p));
  const double log_y = s * (2.0 * c.log_n + s * c.log_p);
  const double log_e = -std::exp(log_binomial2(c.log_n) + c.log_p) / 4.0;
  c.log_terms.emplace_back("expected_x", log_x);
  c.log_terms.emplace_back("expected_y", log_y);
  c.log_terms.emplace_back("sparse_event", log_e);
  const double top = std::max({log_x, log_y, log_e});
  const double log_sum = top + std::log(std::exp(log_x - top) + std::exp(log_y - top) + std::exp(log_e - top));
  c.log_terms.emplace_back("sum", log_sum);
  c.log_threshold = 0.0;
  c.satisfied = k >= 10.0 && log_sum < c.log_threshold;
  return c;
}

nlohmann::json to_json(const SymbolicCheck& c) {
  nlohmann::json terms = nlohmann::json::object();
  for (const auto& [name, value] : c.log_terms) terms[name] = value;
  return {{"name", c.name},
          {"log_n", c.log_n},
          {"log_p", c.log_p},
          {"log_terms", terms},
          {"log_threshold", c.log_threshold},
          {"satisfied", c.satisfied}};
}

cpp_int erdos_szekeres_bound(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) throw Error(ErrorKind::domain, "erdos_szekeres_bound needs a, b >= 1");
  return binomial(a + b - 2, b - 1);
}

double expected_biclique_copies(std::uint64_t n, std::size_t s, double p) {
  if (2 * s > n) return 0.0;
  const double pairs = binomial(n, s).convert_to<double>() * binomial(n - s, s).convert_to<double>();
  return 0.5 * pairs * std::pow(p, static_cast<double>(s * s));
}

std::uint64_t count_biclique_copies(const Graph& g, std::size_t s) {
  if (s == 0) throw Error(ErrorKind::domain, "count_biclique_copies needs s >= 1");
  const auto n = g.vertex_count();
  if (2 * s > n) return 0;
  std::uint64_t ordered = 0;  // pairs (S, T): each copy appears twice
  std::vector<Vertex> idx(s);
  for (std::size_t i = 0; i < s; ++i) idx[i] = static_cast<Vertex>(i);
  for (;;) {
    std::uint64_t common = 0;
    for (Vertex v = 0; v < n; ++v) {
      if (std::all_of(idx.begin(), idx.end(), [&](Vertex u) { return g.adjacent(u, v); })) ++common;
    }
    ordered += binomial(common, s).convert_to<std::uint64_t>();
    std::size_t i = s;
    while (i > 0 && idx[i - 1] == n - s + (i - 1)) --i;
    if (i == 0) break;
    ++idx[i - 1];
    for (std::size_t j = i; j < s; ++j) idx[j] = idx[j - 1] + 1;
  }
  return ordered / 2;
}

LbReport lb_experiment(std::uint64_t n, double p, std::size_t s, std::size_t k, std::size_t trials, Seed seed,
                       const LbOptions& options) {
  if (trials == 0) throw Error(ErrorKind::domain, "lb_experiment needs at least one trial");
  if (n > 4096) throw Error(ErrorKind::unsupported_scale, "lb_experiment supports n <= 4096");
  LbReport r;
  r.n = n;
  r.p = p;
  r.s = s;
  r.k = k;
  r.trials = trials;
  r.seed = seed.value;
  r.conditions = check_lb_conditions(n, p, s, k);
  r.big_k = subset_size_k(static_cast<std::int64_t>(k));
  r.x_applicable = r.big_k > 0;
  const auto big_k = static_cast<std::size_t>(std::max<std::int64_t>(r.big_k, 0));
  r.x_exact = !r.x_applicable || binomial(n, big_k) <= options.subset_budget;
  if (!r.x_exact && options.require_exact_x) {
    throw Error(ErrorKind::unsupported_scale, "C(n, K) exceeds the exact subset budget");
  }
  r.exact_ey = expected_biclique_copies(n, s, p);

  std::vector<char> x_zero(trials, 0);
  std::vector<char> y_zero(trials, 0);
  std::vector<char> dense(trials, 0);
  std::vector<double> edges(trials, 0.0);
  std::vector<double> copies(trials, 0.0);
  const double dense_threshold = static_cast<double>(n) * static_cast<double>(n - (n > 0 ? 1 : 0)) / 2.0 * p / 2.0;
  parallel_for(trials, options.threads, [&](std::size_t i) {
    const auto trial_seed = derive_seed(seed, i);
    const auto g = gen_gnp(n, p, trial_seed);
    edges[i] = static_cast<double>(g.edge_count());
    dense[i] = edges[i] >= dense_threshold ? 1 : 0;
    const auto y = count_biclique_copies(g, s);
    copies[i] = static_cast<double>(y);
    y_zero[i] = y == 0 ? 1 : 0;
    if (!r.x_applicable) return;
    bool found = false;
    if (r.x_exact) {
      found = some_subset_c4_free(g, big_k);
    } else {
      Rng rng(derive_seed(trial_seed, 1));
      for (std::size_t j = 0; j < options.sampled_subsets && !found; ++j) {
        const auto subset = rng.subset(static_cast<std::uint32_t>(n), static_cast<std::uint32_t>(big_k));
        found = subset_c4_free(g, subset);
      }
    }
    x_zero[i] = found ? 0 : 1;
  });
  auto count = [](const std::vector<char>& v) { return static_cast<std::size_t>(std::count(v.begin(), v.end(), 1)); };
  r.p_x_zero = proportion(count(x_zero), trials);
  r.p_y_zero = proportion(count(y_zero), trials);
  r.p_dense = proportion(count(dense), trials);
  r.mean_edges = mean_of(edges);
  r.mean_y = mean_of(copies);
  return r;
}

nlohmann::json to_json(const LbReport& r) {
  return {{"n", r.n},
          {"p", r.p},
          {"s", r.s},
          {"k", r.k},
          {"trials", r.trials},
          {"seed", r.seed},
          {"big_k", r.big_k},
          {"x_exact", r.x_exact},
          {"x_applicable", r.x_applicable},
          {"estimates",
           {{"p_x_zero", r.p_x_zero.value},
            {"p_y_zero", r.p_y_zero.value},
            {"p_dense", r.p_dense.value},
            {"mean_edges", r.mean_edges.value},
            {"mean_y", r.mean_y.value}}},
          {"stderr",
           {{"p_x_zero", r.p_x_zero.stderr_},
            {"p_y_zero", r.p_y_zero.stderr_},
            {"p_dense", r.p_dense.stderr_},
            {"mean_edges", r.mean_edges.stderr_},
            {"mean_y", r.mean_y.stderr_}}},
          {"exact_ey", r.exact_ey},
          {"conditions", to_json(r.conditions)}};
}

std::string csv_header() {
  return "n,p,s,k,trials,seed,x_exact,p_x_zero,p_x_zero_se,p_y_zero,p_y_zero_se,p_dense,p_dense_se,"
         "mean_edges,mean_edges_se,mean_y,mean_y_se,exact_ey,conditions_satisfied";
}

std::string to_csv_row(const LbReport& r) {
  std::ostringstream out;
  out.precision(10);
  out << r.n << ',' << r.p << ',' << r.s << ',' << r.k << ',' << r.trials << ',' << r.seed << ','
      << (r.x_exact ? 1 : 0) << ',' << r.p_x_zero.value << ',' << r.p_x_zero.stderr_ << ',' << r.p_y_zero.value
      << ',' << r.p_y_zero.stderr_ << ',' << r.p_dense.value << ',' << r.p_dense.stderr_ << ','
      << r.mean_edges.value << ',' << r.mean_edges.stderr_ << ',' << r.mean_y.value << ',' << r.mean_y.stderr_
      << ',' << r.exact_ey << ',' << (r.conditions.satisfied ? 1 : 0);
  return out.str();
}

bool alpha_lb_check(const Graph& g, std::size_t limit) {
  if (!is_c4_free(g)) throw Error(ErrorKind::precondition, "alpha_lb_check needs a C4-free graph");
  const auto n = static_cast<std::int64_t>(g.vertex_count());
  if (n == 0) return true;
  const auto alpha = static_cast<std::int64_t>(max_independent_set(g, limit).size());
  // alpha (3 + √n) >= n  <=>  alpha √n >= n - 3 alpha
  const auto rhs = n - 3 * alpha;
  if (rhs <= 0) return true;
  return alpha * alpha * n >= rhs * rhs;
}

}  // namespace c4free
