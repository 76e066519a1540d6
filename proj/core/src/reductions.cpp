#include "c4free/reductions.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "c4free/oracles.hpp"

namespace c4free {

namespace {

std::vector<char> membership(std::size_t n, const VertexSet& set) {
  std::vector<char> in(n, 0);
  for (auto v : set) in[v] = 1;
  return in;
}

std::size_t count_in(const Graph& g, Vertex v, const std::vector<char>& in) {
  std::size_t c = 0;
  for (auto w : g.neighbors(v)) c += in[w] ? 1 : 0;
  return c;
}

Rational degree_of(const Graph& g, const VertexSet& s) {
  if (s.empty()) return Rational(0);
  return Rational(2 * static_cast<std::int64_t>(edges_within(g, s)), static_cast<std::int64_t>(s.size()));
}

std::size_t max_degree_within(const Graph& g, const VertexSet& s) {
  const auto in = membership(g.vertex_count(), s);
  std::size_t best = 0;
  for (auto v : s) best = std::max(best, count_in(g, v, in));
  return best;
}

// vertices lying on a triangle or a 4-cycle of g[U]
VertexSet short_cycle_vertices(const Graph& g, const std::vector<char>& in_u, const VertexSet& u) {
  const auto n = g.vertex_count();
  std::vector<char> hit(n, 0);
  std::vector<std::vector<Vertex>> common(n);
  std::vector<Vertex> touched;
  for (auto a : u) {
    touched.clear();
    for (auto b : g.neighbors(a)) {
      if (!in_u[b]) continue;
      for (auto c : g.neighbors(b)) {
        if (!in_u[c] || c == a) continue;
        if (g.adjacent(a, c)) hit[a] = hit[b] = hit[c] = 1;
        if (common[c].empty()) touched.push_back(c);
        common[c].push_back(b);
      }
    }
    for (auto c : touched) {
      if (common[c].size() >= 2) {
        hit[a] = hit[c] = 1;
        for (auto b : common[c]) hit[b] = 1;
      }
      common[c].clear();
    }
  }
  VertexSet out;
  for (auto v : u) {
    if (hit[v]) out.push_back(v);
  }
  return out;
}

// smallest i with deg < 2^{i+1} d, i.e. the dyadic bucket 2^i d <= deg < 2^{i+1} d
int dyadic_bucket(std::size_t deg, const Rational& d) {
  int i = static_cast<int>(std::floor(std::log2(static_cast<double>(deg) / to_double(d))));
  auto lower = [&](int k) {
    return k >= 0 ? Rational(std::int64_t{1} << k) * d : d / Rational(std::int64_t{1} << (-k));
  };
  const Rational value(static_cast<std::int64_t>(deg));
  while (lower(i) > value) --i;
  while (lower(i + 1) <= value) ++i;
  return i;
}

}  // namespace

Rational biregularity_factor(const Graph& host, const VertexSet& a, const VertexSet& b) {
  const auto in_a = membership(host.vertex_count(), a);
  const auto in_b = membership(host.vertex_count(), b);
  const auto edges = static_cast<std::int64_t>(edges_between(host, a, b));
  if (edges == 0) return Rational(0);
  std::size_t max_a = 0;
  std::size_t max_b = 0;
  for (auto v : a) max_a = std::max(max_a, count_in(host, v, in_b));
  for (auto v : b) max_b = std::max(max_b, count_in(host, v, in_a));
  const Rational ra(static_cast<std::int64_t>(max_a * a.size()), edges);
  const Rational rb(static_cast<std::int64_t>(max_b * b.size()), edges);
  return std::max(ra, rb);
}

Sides almost_biregular_reduce(const Graph& host, const VertexSet& a_in, const VertexSet& b_in,
                              const Rational& l_factor, Seed seed, const RetryOptions& options) {
  const auto a_set = normalized(a_in);
  const auto b_set = normalized(b_in);
  if (!set_intersection(a_set, b_set).empty()) throw Error(ErrorKind::domain, "sides overlap");
  const auto edge_total = static_cast<std::int64_t>(edges_between(host, a_set, b_set));
  if (edge_total == 0) return {a_set, b_set};
  if (biregularity_factor(host, a_set, b_set) > l_factor) {
    throw Error(ErrorKind::not_biregular, "graph is not " + to_string(l_factor) + "-almost-biregular");
  }
  const bool swapped = a_set.size() > b_set.size();
  const auto& small = swapped ? b_set : a_set;
  const auto& large = swapped ? a_set : b_set;
  const auto n_small = static_cast<std::int64_t>(small.size());
  const auto n_large = static_cast<std::int64_t>(large.size());
  const double p = static_cast<double>(n_small) / static_cast<double>(n_large);
  const auto in_large = membership(host.vertex_count(), large);
  const Rational whole_degree(2 * edge_total, n_small + n_large);

  auto outcome = retry_until_verified<Sides>(options, [&](std::size_t attempt) -> std::optional<Trial<Sides>> {
    Rng rng(derive_seed(seed, attempt));
    VertexSet large_kept;
    for (auto v : large) {
      if (rng.bernoulli(p)) large_kept.push_back(v);
    }
    const auto in_kept = membership(host.vertex_count(), large_kept);
    VertexSet small_kept;
    for (auto v : small) {
      const auto deg = static_cast<std::int64_t>(count_in(host, v, in_large));
      const auto hits = static_cast<std::int64_t>(count_in(host, v, in_kept));
      // hits <= 1 + 2p(deg - 1), scaled by |large|
      if (hits * n_large <= n_large + 2 * n_small * (deg - 1)) small_kept.push_back(v);
    }
    const auto kept_edges = static_cast<std::int64_t>(edges_between(host, small_kept, large_kept));
    const auto order = static_cast<std::int64_t>(small_kept.size() + large_kept.size());
    Sides sides = swapped ? Sides{large_kept, small_kept} : Sides{small_kept, large_kept};
    if (order == 0) return Trial<Sides>{std::move(sides), false, Rational(0)};
    const Rational degree(2 * kept_edges, order);
    std::size_t delta = 0;
    const auto in_small_kept = membership(host.vertex_count(), small_kept);
    for (auto v : small_kept) delta = std::max(delta, count_in(host, v, in_kept));
    for (auto v : large_kept) delta = std::max(delta, count_in(host, v, in_small_kept));
    const bool ok = 4 * kept_edges * n_large > edge_total * order && degree * 4 >= whole_degree &&
                    Rational(static_cast<std::int64_t>(delta)) <= Rational(24) * l_factor * degree;
    return Trial<Sides>{std::move(sides), ok, degree};
  });
  if (outcome.accepted) return *outcome.accepted;
  VertexSet best;
  Rational best_degree(0);
  if (outcome.best) {
    best = set_union(outcome.best->value.a, outcome.best->value.b);
    best_degree = outcome.best->score;
  }
  throw ExtractionFailure("almost-biregular reduction failed after " + std::to_string(options.retries) +
                              " attempts",
                          std::move(best), best_degree);
}

Sides almost_biregular_reduce(const BipartiteGraph& gamma, const Rational& l_factor, Seed seed,
                              const RetryOptions& options) {
  return almost_biregular_reduce(gamma.graph(), gamma.side_a(), gamma.side_b(), l_factor, seed, options);
}

VertexSet sparsify_short_cycles(const Graph& g, std::size_t s, const Rational& delta, Seed seed,
                                const SparsifyOptions& options) {
  if (s < 2) throw Error(ErrorKind::domain, "sparsify: s must be at least 2");
  if (delta <= Rational(0) || delta >= Rational(1, 10)) {
    throw Error(ErrorKind::domain, "sparsify: delta must lie in (0, 1/10)");
  }
  if (options.check_precondition && contains_biclique(g, s)) {
    throw Error(ErrorKind::precondition, "sparsify: input contains K_{" + std::to_string(s) + "," +
                                             std::to_string(s) + "}");
  }
  const auto n = g.vertex_count();
  const double d = static_cast<double>(max_degree(g));
  const double p = d <= 1.0 ? 1.0 : std::clamp(std::pow(d, 1.0 / (5.0 * static_cast<double>(s)) - 1.0), 0.0, 1.0);
  const double target =
      options.target_scale > 0.0 && d > 0.0
          ? options.target_scale * std::pow(d, (0.2 - 2.0 * to_double(delta)) / static_cast<double>(s))
          : 0.0;

  auto outcome = retry_until_verified<VertexSet>(options.retry, [&](std::size_t attempt) {
    Rng rng(derive_seed(seed, attempt));
    VertexSet u;
    for (Vertex v = 0; v < n; ++v) {
      if (rng.bernoulli(p)) u.push_back(v);
    }
    const auto in_u = membership(n, u);
    const auto cyclic = short_cycle_vertices(g, in_u, u);
    VertexSet overloaded;
    for (auto v : u) {
      if (static_cast<double>(count_in(g, v, in_u)) >= 1.0 + 4.0 * p * static_cast<double>(g.degree(v))) {
        overloaded.push_back(v);
      }
    }
    auto kept = set_difference(set_difference(u, cyclic), overloaded);
    const auto sub = induced(g, kept);
    if (find_c3(sub) || find_c4(sub)) throw std::logic_error("sparsify left a short cycle");
    const auto degree = degree_of(g, kept);
    const bool ok = !kept.empty() &&
                    (!options.min_average_degree || degree >= *options.min_average_degree) &&
                    to_double(degree) >= target;
    return std::optional<Trial<VertexSet>>(Trial<VertexSet>{std::move(kept), ok, degree});
  });
  if (outcome.accepted) return *outcome.accepted;
  VertexSet best = outcome.best ? outcome.best->value : VertexSet{};
  const Rational best_degree = outcome.best ? outcome.best->score : Rational(0);
  throw ExtractionFailure("sparsify_short_cycles: no verified output after " +
                              std::to_string(options.retry.retries) + " attempts",
                          std::move(best), best_degree);
}

SplitOutcome extreme_split(const Graph& g, const Rational& delta, Seed seed, const SplitOptions& options) {
  if (g.vertex_count() == 0) throw Error(ErrorKind::domain, "extreme_split on the empty graph");
  const auto d = average_degree(g);
  if (d < Rational(2)) throw Error(ErrorKind::domain, "extreme_split needs average degree at least 2");
  const auto n = g.vertex_count();
  const double dd = to_double(d);
  const double dl = to_double(delta);

  const double hub_threshold = dd * std::exp2(std::pow(dd, dl));
  VertexSet hubs;
  VertexSet rest;
  for (Vertex v = 0; v < n; ++v) {
    (static_cast<double>(g.degree(v)) > hub_threshold ? hubs : rest).push_back(v);
  }
  if (!hubs.empty() && 2 * edges_between(g, hubs, rest) >= g.edge_count()) {
    SplitOutcome out;
    out.kind = SplitOutcome::Kind::lopsided;
    out.a_side = rest;
    out.b_side = hubs;
    out.stats = {d, max_degree(g),
                 Rational(static_cast<std::int64_t>(rest.size()), static_cast<std::int64_t>(hubs.size()))};
    return out;
  }

  // core of the hub-free part, in host ids
  const auto low = induced(g, rest);
  VertexSet core;
  for (auto i : peel_to_fixed_point(low)) core.push_back(rest[i]);
  const auto in_core = membership(n, core);
  if (core.empty() || edges_within(g, core) == 0) {
    throw ExtractionFailure("extreme_split: hub-free core has no edges", {}, Rational(0));
  }
  std::vector<std::size_t> core_degree(n, 0);
  for (auto v : core) core_degree[v] = count_in(g, v, in_core);

  const double low_bound = std::max(options.low_scale * 6.0 * std::pow(dd, 1.0 - 5.0 * dl), 0.0);
  const double high_bound = options.high_scale * 6.0 * std::pow(dd, 1.0 + 3.0 * dl);
  auto near_regular_ok = [&](const Rational& degree, std::size_t delta_sub) {
    return (!options.min_average_degree || degree >= *options.min_average_degree) &&
           to_double(degree) >= low_bound && static_cast<double>(delta_sub) <= high_bound;
  };

  // the core itself may already be the induced subgraph we are after
  {
    const auto degree = degree_of(g, core);
    const auto delta_core = max_degree_within(g, core);
    if (near_regular_ok(degree, delta_core)) {
      SplitOutcome out;
      out.kind = SplitOutcome::Kind::near_regular;
      out.subgraph = core;
      out.stats = {degree, delta_core, Rational(0)};
      return out;
    }
  }

  std::map<int, std::pair<VertexSet, std::size_t>> buckets;  // index -> (C_i, E_i)
  for (auto v : core) {
    if (core_degree[v] == 0) continue;
    auto& slot = buckets[dyadic_bucket(core_degree[v], d)];
    slot.first.push_back(v);
    slot.second += core_degree[v];
  }
  const VertexSet* chosen = nullptr;
  std::size_t chosen_weight = 0;
  for (const auto& [index, slot] : buckets) {  // ascending index, strict > keeps the lower on ties
    if (!chosen || slot.second > chosen_weight) {
      chosen = &slot.first;
      chosen_weight = slot.second;
    }
  }
  const auto& bucket = *chosen;
  const Rational four_d = Rational(4) * d;

  auto outcome = retry_until_verified<SplitOutcome>(options.retry, [&](std::size_t attempt)
                                                        -> std::optional<Trial<SplitOutcome>> {
    Rng rng(derive_seed(seed, attempt));
    VertexSet c1;
    for (auto v : bucket) {
      if (rng.bernoulli(0.25)) c1.push_back(v);
    }
    const auto in_c1 = membership(n, c1);
    VertexSet c2;
    for (auto v : c1) {
      if (2 * count_in(g, v, in_c1) <= core_degree[v]) c2.push_back(v);
    }
    const auto in_c2 = membership(n, c2);
    VertexSet c3;
    for (auto v : c2) {
      if (Rational(static_cast<std::int64_t>(count_in(g, v, in_c2))) < four_d) c3.push_back(v);
    }
    if (c3.empty()) return std::nullopt;
    const auto in_c3 = membership(n, c3);
    std::map<int, std::pair<VertexSet, std::size_t>> outside;
    for (auto z : core) {
      if (in_c3[z]) continue;
      const auto m = count_in(g, z, in_c3);
      if (m == 0) continue;
      auto& slot = outside[dyadic_bucket(m, d)];
      slot.first.push_back(z);
      slot.second += m;
    }
    if (outside.empty()) return std::nullopt;
    const VertexSet* pick = nullptr;
    std::size_t pick_weight = 0;
    for (const auto& [index, slot] : outside) {
      if (!pick || slot.second > pick_weight) {
        pick = &slot.first;
        pick_weight = slot.second;
      }
    }
    const auto in_pick = membership(n, *pick);
    VertexSet b_side;
    for (auto v : *pick) {
      if (Rational(static_cast<std::int64_t>(count_in(g, v, in_pick))) < four_d) b_side.push_back(v);
    }
    if (b_side.empty() || edges_between(g, c3, b_side) == 0) return std::nullopt;
    const auto l_factor = biregularity_factor(g, c3, b_side);
    Sides reduced;
    try {
      RetryOptions inner{options.inner_retries, 1};
      reduced = almost_biregular_reduce(g, c3, b_side, l_factor, derive_seed(seed, (attempt << 20) | 1), inner);
    } catch (const ExtractionFailure&) {
      return std::nullopt;
    }
    SplitOutcome out;
    out.kind = SplitOutcome::Kind::near_regular;
    out.subgraph = set_union(reduced.a, reduced.b);
    if (out.subgraph.empty()) return std::nullopt;
    const auto degree = degree_of(g, out.subgraph);
    const auto delta_sub = max_degree_within(g, out.subgraph);
    out.stats = {degree, delta_sub,
                 reduced.b.empty() ? Rational(0)
                                   : Rational(static_cast<std::int64_t>(reduced.a.size()),
                                              static_cast<std::int64_t>(reduced.b.size()))};
    const bool ok = near_regular_ok(degree, delta_sub);
    return Trial<SplitOutcome>{std::move(out), ok, degree};
  });
  if (outcome.accepted) return *outcome.accepted;
  VertexSet best = outcome.best ? outcome.best->value.subgraph : VertexSet{};
  const Rational best_degree = outcome.best ? outcome.best->score : Rational(0);
  throw ExtractionFailure("extreme_split: near-regular branch failed after " +
                              std::to_string(options.retry.retries) + " attempts",
                          std::move(best), best_degree);
}

Sides bipartite_regularize(const Graph& g, const VertexSet& a0_in, const VertexSet& b_in, std::size_t s,
                           std::size_t r, Seed seed, const RegularizeOptions& options) {
  const auto a0 = normalized(a0_in);
  const auto b = normalized(b_in);
  if (r == 0) throw Error(ErrorKind::domain, "bipartite_regularize: r must be positive");
  if (s == 0) throw Error(ErrorKind::domain, "bipartite_regularize: s must be positive");
  if (!set_intersection(a0, b).empty()) throw Error(ErrorKind::domain, "bipartite_regularize: sides overlap");
  const auto n = g.vertex_count();
  const auto both = set_union(a0, b);
  const auto in_both = membership(n, both);
  const auto in_b = membership(n, b);

  std::size_t d = 0;
  if (options.d) {
    d = *options.d;
  } else {
    d = degeneracy(induced(g, both)).value;
  }
  const double root_d = std::sqrt(static_cast<double>(d));

  // A1: moderate degree, enough room for r neighbours in b
  VertexSet a1;
  for (auto a : a0) {
    const auto deg = count_in(g, a, in_both);
    if (deg >= 10 * d || static_cast<double>(deg) < root_d) continue;
    if (count_in(g, a, in_b) < r) continue;
    a1.push_back(a);
  }

  // largest colour class of a greedy colouring along reversed degeneracy order
  VertexSet a_side;
  if (!a1.empty()) {
    const auto sub = induced(g, a1);
    auto order = degeneracy(sub).order;
    std::reverse(order.begin(), order.end());
    std::vector<int> colour(a1.size(), -1);
    int colours = 0;
    for (auto v : order) {
      std::vector<char> used(static_cast<std::size_t>(colours) + 1, 0);
      for (auto w : sub.neighbors(v)) {
        if (colour[w] >= 0) used[static_cast<std::size_t>(colour[w])] = 1;
      }
      int c = 0;
      while (used[static_cast<std::size_t>(c)]) ++c;
      colour[v] = c;
      colours = std::max(colours, c + 1);
    }
    std::vector<std::size_t> sizes(static_cast<std::size_t>(colours), 0);
    for (auto c : colour) ++sizes[static_cast<std::size_t>(c)];
    const auto best = static_cast<int>(std::max_element(sizes.begin(), sizes.end()) - sizes.begin());
    for (std::size_t i = 0; i < a1.size(); ++i) {
      if (colour[i] == best) a_side.push_back(a1[i]);
    }
  }

  // orientation of g[b]: edges point from earlier to later in the elimination order
  const auto b_graph = induced(g, b);
  const auto b_order = degeneracy(b_graph).order;
  std::vector<std::size_t> position(b.size());
  for (std::size_t i = 0; i < b_order.size(); ++i) position[b_order[i]] = i;
  std::vector<std::vector<Vertex>> out_neighbours(b.size());
  for (Vertex i = 0; i < b.size(); ++i) {
    for (auto j : b_graph.neighbors(i)) {
      if (position[i] < position[j]) out_neighbours[i].push_back(j);
    }
  }

  // independent r-subset of each neighbourhood, greedy by degree inside the neighbourhood
  std::vector<VertexSet> chosen(a_side.size());
  std::vector<VertexSet> nbhd(a_side.size());
  for (std::size_t i = 0; i < a_side.size(); ++i) {
    for (auto w : g.neighbors(a_side[i])) {
      if (in_b[w]) nbhd[i].push_back(w);
    }
    const auto local = induced(g, nbhd[i]);
    std::vector<Vertex> order(nbhd[i].size());
    for (Vertex j = 0; j < order.size(); ++j) order[j] = j;
    std::stable_sort(order.begin(), order.end(),
                     [&](Vertex x, Vertex y) { return local.degree(x) < local.degree(y); });
    std::vector<char> blocked(order.size(), 0);
    VertexSet pick;
    for (auto j : order) {
      if (blocked[j]) continue;
      pick.push_back(nbhd[i][j]);
      if (pick.size() == r) break;
      for (auto w : local.neighbors(j)) blocked[w] = 1;
    }
    if (pick.size() < r) {
      throw Error(ErrorKind::parameter, "bipartite_regularize: neighbourhood of vertex " +
                                            std::to_string(a_side[i]) + " has no independent " +
                                            std::to_string(r) + "-subset");
    }
    chosen[i] = normalized(std::move(pick));
  }

  const double p = options.sample_rate ? *options.sample_rate
                                       : (d <= 1 ? 1.0 : 1.0 / (static_cast<double>(d) * static_cast<double>(d)));
  std::vector<std::size_t> b_index(n, 0);
  for (std::size_t i = 0; i < b.size(); ++i) b_index[b[i]] = i;

  auto outcome = retry_until_verified<Sides>(options.retry, [&](std::size_t attempt) {
    Rng rng(derive_seed(seed, attempt));
    std::vector<char> sampled(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i) sampled[i] = rng.bernoulli(p) ? 1 : 0;
    std::vector<char> kept(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i) {
      if (!sampled[i]) continue;
      kept[i] = std::none_of(out_neighbours[i].begin(), out_neighbours[i].end(),
                             [&](Vertex j) { return sampled[j] != 0; });
    }
    Sides sides;
    std::vector<char> used(b.size(), 0);
    for (std::size_t i = 0; i < a_side.size(); ++i) {
      VertexSet hits;
      for (auto w : nbhd[i]) {
        if (sampled[b_index[w]]) hits.push_back(w);
      }
      if (hits != chosen[i]) continue;
      if (!std::all_of(hits.begin(), hits.end(), [&](Vertex w) { return kept[b_index[w]] != 0; })) continue;
      sides.a.push_back(a_side[i]);
      for (auto w : hits) used[b_index[w]] = 1;
    }
    for (std::size_t i = 0; i < b.size(); ++i) {
      if (used[i]) sides.b.push_back(b[i]);
    }
    // postconditions, checked rather than trusted
    const auto in_b_prime = membership(n, sides.b);
    bool ok = !sides.a.empty() && edges_within(g, sides.a) == 0 && edges_within(g, sides.b) == 0 &&
              std::all_of(sides.a.begin(), sides.a.end(), [&](Vertex a) { return count_in(g, a, in_b_prime) == r; });
    if (ok && options.min_side_ratio > Rational(0)) {
      ok = Rational(static_cast<std::int64_t>(sides.a.size())) >=
           options.min_side_ratio * Rational(static_cast<std::int64_t>(sides.b.size()));
    }
    const Rational score(static_cast<std::int64_t>(sides.a.size()));
    return std::optional<Trial<Sides>>(Trial<Sides>{std::move(sides), ok, score});
  });
  if (outcome.accepted) return *outcome.accepted;
  VertexSet best;
  if (outcome.best) best = set_union(outcome.best->value.a, outcome.best->value.b);
  const Rational best_degree = best.empty() ? Rational(0) : degree_of(g, best);
  throw ExtractionFailure("bipartite_regularize: no verified output after " +
                              std::to_string(options.retry.retries) + " attempts",
                          std::move(best), best_degree);
}

}  // namespace c4free
