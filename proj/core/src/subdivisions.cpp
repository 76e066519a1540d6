#include "c4free/subdivisions.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <set>
#include <stdexcept>

#include "c4free/error.hpp"
#include "c4free/las_vegas.hpp"
#include "c4free/oracles.hpp"
#include "c4free/pipeline.hpp"

namespace c4free {

namespace {

std::vector<std::pair<std::size_t, std::size_t>> branch_pairs(std::size_t k) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) out.emplace_back(i, j);
  }
  return out;
}

SubdivisionWitness assemble(const VertexSet& branch, const std::vector<std::pair<std::size_t, std::size_t>>& pairs,
                            const std::vector<std::vector<Vertex>>& paths) {
  SubdivisionWitness w;
  w.branch = branch;
  for (std::size_t i = 0; i < pairs.size(); ++i) w.paths[pairs[i]] = paths[i];
  return w;
}

// Depth-first packing of one path per branch pair, optionally keeping the union induced.
class Packer {
 public:
  Packer(const Graph& g, bool induced, std::size_t& budget) : g_(g), induced_(induced), budget_(budget) {}

  std::optional<SubdivisionWitness> run(const VertexSet& branch) {
    branch_ = branch;
    pairs_ = branch_pairs(branch.size());
    paths_.assign(pairs_.size(), {});
    work_.assign(pairs_.size(), {});
    used_.assign(g_.vertex_count(), 0);
    for (auto b : branch) used_[b] = 1;
    if (pack(0)) return assemble(branch_, pairs_, paths_);
    return std::nullopt;
  }

  bool exhausted() const { return budget_ == 0; }

 private:
  bool pack(std::size_t idx) {
    if (budget_ == 0) return false;
    --budget_;
    if (idx == pairs_.size()) return true;
    const auto src = branch_[pairs_[idx].first];
    const auto dst = branch_[pairs_[idx].second];
    if (g_.adjacent(src, dst)) {
      // a direct edge uses no vertices, so it is never worse than a longer path
      paths_[idx] = {src, dst};
      return pack(idx + 1);
    }
    work_[idx] = {src};
    return extend(idx, src, dst);
  }

  bool admissible(Vertex v, Vertex cur, Vertex dst) const {
    if (!induced_) return true;
    for (auto w : g_.neighbors(v)) {
      if (w == cur || w == dst) continue;
      if (used_[w]) return false;
    }
    return true;
  }

  bool extend(std::size_t idx, Vertex cur, Vertex dst) {
    if (budget_ == 0) return false;
    --budget_;
    if (g_.adjacent(cur, dst)) {
      auto& path = work_[idx];
      path.push_back(dst);
      paths_[idx] = path;
      path.pop_back();
      if (pack(idx + 1)) return true;
      // under inducedness the path must stop at dst once adjacent to it
      if (induced_) return false;
    }
    for (auto v : g_.neighbors(cur)) {
      if (used_[v] || !admissible(v, cur, dst)) continue;
      used_[v] = 1;
      work_[idx].push_back(v);
      const bool ok = extend(idx, v, dst);
      work_[idx].pop_back();
      used_[v] = 0;
      if (ok) return true;
      if (budget_ == 0) return false;
    }
    return false;
  }

  const Graph& g_;
  bool induced_;
  std::size_t& budget_;
  VertexSet branch_;
  std::vector<std::pair<std::size_t, std::size_t>> pairs_;
  std::vector<std::vector<Vertex>> paths_;
  std::vector<std::vector<Vertex>> work_;  // partial path per pair
  std::vector<char> used_;
};

// Shortest path from src to dst through unused vertices, neighbours scanned in id order.
std::optional<std::vector<Vertex>> shortest_free_path(const Graph& g, Vertex src, Vertex dst,
                                                      const std::vector<char>& used) {
  std::vector<std::int64_t> parent(g.vertex_count(), -1);
  std::deque<Vertex> queue{src};
  parent[src] = src;
  while (!queue.empty()) {
    const auto u = queue.front();
    queue.pop_front();
    for (auto v : g.neighbors(u)) {
      if (parent[v] != -1) continue;
      if (v != dst && used[v]) continue;
      parent[v] = u;
      if (v == dst) {
        std::vector<Vertex> path{dst};
        for (auto x = dst; x != src;) {
          x = static_cast<Vertex>(parent[x]);
          path.push_back(x);
        }
        std::reverse(path.begin(), path.end());
        return path;
      }
      queue.push_back(v);
    }
  }
  return std::nullopt;
}

std::optional<SubdivisionWitness> route_greedy(const Graph& g, const VertexSet& branch,
                                               std::vector<std::pair<std::size_t, std::size_t>> pairs) {
  std::vector<char> used(g.vertex_count(), 0);
  for (auto b : branch) used[b] = 1;
  std::vector<std::vector<Vertex>> paths(pairs.size());
  // direct edges first: they never consume vertices
  std::stable_partition(pairs.begin(), pairs.end(),
                        [&](const auto& p) { return g.adjacent(branch[p.first], branch[p.second]); });
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    auto path = shortest_free_path(g, branch[pairs[i].first], branch[pairs[i].second], used);
    if (!path) return std::nullopt;
    for (std::size_t j = 1; j + 1 < path->size(); ++j) used[(*path)[j]] = 1;
    paths[i] = std::move(*path);
  }
  return assemble(branch, pairs, paths);
}

template <typename Visit>
bool for_each_subset(const VertexSet& pool, std::size_t k, Visit&& visit) {
  if (k > pool.size()) return false;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  for (;;) {
    VertexSet subset;
    for (auto i : idx) subset.push_back(pool[i]);
    if (visit(subset)) return true;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == pool.size() - k + (i - 1)) --i;
    if (i == 0) return false;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

VertexSet branch_candidates(const Graph& g, std::size_t k) {
  VertexSet out;
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (g.degree(v) + 1 >= k) out.push_back(v);
  }
  return out;
}

std::optional<SubdivisionWitness> exhaustive(const Graph& g, std::size_t k, bool induced, std::size_t budget) {
  const auto pool = branch_candidates(g, k);
  std::optional<SubdivisionWitness> found;
  Packer packer(g, induced, budget);
  for_each_subset(pool, k, [&](const VertexSet& branch) {
    found = packer.run(branch);
    return found.has_value() || packer.exhausted();
  });
  return found;
}

SubdivisionWitness finalize(const Graph& g, SubdivisionWitness w) {
  w.induced = false;
  if (!verify_subdivision(g, w)) throw std::logic_error("subdivision search produced an invalid witness");
  w.induced = is_induced_witness(g, w);
  return w;
}

}  // namespace

VertexSet SubdivisionWitness::vertices() const {
  VertexSet out(branch.begin(), branch.end());
  for (const auto& [key, path] : paths) out.insert(out.end(), path.begin(), path.end());
  return normalized(std::move(out));
}

nlohmann::json to_json(const SubdivisionWitness& w) {
  nlohmann::json paths = nlohmann::json::object();
  for (const auto& [key, path] : w.paths) paths[std::to_string(key.first) + "-" + std::to_string(key.second)] = path;
  return {{"branch", w.branch}, {"paths", paths}, {"induced", w.induced}};
}

SubdivisionWitness subdivision_from_json(const nlohmann::json& j) {
  try {
    SubdivisionWitness w;
    w.branch = j.at("branch").get<std::vector<Vertex>>();
    w.induced = j.at("induced").get<bool>();
    for (const auto& [key, path] : j.at("paths").items()) {
      const auto dash = key.find('-');
      if (dash == std::string::npos) throw Error(ErrorKind::parse, "subdivision path key '" + key + "'");
      w.paths[{std::stoul(key.substr(0, dash)), std::stoul(key.substr(dash + 1))}] = path.get<std::vector<Vertex>>();
    }
    return w;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::parse, std::string("subdivision: ") + e.what());
  } catch (const std::logic_error& e) {
    throw Error(ErrorKind::parse, std::string("subdivision: ") + e.what());
  }
}

bool verify_subdivision(const Graph& g, const SubdivisionWitness& w) {
  const auto k = w.branch.size();
  const auto n = g.vertex_count();
  if (k == 0) return false;
  for (std::size_t i = 0; i < k; ++i) {
    if (w.branch[i] >= n || (i > 0 && w.branch[i] <= w.branch[i - 1])) return false;
  }
  if (w.paths.size() != k * (k - 1) / 2) return false;
  std::vector<char> taken(n, 0);
  for (auto b : w.branch) taken[b] = 1;
  for (const auto& [key, path] : w.paths) {
    const auto [i, j] = key;
    if (i >= j || j >= k || path.size() < 2) return false;
    if (path.front() != w.branch[i] || path.back() != w.branch[j]) return false;
    for (std::size_t x = 0; x < path.size(); ++x) {
      if (path[x] >= n) return false;
      if (x + 1 < path.size() && (path[x + 1] >= n || !g.adjacent(path[x], path[x + 1]))) return false;
      if (x == 0 || x + 1 == path.size()) continue;
      if (taken[path[x]]) return false;
      taken[path[x]] = 1;
    }
  }
  return !w.induced || is_induced_witness(g, w);
}

bool is_induced_witness(const Graph& g, const SubdivisionWitness& w) {
  std::set<std::pair<Vertex, Vertex>> edges;
  for (const auto& [key, path] : w.paths) {
    for (std::size_t x = 0; x + 1 < path.size(); ++x) {
      edges.emplace(std::min(path[x], path[x + 1]), std::max(path[x], path[x + 1]));
    }
  }
  return edges_within(g, w.vertices()) == edges.size();
}

std::optional<SubdivisionWitness> find_subdivision(const Graph& g, std::size_t k, Seed seed,
                                                   const SubdivisionOptions& options) {
  if (k < 2) throw Error(ErrorKind::domain, "find_subdivision needs k >= 2");
  auto pool = branch_candidates(g, k);
  if (pool.size() < k) return std::nullopt;
  std::stable_sort(pool.begin(), pool.end(), [&](Vertex a, Vertex b) { return g.degree(a) > g.degree(b); });

  for (std::size_t rotation = 0; rotation < options.rotations; ++rotation) {
    VertexSet branch;
    auto pairs = branch_pairs(k);
    if (rotation == 0) {
      branch.assign(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(k));
    } else {
      Rng rng(derive_seed(seed, rotation));
      const auto width = std::min(pool.size(), 2 * k + rotation);
      VertexSet window(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(width));
      rng.shuffle(window);
      branch.assign(window.begin(), window.begin() + static_cast<std::ptrdiff_t>(k));
      rng.shuffle(pairs);
    }
    branch = normalized(std::move(branch));
    if (auto w = route_greedy(g, branch, std::move(pairs))) return finalize(g, std::move(*w));
  }
  if (g.vertex_count() <= options.exhaustive_limit) {
    if (auto w = exhaustive(g, k, false, options.node_budget)) return finalize(g, std::move(*w));
  }
  return std::nullopt;
}

std::optional<SubdivisionWitness> exhaustive_induced_subdivision(const Graph& g, std::size_t k, std::size_t limit,
                                                                 std::size_t node_budget) {
  if (k < 2) throw Error(ErrorKind::domain, "induced subdivision needs k >= 2");
  if (g.vertex_count() > limit) return std::nullopt;
  auto w = exhaustive(g, k, true, node_budget);
  if (!w) return std::nullopt;
  auto out = finalize(g, std::move(*w));
  if (!out.induced) throw std::logic_error("induced packing produced a non-induced witness");
  return out;
}

namespace {

struct LiftAttempt {
  std::optional<SubdivisionWitness> witness;
  std::string route = "none";
  std::size_t j_vertices = 0;
  std::size_t j_edges = 0;
  std::size_t u_size = 0;
};

// Builds J on w_set with one edge per u (its two W-neighbours), searches it and lifts.
LiftAttempt through_auxiliary(const Graph& g, const Graph& h, const VertexSet& h_ids, const VertexSet& w_set,
                              const VertexSet& u_set, std::size_t k, Seed seed, const SubdivisionOptions& search) {
  LiftAttempt out;
  out.j_vertices = w_set.size();
  out.u_size = u_set.size();
  std::vector<std::int64_t> w_index(h.vertex_count(), -1);
  for (std::size_t i = 0; i < w_set.size(); ++i) w_index[w_set[i]] = static_cast<std::int64_t>(i);
  std::map<std::pair<Vertex, Vertex>, Vertex> through;
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (auto u : u_set) {
    std::vector<Vertex> ends;
    for (auto v : h.neighbors(u)) {
      if (w_index[v] >= 0) ends.push_back(static_cast<Vertex>(w_index[v]));
    }
    if (ends.size() != 2) throw std::logic_error("auxiliary graph: U-vertex without exactly two W-neighbours");
    const std::pair<Vertex, Vertex> key{std::min(ends[0], ends[1]), std::max(ends[0], ends[1])};
    if (!through.emplace(key, u).second) {
      throw std::logic_error("auxiliary graph: two U-vertices share both W-neighbours (a C4)");
    }
    edges.push_back(key);
  }
  const Graph j(w_set.size(), edges);
  out.j_edges = j.edge_count();
  auto found = find_subdivision(j, k, seed, search);
  if (!found) return out;
  SubdivisionWitness lifted;
  for (auto b : found->branch) lifted.branch.push_back(h_ids[w_set[b]]);
  for (const auto& [key, path] : found->paths) {
    std::vector<Vertex> expanded{h_ids[w_set[path.front()]]};
    for (std::size_t x = 0; x + 1 < path.size(); ++x) {
      const std::pair<Vertex, Vertex> e{std::min(path[x], path[x + 1]), std::max(path[x], path[x + 1])};
      expanded.push_back(h_ids[through.at(e)]);
      expanded.push_back(h_ids[w_set[path[x + 1]]]);
    }
    lifted.paths[key] = std::move(expanded);
  }
  lifted = finalize(g, std::move(lifted));
  if (lifted.induced) out.witness = std::move(lifted);
  return out;
}

LiftAttempt attempt_once(const Graph& g, std::size_t s, std::size_t k, Seed seed,
                         const InducedSubdivisionOptions& options) {
  ExtractionParams params;
  params.s = s;
  params.k = options.extraction_k;
  params.retries = 20;
  const auto cert = extract_induced_c4free(g, params, derive_seed(seed, 0));
  if (!is_extraction_success(cert.mode)) return {};
  const auto g_prime = induced(g, cert.witness);
  if (find_c3(g_prime)) return {};
  const auto core_local = peel_to_fixed_point(g_prime);
  if (core_local.empty()) return {};
  VertexSet h_ids;
  for (auto v : core_local) h_ids.push_back(cert.witness[v]);
  const auto h = induced(g, h_ids);
  if (h.edge_count() == 0) return {};
  const double d = to_double(average_degree(h));
  Rng rng(derive_seed(seed, 1));
  const auto n = static_cast<Vertex>(h.vertex_count());

  if (const auto colouring = two_coloring(h)) {
    VertexSet side[2];
    for (Vertex v = 0; v < n; ++v) side[(*colouring)[v]].push_back(v);
    const int big = side[0].size() >= side[1].size() ? 0 : 1;
    const auto& a = side[big];
    const auto& b = side[1 - big];
    const double p = std::min(1.0, 1.0 / (8.0 * d));
    VertexSet w_set;
    for (auto v : b) {
      if (rng.bernoulli(p)) w_set.push_back(v);
    }
    std::vector<char> in_w(n, 0);
    for (auto v : w_set) in_w[v] = 1;
    VertexSet u_set;
    for (auto x : a) {
      if (static_cast<double>(h.degree(x)) >= 4.0 * d) continue;
      std::size_t hits = 0;
      for (auto v : h.neighbors(x)) hits += in_w[v];
      if (hits == 2) u_set.push_back(x);
    }
    auto out = through_auxiliary(g, h, h_ids, w_set, u_set, k, derive_seed(seed, 2), options.search);
    out.route = "bipartite";
    return out;
  }

  const double p = std::min(1.0, 1.0 / (10.0 * std::pow(d, 1.6)));
  std::vector<char> in_w0(n, 0);
  for (Vertex v = 0; v < n; ++v) in_w0[v] = rng.bernoulli(p) ? 1 : 0;
  std::vector<char> in_w(n, 0);
  VertexSet w_set;
  for (Vertex v = 0; v < n; ++v) {
    if (!in_w0[v]) continue;
    const auto nb = h.neighbors(v);
    if (std::none_of(nb.begin(), nb.end(), [&](Vertex x) { return in_w0[x] != 0; })) {
      in_w[v] = 1;
      w_set.push_back(v);
    }
  }
  std::vector<char> in_u0(n, 0);
  for (Vertex u = 0; u < n; ++u) {
    std::size_t to_w = 0;
    std::size_t to_w0 = 0;
    for (auto v : h.neighbors(u)) {
      to_w += in_w[v];
      to_w0 += in_w0[v];
    }
    in_u0[u] = (to_w == 2 && to_w0 == 2) ? 1 : 0;
  }
  VertexSet u_set;
  for (Vertex u = 0; u < n; ++u) {
    if (!in_u0[u] || in_w0[u]) continue;
    const auto nb = h.neighbors(u);
    if (std::none_of(nb.begin(), nb.end(), [&](Vertex x) { return in_u0[x] != 0; })) u_set.push_back(u);
  }
  auto out = through_auxiliary(g, h, h_ids, w_set, u_set, k, derive_seed(seed, 2), options.search);
  out.route = "near_regular";
  return out;
}

}  // namespace

InducedSubdivisionReport induced_subdivision_report(const Graph& g, std::size_t s, std::size_t k, Seed seed,
                                                    const InducedSubdivisionOptions& options) {
  if (s < 2 || k < 2) throw Error(ErrorKind::domain, "induced_subdivision needs s >= 2 and k >= 2");
  InducedSubdivisionReport report;
  if (g.edge_count() == 0) return report;
  auto outcome = retry_until_verified<LiftAttempt>(
      RetryOptions{options.retries, options.threads}, [&](std::size_t i) -> std::optional<Trial<LiftAttempt>> {
        auto attempt = attempt_once(g, s, k, derive_seed(seed, i), options);
        const bool ok = attempt.witness.has_value();
        const Rational score(static_cast<std::int64_t>(attempt.j_edges));
        return Trial<LiftAttempt>{std::move(attempt), ok, score};
      });
  report.attempts = outcome.attempts;
  const LiftAttempt* shown = outcome.accepted ? &*outcome.accepted : (outcome.best ? &outcome.best->value : nullptr);
  if (shown) {
    report.j_vertices = shown->j_vertices;
    report.j_edges = shown->j_edges;
    report.u_size = shown->u_size;
  }
  if (outcome.accepted) {
    report.witness = std::move(outcome.accepted->witness);
    report.route = outcome.accepted->route;
    return report;
  }
  if (auto w = exhaustive_induced_subdivision(g, k, options.fallback_limit)) {
    report.witness = std::move(w);
    report.route = "fallback";
  }
  return report;
}

std::optional<SubdivisionWitness> induced_subdivision(const Graph& g, std::size_t s, std::size_t k, Seed seed,
                                                      const InducedSubdivisionOptions& options) {
  return induced_subdivision_report(g, s, k, seed, options).witness;
}

}  // namespace c4free
