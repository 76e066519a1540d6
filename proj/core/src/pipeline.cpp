#include "c4free/pipeline.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "c4free/hypergraph.hpp"
#include "c4free/las_vegas.hpp"
#include "c4free/oracles.hpp"
#include "c4free/reductions.hpp"

namespace c4free {

namespace {

struct ModelRun {
  ExtractionMode mode = ExtractionMode::failure;
  VertexSet witness;
  std::optional<Biclique> biclique;
  std::string note;
};

Rational witness_degree(const Graph& host, const VertexSet& w) {
  return w.empty() ? Rational(0) : average_degree(induced(host, w));
}

bool good_witness(const Graph& host, const VertexSet& w, std::size_t k) {
  return !w.empty() && is_c4_free(host, w) && witness_degree(host, w) >= Rational(static_cast<std::int64_t>(k));
}

VertexSet lift(const VertexSet& local, const VertexSet& parent_ids) {
  VertexSet out;
  out.reserve(local.size());
  for (auto v : local) out.push_back(parent_ids[v]);
  return normalized(std::move(out));
}

// Model case on host[a ∪ b]; neighbourhoods are taken inside b. Ids are host ids.
ModelRun run_model(const Graph& host, const VertexSet& a, const VertexSet& b, std::size_t s, std::size_t k,
                   std::size_t t, Seed seed, const ModelOptions& options, nlohmann::json& diag) {
  ModelRun run;
  if (a.empty() || b.empty()) {
    run.note = "empty side";
    return run;
  }
  std::vector<VertexSet> nbhd(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    VertexSet n(host.neighbors(a[i]).begin(), host.neighbors(a[i]).end());
    nbhd[i] = set_intersection(normalized(std::move(n)), b);
  }
  const auto r = nbhd.front().size();
  if (std::any_of(nbhd.begin(), nbhd.end(), [&](const VertexSet& n) { return n.size() != r; })) {
    throw Error(ErrorKind::precondition, "model_lopsided: A-side degrees are not uniform");
  }
  if (r < s) throw Error(ErrorKind::precondition, "model_lopsided: A-side degree is below s");
  diag["r"] = r;

  // distinct neighbourhoods in order of first appearance; φ picks the least A-vertex
  std::map<VertexSet, std::size_t> index_of;
  std::vector<VertexSet> edges;
  std::vector<std::vector<Vertex>> owners;
  for (std::size_t i = 0; i < a.size(); ++i) {
    auto [it, fresh] = index_of.try_emplace(nbhd[i], edges.size());
    if (fresh) {
      edges.push_back(nbhd[i]);
      owners.emplace_back();
    }
    auto& list = owners[it->second];
    list.push_back(a[i]);
    if (list.size() == s) {
      run.mode = ExtractionMode::biclique_found;
      run.biclique = Biclique{list, VertexSet(nbhd[i].begin(), nbhd[i].begin() + static_cast<std::ptrdiff_t>(s))};
      run.witness = set_union(run.biclique->left, run.biclique->right);
      diag["route"] = "repeated neighbourhood";
      return run;
    }
  }
  std::vector<std::size_t> local(host.vertex_count(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) local[b[i]] = i;
  std::vector<HyperEdge> local_edges;
  for (const auto& e : edges) {
    HyperEdge le;
    for (auto v : e) le.push_back(static_cast<Vertex>(local[v]));
    local_edges.push_back(std::move(le));
  }
  const Hypergraph family(b.size(), std::move(local_edges));
  diag["hyperedges"] = family.edge_count();

  KernelOptions kopts;
  kopts.retries = options.kernel_retries;
  kopts.colorings_per_attempt = options.colorings_per_attempt;
  kopts.threads = 1;
  kopts.eager_peel = options.eager_peel;

  auto attempt = [&](std::size_t i) -> std::optional<Trial<ModelRun>> {
    PartiteKernel kernel;
    try {
      kernel = furedi_kernel(family, s, t, derive_seed(seed, i), kopts);
    } catch (const KernelFailure&) {
      return std::nullopt;
    }
    const auto& colour = kernel.coloring;
    const auto& e_star = kernel.surviving_edges;
    ModelRun out;

    for (const auto& e : kernel.trace.edges()) {
      if (e.size() != s) continue;
      // every surviving edge has >= t >= s partners agreeing on the colours of e
      const auto& f0 = family.edge(e_star.front());
      VertexSet u;
      for (auto v : f0) {
        if (std::binary_search(e.begin(), e.end(), colour[v])) u.push_back(v);
      }
      VertexSet left;
      for (auto idx : e_star) {
        const auto& f = family.edge(idx);
        if (std::includes(f.begin(), f.end(), u.begin(), u.end())) left.push_back(owners[idx].front());
        if (left.size() == s) break;
      }
      Biclique bc{normalized(std::move(left)), lift(u, b)};
      if (!is_biclique(host, bc, s)) throw std::logic_error("model_lopsided: trace edge of size s gave no biclique");
      out.mode = ExtractionMode::biclique_found;
      out.witness = set_union(bc.left, bc.right);
      out.biclique = std::move(bc);
      out.note = "trace edge of size s";
      return Trial<ModelRun>{std::move(out), true, Rational(0)};
    }

    std::size_t f_index = e_star.front();
    for (auto idx : e_star) {
      if (family.edge(idx) < family.edge(f_index)) f_index = idx;
    }
    const auto& f = family.edge(f_index);

    VertexSet covered;
    for (const auto& e : kernel.trace.edges()) covered = set_union(covered, e);
    if (!covered.empty()) {
      std::vector<HyperEdge> restricted;
      for (const auto& e : kernel.trace.edges()) {
        HyperEdge re;
        for (auto c : e) {
          re.push_back(static_cast<Vertex>(std::lower_bound(covered.begin(), covered.end(), c) - covered.begin()));
        }
        restricted.push_back(std::move(re));
      }
      const auto pair = find_induced_pair(Hypergraph(covered.size(), std::move(restricted)), k);
      if (pair.reached) {
        const auto x = lift(pair.a_set, covered);
        const auto y = lift(pair.b_set, covered);
        VertexSet s_set;
        for (auto v : f) {
          if (std::binary_search(x.begin(), x.end(), colour[v])) s_set.push_back(v);
        }
        VertexSet a_prime;
        VertexSet b_prime;
        for (auto idx : e_star) {
          const auto& g_edge = family.edge(idx);
          if (!std::includes(g_edge.begin(), g_edge.end(), s_set.begin(), s_set.end())) continue;
          a_prime.push_back(owners[idx].front());
          for (auto v : g_edge) {
            if (std::binary_search(y.begin(), y.end(), colour[v])) b_prime.push_back(b[v]);
          }
        }
        a_prime = normalized(std::move(a_prime));
        b_prime = normalized(std::move(b_prime));
        const auto witness = set_union(a_prime, b_prime);
        const auto sub = induced(host, witness);
        for (std::size_t j = 0; j < witness.size(); ++j) {
          const bool on_a = std::binary_search(a_prime.begin(), a_prime.end(), witness[j]);
          const auto deg = sub.degree(static_cast<Vertex>(j));
          if (on_a ? deg != y.size() : deg < std::min(t, k)) {
            throw std::logic_error("model_lopsided: degree invariant of G' violated");
          }
        }
        out.witness = witness;
        out.note = "induced pair";
        if (good_witness(host, witness, k)) {
          out.mode = ExtractionMode::case2_lopsided;
          return Trial<ModelRun>{std::move(out), true, Rational(0)};
        }
        return Trial<ModelRun>{std::move(out), false, witness_degree(host, witness)};
      }
    }
    // the trace gives no induced pair of order k; a single neighbourhood star still serves small k
    auto star = lift(f, b);
    star = set_union(star, VertexSet{owners[f_index].front()});
    out.witness = star;
    out.note = "star";
    const bool ok = good_witness(host, star, k);
    if (ok) out.mode = ExtractionMode::case2_lopsided;
    const auto score = witness_degree(host, star);
    return Trial<ModelRun>{std::move(out), ok, score};
  };

  auto outcome = retry_until_verified<ModelRun>(RetryOptions{options.retries, options.threads}, attempt);
  diag["attempts"] = outcome.attempts;
  if (outcome.accepted) {
    diag["route"] = outcome.accepted->note;
    return std::move(*outcome.accepted);
  }
  if (outcome.best) {
    run.witness = outcome.best->value.witness;
    run.note = "no verified G' (best: " + outcome.best->value.note + ")";
  } else {
    run.note = "no kernel found";
  }
  diag["route"] = run.note;
  return run;
}

}  // namespace

ExtractionCertificate model_lopsided(const BipartiteGraph& g, std::size_t s, std::size_t k, Seed seed,
                                     const ModelOptions& options) {
  if (s < 1 || k < 1) throw Error(ErrorKind::domain, "model_lopsided needs s, k >= 1");
  ExtractionParams params;
  params.s = s;
  params.k = k;
  params.t = options.t > 0 ? options.t : std::max(k, s);
  params.retries = options.retries;
  params.threads = options.threads;
  nlohmann::json diag = nlohmann::json::object();
  auto run = run_model(g.graph(), g.side_a(), g.side_b(), s, k, params.t, seed, options, diag);
  params.r = diag.value("r", std::size_t{0});
  return make_certificate(g.graph(), run.mode, std::move(run.witness), std::move(run.biclique), params, seed,
                          {{"stages", nlohmann::json::array({{{"stage", "model"}, {"detail", diag}}})}});
}

ExtractionCertificate extract_induced_c4free(const Graph& g, std::size_t s, std::size_t k, Seed seed) {
  ExtractionParams params;
  params.s = s;
  params.k = k;
  return extract_induced_c4free(g, params, seed);
}

ExtractionCertificate extract_induced_c4free(const Graph& g, const ExtractionParams& params, Seed seed) {
  if (params.s < 2 || params.k < 1) throw Error(ErrorKind::domain, "extract_induced_c4free needs s >= 2 and k >= 1");
  const auto s = params.s;
  const auto k = params.k;
  const auto t = params.effective_t();
  const auto r = params.effective_r();
  const RetryOptions retry{params.retries, params.threads};

  nlohmann::json stages = nlohmann::json::array();
  VertexSet best;
  Rational best_degree(0);
  auto consider = [&](const VertexSet& w) {
    if (w.empty() || !is_c4_free(g, w)) return;
    const auto d = witness_degree(g, w);
    if (best.empty() || d > best_degree) {
      best = w;
      best_degree = d;
    }
  };
  auto finish = [&](ExtractionMode mode, VertexSet witness, std::optional<Biclique> biclique) {
    nlohmann::json diag{{"stages", stages},
                        {"effective", {{"delta0", to_string(params.effective_delta0())}, {"t", t}, {"r", r}}}};
    if (mode == ExtractionMode::failure) diag["best_average_degree"] = to_string(best_degree);
    return make_certificate(g, mode, std::move(witness), std::move(biclique), params, seed, std::move(diag));
  };

  if (g.vertex_count() == 0) {
    stages.push_back({{"stage", "input"}, {"outcome", "empty graph"}});
    return finish(ExtractionMode::failure, {}, std::nullopt);
  }
  if (auto bc = contains_biclique(g, s)) {
    stages.push_back({{"stage", "biclique"}, {"outcome", "found"}});
    auto w = set_union(normalized(bc->left), normalized(bc->right));
    return finish(ExtractionMode::biclique_found, std::move(w), std::move(bc));
  }
  const auto everything = all_vertices(g);
  if (good_witness(g, everything, k)) {
    stages.push_back({{"stage", "trivial"}, {"outcome", "input is C4-free"}});
    return finish(ExtractionMode::trivial_already_c4free, everything, std::nullopt);
  }

  const auto core = peel_to_fixed_point(g);
  const auto h = induced(g, core);
  const bool splittable = !core.empty() && average_degree(h) >= Rational(2);
  stages.push_back({{"stage", "peel"}, {"order", core.size()}});

  for (std::size_t attempt = 0; splittable && attempt < params.stage_attempts; ++attempt) {
    const auto stage_seed = derive_seed(seed, attempt);
    nlohmann::json record{{"stage", "extreme_split"}, {"attempt", attempt}};
    try {
      SplitOptions split;
      split.low_scale = params.split_low_scale;
      split.high_scale = params.split_high_scale;
      split.retry = retry;
      const auto outcome = extreme_split(h, params.effective_delta0(), derive_seed(stage_seed, 0), split);
      if (outcome.kind == SplitOutcome::Kind::near_regular) {
        record["outcome"] = "near_regular";
        const auto part = lift(outcome.subgraph, core);
        SparsifyOptions sparse;
        sparse.min_average_degree = Rational(static_cast<std::int64_t>(k));
        sparse.target_scale = params.sparsify_scale;
        sparse.check_precondition = false;
        sparse.retry = retry;
        VertexSet local;
        try {
          local = sparsify_short_cycles(induced(g, part), s, params.delta, derive_seed(stage_seed, 1), sparse);
        } catch (const ExtractionFailure& e) {
          consider(lift(e.best_attempt(), part));
          throw;
        }
        auto witness = lift(local, part);
        if (good_witness(g, witness, k)) {
          stages.push_back(record);
          return finish(ExtractionMode::case1_near_regular, std::move(witness), std::nullopt);
        }
        consider(witness);
        record["error"] = "sparsified witness rejected";
      } else {
        record["outcome"] = "lopsided";
        const auto a0 = lift(outcome.a_side, core);
        const auto b0 = lift(outcome.b_side, core);
        RegularizeOptions reg;
        reg.retry = retry;
        const auto sides = bipartite_regularize(g, a0, b0, s, r, derive_seed(stage_seed, 2), reg);
        ModelOptions model;
        model.t = t;
        model.retries = params.retries;
        model.threads = params.threads;
        nlohmann::json detail = nlohmann::json::object();
        auto run = run_model(g, sides.a, sides.b, s, k, t, derive_seed(stage_seed, 3), model, detail);
        record["model"] = detail;
        if (run.mode == ExtractionMode::biclique_found && run.biclique && is_biclique(g, *run.biclique, s)) {
          stages.push_back(record);
          return finish(ExtractionMode::biclique_found, std::move(run.witness), std::move(run.biclique));
        }
        if (run.mode == ExtractionMode::case2_lopsided && good_witness(g, run.witness, k)) {
          stages.push_back(record);
          return finish(ExtractionMode::case2_lopsided, std::move(run.witness), std::nullopt);
        }
        consider(run.witness);
        record["error"] = run.note;
      }
    } catch (const Error& e) {
      record["error"] = std::string(to_string(e.kind())) + ": " + e.what();
    }
    stages.push_back(record);
  }

  if (g.vertex_count() <= params.oracle_limit && g.vertex_count() <= 64) {
    const auto opt = best_c4free_induced(g, OracleOptions{params.oracle_limit, params.threads});
    stages.push_back({{"stage", "oracle"}, {"value", to_string(opt.value)}});
    if (opt.value >= Rational(static_cast<std::int64_t>(k))) {
      return finish(ExtractionMode::oracle_fallback, opt.vertices, std::nullopt);
    }
    consider(opt.vertices);
  }
  return finish(ExtractionMode::failure, best, std::nullopt);
}

}  // namespace c4free
