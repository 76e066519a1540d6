#include <algorithm>
#include <cctype>
#include <chrono>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <random>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "c4free/certificate.hpp"
#include "c4free/error.hpp"
#include "c4free/generators.hpp"
#include "c4free/graph_io.hpp"
#include "c4free/hypergraph.hpp"
#include "c4free/lowerbounds.hpp"
#include "c4free/oracles.hpp"
#include "c4free/pipeline.hpp"
#include "c4free/subdivisions.hpp"

using namespace c4free;

namespace {

constexpr int kOk = 0;
constexpr int kIoError = 1;
constexpr int kNegative = 2;

struct Common {
  std::string input = "-";
  std::string output = "-";
  std::string format = "auto";
  std::optional<std::uint64_t> seed;
  unsigned threads = 1;
};

std::string slurp(const std::string& path) {
  if (path == "-") {
    return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::parse, "cannot open '" + path + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void emit(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::parse, "cannot write '" + path + "'");
  out << text;
}

Seed resolve_seed(const Common& c) {
  std::uint64_t value = 0;
  if (c.seed) {
    value = *c.seed;
  } else {
    std::random_device rd;
    value = (static_cast<std::uint64_t>(rd()) << 32) ^ rd() ^
            static_cast<std::uint64_t>(std::chrono::steady_clock::now().time_since_epoch().count());
  }
  std::cerr << "seed: " << value << "\n";
  return Seed{value};
}

Graph load_graph(const Common& c) { return read_graph(slurp(c.input), parse_graph_format(c.format)); }

void add_common(CLI::App* app, Common& c, bool with_seed, bool with_input = true) {
  if (with_input) {
    app->add_option("--input,-i", c.input, "input file, - for stdin");
    app->add_option("--format", c.format, "auto, graph6, sparse6 or edgelist");
  }
  app->add_option("--out,-o", c.output, "output file, - for stdout");
  if (with_seed) app->add_option("--seed", c.seed, "random seed (default: time-derived)");
  app->add_option("--threads", c.threads, "worker threads")->check(CLI::Range(1u, 256u));
}

// Every long option can also come from DEGB_<NAME>; explicit flags win.
void bind_environment(CLI::App* app) {
  for (auto* opt : app->get_options()) {
    if (opt->get_lnames().empty()) continue;
    auto name = opt->get_lnames().front();
    if (name == "help") continue;
    std::string env = "DEGB_";
    for (char ch : name) env += ch == '-' ? '_' : static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
    opt->envname(env);
  }
  for (auto* sub : app->get_subcommands({})) bind_environment(sub);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Induced C4-free subgraph extraction with certificates"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "c4free 0.1.0");

  // extract
  Common ex;
  ExtractionParams params;
  std::string delta = "1/25";
  auto* extract = app.add_subcommand("extract", "extract an induced C4-free subgraph with d >= k");
  add_common(extract, ex, true);
  extract->add_option("--s", params.s, "forbidden biclique size K_{s,s}")->check(CLI::Range(2, 64));
  extract->add_option("--k", params.k, "target average degree")->check(CLI::Range(1, 1 << 20));
  extract->add_option("--retries", params.retries, "retry budget per randomized stage");
  extract->add_option("--stage-attempts", params.stage_attempts, "extreme-split attempts");
  extract->add_option("--oracle-limit", params.oracle_limit, "largest input for the exhaustive fallback");
  extract->add_option("--r", params.r, "regularized degree (0 = max(k^2, s+1))");
  extract->add_option("--t", params.t, "kernel multiplicity (0 = max(k, s))");
  extract->add_option("--delta", delta, "sparsification exponent as p/q");
  extract->add_option("--sparsify-scale", params.sparsify_scale, "scale on the sparsification degree target");
  extract->add_option("--split-low-scale", params.split_low_scale, "scale on the near-regular degree floor");
  extract->add_option("--split-high-scale", params.split_high_scale, "scale on the near-regular degree ceiling");

  // oracle
  Common orc;
  std::size_t limit = 22;
  std::string oracle_mode = "c4free";
  auto* oracle = app.add_subcommand("oracle", "exhaustive optimum: best C4-free induced subgraph or maximum independent set");
  add_common(oracle, orc, false);
  oracle->add_option("--limit", limit, "largest accepted vertex count");
  oracle->add_option("--mode", oracle_mode, "c4free or mis")->check(CLI::IsMember({"c4free", "mis"}));

  // kernel
  Common ke;
  std::size_t kernel_s = 2;
  std::size_t kernel_t = 2;
  KernelOptions kernel_opts;
  auto* kernel = app.add_subcommand("kernel", "partite kernel of a uniform hypergraph file");
  add_common(kernel, ke, true);
  kernel->add_option("--s", kernel_s, "largest trace size");
  kernel->add_option("--t", kernel_t, "multiplicity");
  kernel->add_option("--retries", kernel_opts.retries, "colouring attempts");

  // ftable
  std::size_t ell = 2;
  std::size_t fk = 2;
  std::size_t nmax = 6;
  bool ftable_json = false;
  auto* ftable = app.add_subcommand("ftable", "exact F(ell, k) by exhaustive hypergraph search");
  ftable->add_option("--ell", ell, "edge size bound")->check(CLI::Range(0, 3));
  ftable->add_option("--k", fk, "induced pair order")->check(CLI::Range(1, 5));
  ftable->add_option("--nmax", nmax, "largest vertex count scanned")->check(CLI::Range(0, 8));
  ftable->add_flag("--json", ftable_json, "print the full result as JSON");

  // lowerbound
  Common lb;
  std::uint64_t lb_n = 10;
  double lb_p = 0.5;
  std::size_t lb_s = 2;
  std::size_t lb_k = 4;
  std::size_t lb_trials = 100;
  bool lb_check_only = false;
  bool lb_csv = false;
  std::string symbolic;
  double eps = 0.01;
  LbOptions lb_opts;
  auto* lower = app.add_subcommand("lowerbound", "random-graph lower-bound conditions and experiments");
  add_common(lower, lb, true, false);
  lower->add_option("--n", lb_n, "vertices");
  lower->add_option("--p", lb_p, "edge probability")->check(CLI::Range(0.0, 1.0));
  lower->add_option("--s", lb_s, "biclique size")->check(CLI::Range(2, 64));
  lower->add_option("--k", lb_k, "target average degree")->check(CLI::Range(2, 1 << 20));
  lower->add_option("--trials", lb_trials, "Monte Carlo trials")->check(CLI::Range(1, 100000000));
  lower->add_flag("--check", lb_check_only, "only evaluate the conditions");
  lower->add_flag("--csv", lb_csv, "CSV row instead of JSON");
  lower->add_flag("--exact-x", lb_opts.require_exact_x, "fail instead of sampling when C(n,K) is too large");
  lower->add_option("--symbolic", symbolic, "diagonal, fixed_k or fixed_s")
      ->check(CLI::IsMember({"diagonal", "fixed_k", "fixed_s"}));
  lower->add_option("--eps", eps, "epsilon for symbolic checks");

  // subdivide
  Common sd;
  std::size_t sd_s = 2;
  std::size_t sd_k = 3;
  InducedSubdivisionOptions sd_opts;
  bool non_induced = false;
  auto* subdivide = app.add_subcommand("subdivide", "find an induced subdivision of K_k");
  add_common(subdivide, sd, true);
  subdivide->add_option("--s", sd_s, "forbidden biclique size")->check(CLI::Range(2, 64));
  subdivide->add_option("--k", sd_k, "order of the clique being subdivided")->check(CLI::Range(2, 64));
  subdivide->add_option("--retries", sd_opts.retries, "seeded attempts before the exhaustive fallback");
  subdivide->add_flag("--non-induced", non_induced, "search for any (not necessarily induced) subdivision");

  // gen
  Common gn;
  std::string kind = "gnp";
  std::size_t gen_n = 20;
  double gen_p = 0.3;
  std::uint32_t gen_q = 2;
  std::size_t gen_a = 200;
  std::size_t gen_b = 12;
  std::size_t gen_r = 4;
  std::size_t gen_s = 2;
  std::string sides_path;
  std::string out_format = "graph6";
  auto* gen = app.add_subcommand("gen", "generate a graph");
  add_common(gen, gn, true, false);
  gen->add_option("--kind", kind, "gnp, plane, lopsided, petersen, heawood, complete, cycle, path, star, kab")
      ->check(CLI::IsMember({"gnp", "plane", "lopsided", "petersen", "heawood", "complete", "cycle", "path", "star",
                             "kab"}));
  gen->add_option("--n", gen_n, "vertices (gnp, complete, cycle, path, star leaves)");
  gen->add_option("--p", gen_p, "edge probability (gnp)")->check(CLI::Range(0.0, 1.0));
  gen->add_option("--q", gen_q, "prime order of the projective plane");
  gen->add_option("--a", gen_a, "left side size (lopsided, kab)");
  gen->add_option("--b", gen_b, "right side size (lopsided, kab)");
  gen->add_option("--r", gen_r, "left degree (lopsided)");
  gen->add_option("--s", gen_s, "forbidden biclique size (lopsided)");
  gen->add_option("--sides", sides_path, "also write the bipartition as JSON");
  gen->add_option("--to", out_format, "output format: graph6, sparse6 or edgelist");

  // verify
  Common vf;
  std::string cert_path;
  auto* verify = app.add_subcommand("verify", "replay a certificate or subdivision witness against a graph");
  add_common(verify, vf, false);
  verify->add_option("--cert", cert_path, "certificate or subdivision JSON")->required();

  bind_environment(&app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kIoError;
  }

  try {
    if (extract->parsed()) {
      params.delta = parse_rational(delta);
      params.threads = ex.threads;
      const auto g = load_graph(ex);
      const auto seed = resolve_seed(ex);
      const auto cert = extract_induced_c4free(g, params, seed);
      emit(ex.output, dump_certificate(cert));
      std::cerr << "mode: " << to_string(cert.mode) << "\n";
      return cert.mode == ExtractionMode::failure ? kNegative : kOk;
    }
    if (oracle->parsed()) {
      const auto g = load_graph(orc);
      nlohmann::json out;
      if (oracle_mode == "mis") {
        const auto mis = max_independent_set(g, std::min<std::size_t>(limit, 64));
        out = {{"independent_set", mis}, {"size", mis.size()}};
      } else {
        const auto opt = best_c4free_induced(g, OracleOptions{limit, orc.threads});
        out = {{"vertices", opt.vertices}, {"value", to_string(opt.value)}};
      }
      emit(orc.output, out.dump(2) + "\n");
      return kOk;
    }
    if (kernel->parsed()) {
      const auto h = hypergraph_from_text(slurp(ke.input));
      const auto seed = resolve_seed(ke);
      kernel_opts.threads = ke.threads;
      try {
        const auto kern = furedi_kernel(h, kernel_s, kernel_t, seed, kernel_opts);
        nlohmann::json out{{"kernel", to_json(kern)}, {"report", to_json(verify_kernel(h, kern))}};
        emit(ke.output, out.dump(2) + "\n");
        return kOk;
      } catch (const KernelFailure& e) {
        nlohmann::json out{{"error", e.what()}, {"failing_element", e.failing_element()}};
        if (e.best_attempt()) out["best_attempt"] = to_json(*e.best_attempt());
        emit(ke.output, out.dump(2) + "\n");
        return kNegative;
      }
    }
    if (ftable->parsed()) {
      const auto result = f_search(ell, fk, nmax);
      if (ftable_json) {
        std::cout << to_json(result).dump(2) << "\n";
      } else if (result.upper) {
        std::cout << "F(" << ell << "," << fk << ") = " << *result.upper << "\n";
      } else {
        std::cout << "F(" << ell << "," << fk << ") >= " << result.lower << " (scan stopped at n = " << nmax
                  << ")\n";
      }
      return kOk;
    }
    if (lower->parsed()) {
      if (!symbolic.empty()) {
        const auto check = symbolic == "diagonal"  ? symbolic_diagonal(static_cast<double>(lb_k))
                           : symbolic == "fixed_k" ? symbolic_fixed_k(static_cast<double>(lb_s),
                                                                      static_cast<double>(lb_k), eps)
                                                   : symbolic_fixed_s(static_cast<double>(lb_s),
                                                                      static_cast<double>(lb_k), eps);
        emit(lb.output, to_json(check).dump(2) + "\n");
        return kOk;
      }
      if (lb_check_only) {
        emit(lb.output, to_json(check_lb_conditions(lb_n, lb_p, lb_s, lb_k)).dump(2) + "\n");
        return kOk;
      }
      const auto seed = resolve_seed(lb);
      lb_opts.threads = lb.threads;
      const auto report = lb_experiment(lb_n, lb_p, lb_s, lb_k, lb_trials, seed, lb_opts);
      emit(lb.output, lb_csv ? csv_header() + "\n" + to_csv_row(report) + "\n" : to_json(report).dump(2) + "\n");
      return kOk;
    }
    if (subdivide->parsed()) {
      const auto g = load_graph(sd);
      const auto seed = resolve_seed(sd);
      sd_opts.threads = sd.threads;
      std::optional<SubdivisionWitness> w;
      std::string route = "search";
      if (non_induced) {
        w = find_subdivision(g, sd_k, seed);
      } else {
        auto report = induced_subdivision_report(g, sd_s, sd_k, seed, sd_opts);
        w = std::move(report.witness);
        route = report.route;
      }
      if (!w) {
        std::cerr << "no subdivision of K_" << sd_k << " found\n";
        return kNegative;
      }
      std::cerr << "route: " << route << "\n";
      emit(sd.output, to_json(*w).dump(2) + "\n");
      return kOk;
    }
    if (gen->parsed()) {
      const auto fmt = parse_graph_format(out_format);
      if (fmt == GraphFormat::automatic) throw Error(ErrorKind::parse, "choose an explicit output format");
      std::optional<BipartiteGraph> bip;
      Graph g;
      if (kind == "gnp") {
        g = gen_gnp(gen_n, gen_p, resolve_seed(gn));
      } else if (kind == "plane") {
        bip = projective_plane_incidence(gen_q);
      } else if (kind == "lopsided") {
        bip = gen_lopsided(gen_a, gen_b, gen_r, gen_s, resolve_seed(gn));
      } else if (kind == "kab") {
        bip = complete_bipartite(gen_a, gen_b);
      } else if (kind == "petersen") {
        g = petersen_graph();
      } else if (kind == "heawood") {
        g = heawood_graph();
      } else if (kind == "complete") {
        g = complete_graph(gen_n);
      } else if (kind == "cycle") {
        g = cycle_graph(gen_n);
      } else if (kind == "path") {
        g = path_graph(gen_n);
      } else {
        g = star_graph(gen_n);
      }
      if (bip) {
        g = bip->graph();
        if (!sides_path.empty()) emit(sides_path, bipartite_sidecar(*bip).dump(2) + "\n");
      } else if (!sides_path.empty()) {
        throw Error(ErrorKind::parse, "--sides needs a bipartite kind");
      }
      emit(gn.output, write_graph(g, fmt));
      return kOk;
    }
    if (verify->parsed()) {
      const auto g = load_graph(vf);
      std::ifstream in(cert_path);
      if (!in) throw Error(ErrorKind::parse, "cannot open '" + cert_path + "'");
      nlohmann::json j;
      try {
        j = nlohmann::json::parse(in);
      } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::parse, std::string("certificate JSON: ") + e.what());
      }
      if (j.contains("branch")) {
        const bool ok = verify_subdivision(g, subdivision_from_json(j));
        std::cout << (ok ? "verified" : "rejected") << "\n";
        return ok ? kOk : kNegative;
      }
      const auto cert = certificate_from_json(j);
      const bool ok = verify_certificate(g, cert);
      if (!ok) {
        std::cout << "rejected\n";
        return kNegative;
      }
      std::cout << "verified " << to_string(cert.mode) << "\n";
      return cert.mode == ExtractionMode::failure ? kNegative : kOk;
    }
  } catch (const Error& e) {
    std::cerr << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
    return kIoError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIoError;
  }
  return kIoError;
}
