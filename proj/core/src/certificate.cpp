#include "c4free/certificate.hpp"

#include <array>
#include <cmath>
#include <iomanip>
#include <sstream>

#include <openssl/evp.h>

#include "c4free/error.hpp"
#include "c4free/graph_io.hpp"

namespace c4free {

namespace {

constexpr std::array<std::pair<ExtractionMode, std::string_view>, 6> kModeNames{{
    {ExtractionMode::trivial_already_c4free, "trivial_already_c4free"},
    {ExtractionMode::case1_near_regular, "case1_near_regular"},
    {ExtractionMode::case2_lopsided, "case2_lopsided"},
    {ExtractionMode::biclique_found, "biclique_found"},
    {ExtractionMode::oracle_fallback, "oracle_fallback"},
    {ExtractionMode::failure, "failure"},
}};

nlohmann::json params_json(const ExtractionParams& p) {
  return {{"s", p.s},
          {"k", p.k},
          {"delta0", to_string(p.delta0)},
          {"delta", to_string(p.delta)},
          {"t", p.t},
          {"r", p.r},
          {"retries", p.retries},
          {"stage_attempts", p.stage_attempts},
          {"split_low_scale", p.split_low_scale},
          {"split_high_scale", p.split_high_scale},
          {"sparsify_scale", p.sparsify_scale},
          {"oracle_limit", p.oracle_limit}};
}

ExtractionParams params_from_json(const nlohmann::json& j) {
  ExtractionParams p;
  p.s = j.at("s").get<std::size_t>();
  p.k = j.at("k").get<std::size_t>();
  p.delta0 = parse_rational(j.at("delta0").get<std::string>());
  p.delta = parse_rational(j.at("delta").get<std::string>());
  p.t = j.at("t").get<std::size_t>();
  p.r = j.at("r").get<std::size_t>();
  p.retries = j.at("retries").get<std::size_t>();
  p.stage_attempts = j.at("stage_attempts").get<std::size_t>();
  p.split_low_scale = j.at("split_low_scale").get<double>();
  p.split_high_scale = j.at("split_high_scale").get<double>();
  p.sparsify_scale = j.at("sparsify_scale").get<double>();
  p.oracle_limit = j.at("oracle_limit").get<std::size_t>();
  return p;
}

}  // namespace

std::string_view to_string(ExtractionMode mode) noexcept {
  for (const auto& [m, name] : kModeNames) {
    if (m == mode) return name;
  }
  return "failure";
}

ExtractionMode parse_mode(std::string_view text) {
  for (const auto& [m, name] : kModeNames) {
    if (name == text) return m;
  }
  throw Error(ErrorKind::parse, "unknown extraction mode '" + std::string(text) + "'");
}

bool is_extraction_success(ExtractionMode mode) noexcept {
  return mode == ExtractionMode::trivial_already_c4free || mode == ExtractionMode::case1_near_regular ||
         mode == ExtractionMode::case2_lopsided || mode == ExtractionMode::oracle_fallback;
}

Rational ExtractionParams::effective_delta0() const {
  return delta0 > Rational(0) ? delta0 : Rational(1, 200 * static_cast<std::int64_t>(s));
}

std::size_t ExtractionParams::effective_t() const { return t > 0 ? t : std::max(k, s); }

std::size_t ExtractionParams::effective_r() const { return r > 0 ? r : std::max(k * k, s + 1); }

std::string graph_digest(const Graph& g) {
  const auto text = to_graph6(g);
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  EVP_Digest(text.data(), text.size(), md.data(), &len, EVP_sha256(), nullptr);
  std::ostringstream out;
  out << "sha256:";
  for (unsigned int i = 0; i < len; ++i) out << std::hex << std::setw(2) << std::setfill('0') << int{md[i]};
  return out.str();
}

CertificateStats compute_stats(const Graph& g, const VertexSet& witness) {
  CertificateStats stats;
  stats.order = witness.size();
  if (witness.empty()) return stats;
  const auto sub = induced(g, witness);
  stats.average_degree = average_degree(sub);
  stats.max_degree = max_degree(sub);
  return stats;
}

VerifiedFlags compute_flags(const Graph& g, const VertexSet& witness, std::size_t k, const Rational& delta) {
  VerifiedFlags flags;
  if (witness.empty()) return flags;
  const auto sub = induced(g, witness);
  const auto d = average_degree(sub);
  const auto big_delta = static_cast<double>(max_degree(sub));
  flags.induced_c4free = is_c4_free(sub);
  flags.avg_degree_ok = d >= Rational(static_cast<std::int64_t>(k));
  flags.bipartite = two_coloring(sub).has_value();
  flags.max_degree_bound_ok = to_double(d) >= std::pow(big_delta, 1.0 - to_double(delta));
  return flags;
}

ExtractionCertificate make_certificate(const Graph& g, ExtractionMode mode, VertexSet witness,
                                       std::optional<Biclique> biclique, const ExtractionParams& params, Seed seed,
                                       nlohmann::json diagnostics) {
  ExtractionCertificate cert;
  cert.input_digest = graph_digest(g);
  cert.mode = mode;
  cert.witness = normalized(std::move(witness));
  cert.biclique = std::move(biclique);
  if (g.has_labels()) {
    for (auto v : cert.witness) cert.witness_labels.push_back(g.label(v));
  }
  cert.params = params;
  cert.seed = seed;
  cert.verified = compute_flags(g, cert.witness, params.k, params.delta);
  cert.stats = compute_stats(g, cert.witness);
  cert.diagnostics = std::move(diagnostics);
  return cert;
}

nlohmann::json to_json(const ExtractionCertificate& cert) {
  nlohmann::json witness{{"vertices", cert.witness}};
  if (cert.biclique) {
    witness["left"] = cert.biclique->left;
    witness["right"] = cert.biclique->right;
  }
  if (!cert.witness_labels.empty()) witness["labels"] = cert.witness_labels;
  return {{"version", cert.version},
          {"digest", cert.input_digest},
          {"mode", std::string(to_string(cert.mode))},
          {"witness", witness},
          {"params", params_json(cert.params)},
          {"seed", cert.seed.value},
          {"verified",
           {{"induced_c4free", cert.verified.induced_c4free},
            {"avg_degree_ok", cert.verified.avg_degree_ok},
            {"bipartite", cert.verified.bipartite},
            {"max_degree_bound_ok", cert.verified.max_degree_bound_ok}}},
          {"stats",
           {{"average_degree", to_string(cert.stats.average_degree)},
            {"max_degree", cert.stats.max_degree},
            {"order", cert.stats.order}}},
          {"diagnostics", cert.diagnostics}};
}

ExtractionCertificate certificate_from_json(const nlohmann::json& j) {
  try {
    ExtractionCertificate cert;
    cert.version = j.at("version").get<int>();
    if (cert.version != ExtractionCertificate::kVersion) {
      throw Error(ErrorKind::parse, "unsupported certificate version " + std::to_string(cert.version));
    }
    cert.input_digest = j.at("digest").get<std::string>();
    cert.mode = parse_mode(j.at("mode").get<std::string>());
    const auto& w = j.at("witness");
    cert.witness = w.at("vertices").get<VertexSet>();
    if (w.contains("left")) cert.biclique = Biclique{w.at("left").get<VertexSet>(), w.at("right").get<VertexSet>()};
    if (w.contains("labels")) cert.witness_labels = w.at("labels").get<std::vector<std::string>>();
    cert.params = params_from_json(j.at("params"));
    cert.seed = Seed{j.at("seed").get<std::uint64_t>()};
    const auto& v = j.at("verified");
    cert.verified = {v.at("induced_c4free").get<bool>(), v.at("avg_degree_ok").get<bool>(),
                     v.at("bipartite").get<bool>(), v.at("max_degree_bound_ok").get<bool>()};
    const auto& s = j.at("stats");
    cert.stats = {parse_rational(s.at("average_degree").get<std::string>()), s.at("max_degree").get<std::size_t>(),
                  s.at("order").get<std::size_t>()};
    cert.diagnostics = j.value("diagnostics", nlohmann::json::object());
    return cert;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::parse, std::string("certificate: ") + e.what());
  }
}

std::string dump_certificate(const ExtractionCertificate& cert) { return to_json(cert).dump(2) + "\n"; }

bool verify_certificate(const Graph& g, const ExtractionCertificate& cert) {
  if (graph_digest(g) != cert.input_digest) {
    throw Error(ErrorKind::stale_certificate, "certificate digest does not match the graph");
  }
  const auto witness = normalized(cert.witness);
  if (witness != cert.witness) return false;
  if (!witness.empty() && witness.back() >= g.vertex_count()) return false;
  if (compute_flags(g, witness, cert.params.k, cert.params.delta) != cert.verified) return false;
  if (compute_stats(g, witness) != cert.stats) return false;
  if (is_extraction_success(cert.mode)) {
    if (!cert.verified.induced_c4free || !cert.verified.avg_degree_ok || cert.biclique) return false;
  }
  if (cert.mode == ExtractionMode::trivial_already_c4free && witness.size() != g.vertex_count()) return false;
  if (cert.mode == ExtractionMode::biclique_found) {
    if (!cert.biclique || !is_biclique(g, *cert.biclique, cert.params.s)) return false;
    if (set_union(normalized(cert.biclique->left), normalized(cert.biclique->right)) != witness) return false;
  }
  return true;
}

}  // namespace c4free
