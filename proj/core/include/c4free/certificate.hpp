#pragma once

#include <cstddef>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "c4free/graph.hpp"
#include "c4free/oracles.hpp"
#include "c4free/random.hpp"
#include "c4free/rational.hpp"

namespace c4free {

enum class ExtractionMode {
  trivial_already_c4free,
  case1_near_regular,
  case2_lopsided,
  biclique_found,
  oracle_fallback,
  failure,
};

std::string_view to_string(ExtractionMode mode) noexcept;
ExtractionMode parse_mode(std::string_view text);

/// True for the modes that promise an induced C4-free witness with d >= k.
bool is_extraction_success(ExtractionMode mode) noexcept;

/// Every tunable of the extraction driver. `threads` is a resource knob only
/// and is deliberately left out of serialization.
struct ExtractionParams {
  std::size_t s = 2;
  std::size_t k = 2;
  Rational delta0{0};      // extreme_split δ; 0 selects 1/(200s)
  Rational delta{1, 25};   // sparsify δ, also the exponent in d >= Δ^{1-δ}
  std::size_t t = 0;       // kernel multiplicity; 0 selects max(k, s)
  std::size_t r = 0;       // regularized left degree; 0 selects max(k², s+1)
  std::size_t retries = 100;
  std::size_t stage_attempts = 4;
  double split_low_scale = 0.0;
  double split_high_scale = 1.0;
  double sparsify_scale = 0.0;
  std::size_t oracle_limit = 22;
  unsigned threads = 1;

  Rational effective_delta0() const;
  std::size_t effective_t() const;
  std::size_t effective_r() const;
};

struct VerifiedFlags {
  bool induced_c4free = false;
  bool avg_degree_ok = false;
  bool bipartite = false;
  bool max_degree_bound_ok = false;

  friend bool operator==(const VerifiedFlags&, const VerifiedFlags&) = default;
};

struct CertificateStats {
  Rational average_degree{0};
  std::size_t max_degree = 0;
  std::size_t order = 0;

  friend bool operator==(const CertificateStats&, const CertificateStats&) = default;
};

struct ExtractionCertificate {
  static constexpr int kVersion = 1;

  std::string input_digest;
  ExtractionMode mode = ExtractionMode::failure;
  VertexSet witness;                // G' (or the best attempt on failure); S ∪ T for bicliques
  std::optional<Biclique> biclique;
  std::vector<std::string> witness_labels;  // input naming of `witness` when the input is labelled
  ExtractionParams params;
  Seed seed;
  VerifiedFlags verified;
  CertificateStats stats;
  nlohmann::json diagnostics = nlohmann::json::object();
  int version = kVersion;
};

/// "sha256:" + hex digest of the graph6 encoding.
std::string graph_digest(const Graph& g);

/// The single source of truth for verified flags and stats of a witness.
VerifiedFlags compute_flags(const Graph& g, const VertexSet& witness, std::size_t k, const Rational& delta);
CertificateStats compute_stats(const Graph& g, const VertexSet& witness);

/// Fills digest, labels, flags and stats from the witness.
ExtractionCertificate make_certificate(const Graph& g, ExtractionMode mode, VertexSet witness,
                                       std::optional<Biclique> biclique, const ExtractionParams& params, Seed seed,
                                       nlohmann::json diagnostics);

nlohmann::json to_json(const ExtractionCertificate& cert);
ExtractionCertificate certificate_from_json(const nlohmann::json& j);
/// Stable serialization (sorted keys, 2-space indent, trailing newline).
std::string dump_certificate(const ExtractionCertificate& cert);

/// Recomputes flags and stats from scratch and checks the mode's promise.
/// Throws stale_certificate when the digest does not match g.
bool verify_certificate(const Graph& g, const ExtractionCertificate& cert);

}  // namespace c4free
