#pragma once

#include <cstddef>

#include "c4free/certificate.hpp"
#include "c4free/graph.hpp"
#include "c4free/random.hpp"

namespace c4free {

struct ModelOptions {
  std::size_t t = 0;  // 0 selects max(k, s)
  std::size_t retries = 100;
  std::size_t kernel_retries = 10;
  std::size_t colorings_per_attempt = 8;
  bool eager_peel = true;
  unsigned threads = 1;
};

/// Model case: g = (A, B) with every A-vertex of the same degree r >= s. Returns
/// biclique_found, case2_lopsided with an induced C4-free G' of d >= k, or failure
/// carrying the best attempt. Throws a precondition error on non-uniform A-degrees.
ExtractionCertificate model_lopsided(const BipartiteGraph& g, std::size_t s, std::size_t k, Seed seed,
                                     const ModelOptions& options = {});

/// Full driver. Never throws for well-formed parameters; failure is a certificate mode.
/// Requires s >= 2 and k >= 1 (domain error otherwise).
ExtractionCertificate extract_induced_c4free(const Graph& g, const ExtractionParams& params, Seed seed);
ExtractionCertificate extract_induced_c4free(const Graph& g, std::size_t s, std::size_t k, Seed seed);

}  // namespace c4free
