#pragma once

#include <cstddef>
#include <cstdint>

#include "c4free/graph.hpp"
#include "c4free/random.hpp"

namespace c4free {

Graph complete_graph(std::size_t n);
Graph cycle_graph(std::size_t n);
Graph path_graph(std::size_t n);
/// Star K_{1,leaves}; vertex 0 is the centre.
Graph star_graph(std::size_t leaves);
/// K_{a,b}; side A is 0..a-1, side B is a..a+b-1.
BipartiteGraph complete_bipartite(std::size_t a, std::size_t b);
/// Outer 5-cycle 0..4, spokes i-(i+5), inner pentagram on 5..9.
Graph petersen_graph();
/// Incidence graph of the Fano plane (PG(2,2)).
Graph heawood_graph();

/// Erdős–Rényi G(n,p): each pair present independently with probability p,
/// scanned in (i<j) lexicographic order from a single stream.
Graph gen_gnp(std::size_t n, double p, Seed seed);

/// Point-line incidence graph of PG(2,q) for prime q. Points are 0..N-1 (side A),
/// lines N..2N-1 (side B), N = q²+q+1. (q+1)-regular with girth 6.
BipartiteGraph projective_plane_incidence(std::uint32_t q);

bool is_prime(std::uint64_t n);

/// Random left-regular bipartite graph: A = 0..a_count-1, B = a_count..a_count+b_count-1,
/// each A-vertex receives a uniformly random r-subset of B, resampled whenever it
/// would complete a K_{s,s}. The result is certified K_{s,s}-free.
/// Throws generation_failure when a vertex exhausts `attempts_per_vertex`.
BipartiteGraph gen_lopsided(std::size_t a_count, std::size_t b_count, std::size_t r, std::size_t s,
                            Seed seed, std::size_t attempts_per_vertex = 1000);

}  // namespace c4free
