#pragma once

#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "c4free/graph.hpp"

namespace c4free {

enum class GraphFormat { automatic, graph6, sparse6, edgelist };

GraphFormat parse_graph_format(std::string_view name);

/// graph6: N(n) followed by the upper triangle in column order, 6 bits per byte, +63 offset.
std::string to_graph6(const Graph& g);
/// Accepts an optional ">>graph6<<" header and trailing whitespace.
Graph from_graph6(std::string_view text);

/// sparse6 (':'-prefixed), including nauty's padding rule for n = 2^k.
std::string to_sparse6(const Graph& g);
Graph from_sparse6(std::string_view text);

/// "u v" per line, '#' comments. A "# n <count>" comment fixes the vertex count so
/// isolated trailing vertices survive. Non-numeric tokens are treated as labels
/// and numbered in order of first appearance; a single-token line declares a vertex.
std::string to_edge_list(const Graph& g);
Graph from_edge_list(std::string_view text);

/// Reads a single graph; `automatic` sniffs sparse6 (':'), graph6 header or
/// printable single token, else edge list.
Graph read_graph(std::string_view text, GraphFormat format = GraphFormat::automatic);
std::string write_graph(const Graph& g, GraphFormat format);

/// Sidecar JSON carrying the side assignment of a bipartite graph.
nlohmann::json bipartite_sidecar(const BipartiteGraph& g);
BipartiteGraph attach_sides(Graph g, const nlohmann::json& sidecar);

}  // namespace c4free
