#include "c4free/hypergraph.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace c4free {

Hypergraph::Hypergraph(std::size_t vertex_count, std::vector<HyperEdge> edges)
    : vertex_count_(vertex_count), edges_(std::move(edges)) {
  for (auto& e : edges_) {
    e = normalized(std::move(e));
    if (!e.empty() && e.back() >= vertex_count_) {
      throw Error(ErrorKind::domain, "hyperedge vertex " + std::to_string(e.back()) + " out of range");
    }
  }
}

bool Hypergraph::is_covered() const {
  std::vector<char> seen(vertex_count_, 0);
  for (const auto& e : edges_) {
    for (auto v : e) seen[v] = 1;
  }
  return std::all_of(seen.begin(), seen.end(), [](char c) { return c != 0; });
}

bool Hypergraph::is_bounded(std::size_t ell) const {
  return std::all_of(edges_.begin(), edges_.end(), [&](const HyperEdge& e) { return e.size() <= ell; });
}

std::size_t Hypergraph::max_edge_size() const {
  std::size_t best = 0;
  for (const auto& e : edges_) best = std::max(best, e.size());
  return best;
}

std::optional<std::size_t> Hypergraph::uniformity() const {
  if (edges_.empty()) return std::nullopt;
  const auto r = edges_.front().size();
  for (const auto& e : edges_) {
    if (e.size() != r) return std::nullopt;
  }
  return r;
}

std::string to_text(const Hypergraph& h) {
  std::ostringstream out;
  out << h.vertex_count() << " " << h.edge_count() << "\n";
  for (const auto& e : h.edges()) {
    for (std::size_t i = 0; i < e.size(); ++i) out << (i ? " " : "") << e[i];
    out << "\n";
  }
  return out.str();
}

Hypergraph hypergraph_from_text(std::string_view text) {
  std::vector<std::vector<std::uint64_t>> rows;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    auto line = text.substr(pos, end - pos);
    pos = end + 1;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    std::vector<std::uint64_t> row;
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
      std::size_t j = i;
      while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
      if (j > i) {
        std::uint64_t value = 0;
        auto [ptr, ec] = std::from_chars(line.data() + i, line.data() + j, value);
        if (ec != std::errc{} || ptr != line.data() + j) {
          throw Error(ErrorKind::parse, "hypergraph: bad token '" + std::string(line.substr(i, j - i)) + "'");
        }
        row.push_back(value);
      }
      i = j;
    }
    // the header is the first nonblank line; an edge line may legitimately be blank (empty edge) only after it
    if (row.empty() && rows.empty()) continue;
    rows.push_back(std::move(row));
  }
  if (rows.empty() || rows[0].size() != 2) throw Error(ErrorKind::parse, "hypergraph: expected header 'n m'");
  const auto n = rows[0][0];
  const auto m = rows[0][1];
  while (rows.size() > m + 1 && rows.back().empty()) rows.pop_back();
  if (rows.size() != m + 1) {
    throw Error(ErrorKind::parse, "hypergraph: header promises " + std::to_string(m) + " edges, found " +
                                      std::to_string(rows.size() - 1));
  }
  std::vector<HyperEdge> edges;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    HyperEdge e;
    for (auto v : rows[i]) {
      if (v >= n) throw Error(ErrorKind::parse, "hypergraph: vertex " + std::to_string(v) + " out of range");
      e.push_back(static_cast<Vertex>(v));
    }
    edges.push_back(std::move(e));
  }
  return Hypergraph(n, std::move(edges));
}

nlohmann::json to_json(const Hypergraph& h) { return {{"n", h.vertex_count()}, {"edges", h.edges()}}; }

Graph co_occurrence_graph(const Hypergraph& h) {
  std::vector<std::pair<Vertex, Vertex>> pairs;
  for (const auto& e : h.edges()) {
    for (std::size_t i = 0; i < e.size(); ++i) {
      for (std::size_t j = i + 1; j < e.size(); ++j) pairs.emplace_back(e[i], e[j]);
    }
  }
  return Graph(h.vertex_count(), pairs);
}

std::size_t induced_pair_threshold(std::size_t ell, std::size_t k) {
  std::size_t total = 0;
  std::size_t power = 1;
  for (std::size_t l = 0; l <= ell; ++l) {
    total += power;
    power *= (k - 1);
  }
  return total;
}

Hypergraph maximal_edges(const Hypergraph& h) {
  std::vector<HyperEdge> sorted = h.edges();
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::vector<HyperEdge> kept;
  for (const auto& e : sorted) {
    const bool dominated = std::any_of(sorted.begin(), sorted.end(), [&](const HyperEdge& f) {
      return f.size() > e.size() && std::includes(f.begin(), f.end(), e.begin(), e.end());
    });
    if (!dominated) kept.push_back(e);
  }
  return Hypergraph(h.vertex_count(), std::move(kept));
}

}  // namespace c4free
