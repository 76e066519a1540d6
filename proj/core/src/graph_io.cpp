#include "c4free/graph_io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>
#include <sstream>
#include <unordered_map>

#include "c4free/error.hpp"

namespace c4free {

namespace {

constexpr int kBias = 63;

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

void encode_size(std::string& out, std::uint64_t n) {
  if (n <= 62) {
    out.push_back(static_cast<char>(n + kBias));
  } else if (n <= 258047) {
    out.push_back(126);
    for (int shift = 12; shift >= 0; shift -= 6) out.push_back(static_cast<char>(((n >> shift) & 63) + kBias));
  } else if (n <= 68719476735ULL) {
    out.push_back(126);
    out.push_back(126);
    for (int shift = 30; shift >= 0; shift -= 6) out.push_back(static_cast<char>(((n >> shift) & 63) + kBias));
  } else {
    throw Error(ErrorKind::domain, "graph too large for graph6/sparse6");
  }
}

int sextet(char c) {
  const int v = static_cast<unsigned char>(c) - kBias;
  if (v < 0 || v > 63) throw Error(ErrorKind::parse, std::string("invalid graph6/sparse6 byte '") + c + "'");
  return v;
}

std::uint64_t decode_size(std::string_view& s) {
  if (s.empty()) throw Error(ErrorKind::parse, "missing size field");
  auto take = [&](int count) {
    if (s.size() < static_cast<std::size_t>(count)) throw Error(ErrorKind::parse, "truncated size field");
    std::uint64_t n = 0;
    for (int i = 0; i < count; ++i) n = (n << 6) | static_cast<std::uint64_t>(sextet(s[i]));
    s.remove_prefix(count);
    return n;
  };
  if (s[0] != 126) return take(1);
  s.remove_prefix(1);
  if (!s.empty() && s[0] == 126) {
    s.remove_prefix(1);
    return take(6);
  }
  return take(3);
}

class BitWriter {
 public:
  void put(bool bit) {
    current_ = static_cast<std::uint8_t>((current_ << 1) | (bit ? 1 : 0));
    if (++filled_ == 6) flush();
  }
  void put_bits(std::uint64_t value, int width) {
    for (int i = width - 1; i >= 0; --i) put((value >> i) & 1U);
  }
  int pending() const { return filled_; }
  std::string finish(bool pad_with_ones) {
    while (filled_ != 0) put(pad_with_ones);
    return std::move(out_);
  }
  std::string& out() { return out_; }

 private:
  void flush() {
    out_.push_back(static_cast<char>(current_ + kBias));
    current_ = 0;
    filled_ = 0;
  }
  std::string out_;
  std::uint8_t current_ = 0;
  int filled_ = 0;
};

class BitReader {
 public:
  explicit BitReader(std::string_view data) : data_(data) {}
  std::size_t remaining() const { return data_.size() * 6 - pos_; }
  bool get() {
    const auto byte = sextet(data_[pos_ / 6]);
    const bool bit = (byte >> (5 - pos_ % 6)) & 1;
    ++pos_;
    return bit;
  }
  std::uint64_t get_bits(int width) {
    std::uint64_t v = 0;
    for (int i = 0; i < width; ++i) v = (v << 1) | (get() ? 1U : 0U);
    return v;
  }

 private:
  std::string_view data_;
  std::size_t pos_ = 0;
};

int bits_for(std::uint64_t n) {
  int k = 0;
  while ((std::uint64_t{1} << k) < n) ++k;
  return k;
}

bool parse_uint(std::string_view token, std::uint64_t& out) {
  if (token.empty()) return false;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), out);
  return ec == std::errc{} && ptr == token.data() + token.size();
}

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

}  // namespace

GraphFormat parse_graph_format(std::string_view name) {
  if (name == "auto" || name == "automatic") return GraphFormat::automatic;
  if (name == "graph6" || name == "g6") return GraphFormat::graph6;
  if (name == "sparse6" || name == "s6") return GraphFormat::sparse6;
  if (name == "edgelist" || name == "edges") return GraphFormat::edgelist;
  throw Error(ErrorKind::parse, "unknown graph format '" + std::string(name) + "'");
}

std::string to_graph6(const Graph& g) {
  std::string head;
  encode_size(head, g.vertex_count());
  BitWriter bits;
  bits.out() = std::move(head);
  for (Vertex j = 1; j < g.vertex_count(); ++j) {
    for (Vertex i = 0; i < j; ++i) bits.put(g.adjacent(i, j));
  }
  return bits.finish(false);
}

Graph from_graph6(std::string_view text) {
  text = trim(text);
  if (text.starts_with(">>graph6<<")) text.remove_prefix(10);
  const auto n = decode_size(text);
  const auto pairs = n * (n - (n > 0 ? 1 : 0)) / 2;
  const auto needed = (pairs + 5) / 6;
  if (text.size() != needed) {
    throw Error(ErrorKind::parse, "graph6 body has " + std::to_string(text.size()) + " bytes, expected " +
                                      std::to_string(needed));
  }
  BitReader bits(text);
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (Vertex j = 1; j < n; ++j) {
    for (Vertex i = 0; i < j; ++i) {
      if (bits.get()) edges.emplace_back(i, j);
    }
  }
  return Graph(n, edges);
}

std::string to_sparse6(const Graph& g) {
  const auto n = g.vertex_count();
  std::string head = ":";
  encode_size(head, n);
  BitWriter bits;
  bits.out() = std::move(head);
  const int k = bits_for(n);
  auto edges = g.edges();
  // order by larger endpoint, then smaller
  std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
    return a.v != b.v ? a.v < b.v : a.u < b.u;
  });
  std::uint64_t cur = 0;
  for (const auto& e : edges) {
    if (e.v == cur) {
      bits.put(false);
      bits.put_bits(e.u, k);
    } else if (e.v == cur + 1) {
      bits.put(true);
      bits.put_bits(e.u, k);
      cur = e.v;
    } else {
      bits.put(true);
      bits.put_bits(e.v, k);
      bits.put(false);
      bits.put_bits(e.u, k);
      cur = e.v;
    }
  }
  const int pad = (6 - bits.pending()) % 6;
  if (pad > 0 && k < 6 && n == (std::uint64_t{1} << k) && cur + 2 == n && pad >= k + 1) {
    // an all-ones pad would decode as a spurious edge here
    bits.put(false);
  }
  return bits.finish(true);
}

Graph from_sparse6(std::string_view text) {
  text = trim(text);
  if (text.starts_with(">>sparse6<<")) text.remove_prefix(11);
  if (text.empty() || text[0] != ':') throw Error(ErrorKind::parse, "sparse6 must start with ':'");
  text.remove_prefix(1);
  const auto n = decode_size(text);
  const int k = bits_for(n);
  BitReader bits(text);
  std::vector<std::pair<Vertex, Vertex>> edges;
  std::uint64_t v = 0;
  while (bits.remaining() >= static_cast<std::size_t>(k + 1)) {
    const bool b = bits.get();
    const auto x = bits.get_bits(k);
    if (b) ++v;
    if (v >= n) break;
    if (x > v) {
      v = x;
    } else {
      if (x == v) throw Error(ErrorKind::parse, "sparse6 self-loop at vertex " + std::to_string(v));
      edges.emplace_back(static_cast<Vertex>(x), static_cast<Vertex>(v));
    }
  }
  return Graph(n, edges);
}

std::string to_edge_list(const Graph& g) {
  std::ostringstream out;
  const bool labelled = g.has_labels() && std::all_of(g.labels().begin(), g.labels().end(), [](const auto& l) {
    return !l.empty() && l[0] != '#' &&
           std::none_of(l.begin(), l.end(), [](char c) { return std::isspace(static_cast<unsigned char>(c)); });
  });
  out << "# n " << g.vertex_count() << "\n";
  if (labelled) {
    for (Vertex v = 0; v < g.vertex_count(); ++v) out << g.label(v) << "\n";
  }
  for (const auto& e : g.edges()) {
    if (labelled) {
      out << g.label(e.u) << " " << g.label(e.v) << "\n";
    } else {
      out << e.u << " " << e.v << "\n";
    }
  }
  return out.str();
}

Graph from_edge_list(std::string_view text) {
  std::vector<std::vector<std::string_view>> rows;
  std::uint64_t declared = 0;
  std::size_t line_start = 0;
  std::size_t line_no = 0;
  while (line_start <= text.size()) {
    auto line_end = text.find('\n', line_start);
    if (line_end == std::string_view::npos) line_end = text.size();
    auto line = text.substr(line_start, line_end - line_start);
    line_start = line_end + 1;
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string_view::npos) {
      const auto comment = split_ws(line.substr(hash + 1));
      std::uint64_t value = 0;
      if (comment.size() == 2 && comment[0] == "n" && parse_uint(comment[1], value)) declared = value;
      line = line.substr(0, hash);
    }
    auto tokens = split_ws(line);
    if (tokens.empty()) continue;
    if (tokens.size() > 2) {
      throw Error(ErrorKind::parse, "edge list line " + std::to_string(line_no) + ": expected 'u v'");
    }
    rows.push_back(std::move(tokens));
  }
  const bool numeric = std::all_of(rows.begin(), rows.end(), [](const auto& row) {
    std::uint64_t tmp = 0;
    return std::all_of(row.begin(), row.end(), [&](auto t) { return parse_uint(t, tmp) && tmp < (1ULL << 32) - 1; });
  });
  std::vector<std::pair<Vertex, Vertex>> edges;
  if (numeric) {
    std::uint64_t n = declared;
    for (const auto& row : rows) {
      std::uint64_t ids[2] = {0, 0};
      for (std::size_t i = 0; i < row.size(); ++i) {
        parse_uint(row[i], ids[i]);
        n = std::max(n, ids[i] + 1);
      }
      if (row.size() == 2) edges.emplace_back(static_cast<Vertex>(ids[0]), static_cast<Vertex>(ids[1]));
    }
    return Graph(n, edges);
  }
  std::unordered_map<std::string_view, Vertex> ids;
  std::vector<std::string> labels;
  auto id_of = [&](std::string_view token) {
    auto [it, fresh] = ids.emplace(token, static_cast<Vertex>(labels.size()));
    if (fresh) labels.emplace_back(token);
    return it->second;
  };
  for (const auto& row : rows) {
    const auto u = id_of(row[0]);
    if (row.size() == 2) edges.emplace_back(u, id_of(row[1]));
  }
  const auto n = labels.size();
  return Graph(n, edges, std::move(labels));
}

Graph read_graph(std::string_view text, GraphFormat format) {
  if (format == GraphFormat::automatic) {
    const auto body = trim(text);
    if (body.starts_with(":") || body.starts_with(">>sparse6<<")) {
      format = GraphFormat::sparse6;
    } else if (body.starts_with(">>graph6<<")) {
      format = GraphFormat::graph6;
    } else {
      const bool single_token = !body.empty() && split_ws(body).size() == 1;
      const bool printable = std::all_of(body.begin(), body.end(), [](char c) { return c >= 63 && c <= 126; });
      format = (single_token && printable) ? GraphFormat::graph6 : GraphFormat::edgelist;
    }
  }
  switch (format) {
    case GraphFormat::graph6: return from_graph6(text);
    case GraphFormat::sparse6: return from_sparse6(text);
    default: return from_edge_list(text);
  }
}

std::string write_graph(const Graph& g, GraphFormat format) {
  switch (format) {
    case GraphFormat::sparse6: return to_sparse6(g) + "\n";
    case GraphFormat::edgelist: return to_edge_list(g);
    default: return to_graph6(g) + "\n";
  }
}

nlohmann::json bipartite_sidecar(const BipartiteGraph& g) {
  return {{"n", g.graph().vertex_count()}, {"side_a", g.side_a()}, {"side_b", g.side_b()}};
}

BipartiteGraph attach_sides(Graph g, const nlohmann::json& sidecar) {
  try {
    auto a = sidecar.at("side_a").get<VertexSet>();
    auto b = sidecar.at("side_b").get<VertexSet>();
    return BipartiteGraph(std::move(g), std::move(a), std::move(b));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::parse, std::string("bipartite sidecar: ") + e.what());
  }
}

}  // namespace c4free
