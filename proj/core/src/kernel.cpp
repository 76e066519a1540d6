#include <algorithm>
#include <deque>
#include <map>
#include <stdexcept>

#include "c4free/hypergraph.hpp"
#include "c4free/las_vegas.hpp"

namespace c4free {

namespace {

using ColourSet = std::vector<std::uint32_t>;

// all subsets of {0..r-1} with at most s elements, by size then lexicographically
std::vector<ColourSet> small_subsets(std::size_t r, std::size_t s) {
  std::vector<ColourSet> out;
  for (std::size_t size = 0; size <= std::min(r, s); ++size) {
    ColourSet idx(size);
    for (std::size_t i = 0; i < size; ++i) idx[i] = static_cast<std::uint32_t>(i);
    for (;;) {
      out.push_back(idx);
      std::size_t i = size;
      while (i > 0 && idx[i - 1] == r - size + (i - 1)) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t j = i; j < size; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return out;
}

// F's vertices whose colour lies in e, ordered by vertex id
std::vector<Vertex> trace_of(const HyperEdge& f, const ColourSet& e, const std::vector<std::uint32_t>& colour) {
  std::vector<Vertex> out;
  for (auto v : f) {
    if (std::binary_search(e.begin(), e.end(), colour[v])) out.push_back(v);
  }
  return out;
}

using Groups = std::map<std::vector<Vertex>, std::vector<std::size_t>>;

Groups group_by_trace(const Hypergraph& f, const std::vector<std::size_t>& live, const ColourSet& e,
                      const std::vector<std::uint32_t>& colour) {
  Groups groups;
  for (auto idx : live) groups[trace_of(f.edge(idx), e, colour)].push_back(idx);
  return groups;
}

bool shared(const Groups& groups) {
  return std::any_of(groups.begin(), groups.end(), [](const auto& kv) { return kv.second.size() >= 2; });
}

struct CleanResult {
  std::vector<std::size_t> edges;
  std::vector<ColourSet> trace;
  std::vector<std::size_t> history;
  bool peeled_last = false;
};

// Peels traces of degree below t (with their edges) until every remaining trace
// of an active element has degree >= t.
std::vector<std::size_t> peel(const std::vector<std::size_t>& current,
                              const std::vector<std::pair<std::size_t, Groups>>& active, std::size_t t) {
  std::map<std::size_t, std::size_t> edge_slot;
  for (std::size_t i = 0; i < current.size(); ++i) edge_slot[current[i]] = i;
  std::vector<std::vector<std::size_t>> members;                  // trace -> edge slots
  std::vector<std::vector<std::size_t>> of_edge(current.size());  // edge slot -> traces
  for (const auto& [idx, groups] : active) {
    for (const auto& [key, list] : groups) {
      std::vector<std::size_t> slots;
      for (auto e : list) slots.push_back(edge_slot[e]);
      for (auto slot : slots) of_edge[slot].push_back(members.size());
      members.push_back(std::move(slots));
    }
  }
  std::vector<std::size_t> degree(members.size());
  std::vector<char> edge_alive(current.size(), 1);
  std::vector<char> trace_alive(members.size(), 1);
  std::deque<std::size_t> queue;
  for (std::size_t u = 0; u < members.size(); ++u) {
    degree[u] = members[u].size();
    if (degree[u] < t) queue.push_back(u);
  }
  while (!queue.empty()) {
    const auto u = queue.front();
    queue.pop_front();
    if (!trace_alive[u]) continue;
    trace_alive[u] = 0;
    for (auto slot : members[u]) {
      if (!edge_alive[slot]) continue;
      edge_alive[slot] = 0;
      for (auto w : of_edge[slot]) {
        if (trace_alive[w] && --degree[w] < t && degree[w] + 1 >= t) queue.push_back(w);
      }
    }
  }
  std::vector<std::size_t> survivors;
  for (std::size_t i = 0; i < current.size(); ++i) {
    if (edge_alive[i]) survivors.push_back(current[i]);
  }
  return survivors;
}

CleanResult clean(const Hypergraph& f, std::vector<std::size_t> current, const std::vector<std::uint32_t>& colour,
                  const std::vector<ColourSet>& elements, std::size_t t, bool eager) {
  const auto big_t = elements.size();
  CleanResult out;
  out.history.push_back(current.size());
  for (std::size_t step = 0;; ++step) {
    if (step > big_t + 1) throw std::logic_error("kernel cleaning exceeded T+1 rounds");
    std::vector<std::pair<std::size_t, Groups>> active;  // (element index, groups) for e in S_i
    std::size_t trace_vertices = 0;
    for (std::size_t i = 0; i < elements.size(); ++i) {
      auto groups = group_by_trace(f, current, elements[i], colour);
      if (!shared(groups)) continue;
      trace_vertices += groups.size();
      active.emplace_back(i, std::move(groups));
    }
    const bool few_traces = 2 * t * big_t * trace_vertices <= current.size();
    if (few_traces || eager) {
      auto survivors = peel(current, active, t);
      if (few_traces || !survivors.empty()) {
        if (survivors.size() != current.size()) {
          out.history.push_back(survivors.size());
          out.peeled_last = true;
        }
        out.edges = std::move(survivors);
        for (const auto& e : elements) {
          if (e.empty()) continue;
          if (shared(group_by_trace(f, out.edges, e, colour))) out.trace.push_back(e);
        }
        return out;
      }
    }
    // many traces: keep one edge per distinct trace on the busiest element
    std::size_t pick = 0;
    for (std::size_t i = 1; i < active.size(); ++i) {
      if (active[i].second.size() > active[pick].second.size()) pick = i;
    }
    std::vector<std::size_t> next;
    for (const auto& [key, list] : active[pick].second) next.push_back(list.front());
    std::sort(next.begin(), next.end());
    if (2 * t * big_t * big_t * next.size() < current.size()) {
      throw std::logic_error("kernel cleaning step lost more than a 2tT^2 factor");
    }
    current = std::move(next);
    out.history.push_back(current.size());
  }
}

}  // namespace

bool KernelReport::ok() const { return indices_ok && rainbow_ok && trace_shape_ok && first_failure() == nullptr; }

const KernelCheck* KernelReport::first_failure() const {
  for (const auto& c : elements) {
    if (!c.ok) return &c;
  }
  return nullptr;
}

nlohmann::json to_json(const KernelReport& report) {
  nlohmann::json elements = nlohmann::json::array();
  for (const auto& c : report.elements) {
    elements.push_back({{"element", c.element},
                        {"in_trace", c.in_trace},
                        {"min_partners", c.min_partners},
                        {"max_partners", c.max_partners},
                        {"ok", c.ok}});
  }
  return {{"ok", report.ok()},
          {"indices_ok", report.indices_ok},
          {"rainbow_ok", report.rainbow_ok},
          {"trace_shape_ok", report.trace_shape_ok},
          {"elements", elements}};
}

nlohmann::json to_json(const PartiteKernel& kernel) {
  return {{"surviving_edges", kernel.surviving_edges},
          {"coloring", kernel.coloring},
          {"trace", kernel.trace.edges()},
          {"multiplicity", kernel.multiplicity},
          {"s", kernel.s_bound},
          {"r", kernel.r},
          {"history", kernel.history},
          {"final_peel", kernel.final_peel}};
}

KernelReport verify_kernel(const Hypergraph& source, const PartiteKernel& kernel) {
  KernelReport report;
  const auto r = kernel.r;
  const auto& e_star = kernel.surviving_edges;
  for (std::size_t i = 0; i < e_star.size(); ++i) {
    if (e_star[i] >= source.edge_count() || (i > 0 && e_star[i] <= e_star[i - 1])) report.indices_ok = false;
  }
  if (kernel.coloring.size() != source.vertex_count()) report.indices_ok = false;
  for (auto c : kernel.coloring) {
    if (c >= r) report.indices_ok = false;
  }
  if (!report.indices_ok) return report;

  for (auto idx : e_star) {
    const auto& f = source.edge(idx);
    std::vector<char> seen(r, 0);
    for (auto v : f) seen[kernel.coloring[v]] = 1;
    if (f.size() != r || std::count(seen.begin(), seen.end(), 1) != static_cast<std::ptrdiff_t>(r)) {
      report.rainbow_ok = false;
    }
  }
  std::vector<ColourSet> trace_edges;
  for (const auto& e : kernel.trace.edges()) {
    ColourSet cs(e.begin(), e.end());
    if (cs.empty() || cs.size() > kernel.s_bound || cs.back() >= r || kernel.trace.vertex_count() != r) {
      report.trace_shape_ok = false;
    }
    trace_edges.push_back(std::move(cs));
  }
  std::sort(trace_edges.begin(), trace_edges.end());
  if (std::adjacent_find(trace_edges.begin(), trace_edges.end()) != trace_edges.end()) report.trace_shape_ok = false;

  for (auto& e : small_subsets(r, kernel.s_bound)) {
    KernelCheck check;
    check.in_trace = e.empty() ? e_star.size() >= 2 : std::binary_search(trace_edges.begin(), trace_edges.end(), e);
    const auto groups = group_by_trace(source, e_star, e, kernel.coloring);
    check.min_partners = e_star.empty() ? 0 : e_star.size();
    for (const auto& [key, list] : groups) {
      check.min_partners = std::min(check.min_partners, list.size());
      check.max_partners = std::max(check.max_partners, list.size());
    }
    if (!e_star.empty()) {
      check.ok = check.in_trace ? check.min_partners >= kernel.multiplicity : check.max_partners <= 1;
    }
    check.element = std::move(e);
    report.elements.push_back(std::move(check));
  }
  return report;
}

PartiteKernel furedi_kernel(const Hypergraph& f, std::size_t s, std::size_t t, Seed seed,
                            const KernelOptions& options) {
  const auto uniform = f.uniformity();
  if (!uniform || *uniform == 0) throw Error(ErrorKind::domain, "furedi_kernel needs a nonempty r-uniform hypergraph, r >= 1");
  const auto r = *uniform;
  if (s > r) throw Error(ErrorKind::domain, "furedi_kernel: s exceeds r");
  if (t == 0) throw Error(ErrorKind::domain, "furedi_kernel: t must be positive");
  const auto elements = small_subsets(r, s);
  const auto n = f.vertex_count();

  auto outcome = retry_until_verified<PartiteKernel>(
      RetryOptions{options.retries, options.threads}, [&](std::size_t attempt) -> std::optional<Trial<PartiteKernel>> {
        Rng rng(derive_seed(seed, attempt));
        std::vector<std::uint32_t> best_colour;
        std::vector<std::size_t> best_rainbow;
        for (std::size_t round = 0; round < std::max<std::size_t>(1, options.colorings_per_attempt); ++round) {
          std::vector<std::uint32_t> colour(n);
          for (auto& c : colour) c = static_cast<std::uint32_t>(rng.below(r));
          std::vector<std::size_t> rainbow;
          for (std::size_t i = 0; i < f.edge_count(); ++i) {
            std::vector<char> seen(r, 0);
            std::size_t distinct = 0;
            for (auto v : f.edge(i)) distinct += seen[colour[v]]++ == 0 ? 1 : 0;
            if (distinct == r) rainbow.push_back(i);
          }
          if (rainbow.size() > best_rainbow.size()) {
            best_rainbow = std::move(rainbow);
            best_colour = std::move(colour);
          }
        }
        if (best_rainbow.empty()) return std::nullopt;
        auto cleaned = clean(f, std::move(best_rainbow), best_colour, elements, t, options.eager_peel);
        PartiteKernel kernel;
        kernel.surviving_edges = std::move(cleaned.edges);
        kernel.coloring = std::move(best_colour);
        std::vector<HyperEdge> trace;
        for (auto& e : cleaned.trace) trace.emplace_back(e.begin(), e.end());
        kernel.trace = Hypergraph(r, std::move(trace));
        kernel.multiplicity = t;
        kernel.s_bound = s;
        kernel.r = r;
        kernel.history = std::move(cleaned.history);
        kernel.final_peel = cleaned.peeled_last;
        const bool ok = !kernel.surviving_edges.empty() && verify_kernel(f, kernel).ok();
        const Rational score(static_cast<std::int64_t>(kernel.surviving_edges.size()));
        return Trial<PartiteKernel>{std::move(kernel), ok, score};
      });
  if (outcome.accepted) return *outcome.accepted;
  std::optional<PartiteKernel> best;
  std::vector<std::uint32_t> failing;
  if (outcome.best) {
    best = outcome.best->value;
    const auto report = verify_kernel(f, *best);
    if (const auto* bad = report.first_failure()) failing = bad->element;
  }
  throw KernelFailure("furedi_kernel: no verified kernel after " + std::to_string(options.retries) + " attempts",
                      std::move(best), std::move(failing));
}

}  // namespace c4free
