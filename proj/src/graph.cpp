#include "cyclespan/graph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>

#include "cyclespan/errors.hpp"
#include "cyclespan/random.hpp"

namespace cyclespan {

Graph::Graph(std::size_t n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
  for (Edge& e : edges_) {
    if (e.u == e.v) throw InvalidInput("self-loop at vertex " + std::to_string(e.u));
    if (e.u >= n_ || e.v >= n_) {
      throw InvalidInput("edge " + std::to_string(e.u) + " " + std::to_string(e.v) +
                         " out of range for n = " + std::to_string(n_));
    }
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::sort(edges_.begin(), edges_.end());
  const auto dup = std::adjacent_find(edges_.begin(), edges_.end());
  if (dup != edges_.end()) {
    throw InvalidInput("duplicate edge " + std::to_string(dup->u) + " " + std::to_string(dup->v));
  }

  offsets_.assign(n_ + 1, 0);
  for (const Edge& e : edges_) {
    ++offsets_[e.u + 1];
    ++offsets_[e.v + 1];
  }
  std::partial_sum(offsets_.begin(), offsets_.end(), offsets_.begin());
  neighbors_.resize(2 * edges_.size());
  incident_.resize(2 * edges_.size());
  std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
  // Edges are sorted, so each neighbor list comes out sorted as long as the
  // smaller endpoints are inserted first; do two passes to keep that order.
  for (EdgeId id = 0; id < edges_.size(); ++id) {
    const Edge& e = edges_[id];
    neighbors_[fill[e.v]] = e.u;
    incident_[fill[e.v]++] = id;
  }
  for (EdgeId id = 0; id < edges_.size(); ++id) {
    const Edge& e = edges_[id];
    neighbors_[fill[e.u]] = e.v;
    incident_[fill[e.u]++] = id;
  }
}

std::size_t Graph::min_degree() const {
  std::size_t best = n_ == 0 ? 0 : degree(0);
  for (Vertex v = 1; v < n_; ++v) best = std::min(best, degree(v));
  return best;
}

std::size_t Graph::max_degree() const {
  std::size_t best = 0;
  for (Vertex v = 0; v < n_; ++v) best = std::max(best, degree(v));
  return best;
}

std::optional<EdgeId> Graph::edge_id(Vertex u, Vertex v) const {
  if (u >= n_ || v >= n_ || u == v) return std::nullopt;
  if (degree(u) > degree(v)) std::swap(u, v);
  const auto nbrs = neighbors(u);
  const auto it = std::lower_bound(nbrs.begin(), nbrs.end(), v);
  if (it == nbrs.end() || *it != v) return std::nullopt;
  return incident_edges(u)[static_cast<std::size_t>(it - nbrs.begin())];
}

std::vector<std::uint32_t> Graph::component_labels() const {
  constexpr auto unset = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> label(n_, unset);
  std::vector<Vertex> stack;
  std::uint32_t next = 0;
  for (Vertex s = 0; s < n_; ++s) {
    if (label[s] != unset) continue;
    label[s] = next;
    stack.push_back(s);
    while (!stack.empty()) {
      const Vertex v = stack.back();
      stack.pop_back();
      for (Vertex w : neighbors(v)) {
        if (label[w] == unset) {
          label[w] = next;
          stack.push_back(w);
        }
      }
    }
    ++next;
  }
  return label;
}

std::size_t Graph::component_count() const {
  const auto labels = component_labels();
  return labels.empty() ? 0 : *std::max_element(labels.begin(), labels.end()) + 1;
}

bool Graph::is_bipartite() const {
  std::vector<int> color(n_, -1);
  std::vector<Vertex> queue;
  for (Vertex s = 0; s < n_; ++s) {
    if (color[s] >= 0) continue;
    color[s] = 0;
    queue.assign(1, s);
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const Vertex v = queue[head];
      for (Vertex w : neighbors(v)) {
        if (color[w] < 0) {
          color[w] = 1 - color[v];
          queue.push_back(w);
        } else if (color[w] == color[v]) {
          return false;
        }
      }
    }
  }
  return true;
}

EdgeVector Graph::all_edges() const {
  EdgeVector all(edges_.size());
  for (EdgeId e = 0; e < edges_.size(); ++e) all.set(e);
  return all;
}

EdgeVector Graph::star(Vertex v) const {
  EdgeVector s(edges_.size());
  for (EdgeId e : incident_edges(v)) s.set(e);
  return s;
}

EdgeVector Graph::cut(std::span<const std::uint8_t> side) const {
  if (side.size() != n_) throw DimensionError("side vector length differs from vertex count");
  EdgeVector c(edges_.size());
  for (EdgeId e = 0; e < edges_.size(); ++e) {
    if ((side[edges_[e].u] != 0) != (side[edges_[e].v] != 0)) c.set(e);
  }
  return c;
}

EdgeVector Graph::path_edges(std::span<const Vertex> order, bool closed) const {
  EdgeVector out(edges_.size());
  const std::size_t len = order.size();
  const std::size_t pairs = closed ? len : (len == 0 ? 0 : len - 1);
  for (std::size_t i = 0; i < pairs; ++i) {
    const Vertex a = order[i];
    const Vertex b = order[(i + 1) % len];
    const auto id = edge_id(a, b);
    if (!id) {
      throw InvalidInput("vertices " + std::to_string(a) + " and " + std::to_string(b) + " are not adjacent");
    }
    out.flip(*id);
  }
  return out;
}

InducedSubgraph induced_subgraph(const Graph& g, std::span<const Vertex> keep) {
  InducedSubgraph sub;
  sub.local.assign(g.vertex_count(), -1);
  sub.original.assign(keep.begin(), keep.end());
  std::sort(sub.original.begin(), sub.original.end());
  for (std::size_t i = 0; i < sub.original.size(); ++i) {
    if (sub.local[sub.original[i]] >= 0) throw InvalidInput("induced subgraph: repeated vertex");
    sub.local[sub.original[i]] = static_cast<std::int64_t>(i);
  }
  std::vector<Edge> edges;
  for (const Edge& e : g.edges()) {
    if (sub.local[e.u] >= 0 && sub.local[e.v] >= 0) {
      edges.push_back({static_cast<Vertex>(sub.local[e.u]), static_cast<Vertex>(sub.local[e.v])});
    }
  }
  sub.graph = Graph(sub.original.size(), std::move(edges));
  return sub;
}

Graph edge_subgraph(const Graph& g, const EdgeVector& r) {
  if (r.size() != g.edge_count()) throw DimensionError("edge vector is not over this graph");
  std::vector<Edge> edges;
  r.for_each([&](std::size_t e) { edges.push_back(g.edge(e)); });
  return Graph(g.vertex_count(), std::move(edges));
}

Graph gnp_generate(const RandomGraphSpec& spec) {
  if (!(spec.p >= 0.0 && spec.p <= 1.0)) throw InvalidInput("edge probability must lie in [0, 1]");
  Rng rng(spec.seed);
  std::vector<Edge> edges;
  for (Vertex u = 0; u < spec.n; ++u) {
    for (Vertex v = u + 1; v < spec.n; ++v) {
      if (rng.uniform() < spec.p) edges.push_back({u, v});
    }
  }
  return Graph(spec.n, std::move(edges));
}

Graph circulant(std::size_t n, std::span<const std::size_t> connections) {
  std::vector<Edge> edges;
  for (std::size_t s : connections) {
    if (s == 0 || s > n / 2) throw InvalidInput("circulant connection " + std::to_string(s) + " outside 1..n/2");
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t s : connections) {
      const auto j = static_cast<Vertex>((i + s) % n);
      Edge e{static_cast<Vertex>(i), j};
      if (e.u > e.v) std::swap(e.u, e.v);
      edges.push_back(e);
    }
  }
  // s = n/2 for even n produces every edge twice.
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return Graph(n, std::move(edges));
}

Graph complete_graph(std::size_t n) {
  std::vector<Edge> edges;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) edges.push_back({u, v});
  }
  return Graph(n, std::move(edges));
}

Graph cycle_graph(std::size_t n) {
  if (n < 3) throw InvalidInput("a cycle needs at least 3 vertices");
  std::vector<Edge> edges;
  for (Vertex i = 0; i < n; ++i) edges.push_back({i, static_cast<Vertex>((i + 1) % n)});
  return Graph(n, std::move(edges));
}

Graph path_graph(std::size_t n) {
  std::vector<Edge> edges;
  for (Vertex i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1});
  return Graph(n, std::move(edges));
}

Graph star_graph(std::size_t leaves) {
  std::vector<Edge> edges;
  for (Vertex i = 1; i <= leaves; ++i) edges.push_back({0, i});
  return Graph(leaves + 1, std::move(edges));
}

Graph petersen_graph() {
  std::vector<Edge> edges;
  for (Vertex i = 0; i < 5; ++i) {
    edges.push_back({i, (i + 1) % 5});          // outer 5-cycle
    edges.push_back({i, i + 5});                // spokes
    edges.push_back({i + 5, (i + 2) % 5 + 5});  // inner pentagram
  }
  return Graph(10, std::move(edges));
}

Graph densify_min_degree(const Graph& g, std::size_t target_min_degree, std::uint64_t seed) {
  const std::size_t n = g.vertex_count();
  if (n > 0 && target_min_degree >= n) throw InvalidInput("target minimum degree must be below n");
  Rng rng(seed);
  std::vector<std::vector<std::uint8_t>> adj(n, std::vector<std::uint8_t>(n, 0));
  std::vector<std::size_t> deg(n, 0);
  std::vector<Edge> edges = g.edges();
  for (const Edge& e : edges) {
    adj[e.u][e.v] = adj[e.v][e.u] = 1;
    ++deg[e.u];
    ++deg[e.v];
  }
  for (Vertex v = 0; v < n; ++v) {
    while (deg[v] < target_min_degree) {
      // Prefer partners that are themselves below target.
      std::vector<Vertex> low, any;
      for (Vertex w = 0; w < n; ++w) {
        if (w == v || adj[v][w]) continue;
        any.push_back(w);
        if (deg[w] < target_min_degree) low.push_back(w);
      }
      const auto& pool = low.empty() ? any : low;
      const Vertex w = pool[rng.below(pool.size())];
      adj[v][w] = adj[w][v] = 1;
      ++deg[v];
      ++deg[w];
      edges.push_back({std::min(v, w), std::max(v, w)});
    }
  }
  return Graph(n, std::move(edges));
}

Graph random_process_until_min_degree(std::size_t n, std::size_t min_degree, std::uint64_t seed) {
  if (n > 0 && min_degree >= n) throw InvalidInput("minimum degree must be below n");
  Rng rng(seed);
  std::vector<Edge> pairs;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) pairs.push_back({u, v});
  }
  rng.shuffle(pairs);
  std::vector<std::size_t> deg(n, 0);
  std::size_t below = min_degree == 0 ? 0 : n;
  std::size_t used = 0;
  while (below > 0) {
    const Edge& e = pairs[used++];
    if (++deg[e.u] == min_degree) --below;
    if (++deg[e.v] == min_degree) --below;
  }
  pairs.resize(used);
  return Graph(n, std::move(pairs));
}

namespace {

bool is_comment_or_blank(const std::string& line) {
  const auto first = line.find_first_not_of(" \t\r");
  return first == std::string::npos || line[first] == '#';
}

std::pair<std::uint64_t, std::uint64_t> parse_pair(const std::string& line, std::size_t lineno) {
  std::uint64_t values[2] = {0, 0};
  const char* p = line.data();
  const char* end = line.data() + line.size();
  while (end > p && (end[-1] == '\r' || end[-1] == ' ' || end[-1] == '\t')) --end;
  for (int k = 0; k < 2; ++k) {
    while (p < end && (*p == ' ' || *p == '\t')) ++p;
    const auto [next, ec] = std::from_chars(p, end, values[k]);
    if (ec != std::errc{} || next == p) throw ParseError(lineno, "malformed line '" + line + "'");
    p = next;
  }
  if (p != end) throw ParseError(lineno, "malformed line '" + line + "'");
  return {values[0], values[1]};
}

}  // namespace

Graph parse_graph(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  std::optional<std::pair<std::uint64_t, std::uint64_t>> header;
  std::vector<Edge> edges;
  std::vector<std::size_t> edge_lines;
  while (std::getline(in, line)) {
    ++lineno;
    if (is_comment_or_blank(line)) continue;
    const auto [a, b] = parse_pair(line, lineno);
    if (!header) {
      if (a > std::numeric_limits<Vertex>::max()) throw ParseError(lineno, "vertex count too large");
      header = {a, b};
      continue;
    }
    if (edges.size() == header->second) throw ParseError(lineno, "more edge lines than the header's m");
    if (a == b) throw ParseError(lineno, "self-loop at vertex " + std::to_string(a));
    if (a >= header->first || b >= header->first) {
      throw ParseError(lineno, "vertex out of range for n = " + std::to_string(header->first));
    }
    edges.push_back({static_cast<Vertex>(std::min(a, b)), static_cast<Vertex>(std::max(a, b))});
    edge_lines.push_back(lineno);
  }
  if (!header) throw ParseError(lineno, "missing 'n m' header");
  if (edges.size() != header->second) {
    throw ParseError(lineno, "expected " + std::to_string(header->second) + " edges, found " +
                                 std::to_string(edges.size()));
  }
  std::vector<std::size_t> order(edges.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return edges[x] < edges[y]; });
  for (std::size_t i = 1; i < order.size(); ++i) {
    if (edges[order[i]] == edges[order[i - 1]]) {
      const Edge& e = edges[order[i]];
      throw ParseError(edge_lines[order[i]], "duplicate edge " + std::to_string(e.u) + " " + std::to_string(e.v));
    }
  }
  return Graph(header->first, std::move(edges));
}

Graph read_graph(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  return parse_graph(in);
}

void format_graph(const Graph& g, std::ostream& out) {
  out << "# cyclespan-v1\n" << g.vertex_count() << ' ' << g.edge_count() << '\n';
  for (const Edge& e : g.edges()) out << e.u << ' ' << e.v << '\n';
}

void write_graph(const Graph& g, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  format_graph(g, out);
}

EdgeVector parse_edge_list(const Graph& g, std::istream& in) {
  EdgeVector r(g.edge_count());
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.rfind("---", 0) == 0) break;
    if (is_comment_or_blank(line)) continue;
    const auto [a, b] = parse_pair(line, lineno);
    if (a >= g.vertex_count() || b >= g.vertex_count()) throw ParseError(lineno, "vertex out of range");
    const auto id = g.edge_id(static_cast<Vertex>(a), static_cast<Vertex>(b));
    if (!id) throw ParseError(lineno, "not an edge of the host graph: " + line);
    if (r.test(*id)) throw ParseError(lineno, "duplicate edge " + line);
    r.set(*id);
  }
  return r;
}

EdgeVector read_edge_list(const Graph& g, const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  return parse_edge_list(g, in);
}

void format_edge_list(const Graph& g, const EdgeVector& r, std::ostream& out) {
  if (r.size() != g.edge_count()) throw DimensionError("edge vector is not over this graph");
  r.for_each([&](std::size_t e) { out << g.edge(e).u << ' ' << g.edge(e).v << '\n'; });
}

}  // namespace cyclespan
