#include "cyclespan/switcher.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "cyclespan/errors.hpp"
#include "cyclespan/random.hpp"

namespace cyclespan {

namespace {

constexpr auto kUnreached = std::numeric_limits<std::size_t>::max();
constexpr std::uint64_t kSimplePathBudget = 2'000'000;

std::size_t count_r_edges(const Graph& g, const EdgeVector& r, std::span<const Vertex> seq, bool closed) {
  std::size_t count = 0;
  const std::size_t steps = closed ? seq.size() : seq.size() - 1;
  for (std::size_t i = 0; i < steps; ++i) {
    const auto id = g.edge_id(seq[i], seq[(i + 1) % seq.size()]);
    if (!id) throw InvalidInput("consecutive vertices are not adjacent");
    count += r.test(*id);
  }
  return count;
}

bool distinct(std::span<const Vertex> seq, std::size_t n) {
  std::vector<std::uint8_t> seen(n, 0);
  for (Vertex v : seq) {
    if (seen[v]) return false;
    seen[v] = 1;
  }
  return true;
}

// Shortest walks of each parity from u in r - {w}, up to `limit` steps.
struct ParityBfs {
  std::array<std::vector<std::size_t>, 2> dist;
  std::array<std::vector<Vertex>, 2> pred;

  bool reached(int parity, Vertex v, std::size_t within) const { return dist[parity][v] <= within; }

  std::vector<Vertex> walk(Vertex z, int parity) const {
    std::vector<Vertex> seq;
    Vertex cur = z;
    while (dist[parity][cur] != 0) {
      seq.push_back(cur);
      cur = pred[parity][cur];
      parity ^= 1;
    }
    seq.push_back(cur);
    std::reverse(seq.begin(), seq.end());
    return seq;
  }
};

ParityBfs parity_bfs(const Graph& g, const EdgeVector& r, Vertex u, Vertex w, std::size_t limit) {
  const std::size_t n = g.vertex_count();
  ParityBfs bfs;
  for (int p = 0; p < 2; ++p) {
    bfs.dist[p].assign(n, kUnreached);
    bfs.pred[p].assign(n, 0);
  }
  bfs.dist[0][u] = 0;
  std::vector<std::pair<Vertex, int>> queue{{u, 0}};
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const auto [v, p] = queue[head];
    if (bfs.dist[p][v] == limit) continue;
    const auto nbrs = g.neighbors(v);
    const auto ids = g.incident_edges(v);
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
      const Vertex x = nbrs[i];
      if (x == w || !r.test(ids[i])) continue;
      const int q = p ^ 1;
      if (bfs.dist[q][x] != kUnreached) continue;
      bfs.dist[q][x] = bfs.dist[p][v] + 1;
      bfs.pred[q][x] = v;
      queue.emplace_back(x, q);
    }
  }
  return bfs;
}

// Shortest path from `from` to `to` using r-edges only (all edges when r is
// null), avoiding blocked vertices, with at most max_len edges.
std::optional<std::vector<Vertex>> shortest_path(const Graph& g, const EdgeVector* r, Vertex from, Vertex to,
                                                 const std::vector<std::uint8_t>& blocked, std::size_t max_len) {
  const std::size_t n = g.vertex_count();
  std::vector<std::size_t> dist(n, kUnreached);
  std::vector<Vertex> pred(n, 0);
  dist[from] = 0;
  std::vector<Vertex> queue{from};
  for (std::size_t head = 0; head < queue.size() && dist[to] == kUnreached; ++head) {
    const Vertex v = queue[head];
    if (dist[v] == max_len) continue;
    const auto nbrs = g.neighbors(v);
    const auto ids = g.incident_edges(v);
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
      const Vertex x = nbrs[i];
      if (dist[x] != kUnreached || (blocked[x] && x != to)) continue;
      if (r != nullptr && !r->test(ids[i])) continue;
      dist[x] = dist[v] + 1;
      pred[x] = v;
      queue.push_back(x);
    }
  }
  if (dist[to] == kUnreached) return std::nullopt;
  std::vector<Vertex> path{to};
  for (Vertex cur = to; cur != from;) {
    cur = pred[cur];
    path.push_back(cur);
  }
  std::reverse(path.begin(), path.end());
  return path;
}

// Shortest simple paths of each parity from u in r - {w}, by bounded DFS.
struct SimplePaths {
  std::array<std::vector<std::vector<Vertex>>, 2> best;
  bool exhausted = false;
};

SimplePaths simple_paths(const Graph& g, const EdgeVector& r, Vertex u, Vertex w, std::size_t limit) {
  const std::size_t n = g.vertex_count();
  SimplePaths out;
  out.best[0].assign(n, {});
  out.best[1].assign(n, {});
  std::vector<std::uint8_t> on(n, 0);
  std::vector<Vertex> path{u};
  on[u] = 1;
  std::uint64_t nodes = 0;
  auto dfs = [&](auto&& self, Vertex v) -> void {
    if (++nodes > kSimplePathBudget) {
      out.exhausted = true;
      return;
    }
    const std::size_t len = path.size() - 1;
    auto& slot = out.best[len % 2][v];
    if (slot.empty() || slot.size() > path.size()) slot = path;
    if (len == limit) return;
    const auto nbrs = g.neighbors(v);
    const auto ids = g.incident_edges(v);
    for (std::size_t i = 0; i < nbrs.size() && !out.exhausted; ++i) {
      const Vertex x = nbrs[i];
      if (x == w || on[x] || !r.test(ids[i])) continue;
      on[x] = 1;
      path.push_back(x);
      self(self, x);
      path.pop_back();
      on[x] = 0;
    }
  };
  dfs(dfs, u);
  return out;
}

OddCycle make_cycle(const Graph& g, const EdgeVector& r, std::vector<Vertex> seq) {
  OddCycle c;
  c.r_edges = count_r_edges(g, r, seq, true);
  c.vertices = std::move(seq);
  return c;
}

class CycleSearcher {
 public:
  CycleSearcher(const Graph& g, const EdgeVector& r, std::size_t ell) : g_(g), r_(r), ell_(ell) {}

  OddCycleSearch run(Vertex u, Vertex w) {
    OddCycleSearch out;
    out.start = {u, w};
    const ParityBfs bfs = parity_bfs(g_, r_, u, w, ell_);
    const std::size_t n = g_.vertex_count();

    std::vector<Vertex> meet;
    for (Vertex z = 0; z < n; ++z) {
      if (bfs.reached(0, z, ell_) && bfs.reached(1, z, ell_)) meet.push_back(z);
    }
    if (!meet.empty()) {
      out.lemma_case = 1;
      for (Vertex z : meet) {
        auto po = bfs.walk(z, 1);
        auto pe = bfs.walk(z, 0);
        if (!distinct(po, n) || !distinct(pe, n)) continue;
        if (auto c = close_case1(po, pe, w)) {
          out.cycle = std::move(c);
          out.status = CycleLemmaStatus::found;
          return out;
        }
      }
      const SimplePaths sp = simple_paths(g_, r_, u, w, ell_);
      for (Vertex z = 0; z < n; ++z) {
        const auto& po = sp.best[1][z];
        const auto& pe = sp.best[0][z];
        if (po.empty() || pe.empty()) continue;
        if (auto c = close_case1(po, pe, w)) {
          out.cycle = std::move(c);
          out.status = CycleLemmaStatus::found;
          return out;
        }
      }
      out.status = CycleLemmaStatus::path_not_found;
      out.detail = sp.exhausted ? "simple path search budget exhausted"
                                : "no short r-path back to w avoids the odd and even paths";
      return out;
    }

    out.lemma_case = 2;
    const std::size_t inner = ell_ - 1;
    // An r-edge from w to the even side closes u ~> z -> w -> u.
    for (Vertex z = 0; z < n; ++z) {
      if (!bfs.reached(0, z, inner)) continue;
      const auto id = g_.edge_id(w, z);
      if (!id || !r_.test(*id)) continue;
      auto seq = bfs.walk(z, 0);
      seq.push_back(w);
      out.cycle = make_cycle(g_, r_, std::move(seq));
      out.status = CycleLemmaStatus::found;
      return out;
    }
    std::vector<std::uint8_t> side_a(n, 0);
    for (Vertex v = 0; v < n; ++v) {
      const bool even = bfs.reached(0, v, inner);
      const bool odd = bfs.reached(1, v, inner);
      if (v != w && !even && !odd) {
        out.status = CycleLemmaStatus::coverage_failed;
        out.detail = "vertex " + std::to_string(v) + " is not within distance " + std::to_string(inner) + " of u";
        return out;
      }
      side_a[v] = v == w || even;
    }
    for (EdgeId e = 0; e < g_.edge_count(); ++e) {
      if (r_.test(e) && side_a[g_.edge(e).u] == side_a[g_.edge(e).v]) {
        out.status = CycleLemmaStatus::r_not_bipartite;
        out.detail = "r-edge " + std::to_string(g_.edge(e).u) + " " + std::to_string(g_.edge(e).v) +
                     " lies inside one side";
        return out;
      }
    }
    for (EdgeId e = 0; e < g_.edge_count(); ++e) {
      const Edge& ed = g_.edge(e);
      if (r_.test(e) || side_a[ed.u] == side_a[ed.v]) continue;
      const std::vector<std::uint8_t> none(n, 0);
      auto path = shortest_path(g_, &r_, ed.u, ed.v, none, 2 * ell_ - 1);
      if (!path) {
        out.status = CycleLemmaStatus::path_not_found;
        out.detail = "no short r-path between the ends of a crossing non-r edge";
        return out;
      }
      out.cycle = make_cycle(g_, r_, std::move(*path));
      out.status = CycleLemmaStatus::found;
      return out;
    }
    out.status = CycleLemmaStatus::r_is_cut;
    out.detail = "r is exactly the cut between the two layer sides";
    return out;
  }

 private:
  std::optional<OddCycle> close_case1(const std::vector<Vertex>& po, const std::vector<Vertex>& pe, Vertex w) {
    const Vertex z = po.back();
    std::vector<std::uint8_t> blocked(g_.vertex_count(), 0);
    for (Vertex v : po) blocked[v] = 1;
    for (Vertex v : pe) blocked[v] = 1;
    blocked[z] = 0;
    auto p = shortest_path(g_, &r_, z, w, blocked, ell_ - 1);
    if (!p) return std::nullopt;
    const bool p_even = (p->size() - 1) % 2 == 0;
    std::vector<Vertex> seq = p_even ? po : pe;
    seq.insert(seq.end(), p->begin() + 1, p->end());
    return make_cycle(g_, r_, std::move(seq));
  }

  const Graph& g_;
  const EdgeVector& r_;
  std::size_t ell_;
};

std::size_t default_tree_size(const Graph& g, const SwitcherConfig& cfg) {
  if (cfg.tree_size > 0) return cfg.tree_size;
  const auto root = static_cast<std::size_t>(std::ceil(2.0 * std::sqrt(static_cast<double>(g.vertex_count()))));
  return std::min<std::size_t>(256, std::max(cfg.s / 10, root));
}

class ConnectorRun {
 public:
  ConnectorRun(const Graph& g, const SwitcherConfig& cfg, Connector connector)
      : g_(g), cfg_(cfg), connector_(connector), used_(g.vertex_count(), 0) {}

  std::vector<std::uint8_t>& used() { return used_; }

  std::optional<std::vector<Vertex>> connect(Vertex a, Vertex b) {
    switch (connector_) {
      case Connector::dense_distance2: return distance2(a, b);
      case Connector::sparse_tree_embed: return tree_embed(a, b);
      case Connector::bfs_greedy:
      case Connector::automatic: break;
    }
    const std::size_t cap = cfg_.max_connector_length == 0 ? kUnreached : cfg_.max_connector_length;
    return shortest_path(g_, nullptr, a, b, used_, cap);
  }

 private:
  std::optional<std::vector<Vertex>> distance2(Vertex a, Vertex b) {
    if (g_.adjacent(a, b)) return std::vector<Vertex>{a, b};
    for (Vertex c : g_.neighbors(a)) {
      if (!used_[c] && g_.adjacent(c, b)) return std::vector<Vertex>{a, c, b};
    }
    return std::nullopt;
  }

  // Grows binary trees from a and b alternately by leaf additions, joins them
  // through the crossing edge of least total depth and drops the rest.
  std::optional<std::vector<Vertex>> tree_embed(Vertex a, Vertex b) {
    if (g_.adjacent(a, b)) return std::vector<Vertex>{a, b};
    const std::size_t n = g_.vertex_count();
    const std::size_t target = default_tree_size(g_, cfg_);
    const auto depth_cap = static_cast<std::size_t>(std::ceil(std::log(static_cast<double>(std::max<std::size_t>(n, 3)))));
    std::vector<std::uint8_t> owner(n, 0);
    std::vector<Vertex> parent(n, 0);
    std::vector<std::size_t> depth(n, 0), children(n, 0);
    std::array<std::vector<Vertex>, 2> members;
    std::array<std::size_t, 2> head{0, 0};
    const std::array<Vertex, 2> roots{a, b};
    for (int t = 0; t < 2; ++t) {
      owner[roots[t]] = static_cast<std::uint8_t>(t + 1);
      members[t].push_back(roots[t]);
    }
    auto grow = [&](int t) {
      auto& m = members[t];
      while (head[t] < m.size()) {
        const Vertex x = m[head[t]];
        if (children[x] < 2 && depth[x] < depth_cap) {
          for (Vertex y : g_.neighbors(x)) {
            if (used_[y] || owner[y] != 0) continue;
            owner[y] = static_cast<std::uint8_t>(t + 1);
            parent[y] = x;
            depth[y] = depth[x] + 1;
            ++children[x];
            m.push_back(y);
            return true;
          }
        }
        ++head[t];
      }
      return false;
    };
    for (;;) {
      bool any = false;
      for (int t = 0; t < 2; ++t) {
        if (members[t].size() < target && grow(t)) any = true;
      }
      if (!any) break;
    }
    std::optional<std::pair<Vertex, Vertex>> join;
    std::size_t best = kUnreached;
    for (Vertex x : members[0]) {
      for (Vertex y : g_.neighbors(x)) {
        if (owner[y] == 2 && depth[x] + depth[y] < best) {
          best = depth[x] + depth[y];
          join = {x, y};
        }
      }
    }
    if (!join) return std::nullopt;
    std::vector<Vertex> path;
    for (Vertex cur = join->first;; cur = parent[cur]) {
      path.push_back(cur);
      if (cur == a) break;
    }
    std::reverse(path.begin(), path.end());
    for (Vertex cur = join->second;; cur = parent[cur]) {
      path.push_back(cur);
      if (cur == b) break;
    }
    return path;
  }

  const Graph& g_;
  const SwitcherConfig& cfg_;
  Connector connector_;
  std::vector<std::uint8_t> used_;
};

// Sampled check of |N(X) - phi(F)| >= |phi(F) & X| + sum_{v in X} (D - deg_F(v))
// over random X with |X| <= s, where F is the union of the paths.
void sample_goodness(const Graph& g, const ParitySwitcher& w, const SwitcherConfig& cfg, ParitySwitcher& out) {
  const std::size_t n = g.vertex_count();
  std::vector<std::uint8_t> in_f(n, 0);
  std::vector<std::size_t> deg_f(n, 0);
  for (Vertex v : w.vertices()) in_f[v] = 1;
  for (const auto& p : w.paths) {
    for (std::size_t i = 0; i + 1 < p.size(); ++i) {
      ++deg_f[p[i]];
      ++deg_f[p[i + 1]];
    }
  }
  Rng rng(derive_seed(cfg.seed, {0x600d}));
  std::vector<std::uint8_t> mark(n, 0);
  const auto s = static_cast<std::uint32_t>(std::clamp<std::size_t>(cfg.s, 1, n));
  for (std::size_t t = 0; t < cfg.goodness_samples; ++t) {
    const auto x = rng.sample(static_cast<std::uint32_t>(n), static_cast<std::uint32_t>(rng.between(1, s)));
    for (Vertex v : x) mark[v] = 1;
    double rhs = 0.0;
    std::size_t lhs = 0;
    for (Vertex v : x) {
      rhs += in_f[v] + cfg.d - static_cast<double>(deg_f[v]);
      for (Vertex y : g.neighbors(v)) {
        if (mark[y] == 0 && !in_f[y]) {
          mark[y] = 2;
          ++lhs;
        }
      }
    }
    for (Vertex v : x) {
      for (Vertex y : g.neighbors(v)) mark[y] = 0;
      mark[v] = 0;
    }
    ++out.goodness_checked;
    if (static_cast<double>(lhs) < rhs) ++out.goodness_violations;
  }
}

}  // namespace

bool is_valid_odd_cycle(const Graph& g, const EdgeVector& r, const OddCycle& cycle, std::size_t ell) {
  const auto& c = cycle.vertices;
  if (c.size() < 4 || c.size() % 2 != 0 || c.size() > 2 * ell) return false;
  for (Vertex v : c) {
    if (v >= g.vertex_count()) return false;
  }
  if (!distinct(c, g.vertex_count())) return false;
  std::size_t count = 0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    const auto id = g.edge_id(c[i], c[(i + 1) % c.size()]);
    if (!id) return false;
    count += r.test(*id);
  }
  return count % 2 == 1 && count == cycle.r_edges;
}

const char* to_string(Connector connector) {
  switch (connector) {
    case Connector::automatic: return "auto";
    case Connector::dense_distance2: return "dense-distance2";
    case Connector::bfs_greedy: return "bfs-greedy";
    case Connector::sparse_tree_embed: return "sparse-tree-embed";
  }
  return "unknown";
}

Connector parse_connector(const std::string& name) {
  if (name == "auto") return Connector::automatic;
  if (name == "dense-distance2") return Connector::dense_distance2;
  if (name == "bfs-greedy") return Connector::bfs_greedy;
  if (name == "sparse-tree-embed") return Connector::sparse_tree_embed;
  throw InvalidInput("unknown connector '" + name + "'");
}

const char* to_string(CycleLemmaStatus status) {
  switch (status) {
    case CycleLemmaStatus::found: return "found";
    case CycleLemmaStatus::r_equals_g: return "L2 violated: R = G";
    case CycleLemmaStatus::coverage_failed: return "L1 violated: layered neighborhoods do not cover V";
    case CycleLemmaStatus::path_not_found: return "L1 violated: required short path not found";
    case CycleLemmaStatus::r_not_bipartite: return "L1 violated: R is not bipartite across the layers";
    case CycleLemmaStatus::r_is_cut: return "L2 violated: R = G[A,B]";
  }
  return "unknown";
}

OddCycleSearch find_odd_r_cycle(const Graph& g, const EdgeVector& r, const SwitcherConfig& cfg,
                                std::optional<Edge> start) {
  if (r.size() != g.edge_count()) throw DimensionError("edge vector is not over this graph");
  if (cfg.ell < 2) throw InvalidInput("ell must be at least 2");
  std::vector<Edge> starts;
  if (start) {
    const auto id = g.edge_id(start->u, start->v);
    if (!id) throw InvalidInput("start edge is not an edge of the graph");
    if (r.test(*id)) throw InvalidInput("start edge must lie outside r");
    starts.push_back(*start);
  } else {
    std::size_t taken = 0;
    for (EdgeId e = 0; e < g.edge_count() && taken < std::max<std::size_t>(cfg.start_edges, 1); ++e) {
      if (r.test(e)) continue;
      starts.push_back(g.edge(e));
      starts.push_back({g.edge(e).v, g.edge(e).u});
      ++taken;
    }
  }
  OddCycleSearch out;
  if (starts.empty()) {
    out.status = CycleLemmaStatus::r_equals_g;
    out.detail = "every edge of the graph is in r";
    return out;
  }
  CycleSearcher searcher(g, r, cfg.ell);
  for (const Edge& uw : starts) {
    out = searcher.run(uw.u, uw.v);
    if (out.cycle) {
      if (!is_valid_odd_cycle(g, r, *out.cycle, cfg.ell)) {
        throw std::logic_error("cycle search produced an invalid cycle");
      }
      return out;
    }
  }
  return out;
}

std::vector<Vertex> ParitySwitcher::vertices() const {
  std::vector<Vertex> out = cycle;
  for (const auto& p : paths) {
    for (std::size_t i = 1; i + 1 < p.size(); ++i) out.push_back(p[i]);
  }
  return out;
}

SwitcherBuild build_parity_switcher(const Graph& g, const OddCycle& cycle, const SwitcherConfig& cfg,
                                    std::span<const Vertex> forbidden) {
  const std::size_t n = g.vertex_count();
  const auto& c = cycle.vertices;
  if (c.size() < 4 || c.size() % 2 != 0) throw InvalidInput("switcher needs an even cycle of length at least 4");
  std::vector<std::uint8_t> banned(n, 0);
  for (Vertex v : forbidden) banned[v] = 1;
  for (Vertex v : c) {
    if (banned[v]) throw InvalidInput("forbidden vertices meet the cycle");
  }

  Connector connector = cfg.connector;
  if (connector == Connector::automatic) {
    connector = 2 * g.min_degree() >= n + 16 ? Connector::dense_distance2 : Connector::bfs_greedy;
  }
  const std::size_t len = c.size();
  const std::size_t k = len / 2;
  const std::size_t labelings = cfg.labeling_attempts == 0 ? 2 * len : std::min(cfg.labeling_attempts, 2 * len);

  SwitcherBuild out;
  for (std::size_t j = 0; j < labelings; ++j) {
    const std::size_t rot = j / 2;
    const bool backwards = j % 2 == 1;
    ParitySwitcher w;
    w.connector = connector;
    w.cycle.resize(len);
    for (std::size_t i = 0; i < len; ++i) w.cycle[i] = c[backwards ? (rot + len - i) % len : (rot + i) % len];

    ConnectorRun run(g, cfg, connector);
    auto& used = run.used();
    used = banned;
    for (Vertex v : w.cycle) used[v] = 1;
    bool ok = true;
    for (std::size_t i = 2; i <= k; ++i) {
      auto p = run.connect(w.cycle[i - 1], w.cycle[len - i + 1]);
      if (!p) {
        out.failed_index = i;
        ok = false;
        break;
      }
      for (std::size_t t = 1; t + 1 < p->size(); ++t) used[(*p)[t]] = 1;
      w.paths.push_back(std::move(*p));
    }
    out.labelings_tried = j + 1;
    if (!ok) continue;
    w.labelings_tried = j + 1;
    if (connector == Connector::sparse_tree_embed) sample_goodness(g, w, cfg, w);
    const std::string problem = validate_switcher(g, w, forbidden);
    if (!problem.empty()) throw std::logic_error("switcher construction broke an invariant: " + problem);
    out.switcher = std::move(w);
    return out;
  }
  return out;
}

std::string validate_switcher(const Graph& g, const ParitySwitcher& w, std::span<const Vertex> forbidden) {
  const std::size_t n = g.vertex_count();
  const auto& c = w.cycle;
  if (c.size() < 4 || c.size() % 2 != 0) return "cycle length is not even and at least 4";
  std::vector<std::uint8_t> owner(n, 0);  // 1 cycle, 2 path interior, 3 forbidden
  for (Vertex v : forbidden) {
    if (v >= n) return "forbidden vertex out of range";
    owner[v] = 3;
  }
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i] >= n) return "cycle vertex out of range";
    if (owner[c[i]] == 1) return "cycle repeats a vertex";
    if (owner[c[i]] == 3) return "cycle uses a forbidden vertex";
    owner[c[i]] = 1;
    if (!g.adjacent(c[i], c[(i + 1) % c.size()])) return "cycle vertices not adjacent";
  }
  const std::size_t k = c.size() / 2;
  if (w.paths.size() != k - 1) return "expected one path per pair";
  for (std::size_t i = 2; i <= k; ++i) {
    const auto& p = w.paths[i - 2];
    const std::string name = "P_" + std::to_string(i);
    if (p.size() < 2) return name + " is too short";
    if (p.front() != c[i - 1] || p.back() != c[c.size() - i + 1]) return name + " has the wrong endpoints";
    for (std::size_t t = 0; t + 1 < p.size(); ++t) {
      if (p[t + 1] >= n || !g.adjacent(p[t], p[t + 1])) return name + " has non-adjacent consecutive vertices";
    }
    for (std::size_t t = 1; t + 1 < p.size(); ++t) {
      if (owner[p[t]] == 1) return name + " passes through the cycle";
      if (owner[p[t]] == 2) return name + " meets another path";
      if (owner[p[t]] == 3) return name + " uses a forbidden vertex";
      owner[p[t]] = 2;
    }
  }
  return {};
}

std::pair<std::vector<Vertex>, std::vector<Vertex>> switcher_traversals(const ParitySwitcher& w) {
  const auto& c = w.cycle;
  const std::size_t k = c.size() / 2;
  std::vector<Vertex> a{c.front()}, b{c.front()};
  for (std::size_t i = 2; i <= k; ++i) {
    const auto& p = w.paths[i - 2];
    const bool forward_a = i % 2 == 0;
    if (forward_a) {
      a.insert(a.end(), p.begin(), p.end());
      b.insert(b.end(), p.rbegin(), p.rend());
    } else {
      a.insert(a.end(), p.rbegin(), p.rend());
      b.insert(b.end(), p.begin(), p.end());
    }
  }
  a.push_back(c[k]);
  b.push_back(c[k]);
  return {std::move(a), std::move(b)};
}

SwitcherPaths switcher_hamilton_paths(const Graph& g, const ParitySwitcher& w, const EdgeVector& r) {
  auto [a, b] = switcher_traversals(w);
  const bool pa = count_r_edges(g, r, a, false) % 2 == 1;
  const bool pb = count_r_edges(g, r, b, false) % 2 == 1;
  if (pa == pb) throw InvalidInput("both switcher traversals have the same r-parity; the cycle is not odd");
  SwitcherPaths out;
  out.odd.order = pa ? std::move(a) : std::move(b);
  out.even.order = pa ? std::move(b) : std::move(a);
  return out;
}

void format_switcher(const ParitySwitcher& w, std::ostream& out) {
  format_vertex_sequence(w.cycle, out);
  for (const auto& p : w.paths) format_vertex_sequence(p, out);
}

ParitySwitcher parse_switcher(std::istream& in) {
  ParitySwitcher w;
  std::string line;
  std::size_t number = 0;
  bool have_cycle = false;
  while (std::getline(in, line)) {
    ++number;
    if (line.empty() || line[0] == '#') continue;
    auto seq = parse_vertex_sequence(line, number);
    if (seq.empty()) continue;
    if (!have_cycle) {
      w.cycle = std::move(seq);
      have_cycle = true;
    } else {
      w.paths.push_back(std::move(seq));
    }
  }
  if (!have_cycle) throw ParseError(number, "switcher file has no cycle line");
  return w;
}

}  // namespace cyclespan
