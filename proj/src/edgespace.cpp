#include "cyclespan/edgespace.hpp"

#include <algorithm>
#include <limits>

#include "bipartition_scan.hpp"
#include "cyclespan/errors.hpp"
#include "cyclespan/random.hpp"

namespace cyclespan {

namespace {

constexpr auto kNoParent = std::numeric_limits<Vertex>::max();

struct Forest {
  std::vector<Vertex> parent;
  std::vector<EdgeId> parent_edge;
  std::vector<std::size_t> depth;
  std::vector<std::uint8_t> is_tree_edge;
  std::vector<Vertex> order;  // BFS order, roots first within each component
};

Forest bfs_forest(const Graph& g) {
  const std::size_t n = g.vertex_count();
  Forest f;
  f.parent.assign(n, kNoParent);
  f.parent_edge.assign(n, 0);
  f.depth.assign(n, 0);
  f.is_tree_edge.assign(g.edge_count(), 0);
  std::vector<std::uint8_t> seen(n, 0);
  for (Vertex root = 0; root < n; ++root) {
    if (seen[root]) continue;
    seen[root] = 1;
    const std::size_t start = f.order.size();
    f.order.push_back(root);
    for (std::size_t head = start; head < f.order.size(); ++head) {
      const Vertex v = f.order[head];
      const auto nbrs = g.neighbors(v);
      const auto ids = g.incident_edges(v);
      for (std::size_t i = 0; i < nbrs.size(); ++i) {
        const Vertex w = nbrs[i];
        if (seen[w]) continue;
        seen[w] = 1;
        f.parent[w] = v;
        f.parent_edge[w] = ids[i];
        f.depth[w] = f.depth[v] + 1;
        f.is_tree_edge[ids[i]] = 1;
        f.order.push_back(w);
      }
    }
  }
  return f;
}

}  // namespace

Gf2Basis cycle_space_basis(const Graph& g) {
  const Forest f = bfs_forest(g);
  Gf2Basis basis(g.edge_count());
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (f.is_tree_edge[e]) continue;
    EdgeVector cycle(g.edge_count());
    cycle.set(e);
    Vertex a = g.edge(e).u;
    Vertex b = g.edge(e).v;
    while (a != b) {
      if (f.depth[a] < f.depth[b]) std::swap(a, b);
      cycle.flip(f.parent_edge[a]);
      a = f.parent[a];
    }
    basis.insert(cycle);
  }
  return basis;
}

Gf2Basis cut_space_basis(const Graph& g) {
  const auto labels = g.component_labels();
  std::vector<std::uint8_t> root_seen(g.vertex_count(), 0);
  Gf2Basis basis(g.edge_count());
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    // Vertices are scanned in increasing order, so the first one met in each
    // component is its smallest.
    if (!root_seen[labels[v]]) {
      root_seen[labels[v]] = 1;
      continue;
    }
    basis.insert(g.star(v));
  }
  return basis;
}

CutTester::CutTester(const Graph& g) : g_(&g), color_(g.vertex_count(), 0) {
  Forest f = bfs_forest(g);
  order_ = std::move(f.order);
  parent_ = std::move(f.parent);
  parent_edge_ = std::move(f.parent_edge);
}

bool CutTester::operator()(const EdgeVector& v) const {
  if (v.size() != g_->edge_count()) throw DimensionError("edge vector is not over this graph");
  for (Vertex w : order_) {
    color_[w] = parent_[w] == kNoParent ? 0 : color_[parent_[w]] ^ static_cast<std::uint8_t>(v.test(parent_edge_[w]));
  }
  const auto& edges = g_->edges();
  for (EdgeId e = 0; e < edges.size(); ++e) {
    if (v.test(e) != ((color_[edges[e].u] ^ color_[edges[e].v]) != 0)) return false;
  }
  return true;
}

bool is_cut(const Graph& g, const EdgeVector& v) { return CutTester(g)(v); }

bool is_in_cycle_space(const Graph& g, const EdgeVector& v) {
  if (v.size() != g.edge_count()) throw DimensionError("edge vector is not over this graph");
  std::vector<std::uint8_t> parity(g.vertex_count(), 0);
  v.for_each([&](std::size_t e) {
    parity[g.edge(e).u] ^= 1;
    parity[g.edge(e).v] ^= 1;
  });
  return std::none_of(parity.begin(), parity.end(), [](std::uint8_t p) { return p != 0; });
}

EdgeVector coset_local_ascent(const Graph& g, const EdgeVector& start) {
  const std::size_t n = g.vertex_count();
  std::vector<std::uint8_t> member(g.edge_count(), 0);
  start.for_each([&](std::size_t e) { member[e] = 1; });
  std::vector<long long> gain(n, 0);
  for (Vertex v = 0; v < n; ++v) {
    for (EdgeId e : g.incident_edges(v)) gain[v] += member[e] ? -1 : 1;
  }
  for (;;) {
    Vertex best = 0;
    long long best_gain = 0;
    for (Vertex v = 0; v < n; ++v) {
      if (gain[v] > best_gain) {
        best_gain = gain[v];
        best = v;
      }
    }
    if (best_gain <= 0) break;
    const auto nbrs = g.neighbors(best);
    const auto ids = g.incident_edges(best);
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
      const std::uint8_t was = member[ids[i]];
      member[ids[i]] ^= 1;
      gain[nbrs[i]] += was ? 2 : -2;
    }
    gain[best] = -gain[best];
  }
  EdgeVector out(g.edge_count());
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (member[e]) out.set(e);
  }
  return out;
}

EdgeVector coset_max_weight(const Graph& g, const EdgeVector& r0, const CosetOptions& options) {
  if (r0.size() != g.edge_count()) throw DimensionError("edge vector is not over this graph");
  if (is_cut(g, r0)) throw InvalidInput("r0 lies in the cut space; its coset is the cut space itself");

  const std::size_t n = g.vertex_count();
  const bool exhaustive = options.strategy == CosetStrategy::exhaustive ||
                          (options.strategy == CosetStrategy::automatic && n <= options.exhaustive_limit);
  if (exhaustive) {
    // weight(r0 + G[A,B]) = |r0| + e_G(A,B) - 2 e_R(A,B).
    long long best_delta = 0;
    std::uint32_t best_mask = 0;
    detail::scan_bipartitions(g, r0, [&](std::uint32_t a, long long eg, long long er) {
      if (eg - 2 * er > best_delta) {
        best_delta = eg - 2 * er;
        best_mask = a;
      }
      return true;
    });
    return r0 ^ g.cut(detail::mask_to_sides(best_mask, n));
  }

  Rng rng(options.seed);
  EdgeVector best = coset_local_ascent(g, r0);
  std::size_t best_weight = best.weight();
  std::vector<std::uint8_t> side(n);
  for (std::size_t k = 1; k < options.restarts; ++k) {
    rng.fill_bits(side);
    EdgeVector candidate = coset_local_ascent(g, r0 ^ g.cut(side));
    const std::size_t w = candidate.weight();
    if (w > best_weight) {
      best_weight = w;
      best = std::move(candidate);
    }
  }
  return best;
}

}  // namespace cyclespan
