#include "oracles.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

namespace oracle {

Bits to_bits(const EdgeVector& v) {
  Bits b(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) b[i] = v.test(i);
  return b;
}

EdgeVector from_bits(const Bits& b) {
  EdgeVector v(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (b[i]) v.set(i);
  }
  return v;
}

std::size_t gf2_rank(std::vector<Bits> rows) {
  if (rows.empty()) return 0;
  const std::size_t cols = rows[0].size();
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && !rows[pivot][c]) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[rank], rows[pivot]);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r != rank && rows[r][c]) {
        for (std::size_t k = 0; k < cols; ++k) rows[r][k] ^= rows[rank][k];
      }
    }
    ++rank;
  }
  return rank;
}

Bits cut_bits(const Graph& g, const std::vector<std::uint8_t>& side) {
  Bits b(g.edge_count());
  for (std::size_t e = 0; e < g.edge_count(); ++e) b[e] = side[g.edge(e).u] != side[g.edge(e).v];
  return b;
}

namespace {

template <typename F>
void each_side(std::size_t n, F&& f) {
  // Vertex n-1 stays on side 0, so each bipartition appears once.
  const std::uint64_t count = n == 0 ? 1 : std::uint64_t{1} << (n - 1);
  std::vector<std::uint8_t> side(n, 0);
  for (std::uint64_t mask = 0; mask < count; ++mask) {
    for (std::size_t v = 0; v + 1 < n; ++v) side[v] = (mask >> v) & 1U;
    if (!f(side)) return;
  }
}

}  // namespace

std::size_t coset_max(const Graph& g, const EdgeVector& r0) {
  const Bits r = to_bits(r0);
  std::size_t best = 0;
  each_side(g.vertex_count(), [&](const std::vector<std::uint8_t>& side) {
    const Bits c = cut_bits(g, side);
    std::size_t w = 0;
    for (std::size_t e = 0; e < r.size(); ++e) w += r[e] ^ c[e];
    best = std::max(best, w);
    return true;
  });
  return best;
}

bool is_cut(const Graph& g, const EdgeVector& v) {
  const Bits target = to_bits(v);
  bool found = false;
  each_side(g.vertex_count(), [&](const std::vector<std::uint8_t>& side) {
    found = cut_bits(g, side) == target;
    return !found;
  });
  return found;
}

std::optional<std::vector<Vertex>> half_violation(const Graph& g, const EdgeVector& r) {
  std::optional<std::vector<Vertex>> out;
  each_side(g.vertex_count(), [&](const std::vector<std::uint8_t>& side) {
    long eg = 0, er = 0;
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
      if (side[g.edge(e).u] != side[g.edge(e).v]) {
        ++eg;
        if (r.test(e)) ++er;
      }
    }
    if (2 * er < eg) {
      std::vector<Vertex> a;
      for (Vertex v = 0; v < side.size(); ++v) {
        if (side[v]) a.push_back(v);
      }
      out = a;
      return false;
    }
    return true;
  });
  return out;
}

std::vector<std::vector<Vertex>> hamilton_cycles(const Graph& g) {
  const std::size_t n = g.vertex_count();
  std::vector<std::vector<Vertex>> out;
  if (n < 3) return out;
  std::vector<Vertex> order(n);
  std::iota(order.begin(), order.end(), 0);
  do {
    if (order[1] > order[n - 1]) continue;
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) ok = g.adjacent(order[i], order[(i + 1) % n]);
    if (ok) out.push_back(order);
  } while (std::next_permutation(order.begin() + 1, order.end()));
  return out;
}

std::vector<EdgeVector> simple_cycles(const Graph& g, std::size_t max_len) {
  const std::size_t n = g.vertex_count();
  std::set<std::vector<std::uint8_t>> seen;
  std::vector<EdgeVector> out;
  std::vector<Vertex> path;
  std::vector<std::uint8_t> on(n, 0);
  // Cycles are rooted at their smallest vertex.
  auto dfs = [&](auto&& self, Vertex root) -> void {
    const Vertex end = path.back();
    for (Vertex w : g.neighbors(end)) {
      if (w == root && path.size() >= 3) {
        std::vector<Vertex> cyc = path;
        const EdgeVector e = g.path_edges(cyc, true);
        if (seen.insert(to_bits(e)).second) out.push_back(e);
      }
      if (w <= root || on[w] || path.size() >= max_len) continue;
      on[w] = 1;
      path.push_back(w);
      self(self, root);
      path.pop_back();
      on[w] = 0;
    }
  };
  for (Vertex s = 0; s < n; ++s) {
    path = {s};
    on.assign(n, 0);
    on[s] = 1;
    dfs(dfs, s);
  }
  return out;
}

bool is_simple_cycle(const Graph& g, const std::vector<Vertex>& order) {
  if (order.size() < 3) return false;
  std::set<Vertex> distinct(order.begin(), order.end());
  if (distinct.size() != order.size()) return false;
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (order[i] >= g.vertex_count() || !g.adjacent(order[i], order[(i + 1) % order.size()])) return false;
  }
  return true;
}

bool is_path_through(const Graph& g, const std::vector<Vertex>& order, std::vector<Vertex> vertices, Vertex x,
                     Vertex y) {
  if (order.empty() || order.front() != x || order.back() != y) return false;
  std::vector<Vertex> sorted = order;
  std::sort(sorted.begin(), sorted.end());
  std::sort(vertices.begin(), vertices.end());
  if (sorted != vertices) return false;
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
  for (std::size_t i = 0; i + 1 < order.size(); ++i) {
    if (!g.adjacent(order[i], order[i + 1])) return false;
  }
  return true;
}

bool robust_diameter(const Graph& r, std::size_t ell) {
  const std::size_t n = r.vertex_count();
  const std::size_t max_s = 2 * ell;
  std::vector<std::uint8_t> removed(n, 0);
  std::vector<std::size_t> dist(n);
  bool ok = true;
  // Enumerate S by bitmask (n is small here).
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n) && ok; ++mask) {
    if (static_cast<std::size_t>(__builtin_popcountll(mask)) > max_s) continue;
    for (std::size_t v = 0; v < n; ++v) removed[v] = (mask >> v) & 1U;
    for (Vertex x = 0; x < n && ok; ++x) {
      if (removed[x]) continue;
      std::fill(dist.begin(), dist.end(), SIZE_MAX);
      std::vector<Vertex> queue{x};
      dist[x] = 0;
      for (std::size_t h = 0; h < queue.size(); ++h) {
        for (Vertex w : r.neighbors(queue[h])) {
          if (!removed[w] && dist[w] == SIZE_MAX) {
            dist[w] = dist[queue[h]] + 1;
            queue.push_back(w);
          }
        }
      }
      for (Vertex y = 0; y < n; ++y) {
        if (!removed[y] && dist[y] > ell - 1) ok = false;
      }
    }
  }
  return ok;
}

double dense_lambda(const Graph& g) {
  const auto n = static_cast<Eigen::Index>(g.vertex_count());
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (const auto& e : g.edges()) {
    a(e.u, e.v) = 1.0;
    a(e.v, e.u) = 1.0;
  }
  const Eigen::MatrixXd p = Eigen::MatrixXd::Identity(n, n) - Eigen::MatrixXd::Constant(n, n, 1.0 / n);
  const Eigen::MatrixXd b = p * a * p;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(b);
  return solver.eigenvalues().cwiseAbs().maxCoeff();
}

Graph random_connected(std::mt19937_64& rng, std::size_t n, double p) {
  std::bernoulli_distribution coin(p);
  std::set<std::pair<Vertex, Vertex>> edges;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) {
      if (coin(rng)) edges.insert({u, v});
    }
  }
  std::vector<Vertex> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    edges.insert({std::min(perm[i], perm[i + 1]), std::max(perm[i], perm[i + 1])});
  }
  std::vector<cyclespan::Edge> list;
  for (const auto& [u, v] : edges) list.push_back({u, v});
  return Graph(n, list);
}

EdgeVector random_vector(std::mt19937_64& rng, std::size_t m) {
  EdgeVector v(m);
  for (std::size_t i = 0; i < m; ++i) {
    if (rng() & 1U) v.set(i);
  }
  return v;
}

}  // namespace oracle
