#include "cyclespan/hamilton.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <ostream>
#include <sstream>

#include "cyclespan/errors.hpp"
#include "cyclespan/random.hpp"

namespace cyclespan {

namespace {

constexpr std::size_t kMaskVertices = 64;

std::vector<std::uint64_t> adjacency_masks(const Graph& g) {
  std::vector<std::uint64_t> adj(g.vertex_count(), 0);
  for (const Edge& e : g.edges()) {
    adj[e.u] |= std::uint64_t{1} << e.v;
    adj[e.v] |= std::uint64_t{1} << e.u;
  }
  return adj;
}

void check_endpoints(const Graph& g, Vertex x, Vertex y) {
  if (x >= g.vertex_count() || y >= g.vertex_count()) throw InvalidInput("endpoint out of range");
  if (x == y) throw InvalidInput("path endpoints must differ");
}

class Backtracker {
 public:
  Backtracker(const Graph& g, Vertex y, std::uint64_t budget)
      : adj_(adjacency_masks(g)), y_(y), ybit_(std::uint64_t{1} << y), budget_(budget) {}

  // Returns true when a path was completed into path_.
  bool run(Vertex x, std::uint64_t all) {
    path_.assign(1, x);
    return dfs(x, all & ~(std::uint64_t{1} << x));
  }

  const std::vector<Vertex>& path() const { return path_; }
  std::uint64_t nodes() const { return nodes_; }
  bool exhausted() const { return exhausted_; }

 private:
  bool dfs(Vertex cur, std::uint64_t remaining) {
    if (++nodes_ > budget_) {
      exhausted_ = true;
      return false;
    }
    if (remaining == ybit_) {
      if (adj_[cur] & ybit_) {
        path_.push_back(y_);
        return true;
      }
      return false;
    }
    if (!feasible(cur, remaining)) return false;
    std::uint64_t next = adj_[cur] & remaining & ~ybit_;
    while (next != 0) {
      const auto w = static_cast<Vertex>(std::countr_zero(next));
      next &= next - 1;
      path_.push_back(w);
      if (dfs(w, remaining & ~(std::uint64_t{1} << w))) return true;
      if (exhausted_) return false;
      path_.pop_back();
    }
    return false;
  }

  bool feasible(Vertex cur, std::uint64_t remaining) const {
    const std::uint64_t usable = remaining | (std::uint64_t{1} << cur);
    if ((adj_[y_] & usable & ~ybit_) == 0) return false;
    std::uint64_t inner = remaining & ~ybit_;
    while (inner != 0) {
      const int w = std::countr_zero(inner);
      inner &= inner - 1;
      if (std::popcount(adj_[w] & usable) < 2) return false;
    }
    // Everything still unvisited must hang off the current end.
    std::uint64_t reached = 0;
    std::uint64_t frontier = adj_[cur] & remaining;
    while (frontier != 0) {
      reached |= frontier;
      std::uint64_t grow = 0;
      std::uint64_t f = frontier;
      while (f != 0) {
        const int w = std::countr_zero(f);
        f &= f - 1;
        grow |= adj_[w];
      }
      frontier = grow & remaining & ~reached;
    }
    return reached == remaining;
  }

  std::vector<std::uint64_t> adj_;
  Vertex y_;
  std::uint64_t ybit_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  bool exhausted_ = false;
  std::vector<Vertex> path_;
};

}  // namespace

std::vector<Vertex> canonical_cycle_order(std::vector<Vertex> order) {
  if (order.empty()) return order;
  const auto first = std::min_element(order.begin(), order.end());
  std::rotate(order.begin(), first, order.end());
  if (order.size() >= 3 && order[1] > order.back()) std::reverse(order.begin() + 1, order.end());
  return order;
}

HamiltonCycle HamiltonCycle::from_order(const Graph& g, std::vector<Vertex> order) {
  if (!is_hamilton_cycle(g, order)) throw InvalidInput("vertex sequence is not a Hamilton cycle of the graph");
  HamiltonCycle c;
  c.order_ = canonical_cycle_order(std::move(order));
  c.edges_ = g.path_edges(c.order_, true);
  return c;
}

bool is_hamilton_path(const Graph& g, std::span<const Vertex> order, std::span<const Vertex> vertex_set) {
  const std::size_t n = g.vertex_count();
  std::vector<std::uint8_t> wanted(n, 0);
  std::size_t distinct = 0;
  for (Vertex v : vertex_set) {
    if (v >= n) return false;
    if (!wanted[v]) ++distinct;
    wanted[v] = 1;
  }
  if (order.size() != distinct || order.empty()) return false;
  std::vector<std::uint8_t> seen(n, 0);
  for (std::size_t i = 0; i < order.size(); ++i) {
    const Vertex v = order[i];
    if (v >= n || !wanted[v] || seen[v]) return false;
    seen[v] = 1;
    if (i > 0 && !g.adjacent(order[i - 1], v)) return false;
  }
  return true;
}

bool is_hamilton_path(const Graph& g, std::span<const Vertex> order) {
  std::vector<Vertex> all(g.vertex_count());
  for (Vertex v = 0; v < all.size(); ++v) all[v] = v;
  return is_hamilton_path(g, order, all);
}

bool is_hamilton_cycle(const Graph& g, std::span<const Vertex> order) {
  if (g.vertex_count() < 3) return false;
  return is_hamilton_path(g, order) && g.adjacent(order.back(), order.front());
}

void visit_hamilton_cycles(const Graph& g, const std::function<bool(std::span<const Vertex>)>& visit,
                           std::size_t max_vertices) {
  const std::size_t n = g.vertex_count();
  if (n > std::min(max_vertices, kMaskVertices)) {
    throw LimitExceeded("Hamilton cycle enumeration refuses n = " + std::to_string(n) + " (limit " +
                        std::to_string(std::min(max_vertices, kMaskVertices)) + ")");
  }
  if (n < 3) return;
  const auto adj = adjacency_masks(g);
  const std::uint64_t all = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
  std::vector<Vertex> order{0};
  bool stop = false;
  auto dfs = [&](auto&& self, Vertex cur, std::uint64_t remaining) -> void {
    if (remaining == 0) {
      if ((adj[cur] & 1U) && order[1] < order.back()) stop = !visit(order);
      return;
    }
    std::uint64_t next = adj[cur] & remaining;
    while (next != 0 && !stop) {
      const auto w = static_cast<Vertex>(std::countr_zero(next));
      next &= next - 1;
      order.push_back(w);
      self(self, w, remaining & ~(std::uint64_t{1} << w));
      order.pop_back();
    }
  };
  dfs(dfs, 0, all & ~std::uint64_t{1});
}

HamiltonEnumeration enumerate_hamilton_cycles(const Graph& g, std::size_t limit, std::size_t max_vertices) {
  HamiltonEnumeration out;
  visit_hamilton_cycles(
      g,
      [&](std::span<const Vertex> order) {
        if (out.cycles.size() == limit) {
          out.truncated = true;
          return false;
        }
        out.cycles.push_back(HamiltonCycle::from_order(g, {order.begin(), order.end()}));
        return true;
      },
      max_vertices);
  return out;
}

const char* to_string(SearchStatus status) {
  switch (status) {
    case SearchStatus::found: return "found";
    case SearchStatus::proven_none: return "proven-none";
    case SearchStatus::budget_exhausted: return "budget-exhausted";
    case SearchStatus::different_components: return "endpoints in different components";
    case SearchStatus::gave_up: return "gave-up";
  }
  return "unknown";
}

const char* to_string(HamiltonStrategy strategy) {
  switch (strategy) {
    case HamiltonStrategy::automatic: return "auto";
    case HamiltonStrategy::backtracking: return "backtracking";
    case HamiltonStrategy::posa: return "posa";
  }
  return "unknown";
}

HamiltonStrategy parse_hamilton_strategy(const std::string& name) {
  if (name == "auto") return HamiltonStrategy::automatic;
  if (name == "backtracking") return HamiltonStrategy::backtracking;
  if (name == "posa") return HamiltonStrategy::posa;
  throw InvalidInput("unknown Hamilton strategy '" + name + "'");
}

PathSearch find_hamilton_path_backtracking(const Graph& g, Vertex x, Vertex y, std::uint64_t node_budget) {
  check_endpoints(g, x, y);
  const std::size_t n = g.vertex_count();
  if (n > kMaskVertices) throw LimitExceeded("backtracking Hamilton path search supports at most 64 vertices");
  PathSearch result;
  const auto labels = g.component_labels();
  if (labels[x] != labels[y]) {
    result.status = SearchStatus::different_components;
    return result;
  }
  if (!g.connected()) {
    result.status = SearchStatus::proven_none;
    return result;
  }
  const std::uint64_t all = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
  Backtracker bt(g, y, node_budget);
  const bool found = bt.run(x, all);
  result.work = bt.nodes();
  if (found) {
    result.path = HamiltonPath{bt.path()};
    result.status = SearchStatus::found;
  } else {
    result.status = bt.exhausted() ? SearchStatus::budget_exhausted : SearchStatus::proven_none;
  }
  return result;
}

PathSearch find_hamilton_path_posa(const Graph& g, Vertex x, Vertex y, std::uint64_t seed,
                                   std::uint64_t max_rotations) {
  check_endpoints(g, x, y);
  const std::size_t n = g.vertex_count();
  PathSearch result;
  const auto labels = g.component_labels();
  if (labels[x] != labels[y]) {
    result.status = SearchStatus::different_components;
    return result;
  }
  if (!g.connected()) {
    result.status = SearchStatus::proven_none;
    return result;
  }
  for (Vertex v = 0; v < n; ++v) {
    if (v != x && v != y && g.degree(v) < 2) {
      result.status = SearchStatus::proven_none;
      return result;
    }
  }
  if (n == 2) {
    result.path = HamiltonPath{{x, y}};
    result.status = SearchStatus::found;
    return result;
  }

  Rng rng(seed);
  std::vector<Vertex> path;
  std::vector<std::int64_t> pos(n, -1);
  std::vector<Vertex> options;
  std::vector<std::size_t> pivots, good;
  const std::uint64_t stall_limit = 4 * static_cast<std::uint64_t>(n);

  auto off_path_degree = [&](Vertex v) {
    std::size_t d = 0;
    for (Vertex w : g.neighbors(v)) d += (pos[w] < 0 && w != y);
    return d;
  };

  std::uint64_t rotations = 0;
  while (rotations < max_rotations) {
    path.assign(1, x);
    std::fill(pos.begin(), pos.end(), -1);
    pos[x] = 0;
    std::uint64_t stall = 0;
    while (rotations < max_rotations && stall <= stall_limit) {
      const Vertex end = path.back();
      const bool full = path.size() == n - 1;
      if (full && g.adjacent(end, y)) {
        path.push_back(y);
        result.path = HamiltonPath{std::move(path)};
        result.status = SearchStatus::found;
        result.work = rotations;
        return result;
      }
      if (!full) {
        options.clear();
        std::size_t best = SIZE_MAX;
        for (Vertex w : g.neighbors(end)) {
          if (pos[w] >= 0 || w == y) continue;
          const std::size_t d = off_path_degree(w);
          if (d < best) {
            best = d;
            options.clear();
          }
          if (d == best) options.push_back(w);
        }
        if (!options.empty()) {
          const Vertex w = options[rng.below(options.size())];
          pos[w] = static_cast<std::int64_t>(path.size());
          path.push_back(w);
          stall = 0;
          continue;
        }
      }
      // Rotate: for a pivot p_i adjacent to the end, reverse p_{i+1}..end.
      pivots.clear();
      good.clear();
      const auto last = static_cast<std::int64_t>(path.size()) - 1;
      for (Vertex w : g.neighbors(end)) {
        if (pos[w] < 0 || pos[w] >= last - 1) continue;
        const auto i = static_cast<std::size_t>(pos[w]);
        pivots.push_back(i);
        const Vertex new_end = path[i + 1];
        const bool promising = full ? g.adjacent(new_end, y) : off_path_degree(new_end) > 0;
        if (promising) good.push_back(i);
      }
      if (pivots.empty()) break;
      const auto& pick = good.empty() ? pivots : good;
      const std::size_t i = pick[rng.below(pick.size())];
      std::reverse(path.begin() + static_cast<std::ptrdiff_t>(i) + 1, path.end());
      for (std::size_t j = i + 1; j < path.size(); ++j) pos[path[j]] = static_cast<std::int64_t>(j);
      ++rotations;
      ++stall;
    }
    ++rotations;  // a restart counts against the budget so dead starts terminate
  }
  result.status = SearchStatus::gave_up;
  result.work = rotations;
  return result;
}

CycleSearch find_hamilton_cycle(const Graph& g, std::uint64_t seed, const HamiltonOptions& options) {
  const std::size_t n = g.vertex_count();
  CycleSearch result;
  if (n < 3 || !g.connected() || g.min_degree() < 2) {
    result.status = SearchStatus::proven_none;
    return result;
  }
  HamiltonStrategy strategy = options.strategy;
  if (strategy == HamiltonStrategy::automatic) {
    strategy = n <= std::min(options.backtracking_limit, kMaskVertices) ? HamiltonStrategy::backtracking
                                                                        : HamiltonStrategy::posa;
  }
  Rng rng(seed);

  if (strategy == HamiltonStrategy::backtracking) {
    Vertex v = 0;
    for (Vertex w = 1; w < n; ++w) {
      if (g.degree(w) < g.degree(v)) v = w;
    }
    std::vector<Vertex> ends(g.neighbors(v).begin(), g.neighbors(v).end());
    rng.shuffle(ends);
    bool exhausted = false;
    for (Vertex u : ends) {
      PathSearch p = find_hamilton_path_backtracking(g, v, u, options.node_budget);
      result.work += p.work;
      if (p.path) {
        result.cycle = HamiltonCycle::from_order(g, std::move(p.path->order));
        result.status = SearchStatus::found;
        return result;
      }
      exhausted = exhausted || p.status == SearchStatus::budget_exhausted;
    }
    result.status = exhausted ? SearchStatus::budget_exhausted : SearchStatus::proven_none;
    return result;
  }

  std::vector<EdgeId> order(g.edge_count());
  for (EdgeId e = 0; e < order.size(); ++e) order[e] = e;
  rng.shuffle(order);
  const std::size_t attempts = std::min(options.posa_edge_attempts, order.size());
  for (std::size_t a = 0; a < attempts; ++a) {
    const Edge& e = g.edge(order[a]);
    PathSearch p = find_hamilton_path_posa(g, e.u, e.v, rng.next(), options.max_rotations);
    result.work += p.work;
    if (p.path) {
      result.cycle = HamiltonCycle::from_order(g, std::move(p.path->order));
      result.status = SearchStatus::found;
      return result;
    }
  }
  result.status = SearchStatus::gave_up;
  return result;
}

void format_vertex_sequence(std::span<const Vertex> order, std::ostream& out) {
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (i > 0) out << ' ';
    out << order[i];
  }
  out << '\n';
}

std::vector<Vertex> parse_vertex_sequence(const std::string& line, std::size_t line_number) {
  std::istringstream in(line);
  std::vector<Vertex> out;
  std::string token;
  while (in >> token) {
    Vertex v = 0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
    if (ec != std::errc{} || ptr != token.data() + token.size()) {
      throw ParseError(line_number, "expected a vertex id, got '" + token + "'");
    }
    out.push_back(v);
  }
  return out;
}

}  // namespace cyclespan
