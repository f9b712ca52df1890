#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cyclespan/edge_vector.hpp"
#include "cyclespan/graph.hpp"

namespace cyclespan {

struct HamiltonPath {
  std::vector<Vertex> order;
};

/// A Hamilton cycle kept in canonical form: the smallest vertex first, and
/// of the two directions the one whose second vertex is smaller.
class HamiltonCycle {
 public:
  /// Validates (throws InvalidInput) and canonicalizes a cyclic order.
  static HamiltonCycle from_order(const Graph& g, std::vector<Vertex> order);

  const std::vector<Vertex>& order() const noexcept { return order_; }
  const EdgeVector& edges() const noexcept { return edges_; }

  friend bool operator==(const HamiltonCycle& a, const HamiltonCycle& b) { return a.order_ == b.order_; }

 private:
  std::vector<Vertex> order_;
  EdgeVector edges_;
};

/// Rotates and possibly reverses a cyclic order into canonical form.
std::vector<Vertex> canonical_cycle_order(std::vector<Vertex> order);

/// Consecutive vertices adjacent, no repeats, and the vertex set equals
/// `vertex_set` exactly.
bool is_hamilton_path(const Graph& g, std::span<const Vertex> order, std::span<const Vertex> vertex_set);
/// Same with the vertex set being all of g.
bool is_hamilton_path(const Graph& g, std::span<const Vertex> order);
/// Cyclic adjacency (last back to first) and every vertex of g exactly once.
bool is_hamilton_cycle(const Graph& g, std::span<const Vertex> order);

/// Calls visit on every Hamilton cycle once, as a canonical order, in
/// lexicographic order; visit returns false to stop. Throws LimitExceeded when
/// n > max_vertices.
void visit_hamilton_cycles(const Graph& g, const std::function<bool(std::span<const Vertex>)>& visit,
                           std::size_t max_vertices = 14);

struct HamiltonEnumeration {
  std::vector<HamiltonCycle> cycles;
  bool truncated = false;
};

/// All Hamilton cycles, each once in canonical form, in lexicographic order.
/// Stops after `limit` cycles with truncated set. Throws LimitExceeded when
/// n > max_vertices.
HamiltonEnumeration enumerate_hamilton_cycles(const Graph& g, std::size_t limit = SIZE_MAX,
                                              std::size_t max_vertices = 14);

enum class SearchStatus { found, proven_none, budget_exhausted, different_components, gave_up };

const char* to_string(SearchStatus status);

struct PathSearch {
  std::optional<HamiltonPath> path;
  SearchStatus status = SearchStatus::gave_up;
  /// Search-tree nodes (backtracking) or rotations (Posa).
  std::uint64_t work = 0;
};

/// Exact depth-first search for a Hamilton x-y path, neighbors tried in
/// ascending order. Prunes when the unvisited vertices stop being connected
/// to the current end or some unvisited vertex has too few usable neighbors.
/// Throws LimitExceeded for n > 64.
PathSearch find_hamilton_path_backtracking(const Graph& g, Vertex x, Vertex y, std::uint64_t node_budget);

/// Rotation-extension with x fixed. Grows a path from x through V - {y},
/// extending to the unvisited neighbor with fewest unvisited neighbors, and
/// rotates at the free end when stuck. Once every vertex but y is covered it
/// keeps rotating until the free end is adjacent to y. Restarts after a stall
/// of 4n rotations without growth. Failure is not a proof of nonexistence.
PathSearch find_hamilton_path_posa(const Graph& g, Vertex x, Vertex y, std::uint64_t seed,
                                   std::uint64_t max_rotations);

enum class HamiltonStrategy { automatic, backtracking, posa };

const char* to_string(HamiltonStrategy strategy);
HamiltonStrategy parse_hamilton_strategy(const std::string& name);

struct HamiltonOptions {
  HamiltonStrategy strategy = HamiltonStrategy::automatic;
  /// automatic uses backtracking up to this many vertices.
  std::size_t backtracking_limit = 20;
  std::uint64_t node_budget = 2'000'000;
  std::uint64_t max_rotations = 200'000;
  /// Edges uv tried with Posa before giving up.
  std::size_t posa_edge_attempts = 4;
};

struct CycleSearch {
  std::optional<HamiltonCycle> cycle;
  SearchStatus status = SearchStatus::gave_up;
  std::uint64_t work = 0;
};

/// Closes a Hamilton u-v path with the edge uv. Backtracking tries every edge
/// at a minimum-degree vertex (each Hamilton cycle uses two of them), so it
/// can prove that none exists; Posa tries a few random edges.
CycleSearch find_hamilton_cycle(const Graph& g, std::uint64_t seed, const HamiltonOptions& options = {});

/// One whitespace-separated vertex sequence per line.
void format_vertex_sequence(std::span<const Vertex> order, std::ostream& out);
std::vector<Vertex> parse_vertex_sequence(const std::string& line, std::size_t line_number = 1);

}  // namespace cyclespan
