#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "cyclespan/edge_vector.hpp"
#include "cyclespan/graph.hpp"

namespace cyclespan {

/// Fundamental cycles of a BFS spanning forest, one per non-tree edge.
/// rank = m - n + (#components).
Gf2Basis cycle_space_basis(const Graph& g);

/// Star cuts of every vertex except the smallest one of each component.
/// rank = n - (#components).
Gf2Basis cut_space_basis(const Graph& g);

/// Membership in the cut space, decided by 2-colouring a spanning forest
/// from the tree edges of v and checking every other edge against it.
bool is_cut(const Graph& g, const EdgeVector& v);

/// is_cut with the spanning forest built once, for testing many vectors.
class CutTester {
 public:
  explicit CutTester(const Graph& g);
  bool operator()(const EdgeVector& v) const;

 private:
  const Graph* g_;
  std::vector<Vertex> order_;  // BFS order; parents precede children
  std::vector<Vertex> parent_;
  std::vector<EdgeId> parent_edge_;
  mutable std::vector<std::uint8_t> color_;
};

/// Membership in the cycle space: every vertex meets an even number of edges.
bool is_in_cycle_space(const Graph& g, const EdgeVector& v);

enum class CosetStrategy { automatic, exhaustive, local_search };

struct CosetOptions {
  CosetStrategy strategy = CosetStrategy::automatic;
  /// automatic uses the exhaustive scan up to this many vertices.
  std::size_t exhaustive_limit = 24;
  /// Local search: number of starts (the first start is r0 itself).
  std::size_t restarts = 16;
  std::uint64_t seed = 0;
};

/// A heaviest element of the coset r0 + (cut space). The exhaustive strategy
/// walks all 2^(n-1) cuts in Gray-code order and returns the global maximum
/// (earliest in scan order on ties, so r0 comes back when it is already
/// maximal). The local-search strategy runs steepest ascent over single-vertex
/// flips from r0 and from random coset members, breaking ties by the lowest
/// vertex id, and keeps the heaviest local maximum.
///
/// Throws InvalidInput when r0 lies in the cut space.
EdgeVector coset_max_weight(const Graph& g, const EdgeVector& r0, const CosetOptions& options = {});

/// Steepest-ascent single-vertex-flip local search from a single start.
EdgeVector coset_local_ascent(const Graph& g, const EdgeVector& start);

}  // namespace cyclespan
