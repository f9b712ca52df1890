#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cyclespan/edge_vector.hpp"
#include "cyclespan/graph.hpp"
#include "cyclespan/hamilton.hpp"

namespace cyclespan {

/// Even cycle meeting r an odd number of times, as a cyclic vertex sequence.
struct OddCycle {
  std::vector<Vertex> vertices;
  std::size_t r_edges = 0;
  std::size_t length() const { return vertices.size(); }
};

/// Even length in [4, 2 ell], a simple cycle of g, odd number of r-edges
/// (and r_edges matches the count).
bool is_valid_odd_cycle(const Graph& g, const EdgeVector& r, const OddCycle& cycle, std::size_t ell);

enum class Connector { automatic, dense_distance2, bfs_greedy, sparse_tree_embed };

const char* to_string(Connector connector);
Connector parse_connector(const std::string& name);

struct SwitcherConfig {
  /// Cycles have length at most 2 ell.
  std::size_t ell = 10;
  /// Expansion parameters used by the tree connector's goodness sampling.
  double d = 2.0;
  std::size_t s = 1;
  /// automatic: dense_distance2 when min degree >= n/2 + 8, else bfs_greedy.
  Connector connector = Connector::automatic;
  /// bfs_greedy path length cap in edges; 0 means no cap.
  std::size_t max_connector_length = 0;
  /// sparse_tree_embed tree size; 0 means min(256, max(s/10, ceil(2 sqrt n))).
  std::size_t tree_size = 0;
  std::size_t goodness_samples = 256;
  /// Labelings (rotation and direction of the cycle) tried before giving up;
  /// 0 means all 4k of them.
  std::size_t labeling_attempts = 0;
  /// Non-r edges uw tried as the cycle search's starting edge.
  std::size_t start_edges = 1;
  std::uint64_t seed = 1;
};

enum class CycleLemmaStatus {
  found,
  r_equals_g,        // no edge of g outside r
  coverage_failed,   // layered neighborhoods miss a vertex
  path_not_found,    // a short path the construction needs does not exist
  r_not_bipartite,   // r has an edge inside a layer side
  r_is_cut,          // r equals the cut between the layer sides
};

const char* to_string(CycleLemmaStatus status);

struct OddCycleSearch {
  std::optional<OddCycle> cycle;
  CycleLemmaStatus status = CycleLemmaStatus::path_not_found;
  /// 1: odd and even paths meet; 2: the layers are bipartite.
  int lemma_case = 0;
  Edge start{};
  std::string detail;
};

/// Constructive search for an even cycle of length at most 2 ell with an odd
/// number of r-edges, starting from an edge uw outside r (`start`, else the
/// first cfg.start_edges such edges in index order, both orientations).
///
/// A BFS over (vertex, parity) states in r - {w} gives shortest odd and even
/// walks from u. If some z has both walks of length <= ell and both are
/// simple paths, a path from z to w in r minus those paths closes the cycle
/// with whichever walk fixes the parity. If the walks meet only at vertices
/// where one of them repeats, shortest odd and even simple paths are searched
/// directly instead. Otherwise the layers within ell - 1 are bipartite in r;
/// the cycle closes through an r-edge from w to the even side, or through an
/// edge of g - r across the two sides plus a shortest r-path.
OddCycleSearch find_odd_r_cycle(const Graph& g, const EdgeVector& r, const SwitcherConfig& cfg,
                                std::optional<Edge> start = std::nullopt);

/// Even cycle v1..v2k plus, for 2 <= i <= k, a path P_i from v_i to
/// v_{2k-i+2} whose inner vertices avoid the cycle and every other path.
struct ParitySwitcher {
  std::vector<Vertex> cycle;
  /// paths[j] is P_{j+2}, listed from v_{j+2} to v_{2k-j}.
  std::vector<std::vector<Vertex>> paths;
  Connector connector = Connector::automatic;
  std::size_t labelings_tried = 0;
  /// Sampled goodness of the embedding, for sparse_tree_embed only.
  std::size_t goodness_checked = 0;
  std::size_t goodness_violations = 0;

  std::size_t half_length() const { return cycle.size() / 2; }
  Vertex start() const { return cycle.front(); }
  Vertex finish() const { return cycle[half_length()]; }
  /// Cycle vertices then inner path vertices.
  std::vector<Vertex> vertices() const;
};

struct SwitcherBuild {
  std::optional<ParitySwitcher> switcher;
  /// Index i of the path that could not be connected in the last labeling.
  std::size_t failed_index = 0;
  std::size_t labelings_tried = 0;
};

/// Connects the pairs in order i = 2..k with the configured connector,
/// avoiding the cycle, `forbidden` and earlier paths. Tries further labelings
/// of the cycle when a connector fails.
SwitcherBuild build_parity_switcher(const Graph& g, const OddCycle& cycle, const SwitcherConfig& cfg,
                                    std::span<const Vertex> forbidden = {});

/// Empty when w is a well-formed switcher of g avoiding `forbidden`, else the
/// first problem found.
std::string validate_switcher(const Graph& g, const ParitySwitcher& w, std::span<const Vertex> forbidden = {});

struct SwitcherPaths {
  HamiltonPath even;  // even number of r-edges
  HamiltonPath odd;
};

/// The two Hamilton paths of V(W) from v1 to v_{k+1}. Traversal A goes
/// v1 -> v2, then runs P_i entering at v_i for even i and at v_{2k-i+2} for
/// odd i, stepping along the cycle between consecutive paths. Traversal B is
/// the mirror image starting v1 -> v_{2k}. Each cycle edge lies on exactly
/// one of them, so an odd cycle gives opposite parities.
/// Throws InvalidInput when both traversals have the same parity.
SwitcherPaths switcher_hamilton_paths(const Graph& g, const ParitySwitcher& w, const EdgeVector& r);

/// Traversal A then traversal B, without parity labels.
std::pair<std::vector<Vertex>, std::vector<Vertex>> switcher_traversals(const ParitySwitcher& w);

/// Cycle vertex list on one line, then one line per P_i.
void format_switcher(const ParitySwitcher& w, std::ostream& out);
ParitySwitcher parse_switcher(std::istream& in);

}  // namespace cyclespan
