#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cyclespan/edge_vector.hpp"

namespace cyclespan {

using Vertex = std::uint32_t;
using EdgeId = std::size_t;

struct Edge {
  Vertex u = 0;
  Vertex v = 0;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Simple undirected graph on vertices 0..n-1. Edges are stored as pairs
/// u < v sorted lexicographically; the position in that order is the edge
/// index used by every EdgeVector over this graph. Immutable after
/// construction.
class Graph {
 public:
  Graph() = default;

  /// Canonicalizes (swaps u > v, sorts). Throws InvalidInput on self-loops,
  /// duplicate edges or out-of-range endpoints.
  Graph(std::size_t n, std::vector<Edge> edges);

  std::size_t vertex_count() const noexcept { return n_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const Edge& edge(EdgeId e) const { return edges_[e]; }

  /// Sorted neighbor list of v.
  std::span<const Vertex> neighbors(Vertex v) const {
    return {neighbors_.data() + offsets_[v], neighbors_.data() + offsets_[v + 1]};
  }
  /// Edge ids parallel to neighbors(v).
  std::span<const EdgeId> incident_edges(Vertex v) const {
    return {incident_.data() + offsets_[v], incident_.data() + offsets_[v + 1]};
  }
  std::size_t degree(Vertex v) const { return offsets_[v + 1] - offsets_[v]; }
  std::size_t min_degree() const;
  std::size_t max_degree() const;

  std::optional<EdgeId> edge_id(Vertex u, Vertex v) const;
  bool adjacent(Vertex u, Vertex v) const { return edge_id(u, v).has_value(); }

  /// Component label per vertex, labels numbered by smallest member.
  std::vector<std::uint32_t> component_labels() const;
  std::size_t component_count() const;
  bool connected() const { return component_count() <= 1; }
  bool is_bipartite() const;

  /// Edge vector with every edge set.
  EdgeVector all_edges() const;
  /// Star cut of v: every edge incident to v.
  EdgeVector star(Vertex v) const;
  /// Edges of G[A, B] where side[v] != 0 marks A.
  EdgeVector cut(std::span<const std::uint8_t> side) const;
  /// Edge vector of a vertex sequence's consecutive pairs (closed adds last-first).
  EdgeVector path_edges(std::span<const Vertex> order, bool closed) const;

  friend bool operator==(const Graph& a, const Graph& b) { return a.n_ == b.n_ && a.edges_ == b.edges_; }

 private:
  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_{0};
  std::vector<Vertex> neighbors_;
  std::vector<EdgeId> incident_;
};

/// Induced subgraph together with the map back to host vertex ids.
struct InducedSubgraph {
  Graph graph;
  std::vector<Vertex> original;  // local id -> host id
  std::vector<std::int64_t> local;  // host id -> local id, -1 if absent
};

InducedSubgraph induced_subgraph(const Graph& g, std::span<const Vertex> keep);

/// Same vertex set, keeping only the edges in r.
Graph edge_subgraph(const Graph& g, const EdgeVector& r);

// Generators.

struct RandomGraphSpec {
  std::size_t n = 0;
  double p = 0.0;
  std::uint64_t seed = 0;
};

/// G(n, p): pairs visited in lexicographic order, each kept with probability p.
Graph gnp_generate(const RandomGraphSpec& spec);

/// Vertices 0..n-1 with i ~ i +- s (mod n) for each s in the connection set.
Graph circulant(std::size_t n, std::span<const std::size_t> connections);

Graph complete_graph(std::size_t n);
Graph cycle_graph(std::size_t n);
Graph path_graph(std::size_t n);
Graph star_graph(std::size_t leaves);
Graph petersen_graph();

/// Adds random non-edges at low-degree vertices until the minimum degree is at
/// least target_min_degree (which must be below n).
Graph densify_min_degree(const Graph& g, std::size_t target_min_degree, std::uint64_t seed);

/// Random graph process on n vertices stopped at the first edge count where
/// the minimum degree reaches min_degree.
Graph random_process_until_min_degree(std::size_t n, std::size_t min_degree, std::uint64_t seed);

// cyclespan-v1 text format: optional '#' comment lines, then "n m", then m
// lines "u v". Writes are canonical (sorted, u < v).

Graph parse_graph(std::istream& in);
Graph read_graph(const std::filesystem::path& path);
void format_graph(const Graph& g, std::ostream& out);
void write_graph(const Graph& g, const std::filesystem::path& path);

/// Edge list "u v" per line referencing g's edges; stops at a line "---".
EdgeVector parse_edge_list(const Graph& g, std::istream& in);
EdgeVector read_edge_list(const Graph& g, const std::filesystem::path& path);
void format_edge_list(const Graph& g, const EdgeVector& r, std::ostream& out);

}  // namespace cyclespan
