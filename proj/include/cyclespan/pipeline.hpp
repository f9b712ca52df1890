#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cyclespan/certificate.hpp"
#include "cyclespan/edge_vector.hpp"
#include "cyclespan/graph.hpp"
#include "cyclespan/hamilton.hpp"
#include "cyclespan/switcher.hpp"

namespace cyclespan {

enum class Variant { automatic, dense, sparse };

const char* to_string(Variant variant);
Variant parse_variant(const std::string& name);

struct PipelineConfig {
  double eps = 0.01;
  /// automatic picks dense iff min degree >= n/2 + c_const.
  double c_const = 5.0;
  /// Switcher parameters; unset means the variant's default.
  std::optional<std::size_t> ell;
  std::optional<double> d;
  std::optional<std::size_t> s;
  Variant variant = Variant::automatic;
  /// automatic: dense-distance2 for the dense variant, else bfs-greedy.
  Connector connector = Connector::automatic;
  /// Switcher attempts per refutation (fresh start edge each time).
  std::size_t retries = 8;
  std::uint64_t seed = 1;
  /// Direct Hamilton cycles tried before the switcher route.
  std::size_t shortcut_attempts = 2;
  /// Certificate checks inside the loop.
  std::size_t c3_samples = 64;
  std::size_t c3_exhaustive_limit = 12;
  std::size_t coset_exhaustive_limit = 12;
  std::size_t coset_restarts = 4;
  HamiltonOptions hamilton;
  /// Keep every iteration's r in its IterationRecord (for auditing).
  bool keep_certificates = false;
};

/// Parameters after applying the variant defaults to a concrete graph.
struct ResolvedParameters {
  Variant variant = Variant::dense;
  std::size_t ell = 10;
  double d = 2.0;
  std::size_t s = 1;
  Connector connector = Connector::dense_distance2;
};

ResolvedParameters resolve_parameters(const Graph& g, const PipelineConfig& cfg);

enum class Route { seed, shortcut, switcher };

const char* to_string(Route route);

struct RefutationReport {
  std::optional<HamiltonCycle> cycle;
  Route route = Route::shortcut;
  /// Stage that failed last when no cycle was produced.
  std::string failed_stage;
  std::string detail;
  std::size_t odd_cycle_length = 0;
  std::size_t switcher_size = 0;
  std::size_t switcher_retries = 0;
  std::uint64_t hamilton_work = 0;
  std::uint64_t posa_rotations = 0;
};

/// Steps S1-S5: a Hamilton cycle H with dot(H, r) = 1. Tries a few direct
/// Hamilton cycles first, then builds switchers: odd cycle, connecting paths,
/// a Hamilton path H' between the anchors avoiding the rest of the switcher,
/// and the switcher traversal whose parity complements H'. `stream` selects
/// an independent random stream (the pipeline passes the iteration).
RefutationReport odd_intersection_hamilton(const Graph& g, const EdgeVector& r, const PipelineConfig& cfg,
                                           std::uint64_t stream = 0);

struct IterationRecord {
  std::size_t index = 0;
  Route route = Route::seed;
  std::size_t certificate_weight = 0;
  bool c3_pass = false;
  std::size_t odd_cycle_length = 0;
  std::size_t switcher_size = 0;
  std::size_t switcher_retries = 0;
  std::uint64_t hamilton_work = 0;
  /// Size zero unless PipelineConfig::keep_certificates.
  EdgeVector certificate;
};

struct DecompositionResult {
  std::size_t n = 0, m = 0;
  std::vector<HamiltonCycle> basis;
  std::size_t rank_achieved = 0;
  std::size_t rank_target = 0;
  bool success = false;
  Variant variant = Variant::dense;
  std::string failure_stage;
  std::string failure_detail;
  std::vector<IterationRecord> iterations;
  std::size_t switcher_retries = 0;
  std::uint64_t posa_rotations = 0;
};

/// Greedy Hamilton-cycle basis of the cycle space: seed with one Hamilton
/// cycle, then repeatedly take a non-cut r orthogonal to everything found,
/// push it to a heavy coset member and add a Hamilton cycle meeting it oddly.
/// Each such cycle raises the rank by one.
///
/// Even n: non-bipartite graphs fail at stage "parity-obstruction" (every sum
/// of Hamilton cycles then has even size, missing the odd cycles); bipartite
/// graphs stop at stage "undetermined".
DecompositionResult hamilton_basis(const Graph& g, const PipelineConfig& cfg);

/// Indices into result.basis whose cycles sum to target, or nullopt when
/// target is outside the cycle space. Throws InvalidInput unless the result
/// is successful.
std::optional<std::vector<std::size_t>> express_cycle(const Graph& g, const EdgeVector& target,
                                                      const DecompositionResult& result);

struct SpanVerdict {
  bool spans = false;
  std::size_t rank = 0;
  std::size_t target_rank = 0;
  std::size_t cycles = 0;
};

/// Rank of all Hamilton cycles against m - n + c, by enumeration.
SpanVerdict verify_span_bruteforce(const Graph& g, std::size_t max_vertices = 14);

/// Header key: value lines, "basis:" with one cycle per line, then
/// "iterations:" with one record per line.
void format_decomposition(const DecompositionResult& result, std::ostream& out);
DecompositionResult parse_decomposition(const Graph& g, std::istream& in);

}  // namespace cyclespan
