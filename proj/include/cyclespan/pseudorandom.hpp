#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cyclespan/graph.hpp"

namespace cyclespan {

enum class CheckMode { automatic, exhaustive, sampled };

const char* to_string(CheckMode mode);

// Jumbledness: |e(U) - p C(|U|,2)| <= beta |U| for every vertex set U.

struct JumbledResult {
  bool pass = true;
  CheckMode mode = CheckMode::exhaustive;
  std::size_t subsets_checked = 0;
  /// min over checked U of beta|U| - |e(U) - p C(|U|,2)|; negative on failure.
  double worst_slack = 0.0;
  /// The checked set with the smallest slack (a violating set on failure).
  std::vector<Vertex> witness;
};

/// Checks all 2^n subsets; refuses (LimitExceeded) above max_vertices.
JumbledResult is_jumbled_exhaustive(const Graph& g, double p, double beta, std::size_t max_vertices = 20);

/// Uniform random subsets of uniformly random size in [1, n].
JumbledResult is_jumbled_sampled(const Graph& g, double p, double beta, std::size_t samples, std::uint64_t seed);

/// Slack beta|U| - |e(U) - p C(|U|,2)| of one set, computed directly.
double jumbled_slack(const Graph& g, const std::vector<Vertex>& subset, double p, double beta);

struct SpectralEstimate {
  /// Largest absolute eigenvalue of the adjacency operator on the space
  /// orthogonal to the all-ones vector.
  double lambda = 0.0;
  bool converged = false;
  std::size_t iterations = 0;
  /// The estimate certifies (d/n, lambda)-jumbledness only for regular graphs.
  bool regular = false;
  double degree = 0.0;
};

/// Power iteration on A^2 restricted to the complement of the all-ones
/// vector, re-projected every step. Stops when the residual of the Rayleigh
/// quotient drops below tolerance (relative) or the iteration budget runs out.
SpectralEstimate spectral_beta(const Graph& g, std::size_t max_iterations = 20000, double tolerance = 1e-10,
                               std::uint64_t seed = 1);

struct ExpansionResult {
  bool pass = true;
  CheckMode mode = CheckMode::exhaustive;
  std::size_t sets_checked = 0;
  std::vector<Vertex> witness;  // S with |N(S)| < d|S|
};

/// (s, d)-expansion: |N(S)| >= d|S| for all |S| <= s, N(S) the external
/// neighborhood. automatic is exhaustive when sum_{k<=s} C(n,k) <= budget.
ExpansionResult expansion_check(const Graph& g, std::size_t s, double d, CheckMode mode = CheckMode::automatic,
                                std::size_t samples = 10000, std::uint64_t seed = 1, double budget = 1e6);

struct CutDensityResult {
  bool pass = true;
  CheckMode mode = CheckMode::exhaustive;
  std::size_t partitions_checked = 0;
  std::vector<Vertex> witness;  // side A of a violating partition
};

/// e(A, B) >= (1 - 6 eps) p |A||B| over partitions with both sides non-empty.
/// automatic is exhaustive for n <= exhaustive_limit. Sampled mode checks all
/// star partitions ({v}, rest) plus `samples` random ones.
CutDensityResult cut_density_check(const Graph& g, double p, double eps, CheckMode mode = CheckMode::automatic,
                                   std::size_t samples = 10000, std::uint64_t seed = 1,
                                   std::size_t exhaustive_limit = 24);

/// Size above which jumbledness forces an edge between any two disjoint
/// sets: floor(4 beta / p) + 1. Throws InvalidInput when p <= 0.
std::size_t pair_edge_threshold(double p, double beta);

struct PairEdgeResult {
  bool pass = true;
  bool vacuous = false;  // k > n/2: no two disjoint k-sets exist
  CheckMode mode = CheckMode::exhaustive;
  std::size_t sets_checked = 0;
  std::vector<Vertex> witness_a, witness_b;  // disjoint k-sets with no edge between
};

/// Every two disjoint k-sets span an edge. For each k-set A the check looks at
/// the vertices outside A with no neighbor in A; some B exists iff there are
/// at least k of them. Exhaustive over all A when C(n,k) <= budget, otherwise
/// over `samples` random A.
PairEdgeResult pair_edge_check(const Graph& g, std::size_t k, CheckMode mode = CheckMode::automatic,
                               std::size_t samples = 10000, std::uint64_t seed = 1, double budget = 1e6);

struct DiameterResult {
  bool pass = true;
  std::size_t trials = 0;
  std::vector<Vertex> witness_removed;
  Vertex witness_from = 0, witness_to = 0;
  std::optional<std::size_t> witness_distance;  // nullopt when disconnected
};

/// Random trials: S of size uniform in [0, s_max], x != y outside S, and a BFS
/// in r - S must reach y from x within path_len steps.
DiameterResult diameter_robustness_check(const Graph& g, const EdgeVector& r, std::size_t s_max,
                                         std::size_t path_len, std::size_t trials, std::uint64_t seed);

struct CertifyOptions {
  std::optional<double> p;      // default: edge density
  std::optional<double> beta;   // default: 2 sqrt(np)
  bool spectral_beta = false;   // use the spectral estimate as beta, p = d/n
  double eps = 0.01;
  CheckMode mode = CheckMode::automatic;
  std::size_t samples = 10000;
  std::uint64_t seed = 1;
  std::optional<std::size_t> expansion_s;
  std::optional<double> expansion_d;
};

struct PseudorandomReport {
  std::size_t n = 0, m = 0;
  double p = 0.0;
  double beta = 0.0;
  std::string beta_source;
  std::size_t min_degree = 0;
  double min_degree_bound = 0.0;
  bool min_degree_pass = false;
  JumbledResult jumbled;
  std::size_t expansion_s = 0;
  double expansion_d = 0.0;
  ExpansionResult expansion;
  CutDensityResult cut_density;
  std::size_t pair_k = 0;
  PairEdgeResult pair;
  std::optional<SpectralEstimate> spectral;

  bool all_pass() const;
  /// key: value lines.
  std::string to_text() const;
};

PseudorandomReport certify_pseudorandom(const Graph& g, const CertifyOptions& options);

}  // namespace cyclespan
