#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cyclespan/edge_vector.hpp"
#include "cyclespan/edgespace.hpp"
#include "cyclespan/graph.hpp"
#include "cyclespan/hamilton.hpp"
#include "cyclespan/pseudorandom.hpp"

namespace cyclespan {

// An obstruction certificate is an edge set r with
//   c1: r != E(G);
//   c2: every Hamilton cycle meets r in an even number of edges;
//   c3: e_r(A,B) >= e_G(A,B)/2 for every bipartition, and r is not a cut.
// Its existence shows the Hamilton cycles do not span the cycle space.

enum class C2Status { not_checked, verified_on_sample, verified_exhaustively };

const char* to_string(C2Status status);

struct Certificate {
  EdgeVector r;
  bool c1_pass = false;

  C2Status c2_status = C2Status::not_checked;
  bool c2_pass = true;  // meaningless while not_checked
  std::vector<Vertex> c2_witness;  // a Hamilton cycle with odd intersection

  CheckMode c3_mode = CheckMode::exhaustive;
  std::size_t c3_partitions_checked = 0;
  bool c3_half_pass = false;  // the half-of-every-cut clause
  bool c3_not_cut = false;    // exact regardless of mode
  std::vector<Vertex> c3_witness;  // side A of a partition violating the half clause
  bool c3_pass() const { return c3_half_pass && c3_not_cut; }

  std::string provenance;

  /// Empty when every checked clause holds, else the first failing clause.
  std::string failure() const;
  bool valid() const { return failure().empty(); }
};

struct VerifyOptions {
  /// automatic: exhaustive for n <= c3_exhaustive_limit, else sampled.
  CheckMode c3_mode = CheckMode::automatic;
  std::size_t c3_exhaustive_limit = 24;
  /// Random bipartitions in sampled mode, on top of the n star cuts.
  std::size_t c3_samples = 10000;
  /// c2 is checked exhaustively when n is at most this.
  std::size_t c2_enumeration_limit = 11;
  std::uint64_t seed = 1;
};

/// Checks every clause independently. Above the enumeration limit c2 is
/// checked against `cycle_sample` when one is given, else left not_checked.
Certificate verify_certificate(const Graph& g, const EdgeVector& r, const VerifyOptions& options = {},
                               std::span<const HamiltonCycle> cycle_sample = {});

/// An element of spanned-perp outside the cut space, or nullopt when spanned
/// is already the whole cycle space. Scans the orthogonal-complement vectors
/// attached to free columns in descending order; one of them is not a cut
/// whenever spanned is a proper subspace, since they span a space of larger
/// dimension than the cut space.
///
/// Throws InvalidInput when a vector of spanned is not in the cycle space
/// (checked only with check_precondition; it costs rank * m).
std::optional<EdgeVector> next_candidate(const Graph& g, const Gf2Basis& spanned, bool check_precondition = true);

struct MaximizeOptions {
  CosetOptions coset;
  VerifyOptions verify;
  /// When sampled c3 finds a cut where r holds less than half, flip r across
  /// it (strictly heavier, same coset), ascend again and re-verify.
  bool improve_on_violation = true;
  std::string provenance = "coset-maximized";
};

/// Heaviest coset member found for r0 + (cut space), verified.
/// Throws InvalidInput when r0 is a cut.
Certificate maximize(const Graph& g, const EdgeVector& r0, const MaximizeOptions& options = {});

/// Edge list of r, a line "---", then key: value lines.
void format_certificate(const Graph& g, const Certificate& cert, std::ostream& out);

}  // namespace cyclespan
