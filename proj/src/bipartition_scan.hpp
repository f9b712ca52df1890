#pragma once

#include <bit>
#include <cstdint>
#include <vector>

#include "cyclespan/errors.hpp"
#include "cyclespan/graph.hpp"

namespace cyclespan::detail {

inline constexpr std::size_t kMaxScanVertices = 31;

/// Walks every bipartition (A, B) of V with the last vertex pinned to B, in
/// Gray-code order starting from A = {}. For each one, calls
/// visit(A mask, e_G(A, B), e_R(A, B)); visit returns false to stop early.
/// Each step updates both counts in O(1) from neighborhood bitmasks.
template <typename Visit>
void scan_bipartitions(const Graph& g, const EdgeVector& r, Visit&& visit) {
  const std::size_t n = g.vertex_count();
  if (n > kMaxScanVertices) throw LimitExceeded("bipartition scan supports at most 31 vertices");
  if (n == 0) return;
  std::vector<std::uint32_t> gmask(n, 0), rmask(n, 0);
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const Edge& ed = g.edge(e);
    gmask[ed.u] |= 1U << ed.v;
    gmask[ed.v] |= 1U << ed.u;
    if (r.test(e)) {
      rmask[ed.u] |= 1U << ed.v;
      rmask[ed.v] |= 1U << ed.u;
    }
  }
  std::uint32_t a = 0;
  long long eg = 0, er = 0;
  if (!visit(a, eg, er)) return;
  const std::uint64_t total = std::uint64_t{1} << (n - 1);
  for (std::uint64_t t = 1; t < total; ++t) {
    const int v = std::countr_zero(t);
    const std::uint32_t bit = 1U << v;
    const std::uint32_t others = a & ~bit;
    const int g_in = std::popcount(gmask[v] & others);
    const int g_out = std::popcount(gmask[v]) - g_in;
    const int r_in = std::popcount(rmask[v] & others);
    const int r_out = std::popcount(rmask[v]) - r_in;
    if (a & bit) {
      eg += g_in - g_out;
      er += r_in - r_out;
    } else {
      eg += g_out - g_in;
      er += r_out - r_in;
    }
    a ^= bit;
    if (!visit(a, eg, er)) return;
  }
}

inline std::vector<std::uint8_t> mask_to_sides(std::uint32_t mask, std::size_t n) {
  std::vector<std::uint8_t> side(n, 0);
  for (std::size_t v = 0; v < n; ++v) side[v] = (mask >> v) & 1U;
  return side;
}

}  // namespace cyclespan::detail
