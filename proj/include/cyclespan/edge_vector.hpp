#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cyclespan {

/// A subset of the edges of a fixed host graph, bit-packed over the host's
/// edge indices. Addition is symmetric difference.
class EdgeVector {
 public:
  EdgeVector() = default;
  explicit EdgeVector(std::size_t edge_count)
      : edge_count_(edge_count), words_((edge_count + 63) / 64, 0) {}

  static EdgeVector from_indices(std::size_t edge_count, std::span<const std::size_t> indices);

  std::size_t size() const noexcept { return edge_count_; }

  bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1U; }
  void set(std::size_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(std::size_t i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
  void flip(std::size_t i) { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }

  std::size_t weight() const noexcept;
  bool none() const noexcept;
  std::optional<std::size_t> lowest() const noexcept;
  std::vector<std::size_t> indices() const;

  template <typename F>
  void for_each(F&& f) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t bits = words_[w];
      while (bits != 0) {
        f(w * 64 + static_cast<std::size_t>(std::countr_zero(bits)));
        bits &= bits - 1;
      }
    }
  }

  EdgeVector& operator^=(const EdgeVector& other);
  friend EdgeVector operator^(EdgeVector a, const EdgeVector& b) { return a ^= b; }
  friend bool operator==(const EdgeVector&, const EdgeVector&) = default;

  /// Number of edges present in both vectors.
  friend std::size_t common_weight(const EdgeVector& a, const EdgeVector& b);
  /// Inner product over GF(2): parity of the intersection.
  friend bool dot(const EdgeVector& a, const EdgeVector& b);

  std::span<const std::uint64_t> words() const noexcept { return words_; }

  /// "<edge_count>:<hex>" where hex lists the 64-bit words in index order,
  /// 16 lowercase digits each.
  std::string to_hex() const;
  static EdgeVector from_hex(std::string_view text);

 private:
  std::size_t edge_count_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Basis of a subspace of the edge space in reduced echelon form. The pivot of
/// a vector is its lowest set bit and no other basis vector has that bit set,
/// so vectors are kept sorted by pivot and reduction is a single pass.
///
/// The basis also remembers, for every stored vector, which accepted inserts
/// it is the sum of; solve_inserted uses that to express a target in terms of
/// the original inserted vectors rather than the reduced ones.
class Gf2Basis {
 public:
  explicit Gf2Basis(std::size_t edge_count = 0) : edge_count_(edge_count) {}

  std::size_t edge_count() const noexcept { return edge_count_; }
  std::size_t rank() const noexcept { return vectors_.size(); }
  const std::vector<EdgeVector>& vectors() const noexcept { return vectors_; }
  const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }

  /// Adds v to the basis if it is outside the span. Returns whether the rank
  /// grew; an accepted vector gets the next insertion id.
  bool insert(const EdgeVector& v);

  /// v plus the unique combination of basis vectors that clears every pivot.
  EdgeVector reduce(const EdgeVector& v) const;
  bool in_span(const EdgeVector& v) const;

  /// Indices into vectors() whose sum is target, or nullopt when target is
  /// outside the span.
  std::optional<std::vector<std::size_t>> solve_combination(const EdgeVector& target) const;

  /// Insertion ids (0-based, counting accepted inserts only) whose original
  /// vectors sum to target.
  std::optional<std::vector<std::size_t>> solve_inserted(const EdgeVector& target) const;

  /// Edge indices that are not pivots, ascending.
  std::vector<std::size_t> free_columns() const;

  /// The vector of the orthogonal complement attached to a free column f:
  /// bit f set, plus pivot p_i for every basis vector with bit f set.
  EdgeVector complement_vector(std::size_t free_column) const;

  /// Basis of {x : dot(x, b) = 0 for all b in span}; rank = edge_count - rank.
  Gf2Basis orthogonal_complement() const;

 private:
  void check(const EdgeVector& v) const;

  std::size_t edge_count_;
  std::vector<EdgeVector> vectors_;
  std::vector<std::size_t> pivots_;
  std::vector<EdgeVector> origins_;
};

}  // namespace cyclespan
