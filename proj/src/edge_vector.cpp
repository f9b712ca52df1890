#include "cyclespan/edge_vector.hpp"

#include <algorithm>
#include <charconv>

#include "cyclespan/errors.hpp"

namespace cyclespan {

namespace {

void require_same_size(const EdgeVector& a, const EdgeVector& b) {
  if (a.size() != b.size()) {
    throw DimensionError("edge vectors over " + std::to_string(a.size()) + " and " +
                         std::to_string(b.size()) + " edges");
  }
}

}  // namespace

EdgeVector EdgeVector::from_indices(std::size_t edge_count, std::span<const std::size_t> indices) {
  EdgeVector v(edge_count);
  for (std::size_t i : indices) {
    if (i >= edge_count) throw DimensionError("edge index " + std::to_string(i) + " out of range");
    v.set(i);
  }
  return v;
}

std::size_t EdgeVector::weight() const noexcept {
  std::size_t total = 0;
  for (std::uint64_t w : words_) total += static_cast<std::size_t>(std::popcount(w));
  return total;
}

bool EdgeVector::none() const noexcept {
  return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
}

std::optional<std::size_t> EdgeVector::lowest() const noexcept {
  for (std::size_t w = 0; w < words_.size(); ++w) {
    if (words_[w] != 0) return w * 64 + static_cast<std::size_t>(std::countr_zero(words_[w]));
  }
  return std::nullopt;
}

std::vector<std::size_t> EdgeVector::indices() const {
  std::vector<std::size_t> out;
  for_each([&](std::size_t i) { out.push_back(i); });
  return out;
}

EdgeVector& EdgeVector::operator^=(const EdgeVector& other) {
  require_same_size(*this, other);
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= other.words_[w];
  return *this;
}

std::size_t common_weight(const EdgeVector& a, const EdgeVector& b) {
  require_same_size(a, b);
  std::size_t total = 0;
  for (std::size_t w = 0; w < a.words_.size(); ++w) {
    total += static_cast<std::size_t>(std::popcount(a.words_[w] & b.words_[w]));
  }
  return total;
}

bool dot(const EdgeVector& a, const EdgeVector& b) {
  require_same_size(a, b);
  std::uint64_t acc = 0;
  for (std::size_t w = 0; w < a.words_.size(); ++w) acc ^= a.words_[w] & b.words_[w];
  return (std::popcount(acc) & 1) != 0;
}

std::string EdgeVector::to_hex() const {
  static constexpr char digits[] = "0123456789abcdef";
  std::string out = std::to_string(edge_count_) + ":";
  for (std::uint64_t w : words_) {
    for (int shift = 60; shift >= 0; shift -= 4) out.push_back(digits[(w >> shift) & 0xF]);
  }
  return out;
}

EdgeVector EdgeVector::from_hex(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) throw InvalidInput("hex edge vector: missing ':'");
  std::size_t count = 0;
  const auto head = text.substr(0, colon);
  const auto [ptr, ec] = std::from_chars(head.data(), head.data() + head.size(), count);
  if (ec != std::errc{} || ptr != head.data() + head.size()) {
    throw InvalidInput("hex edge vector: bad edge count");
  }
  EdgeVector v(count);
  const auto body = text.substr(colon + 1);
  if (body.size() != v.words_.size() * 16) throw InvalidInput("hex edge vector: wrong length");
  for (std::size_t w = 0; w < v.words_.size(); ++w) {
    std::uint64_t value = 0;
    const auto chunk = body.substr(w * 16, 16);
    const auto [p, e] = std::from_chars(chunk.data(), chunk.data() + 16, value, 16);
    if (e != std::errc{} || p != chunk.data() + 16) throw InvalidInput("hex edge vector: bad digit");
    v.words_[w] = value;
  }
  if (count % 64 != 0 && !v.words_.empty() && (v.words_.back() >> (count % 64)) != 0) {
    throw InvalidInput("hex edge vector: bits set beyond edge count");
  }
  return v;
}

void Gf2Basis::check(const EdgeVector& v) const {
  if (v.size() != edge_count_) {
    throw DimensionError("vector over " + std::to_string(v.size()) + " edges, basis over " +
                         std::to_string(edge_count_));
  }
}

EdgeVector Gf2Basis::reduce(const EdgeVector& v) const {
  check(v);
  EdgeVector r = v;
  for (std::size_t i = 0; i < vectors_.size(); ++i) {
    if (r.test(pivots_[i])) r ^= vectors_[i];
  }
  return r;
}

bool Gf2Basis::in_span(const EdgeVector& v) const { return reduce(v).none(); }

bool Gf2Basis::insert(const EdgeVector& v) {
  check(v);
  EdgeVector residual = v;
  EdgeVector origin(edge_count_);
  origin.set(rank());
  for (std::size_t i = 0; i < vectors_.size(); ++i) {
    if (residual.test(pivots_[i])) {
      residual ^= vectors_[i];
      origin ^= origins_[i];
    }
  }
  const auto pivot = residual.lowest();
  if (!pivot) return false;

  // Only vectors with a smaller pivot can have the new pivot bit set.
  for (std::size_t i = 0; i < vectors_.size() && pivots_[i] < *pivot; ++i) {
    if (vectors_[i].test(*pivot)) {
      vectors_[i] ^= residual;
      origins_[i] ^= origin;
    }
  }
  const auto at = std::lower_bound(pivots_.begin(), pivots_.end(), *pivot) - pivots_.begin();
  pivots_.insert(pivots_.begin() + at, *pivot);
  vectors_.insert(vectors_.begin() + at, std::move(residual));
  origins_.insert(origins_.begin() + at, std::move(origin));
  return true;
}

std::optional<std::vector<std::size_t>> Gf2Basis::solve_combination(const EdgeVector& target) const {
  check(target);
  std::vector<std::size_t> chosen;
  EdgeVector r = target;
  for (std::size_t i = 0; i < vectors_.size(); ++i) {
    if (r.test(pivots_[i])) {
      r ^= vectors_[i];
      chosen.push_back(i);
    }
  }
  if (!r.none()) return std::nullopt;
  return chosen;
}

std::optional<std::vector<std::size_t>> Gf2Basis::solve_inserted(const EdgeVector& target) const {
  const auto chosen = solve_combination(target);
  if (!chosen) return std::nullopt;
  EdgeVector ids(edge_count_);
  for (std::size_t i : *chosen) ids ^= origins_[i];
  return ids.indices();
}

std::vector<std::size_t> Gf2Basis::free_columns() const {
  std::vector<std::size_t> out;
  out.reserve(edge_count_ - rank());
  std::size_t next_pivot = 0;
  for (std::size_t c = 0; c < edge_count_; ++c) {
    if (next_pivot < pivots_.size() && pivots_[next_pivot] == c) {
      ++next_pivot;
    } else {
      out.push_back(c);
    }
  }
  return out;
}

EdgeVector Gf2Basis::complement_vector(std::size_t free_column) const {
  if (free_column >= edge_count_ || std::binary_search(pivots_.begin(), pivots_.end(), free_column)) {
    throw InvalidInput("column " + std::to_string(free_column) + " is not a free column");
  }
  EdgeVector x(edge_count_);
  x.set(free_column);
  for (std::size_t i = 0; i < vectors_.size() && pivots_[i] < free_column; ++i) {
    if (vectors_[i].test(free_column)) x.set(pivots_[i]);
  }
  return x;
}

Gf2Basis Gf2Basis::orthogonal_complement() const {
  Gf2Basis out(edge_count_);
  for (std::size_t f : free_columns()) out.insert(complement_vector(f));
  return out;
}

}  // namespace cyclespan
