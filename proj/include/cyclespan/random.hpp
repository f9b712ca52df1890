#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <utility>
#include <vector>

namespace cyclespan {

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Derives a child seed from a root seed and a path of integer labels, e.g.
/// (stage id, iteration, attempt). Each label is folded in with mix64, so
/// distinct paths give independent streams and a run replays bit-identically.
inline std::uint64_t derive_seed(std::uint64_t root, std::initializer_list<std::uint64_t> path) {
  std::uint64_t s = mix64(root);
  for (std::uint64_t label : path) s = mix64(s ^ mix64(label + 0x632be59bd9b4e019ULL));
  return s;
}

/// Seeded generator with distribution helpers that do not depend on the
/// standard library's implementation-defined distributions, so streams are
/// reproducible across toolchains.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return uniform() < p; }

  bool coin() { return (next() >> 63) != 0; }

  /// Uniform in [0, bound); bound must be positive.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
    std::uint64_t x = next();
    while (x >= limit) x = next();
    return x % bound;
  }

  /// Uniform in [lo, hi].
  std::uint64_t between(std::uint64_t lo, std::uint64_t hi) { return lo + below(hi - lo + 1); }

  /// Independent fair bits, one per entry, drawn 64 at a time.
  void fill_bits(std::vector<std::uint8_t>& out) {
    std::uint64_t word = 0;
    for (std::size_t i = 0; i < out.size(); ++i) {
      if (i % 64 == 0) word = next();
      out[i] = static_cast<std::uint8_t>((word >> (i % 64)) & 1U);
    }
  }

  template <typename T>
  void shuffle(std::vector<T>& items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::swap(items[i - 1], items[below(i)]);
    }
  }

  /// Uniform random subset of {0..n-1} of the given size, in random order.
  std::vector<std::uint32_t> sample(std::uint32_t n, std::uint32_t size) {
    std::vector<std::uint32_t> all(n);
    for (std::uint32_t i = 0; i < n; ++i) all[i] = i;
    for (std::uint32_t i = 0; i < size; ++i) {
      std::swap(all[i], all[i + below(n - i)]);
    }
    all.resize(size);
    return all;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace cyclespan
