#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace fedgo::numerics {

/// One SplitMix64 step. Used for seed mixing, never as a long-run generator.
std::uint64_t splitmix64(std::uint64_t& state);

/// Collapses (seed, salt) into a fresh well-mixed seed.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt);

/// FNV-1a hash of a purpose tag.
std::uint64_t tag_hash(std::string_view tag);

/// Deterministic child-stream seed for (master, purpose, index pair).
/// Every entity in a run (client k at round t, the server, a data sampler)
/// owns the stream derived from its own tag, so results cannot depend on
/// scheduling order.
std::uint64_t derive_seed(std::uint64_t master, std::string_view tag,
                          std::uint64_t a = 0, std::uint64_t b = 0);

/// Seeded random stream. All draws are mapped from raw mt19937_64 words with
/// fixed arithmetic (no std::*_distribution), so sequences are bit-identical
/// across platforms and standard libraries.
class RngStream {
public:
  explicit RngStream(std::uint64_t seed);

  std::uint64_t next_u64();

  /// Uniform integer on [0, n). Rejection sampling, no modulo bias.
  std::uint64_t below(std::uint64_t n);

  /// Uniform on [0, 1) with 53 random bits.
  double uniform01();

  double uniform(double lo, double hi);

  /// Standard normal via Box-Muller; the paired draw is cached.
  double gaussian();

  template <typename T>
  void shuffle(std::vector<T>& items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::swap(items[i - 1], items[below(i)]);
    }
  }

private:
  std::mt19937_64 engine_;
  double cached_gaussian_ = 0.0;
  bool has_cached_gaussian_ = false;
};

} // namespace fedgo::numerics
