#include "fedgolab/numerics/rng.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace fedgo::numerics {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t state = seed ^ (0x632be59bd9b4e019ULL + salt);
  std::uint64_t out = splitmix64(state);
  state ^= salt;
  return out ^ splitmix64(state);
}

std::uint64_t tag_hash(std::string_view tag) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : tag) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::uint64_t derive_seed(std::uint64_t master, std::string_view tag,
                          std::uint64_t a, std::uint64_t b) {
  std::uint64_t s = mix_seed(master, tag_hash(tag));
  s = mix_seed(s, 0xa0761d6478bd642fULL + a);
  s = mix_seed(s, 0xe7037ed1a0b428dbULL + b);
  return s;
}

RngStream::RngStream(std::uint64_t seed) {
  // mt19937_64 seeded from a SplitMix64 burst; avoids the poor low-entropy
  // seeding of passing small integers directly.
  std::uint64_t state = seed;
  engine_.seed(splitmix64(state));
}

std::uint64_t RngStream::next_u64() { return engine_(); }

std::uint64_t RngStream::below(std::uint64_t n) {
  if (n == 0) return 0;
  const std::uint64_t threshold = (0 - n) % n; // 2^64 mod n
  for (;;) {
    const std::uint64_t r = next_u64();
    if (r >= threshold) return r % n;
  }
}

double RngStream::uniform01() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::uniform(double lo, double hi) {
  return lo + (hi - lo) * uniform01();
}

double RngStream::gaussian() {
  if (has_cached_gaussian_) {
    has_cached_gaussian_ = false;
    return cached_gaussian_;
  }
  // Box-Muller. u1 is shifted into (0, 1] so the log never sees zero.
  const double u1 = 1.0 - uniform01();
  const double u2 = uniform01();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  cached_gaussian_ = radius * std::sin(angle);
  has_cached_gaussian_ = true;
  return radius * std::cos(angle);
}

} // namespace fedgo::numerics
