#pragma once

#include <cmath>
#include <cstdint>

namespace sarc {

// SplitMix64 finalizer (Steele, Lea, Flood). Used both as the core generator
// and as the avalanche mix for deriving sub-stream seeds.
inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Counter-based pseudorandom stream. All randomness in the repo flows through
// caller-provided streams, so identical seeds reproduce runs bit-for-bit.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : state_(seed) {}

  // Independent sub-stream addressed by (master_seed, iteration, stream_id).
  static RngStream substream(std::uint64_t master_seed, std::uint64_t iteration,
                             std::uint64_t stream_id) {
    std::uint64_t h = master_seed;
    h = mix64(h ^ (0xA0761D6478BD642FULL * (iteration + 1)));
    h = mix64(h ^ (0xE7037ED1A0B428DBULL * (stream_id + 1)));
    return RngStream(h);
  }

  std::uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ULL;
    return mix64(state_);
  }

  // Uniform on [0,1) with 53 random bits.
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Standard normal via Box-Muller; two uniforms per draw, no caching, so the
  // mapping from stream state to output is stateless and reproducible.
  double next_gaussian() {
    const double u1 = next_double();
    const double u2 = next_double();
    const double r = std::sqrt(-2.0 * std::log1p(-u1));
    return r * std::cos(6.283185307179586476925286766559 * u2);
  }

  // Laplace(0, b) by inverse CDF.
  double next_laplace(double b) {
    const double u = next_double() - 0.5;
    const double mag = -b * std::log1p(-2.0 * std::fabs(u));
    return u < 0.0 ? -mag : mag;
  }

  // Uniform integer in [0, bound) by rejection; bound >= 1.
  std::uint64_t next_below(std::uint64_t bound) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t v = next_u64();
    while (v >= limit) v = next_u64();
    return v % bound;
  }

 private:
  std::uint64_t state_;
};

}  // namespace sarc
