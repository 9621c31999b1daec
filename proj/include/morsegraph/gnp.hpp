#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>

#include "morsegraph/error.hpp"
#include "morsegraph/graph.hpp"

namespace morsegraph {

/// splitmix64 (Steele, Lea, Flood). Used only to expand seeds.
class SplitMix64 {
 public:
  explicit constexpr SplitMix64(std::uint64_t state) : state_(state) {}

  constexpr std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

/// xoshiro256** 1.0 (Blackman, Vigna). 256-bit state, period 2^256 - 1.
class Xoshiro256StarStar {
 public:
  using result_type = std::uint64_t;

  /// State words are four successive splitmix64 outputs starting from `seed`.
  explicit constexpr Xoshiro256StarStar(std::uint64_t seed) {
    SplitMix64 sm(seed);
    for (auto& word : s_) word = sm.next();
  }

  static constexpr Xoshiro256StarStar from_state(std::uint64_t s0, std::uint64_t s1, std::uint64_t s2,
                                                std::uint64_t s3) {
    Xoshiro256StarStar g(0);
    g.s_[0] = s0;
    g.s_[1] = s1;
    g.s_[2] = s2;
    g.s_[3] = s3;
    return g;
  }

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  constexpr result_type operator()() {
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  /// Uniform double in [0,1) from the top 53 bits.
  double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

 private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

  std::uint64_t s_[4]{};
};

struct Seed {
  std::uint64_t master = 0;
};

inline constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ULL;

/// Seed fed to the generator for one trial: master XOR (trial_index + 1) * golden gamma.
constexpr std::uint64_t trial_stream_seed(Seed seed, std::uint64_t trial_index) {
  return seed.master ^ ((trial_index + 1) * kGoldenGamma);
}

constexpr Xoshiro256StarStar trial_generator(Seed seed, std::uint64_t trial_index) {
  return Xoshiro256StarStar(trial_stream_seed(seed, trial_index));
}

struct DensityPoint {
  std::size_t n = 0;
  double c = 0.0;
  double p = 0.0;
};

/// p = min(1, c * sqrt(ln n / n)).
inline DensityPoint density_from_coefficient(double c, std::size_t n) {
  if (n < 2) throw Error(ErrorKind::InvalidParameter, "density schedule needs n >= 2");
  if (!(c >= 0.0) || !std::isfinite(c)) throw Error(ErrorKind::InvalidParameter, "coefficient must be >= 0");
  const double nd = static_cast<double>(n);
  const double p = std::min(1.0, c * std::sqrt(std::log(nd) / nd));
  return {n, c, p};
}

/// Inclusion threshold T such that (U < T) <=> (U / 2^64 < p) for every 64-bit U.
/// Only meaningful for p < 1.
inline std::uint64_t edge_threshold(double p) {
  return static_cast<std::uint64_t>(std::ceil(std::ldexp(p, 64)));
}

/// One G(n,p) draw. Pairs (u,v), u < v, are visited in lexicographic order
/// and each consumes exactly one 64-bit output of the trial generator.
inline Graph sample_gnp(std::size_t n, double p, Seed seed, std::uint64_t trial_index = 0) {
  if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorKind::InvalidParameter, "edge probability must lie in [0,1]");
  if (n > std::numeric_limits<Vertex>::max()) throw Error(ErrorKind::InvalidParameter, "n too large");
  GraphBuilder builder(n);
  auto rng = trial_generator(seed, trial_index);
  const bool all = p >= 1.0;
  const std::uint64_t threshold = all ? 0 : edge_threshold(p);
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) {
      const std::uint64_t draw = rng();
      if (all || draw < threshold) builder.add_edge_unchecked(u, v);
    }
  }
  return std::move(builder).finish();
}

}  // namespace morsegraph
