#ifndef ABRASIM_RNG_HPP
#define ABRASIM_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>

namespace abrasim {

// splitmix64; derives independent stream seeds from one master seed.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

// Named draw streams.  A run uses one stream per random mechanism so the
// sample path of each mechanism depends only on (master seed, stream id),
// never on how draws from the other mechanisms interleave.
enum StreamId : std::uint64_t {
  kLossStream = 0,
  kJitterStream = 1,
  kOutageStream = 2,
};

// mt19937_64 output is pinned by the standard, and the transforms below avoid
// std::*_distribution (whose algorithms are implementation-defined), so a
// seeded run replays bit-identically across toolchains and platforms.
class RandomStream {
 public:
  RandomStream(std::uint64_t master_seed, std::uint64_t stream_id)
      : gen_(splitmix64(master_seed ^ (0x9E3779B97F4A7C15ull * (stream_id + 1)))) {}

  // [0, 1)
  double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  double exponential(double rate) { return -std::log(1.0 - uniform01()) / rate; }

 private:
  std::mt19937_64 gen_;
};

}  // namespace abrasim

#endif  // ABRASIM_RNG_HPP
