#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

namespace beamsched {

// splitmix64 finalizer, used to scramble indices and salts into seeds.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Trial seed = base seed XOR scrambled trial index. Trials get independent
// streams without any coordination between them.
inline std::uint64_t trial_seed(std::uint64_t base_seed, std::uint64_t trial_index) {
  return base_seed ^ splitmix64(trial_index + 1);
}

// Sub-stream within a trial (scenario generation, one per scheduler).
inline std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t stream) {
  return splitmix64(seed ^ splitmix64(0x5eedULL + stream));
}

// mt19937_64 engine with hand-rolled distribution transforms. The engine's
// output sequence is specified bit-exactly by the standard; the library
// distributions are not, so the transforms live here.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on [0, 1), 53-bit resolution.
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform on [0, 2*pi).
  double uniform_angle() { return 2.0 * std::numbers::pi * uniform01(); }

  // Uniform integer in [0, n). Divide-and-reject, no modulo bias.
  std::uint64_t uniform_below(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("uniform_below: n must be positive");
    const std::uint64_t bucket = std::numeric_limits<std::uint64_t>::max() / n;
    const std::uint64_t limit = bucket * n;
    std::uint64_t x = next_u64();
    while (x >= limit) x = next_u64();
    return x / bucket;
  }

  // Circularly-symmetric complex Gaussian with E|z|^2 = 1.
  std::complex<double> complex_gaussian() {
    // modulus^2 ~ Exp(1), phase uniform; u is kept in (0, 1] so log is finite
    const double u = (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
    const double r = std::sqrt(-std::log(u));
    const double phi = uniform_angle();
    return {r * std::cos(phi), r * std::sin(phi)};
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace beamsched
