#pragma once

#include <cmath>
#include <concepts>
#include <cstdint>
#include <initializer_list>
#include <random>

#include "iqofdm/spectral.hpp"

namespace iqofdm {

// Anything that can hand out standard normal deviates.
template <class R>
concept NormalSource = requires(R& r) {
  { r.normal() } -> std::convertible_to<double>;
};

// Seeded random source. Substreams are derived by hashing (seed, keys...) so a
// given frame always sees the same numbers regardless of which worker runs it.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  static Rng substream(std::uint64_t seed, std::initializer_list<std::uint64_t> keys) {
    std::uint64_t h = splitmix64(seed);
    for (auto k : keys) h = splitmix64(h ^ splitmix64(k + 0x632be59bd9b4e019ULL));
    return Rng(h);
  }

  double normal() { return normal_(engine_); }

  // Circular complex Gaussian with E|z|^2 = variance.
  cplx complex_gaussian(double variance) {
    const double s = std::sqrt(variance / 2.0);
    const double re = normal();
    const double im = normal();
    return {s * re, s * im};
  }

  int bit() { return static_cast<int>(engine_() >> 63); }

  std::uint64_t next() { return engine_(); }

 private:
  static std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }

  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace iqofdm
