#pragma once

#include <cmath>
#include <cstdint>

namespace lhy::rng {

// Counter-based generator (splitmix64 over a keyed counter).  Streams are
// independent for distinct (seed, stream) pairs, so trials can be generated
// out of order or in parallel and still reproduce bit-identically.
class Splittable {
 public:
  explicit Splittable(std::uint64_t seed, std::uint64_t stream = 0)
      : key_(mix(seed ^ 0x9e3779b97f4a7c15ull) ^ mix(stream + 0xbf58476d1ce4e5b9ull)) {}

  Splittable split(std::uint64_t stream) const {
    Splittable s(0);
    s.key_ = mix(key_ ^ mix(stream + 0x94d049bb133111ebull));
    s.counter_ = 0;
    return s;
  }

  std::uint64_t next_u64() { return mix(key_ + 0x9e3779b97f4a7c15ull * (++counter_)); }

  // Uniform in [0, 1).
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Standard normal via Box-Muller (explicit formula keeps output
  // platform-independent, unlike std::normal_distribution).
  double normal() {
    double u1 = uniform();
    double u2 = uniform();
    if (u1 <= 0.0) u1 = 0x1.0p-53;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
  }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  std::uint64_t key_ = 0;
  std::uint64_t counter_ = 0;
};

}  // namespace lhy::rng
