#pragma once

#include <cmath>
#include <cstdint>
#include <string_view>
#include <vector>

namespace flexc {

// Deterministic splitmix64 generator. All stochastic code in the library
// draws through this class instead of <random> distributions, whose output
// is implementation-defined; results must reproduce bit-exactly for a
// fixed seed.
class Rng {
public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  uint64_t next() {
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Uniform integer in [0, n). Modulo bias is negligible at the sizes used
  // here (n far below 2^32).
  uint64_t below(uint64_t n) { return n ? next() % n : 0; }

  // Box-Muller; the spare value is discarded to keep the call stateless.
  double normal(double mean = 0.0, double stddev = 1.0) {
    double u1 = uniform01();
    double u2 = uniform01();
    while (u1 <= 0.0) u1 = uniform01();
    double r = std::sqrt(-2.0 * std::log(u1));
    return mean + stddev * r * std::cos(2.0 * 3.14159265358979323846 * u2);
  }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (size_t i = v.size(); i > 1; --i) {
      size_t j = static_cast<size_t>(below(i));
      std::swap(v[i - 1], v[j]);
    }
  }

private:
  uint64_t state_;
};

// FNV-1a over a string tag plus integer salts. Used to derive independent
// per-task seeds from one run seed so that results do not depend on worker
// scheduling.
inline uint64_t seed_hash(uint64_t seed, std::string_view tag) {
  uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](uint8_t byte) {
    h ^= byte;
    h *= 0x100000001b3ULL;
  };
  for (int i = 0; i < 8; ++i) mix(static_cast<uint8_t>(seed >> (8 * i)));
  for (char c : tag) mix(static_cast<uint8_t>(c));
  return h;
}

}  // namespace flexc
