#pragma once

#include <cstdint>
#include <random>

namespace sofic {

// splitmix64 finalizer. Used to whiten seeds and to derive child streams.
inline uint64_t splitmix64(uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Deterministic random stream. mt19937_64 output is fixed by the standard,
// so runs reproduce across platforms and compilers. Child streams are
// independent by construction: child(k) seeds from
// splitmix64(seed ^ splitmix64(k ^ 0x6b79)). Sampling helpers use rejection,
// never modulo, so the draw sequence is portable too.
class Rng {
 public:
  explicit Rng(uint64_t seed) : seed_(seed), eng_(splitmix64(seed)) {}

  uint64_t seed() const { return seed_; }

  uint64_t next() { return eng_(); }

  // Uniform in [0, n). n >= 1.
  uint64_t below(uint64_t n) {
    if (n <= 1) return 0;
    const uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    uint64_t v = next();
    while (v >= limit) v = next();
    return v % n;
  }

  // Uniform in [0, 1), 53-bit resolution.
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  Rng child(uint64_t stream) const {
    return Rng(splitmix64(seed_ ^ splitmix64(stream ^ 0x6b79ULL)));
  }

 private:
  uint64_t seed_;
  std::mt19937_64 eng_;
};

}  // namespace sofic
