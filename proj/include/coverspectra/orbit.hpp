#ifndef COVERSPECTRA_ORBIT_HPP
#define COVERSPECTRA_ORBIT_HPP

#include <cstdint>
#include <vector>

#include "coverspectra/ifs.hpp"

namespace coverspectra {

/// splitmix64 finalizer; the whole generator is a pure function of
/// (seed, index), so orbits are reproducible across platforms and digits can
/// be read at arbitrary indices without generating their prefix.
inline uint64_t mix64(uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

/// uniform in [0,1) with 53 random bits
inline double uniform01(uint64_t seed, uint64_t index) {
  uint64_t z = mix64(seed ^ mix64(index + 0x632BE59BD9B4E019ull));
  return double(z >> 11) * 0x1.0p-53;
}

/// Counter-based Bernoulli(p) digit stream over {1,...,N}: inverse-CDF draw
/// from a uniform variate at each index.
class OrbitView {
 public:
  OrbitView(const IfsSpec& spec, uint64_t seed, uint64_t horizon)
      : cum_(&spec.cum_probs()), seed_(seed), horizon_(horizon) {}

  /// Digit at position i (0-based). Throws TruncatedOrbit past the horizon.
  uint8_t digit(uint64_t i) const;
  /// Unchecked read for hot loops; caller enforces the horizon.
  uint8_t digit_unchecked(uint64_t i) const {
    double u = uniform01(seed_, i);
    const std::vector<double>& c = *cum_;
    size_t k = 0;
    while (u >= c[k]) ++k;
    return uint8_t(k + 1);
  }

  uint64_t seed() const { return seed_; }
  uint64_t horizon() const { return horizon_; }

 private:
  const std::vector<double>* cum_;
  uint64_t seed_;
  uint64_t horizon_;
};

/// Materialized orbit prefix of a requested horizon.
struct OrbitSample {
  std::vector<uint8_t> digits;
  uint64_t seed = 0;
  uint64_t horizon = 0;

  Word window(uint64_t start, uint64_t len) const;
};

/// i.i.d. digits with distribution p; deterministic in (spec, seed, horizon).
/// Throws HorizonZero when horizon == 0; TooLarge above 2^31 digits.
OrbitSample sample_orbit(const IfsSpec& spec, uint64_t horizon, uint64_t seed);

}  // namespace coverspectra

#endif
