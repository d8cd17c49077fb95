#pragma once

#include <cstdint>
#include <cmath>
#include <random>

namespace hjsplit {

// splitmix64 finalizer; used for seed derivation so that substreams of a base
// seed are decorrelated.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Seed for the HJ-Prox call made at iteration k on term `term_index` of a
// solver run with base seed `base`. Whole runs replay bit-exactly from `base`.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t k, std::uint64_t term_index) {
  return mix64(mix64(mix64(base) ^ k) ^ (0x517cc1b727220a95ULL + term_index));
}

// Deterministic random stream. mt19937_64 output is pinned by the standard;
// the normal generator below (Marsaglia polar) avoids std::normal_distribution,
// whose sequence is implementation-defined.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : engine_(mix64(seed)) {}

  // uniform in [0, 1)
  double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * uniform01() - 1.0;
      v = 2.0 * uniform01() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double m = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * m;
    has_spare_ = true;
    return u * m;
  }

  std::uint64_t next_u64() { return engine_(); }

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace hjsplit
