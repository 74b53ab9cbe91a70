#pragma once

#include <cstdint>
#include <random>

namespace hierflow {

// Seeded random source. Split() derives an independent child stream, so
// recursive callers can hand out generators without coupling their draw
// counts; every run is reproducible from the root seed.
struct Rng {
  explicit Rng(uint64_t seed) : eng(seed) {}

  uint64_t Next() { return eng(); }
  double Gauss() { return gauss(eng); }

  Rng Split() {
    uint64_t a = eng(), b = eng();
    return Rng(a * 0x9E3779B97F4A7C15ULL ^ b);
  }

  std::mt19937_64 eng;
  std::normal_distribution<double> gauss;
};

}  // namespace hierflow
