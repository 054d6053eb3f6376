#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "nbz/model.hpp"

namespace nbz::testing {

inline std::vector<float> uniform_field(std::size_t n, float lo, float hi, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<float> dist(lo, hi);
  std::vector<float> out(n);
  for (auto& v : out) v = dist(rng);
  return out;
}

inline ParticleSnapshot random_snapshot(std::size_t n, std::uint64_t seed, float scale = 100.0f) {
  FieldArrays f;
  for (std::size_t t = 0; t < kFieldCount; ++t) f[t] = uniform_field(n, -scale, scale, seed * 7 + t);
  return ParticleSnapshot(std::move(f));
}

// Random walk per field: smooth enough for the predictors to matter.
inline ParticleSnapshot walk_snapshot(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> step(0.0, 1.0);
  FieldArrays f;
  for (auto& a : f) {
    a.resize(n);
    double x = 0.0;
    for (auto& v : a) {
      x += step(rng);
      v = static_cast<float>(x);
    }
  }
  return ParticleSnapshot(std::move(f));
}

}  // namespace nbz::testing
