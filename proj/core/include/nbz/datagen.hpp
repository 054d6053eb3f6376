#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>

#include "nbz/model.hpp"

namespace nbz {

enum class ProfileKind : std::uint8_t {
  HaccLike,  // ordered cosmology-style layout: ramps, short sawtooth, AR(1) velocities
  AmdfLike,  // clustered molecular-dynamics layout: local chains, i.i.d. velocities
};

std::string_view profile_name(ProfileKind k) noexcept;
std::optional<ProfileKind> parse_profile(std::string_view name) noexcept;

struct GeneratorProfile {
  ProfileKind kind = ProfileKind::AmdfLike;
  std::size_t n = 1 << 20;
  std::uint64_t seed = 1;
  double box_size = 256.0;

  // HaccLike
  double velocity_ar = 0.92;       // lag-1 coefficient of the AR(1) velocities
  double velocity_sigma = 300.0;   // stationary standard deviation
  double lattice_jitter = 2e-4;    // displacement noise, fraction of the box
  std::size_t min_period = 500;    // zz sawtooth period range
  std::size_t max_period = 1100;

  // AmdfLike
  std::size_t cluster_count = 24;
  double cluster_radius = 0.06;    // fraction of the box
  double chain_probability = 0.72; // chance the next atom is a neighbour of the previous one
  double neighbour_step = 0.02;    // neighbour displacement, fraction of the box
  double thermal_sigma = 1.0;      // velocity standard deviation
};

/// Deterministic in (profile parameters, n, seed).
ParticleSnapshot generate(const GeneratorProfile& profile);

}  // namespace nbz
