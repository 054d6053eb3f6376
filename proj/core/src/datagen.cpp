#include "nbz/datagen.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <random>

#include "nbz/error.hpp"

namespace nbz {

namespace {

// The standard distributions are implementation-defined, so the transforms
// from raw engine output are spelled out to keep snapshots identical across
// standard libraries.
class Rng {
 public:
  Rng(std::uint64_t seed, ProfileKind kind, std::uint64_t stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(kind), static_cast<std::uint32_t>(stream)};
    engine_.seed(seq);
  }

  // (0, 1]
  double uniform() { return (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53; }

  double normal() {
    const double r = std::sqrt(-2.0 * std::log(uniform()));
    return r * std::cos(2.0 * std::numbers::pi * uniform());
  }

  std::size_t below(std::size_t k) {
    return std::min(k - 1, static_cast<std::size_t>((uniform() - 0x1.0p-53) * static_cast<double>(k)));
  }

 private:
  std::mt19937_64 engine_;
};

double reflect(double v, double box) {
  if (v < 0.0) v = -v;
  if (v > box) v = 2.0 * box - v;
  return std::clamp(v, 0.0, box);
}

void ar1_velocity(std::vector<float>& out, Rng& rng, double phi, double sigma) {
  const double innovation = sigma * std::sqrt(1.0 - phi * phi);
  double v = sigma * rng.normal();
  for (auto& x : out) {
    x = static_cast<float>(v);
    v = phi * v + innovation * rng.normal();
  }
}

FieldArrays hacc_like(const GeneratorProfile& p) {
  const std::size_t n = p.n;
  FieldArrays f;
  for (auto& a : f) a.resize(n);
  const double jitter = p.lattice_jitter * p.box_size;
  const double dn = static_cast<double>(std::max<std::size_t>(n, 1));

  Rng rx(p.seed, p.kind, 0), ry(p.seed, p.kind, 1), rz(p.seed, p.kind, 2);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = (static_cast<double>(i) + 0.5) / dn;
    f[0][i] = static_cast<float>(p.box_size * t + jitter * rx.normal());
    const double cycles = 4.0 * t;
    f[1][i] = static_cast<float>(p.box_size * (cycles - std::floor(cycles)) + jitter * ry.normal());
  }

  const std::size_t span = p.max_period >= p.min_period ? p.max_period - p.min_period + 1 : 1;
  std::size_t period = p.min_period + rz.below(span), phase = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (phase == period) {
      period = p.min_period + rz.below(span);
      phase = 0;
    }
    const double t = static_cast<double>(phase++) / static_cast<double>(std::max<std::size_t>(period, 1));
    f[2][i] = static_cast<float>(p.box_size * t + jitter * rz.normal());
  }

  for (std::size_t c = 0; c < 3; ++c) {
    Rng rv(p.seed, p.kind, 3 + c);
    ar1_velocity(f[3 + c], rv, p.velocity_ar, p.velocity_sigma);
  }
  return f;
}

FieldArrays amdf_like(const GeneratorProfile& p) {
  const std::size_t n = p.n;
  FieldArrays f;
  for (auto& a : f) a.resize(n);
  const double box = p.box_size;
  const double radius = p.cluster_radius * box;
  const double step = p.neighbour_step * box;

  Rng rc(p.seed, p.kind, 0);
  std::vector<std::array<double, 3>> centres(std::max<std::size_t>(p.cluster_count, 1));
  for (auto& c : centres) {
    for (auto& x : c) x = box * rc.uniform();
  }

  std::array<double, 3> pos{};
  for (std::size_t i = 0; i < n; ++i) {
    if (i == 0 || rc.uniform() > p.chain_probability) {
      const auto& c = centres[rc.below(centres.size())];
      for (std::size_t d = 0; d < 3; ++d) pos[d] = reflect(c[d] + radius * rc.normal(), box);
    } else {
      for (std::size_t d = 0; d < 3; ++d) pos[d] = reflect(pos[d] + step * rc.normal(), box);
    }
    for (std::size_t d = 0; d < 3; ++d) f[d][i] = static_cast<float>(pos[d]);
  }

  for (std::size_t c = 0; c < 3; ++c) {
    Rng rv(p.seed, p.kind, 3 + c);
    for (auto& v : f[3 + c]) v = static_cast<float>(p.thermal_sigma * rv.normal());
  }
  return f;
}

}  // namespace

std::string_view profile_name(ProfileKind k) noexcept {
  return k == ProfileKind::HaccLike ? "hacc" : "amdf";
}

std::optional<ProfileKind> parse_profile(std::string_view name) noexcept {
  if (name == "hacc") return ProfileKind::HaccLike;
  if (name == "amdf") return ProfileKind::AmdfLike;
  return std::nullopt;
}

ParticleSnapshot generate(const GeneratorProfile& profile) {
  if (!(profile.box_size > 0.0) || !std::isfinite(profile.box_size)) {
    throw Error(Errc::invalid_argument, "box size must be positive");
  }
  if (profile.min_period == 0) throw Error(Errc::invalid_argument, "sawtooth period must be positive");
  return ParticleSnapshot(profile.kind == ProfileKind::HaccLike ? hacc_like(profile) : amdf_like(profile));
}

}  // namespace nbz
