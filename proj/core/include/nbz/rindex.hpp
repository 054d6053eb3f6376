#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "nbz/model.hpp"

namespace nbz {

enum class RIndexVariant : std::uint8_t {
  CoordinateBased,     // xx, yy, zz
  VelocityBased,       // vx, vy, vz
  CoordVelocityBased,  // xx, yy, zz, vx, vy, vz
};

std::span<const Field> variant_fields(RIndexVariant v) noexcept;

inline constexpr unsigned kMaxBitsPerField = 21;
inline constexpr std::size_t kDefaultSegmentSize = 16384;
inline constexpr unsigned kDefaultIgnoredGroups = 6;

__extension__ typedef unsigned __int128 RIndex;

struct RIndexPlan {
  RIndexVariant variant = RIndexVariant::CoordinateBased;
  std::size_t segment_size = kDefaultSegmentSize;
  unsigned ignored_groups = kDefaultIgnoredGroups;

  unsigned field_count() const noexcept {
    return static_cast<unsigned>(variant_fields(variant).size());
  }
  // One bit from every interleaved field per radix round.
  unsigned group_width() const noexcept { return field_count(); }
};

/// Gather-order permutation: output position j takes source particle order[j].
struct Permutation {
  std::vector<std::uint64_t> order;

  std::size_t size() const noexcept { return order.size(); }
  static Permutation identity(std::size_t n);
  bool is_bijection() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;
};

/// Bit j of field t goes to key bit j*f + (f-1-t): fields cycle within each
/// group, first field most significant. f = values.size() must be 3 or 6.
/// Throws Errc::invalid_argument when a value needs more than
/// `bits_per_field` bits.
RIndex interleave(std::span<const std::uint64_t> values, unsigned bits_per_field);
void deinterleave(RIndex key, unsigned bits_per_field, std::span<std::uint64_t> out);

struct RIndexSegment {
  std::size_t begin = 0;
  std::size_t count = 0;
  unsigned bits_per_field = 0;  // B, <= kMaxBitsPerField
  unsigned dropped_bits = 0;    // low quantum bits left out of the key when the range needs > 21 bits
  std::array<std::int64_t, kFieldCount> minima{};  // per interleaved field, in variant order
};

struct RIndexSet {
  RIndexVariant variant = RIndexVariant::CoordinateBased;
  std::vector<RIndex> keys;  // one per particle, original order
  std::vector<RIndexSegment> segments;

  unsigned field_count() const noexcept {
    return static_cast<unsigned>(variant_fields(variant).size());
  }
};

/// Keys from already integerised fields (`ints[t]` for the t-th interleaved
/// field). Each segment subtracts its per-field minima and picks
/// B = min(21, bit width of the largest offset).
RIndexSet build_r_indices(RIndexVariant variant,
                          std::span<const std::vector<std::int64_t>> ints,
                          std::size_t segment_size);

/// Integerises the variant's fields with `bounds` (indexed by Field) and
/// builds keys. A bound of 0 marks a constant field, which contributes zeros.
RIndexSet build_r_indices(const ParticleSnapshot& snapshot, RIndexVariant variant,
                          std::span<const double, kFieldCount> bounds,
                          std::size_t segment_size);

/// Stable LSD radix sort of one segment, `group_width` bits per round,
/// skipping the lowest `ignored_groups` groups. Returns local gather order.
/// With ignored_groups >= total_groups no round runs and the order is the identity.
std::vector<std::uint32_t> prx_sort_keys(std::span<const RIndex> keys, unsigned group_width,
                                         unsigned total_groups, unsigned ignored_groups);

/// Per-segment partial radix sort; the permutation never crosses a segment boundary.
Permutation prx_sort(const RIndexSet& set, unsigned ignored_groups);

/// Reorders all six arrays identically. Throws Errc::invalid_argument when
/// `perm` is not a bijection on [0, n).
ParticleSnapshot apply_permutation(const ParticleSnapshot& snapshot, const Permutation& perm);

}  // namespace nbz
