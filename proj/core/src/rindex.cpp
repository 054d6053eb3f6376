#include "nbz/rindex.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <string>

#include "nbz/error.hpp"
#include "nbz/quantize.hpp"

namespace nbz {

namespace {

constexpr std::array<Field, 3> kCoordFields = {Field::xx, Field::yy, Field::zz};
constexpr std::array<Field, 3> kVelFields = {Field::vx, Field::vy, Field::vz};

// Bit j of a 21-bit value moves to bit 3j.
constexpr std::uint64_t spread3(std::uint64_t x) noexcept {
  x &= 0x1fffff;
  x = (x | x << 32) & 0x1f00000000ffffull;
  x = (x | x << 16) & 0x1f0000ff0000ffull;
  x = (x | x << 8) & 0x100f00f00f00f00full;
  x = (x | x << 4) & 0x10c30c30c30c30c3ull;
  x = (x | x << 2) & 0x1249249249249249ull;
  return x;
}

constexpr std::uint64_t compact3(std::uint64_t x) noexcept {
  x &= 0x1249249249249249ull;
  x = (x ^ (x >> 2)) & 0x10c30c30c30c30c3ull;
  x = (x ^ (x >> 4)) & 0x100f00f00f00f00full;
  x = (x ^ (x >> 8)) & 0x1f0000ff0000ffull;
  x = (x ^ (x >> 16)) & 0x1f00000000ffffull;
  x = (x ^ (x >> 32)) & 0x1fffffull;
  return x;
}

void check_field_count(std::size_t f) {
  if (f != 3 && f != 6) {
    throw Error(Errc::invalid_argument, "R-index interleaves 3 or 6 fields, got " + std::to_string(f));
  }
}

template <typename Key>
std::vector<std::uint32_t> radix_sort(std::span<const RIndex> keys, unsigned group_width,
                                      unsigned total_groups, unsigned ignored_groups) {
  const std::size_t m = keys.size();
  std::vector<std::uint32_t> order(m);
  std::iota(order.begin(), order.end(), 0u);
  if (m < 2 || ignored_groups >= total_groups) return order;

  std::vector<Key> cur(m), next(m);
  for (std::size_t i = 0; i < m; ++i) cur[i] = static_cast<Key>(keys[i]);
  std::vector<std::uint32_t> next_order(m);

  const std::size_t buckets = std::size_t{1} << group_width;
  const Key mask = static_cast<Key>(buckets - 1);
  std::vector<std::size_t> count(buckets);
  for (unsigned round = ignored_groups; round < total_groups; ++round) {
    const unsigned shift = round * group_width;
    std::fill(count.begin(), count.end(), 0);
    for (std::size_t i = 0; i < m; ++i) ++count[static_cast<std::size_t>((cur[i] >> shift) & mask)];
    std::size_t sum = 0;
    for (auto& c : count) {
      const std::size_t here = c;
      c = sum;
      sum += here;
    }
    for (std::size_t i = 0; i < m; ++i) {
      const std::size_t dst = count[static_cast<std::size_t>((cur[i] >> shift) & mask)]++;
      next[dst] = cur[i];
      next_order[dst] = order[i];
    }
    cur.swap(next);
    order.swap(next_order);
  }
  return order;
}

}  // namespace

std::span<const Field> variant_fields(RIndexVariant v) noexcept {
  switch (v) {
    case RIndexVariant::CoordinateBased:
      return kCoordFields;
    case RIndexVariant::VelocityBased:
      return kVelFields;
    case RIndexVariant::CoordVelocityBased:
      return kAllFields;
  }
  return kCoordFields;
}

Permutation Permutation::identity(std::size_t n) {
  Permutation p;
  p.order.resize(n);
  std::iota(p.order.begin(), p.order.end(), std::uint64_t{0});
  return p;
}

bool Permutation::is_bijection() const {
  std::vector<bool> seen(order.size(), false);
  for (std::uint64_t src : order) {
    if (src >= order.size() || seen[src]) return false;
    seen[src] = true;
  }
  return true;
}

RIndex interleave(std::span<const std::uint64_t> values, unsigned bits_per_field) {
  const std::size_t f = values.size();
  check_field_count(f);
  if (bits_per_field > kMaxBitsPerField) {
    throw Error(Errc::invalid_argument, "bits per field exceeds " + std::to_string(kMaxBitsPerField));
  }
  for (std::size_t t = 0; t < f; ++t) {
    if (std::bit_width(values[t]) > bits_per_field) {
      throw Error(Errc::invalid_argument, "field overflows interleave width");
    }
  }
  if (f == 3) {
    return (spread3(values[0]) << 2) | (spread3(values[1]) << 1) | spread3(values[2]);
  }
  RIndex key = 0;
  for (unsigned j = 0; j < bits_per_field; ++j) {
    for (std::size_t t = 0; t < f; ++t) {
      key |= static_cast<RIndex>((values[t] >> j) & 1u) << (j * f + (f - 1 - t));
    }
  }
  return key;
}

void deinterleave(RIndex key, unsigned bits_per_field, std::span<std::uint64_t> out) {
  const std::size_t f = out.size();
  check_field_count(f);
  if (f == 3) {
    const auto k = static_cast<std::uint64_t>(key);
    out[0] = compact3(k >> 2);
    out[1] = compact3(k >> 1);
    out[2] = compact3(k);
    return;
  }
  std::fill(out.begin(), out.end(), 0);
  for (unsigned j = 0; j < bits_per_field; ++j) {
    for (std::size_t t = 0; t < f; ++t) {
      out[t] |= static_cast<std::uint64_t>((key >> (j * f + (f - 1 - t))) & 1u) << j;
    }
  }
}

RIndexSet build_r_indices(RIndexVariant variant, std::span<const std::vector<std::int64_t>> ints,
                          std::size_t segment_size) {
  const std::size_t f = variant_fields(variant).size();
  if (ints.size() != f) {
    throw Error(Errc::invalid_argument, "expected " + std::to_string(f) + " integer fields");
  }
  if (segment_size == 0) throw Error(Errc::invalid_argument, "segment size must be at least 1");
  const std::size_t n = ints[0].size();
  for (const auto& v : ints) {
    if (v.size() != n) throw Error(Errc::invalid_argument, "integer fields differ in length");
  }

  RIndexSet set;
  set.variant = variant;
  set.keys.resize(n);
  std::array<std::uint64_t, kFieldCount> offsets{};
  for (std::size_t begin = 0; begin < n; begin += segment_size) {
    RIndexSegment seg;
    seg.begin = begin;
    seg.count = std::min(segment_size, n - begin);
    std::uint64_t widest = 0;
    for (std::size_t t = 0; t < f; ++t) {
      const auto first = ints[t].begin() + static_cast<std::ptrdiff_t>(begin);
      const auto [lo, hi] = std::minmax_element(first, first + static_cast<std::ptrdiff_t>(seg.count));
      seg.minima[t] = *lo;
      widest = std::max(widest, static_cast<std::uint64_t>(*hi) - static_cast<std::uint64_t>(*lo));
    }
    const auto full_bits = static_cast<unsigned>(std::bit_width(widest));
    seg.bits_per_field = std::min(full_bits, kMaxBitsPerField);
    seg.dropped_bits = full_bits - seg.bits_per_field;

    for (std::size_t i = begin; i < begin + seg.count; ++i) {
      for (std::size_t t = 0; t < f; ++t) {
        offsets[t] = (static_cast<std::uint64_t>(ints[t][i]) - static_cast<std::uint64_t>(seg.minima[t])) >>
                     seg.dropped_bits;
      }
      if (f == 3) {
        set.keys[i] = (spread3(offsets[0]) << 2) | (spread3(offsets[1]) << 1) | spread3(offsets[2]);
      } else {
        set.keys[i] = interleave(std::span(offsets.data(), f), seg.bits_per_field);
      }
    }
    set.segments.push_back(seg);
  }
  return set;
}

RIndexSet build_r_indices(const ParticleSnapshot& snapshot, RIndexVariant variant,
                          std::span<const double, kFieldCount> bounds, std::size_t segment_size) {
  const auto fields = variant_fields(variant);
  std::vector<std::vector<std::int64_t>> ints;
  ints.reserve(fields.size());
  for (Field f : fields) {
    const double b = bounds[index_of(f)];
    if (b > 0.0) {
      ints.push_back(integerize(snapshot.field(f), b).ints);
    } else {
      ints.emplace_back(snapshot.size(), 0);
    }
  }
  return build_r_indices(variant, ints, segment_size);
}

std::vector<std::uint32_t> prx_sort_keys(std::span<const RIndex> keys, unsigned group_width,
                                         unsigned total_groups, unsigned ignored_groups) {
  if (group_width == 0 || group_width > 16 || std::size_t{group_width} * total_groups > 128) {
    throw Error(Errc::invalid_argument, "unsupported radix geometry");
  }
  if (keys.size() > 0xffffffffu) throw Error(Errc::invalid_argument, "segment too large");
  if (group_width * total_groups <= 64) {
    return radix_sort<std::uint64_t>(keys, group_width, total_groups, ignored_groups);
  }
  return radix_sort<RIndex>(keys, group_width, total_groups, ignored_groups);
}

Permutation prx_sort(const RIndexSet& set, unsigned ignored_groups) {
  Permutation perm;
  perm.order.resize(set.keys.size());
  const unsigned width = set.field_count();
  for (const RIndexSegment& seg : set.segments) {
    const auto local = prx_sort_keys(std::span(set.keys).subspan(seg.begin, seg.count), width,
                                     seg.bits_per_field, ignored_groups);
    for (std::size_t j = 0; j < seg.count; ++j) perm.order[seg.begin + j] = seg.begin + local[j];
  }
  return perm;
}

ParticleSnapshot apply_permutation(const ParticleSnapshot& snapshot, const Permutation& perm) {
  if (perm.size() != snapshot.size()) {
    throw Error(Errc::invalid_argument, "permutation length " + std::to_string(perm.size()) +
                                            " does not match snapshot size " + std::to_string(snapshot.size()));
  }
  if (!perm.is_bijection()) throw Error(Errc::invalid_argument, "not a permutation");
  FieldArrays out;
  for (Field f : kAllFields) {
    const auto src = snapshot.field(f);
    auto& dst = out[index_of(f)];
    dst.resize(src.size());
    for (std::size_t j = 0; j < src.size(); ++j) dst[j] = src[perm.order[j]];
  }
  return ParticleSnapshot(std::move(out));
}

}  // namespace nbz
