#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "nbz/bitstream.hpp"

namespace nbz {

/// Bucketed variable-length integer code.
///
/// Bucket b is announced by a truncated-unary status prefix (b ones then a
/// zero; the last bucket drops the zero) followed by a `widths[b]`-bit
/// payload. A value goes to the first bucket wide enough for it. Signed
/// schemes zigzag-map the value first; unsigned schemes reject negatives.
///
/// Schemes are identified by one byte: bit 7 set = unsigned, low 7 bits =
/// layout. Layout 0 is {2,4,6,8,12,16,24,33}; layout t in [1, 56] starts at
/// width t and grows by +1, +1, +2, +4, ... up to a final 64-bit bucket.
struct VlcScheme {
  std::uint8_t id = 0;
  bool is_signed = true;
  std::vector<std::uint8_t> widths;

  std::size_t bucket_count() const noexcept { return widths.size(); }
  unsigned prefix_bits(std::size_t bucket) const noexcept {
    return bucket + 1 < widths.size() ? static_cast<unsigned>(bucket + 1)
                                      : static_cast<unsigned>(bucket);
  }

  friend bool operator==(const VlcScheme&, const VlcScheme&) = default;
};

inline constexpr std::uint8_t kVlcUnsignedFlag = 0x80;
inline constexpr std::uint8_t kVlcMaxLayout = 56;

/// Throws Errc::corrupt for an unknown id.
VlcScheme vlc_scheme(std::uint8_t id);
VlcScheme vlc_default_scheme(bool is_signed = true);
/// Every layout, in id order, with the given signedness.
std::vector<VlcScheme> vlc_candidates(bool is_signed);

/// Bits needed to encode `values`, or empty when some value fits no bucket.
std::optional<std::uint64_t> vlc_cost(std::span<const std::int64_t> values, const VlcScheme& scheme);

void vlc_encode(std::span<const std::int64_t> values, const VlcScheme& scheme, BitWriter& out);
BitStream vlc_encode(std::span<const std::int64_t> values, const VlcScheme& scheme);

std::vector<std::int64_t> vlc_decode(BitReader& in, const VlcScheme& scheme, std::size_t n);
std::vector<std::int64_t> vlc_decode(const BitStream& stream, const VlcScheme& scheme, std::size_t n);

/// Cheapest candidate for `values`; ties go to the earlier candidate.
/// Throws Errc::invalid_argument when no candidate can encode the data.
VlcScheme vlc_choose_scheme(std::span<const std::int64_t> values,
                            std::span<const VlcScheme> candidates);

constexpr std::uint64_t zigzag_encode(std::int64_t v) noexcept {
  return (static_cast<std::uint64_t>(v) << 1) ^ static_cast<std::uint64_t>(v >> 63);
}
constexpr std::int64_t zigzag_decode(std::uint64_t u) noexcept {
  return static_cast<std::int64_t>(u >> 1) ^ -static_cast<std::int64_t>(u & 1);
}

}  // namespace nbz
