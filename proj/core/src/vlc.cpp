#include "nbz/vlc.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <limits>
#include <string>

#include "nbz/error.hpp"

namespace nbz {

namespace {

constexpr std::array<std::uint8_t, 8> kDefaultWidths = {2, 4, 6, 8, 12, 16, 24, 33};

std::vector<std::uint8_t> layout_widths(std::uint8_t layout) {
  if (layout == 0) return {kDefaultWidths.begin(), kDefaultWidths.end()};
  std::vector<std::uint8_t> widths{layout};
  unsigned w = layout;
  unsigned inc = 1;
  bool second_unit_step = true;
  while (w < 64) {
    w = std::min(64u, w + inc);
    widths.push_back(static_cast<std::uint8_t>(w));
    if (second_unit_step) {
      second_unit_step = false;
    } else {
      inc *= 2;
    }
  }
  return widths;
}

// bucket_for[L] = first bucket whose payload holds an L-bit value; -1 when none.
std::array<int, 65> bucket_table(const VlcScheme& s) {
  std::array<int, 65> table{};
  std::size_t b = 0;
  for (unsigned len = 0; len <= 64; ++len) {
    while (b < s.widths.size() && s.widths[b] < len) ++b;
    table[len] = b < s.widths.size() ? static_cast<int>(b) : -1;
  }
  return table;
}

std::uint64_t map_value(std::int64_t v, bool is_signed, std::size_t index) {
  if (is_signed) return zigzag_encode(v);
  if (v < 0) {
    throw Error(Errc::invalid_argument, "negative value " + std::to_string(v) + " at position " +
                                            std::to_string(index) + " in unsigned VLC scheme");
  }
  return static_cast<std::uint64_t>(v);
}

}  // namespace

VlcScheme vlc_scheme(std::uint8_t id) {
  const std::uint8_t layout = id & ~kVlcUnsignedFlag;
  if (layout > kVlcMaxLayout) throw Error(Errc::corrupt, "unknown VLC scheme id " + std::to_string(id));
  return VlcScheme{id, (id & kVlcUnsignedFlag) == 0, layout_widths(layout)};
}

VlcScheme vlc_default_scheme(bool is_signed) { return vlc_scheme(is_signed ? 0 : kVlcUnsignedFlag); }

std::vector<VlcScheme> vlc_candidates(bool is_signed) {
  std::vector<VlcScheme> out;
  for (std::uint8_t layout = 0; layout <= kVlcMaxLayout; ++layout) {
    out.push_back(vlc_scheme(static_cast<std::uint8_t>(layout | (is_signed ? 0 : kVlcUnsignedFlag))));
  }
  return out;
}

namespace {

std::optional<std::uint64_t> cost_from_histogram(const std::array<std::uint64_t, 65>& hist,
                                                 const VlcScheme& scheme) {
  const auto table = bucket_table(scheme);
  std::uint64_t bits = 0;
  for (unsigned len = 0; len <= 64; ++len) {
    if (hist[len] == 0) continue;
    if (table[len] < 0) return std::nullopt;
    const auto b = static_cast<std::size_t>(table[len]);
    bits += hist[len] * (scheme.prefix_bits(b) + scheme.widths[b]);
  }
  return bits;
}

std::array<std::uint64_t, 65> length_histogram(std::span<const std::int64_t> values, bool is_signed) {
  std::array<std::uint64_t, 65> hist{};
  for (std::size_t i = 0; i < values.size(); ++i) {
    ++hist[std::bit_width(map_value(values[i], is_signed, i))];
  }
  return hist;
}

}  // namespace

std::optional<std::uint64_t> vlc_cost(std::span<const std::int64_t> values, const VlcScheme& scheme) {
  if (!scheme.is_signed && std::any_of(values.begin(), values.end(), [](std::int64_t v) { return v < 0; })) {
    return std::nullopt;
  }
  return cost_from_histogram(length_histogram(values, scheme.is_signed), scheme);
}

void vlc_encode(std::span<const std::int64_t> values, const VlcScheme& scheme, BitWriter& out) {
  const auto table = bucket_table(scheme);
  const std::size_t last = scheme.widths.size() - 1;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const std::uint64_t u = map_value(values[i], scheme.is_signed, i);
    const int b = table[std::bit_width(u)];
    if (b < 0) {
      throw Error(Errc::invalid_argument, "value " + std::to_string(values[i]) + " at position " +
                                              std::to_string(i) + " fits no VLC bucket");
    }
    const auto bucket = static_cast<std::size_t>(b);
    const std::uint64_t ones = (std::uint64_t{1} << bucket) - 1;
    if (bucket < last) {
      out.write(ones << 1, static_cast<unsigned>(bucket + 1));
    } else {
      out.write(ones, static_cast<unsigned>(bucket));
    }
    out.write(u, scheme.widths[bucket]);
  }
}

BitStream vlc_encode(std::span<const std::int64_t> values, const VlcScheme& scheme) {
  BitWriter w;
  vlc_encode(values, scheme, w);
  return w.finish();
}

std::vector<std::int64_t> vlc_decode(BitReader& in, const VlcScheme& scheme, std::size_t n) {
  std::vector<std::int64_t> out(n);
  const std::size_t last = scheme.widths.size() - 1;
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t bucket = 0;
    while (bucket < last && in.read_bit()) ++bucket;
    const std::uint64_t u = in.read(scheme.widths[bucket]);
    if (scheme.is_signed) {
      out[i] = zigzag_decode(u);
    } else {
      if (u > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max())) {
        throw Error(Errc::corrupt, "unsigned VLC value out of range at position " + std::to_string(i));
      }
      out[i] = static_cast<std::int64_t>(u);
    }
  }
  return out;
}

std::vector<std::int64_t> vlc_decode(const BitStream& stream, const VlcScheme& scheme, std::size_t n) {
  BitReader r(stream);
  return vlc_decode(r, scheme, n);
}

VlcScheme vlc_choose_scheme(std::span<const std::int64_t> values, std::span<const VlcScheme> candidates) {
  if (candidates.empty()) throw Error(Errc::invalid_argument, "no VLC candidates");
  // One histogram per signedness; candidate costs then come from 65 buckets.
  const bool any_negative = std::any_of(values.begin(), values.end(), [](std::int64_t v) { return v < 0; });
  std::optional<std::array<std::uint64_t, 65>> hist_signed, hist_unsigned;
  const VlcScheme* best = nullptr;
  std::uint64_t best_bits = 0;
  for (const VlcScheme& c : candidates) {
    if (!c.is_signed && any_negative) continue;
    auto& hist = c.is_signed ? hist_signed : hist_unsigned;
    if (!hist) hist = length_histogram(values, c.is_signed);
    const auto bits = cost_from_histogram(*hist, c);
    if (bits && (!best || *bits < best_bits)) {
      best = &c;
      best_bits = *bits;
    }
  }
  if (!best) throw Error(Errc::invalid_argument, "no VLC candidate can encode the values");
  return *best;
}

}  // namespace nbz
