#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "nbz/model.hpp"
#include "nbz/quantize.hpp"
#include "nbz/rindex.hpp"

namespace nbz {

enum class CompressionMode : std::uint8_t {
  SzLcf = 0,      // linear-fit prediction + quantisation + Huffman
  SzLv = 1,       // last-value prediction (best_speed)
  SzLvPrx = 2,    // partial R-index sort, then SzLv (best_tradeoff)
  SzCpc2000 = 3,  // R-index coordinates + SzLv velocities (best_compression)
  Cpc2000 = 4,    // R-index coordinates + VLC-coded integer velocities
};

inline constexpr std::size_t kModeCount = 5;
inline constexpr std::array<CompressionMode, kModeCount> kAllModes = {
    CompressionMode::SzLcf, CompressionMode::SzLv, CompressionMode::SzLvPrx,
    CompressionMode::SzCpc2000, CompressionMode::Cpc2000};

std::string_view mode_name(CompressionMode m) noexcept;
std::optional<CompressionMode> parse_mode(std::string_view name) noexcept;
constexpr bool mode_reorders(CompressionMode m) noexcept {
  return m == CompressionMode::SzLvPrx || m == CompressionMode::SzCpc2000 ||
         m == CompressionMode::Cpc2000;
}
constexpr bool mode_uses_rindex_coordinates(CompressionMode m) noexcept {
  return m == CompressionMode::SzCpc2000 || m == CompressionMode::Cpc2000;
}

std::string_view variant_name(RIndexVariant v) noexcept;
std::optional<RIndexVariant> parse_variant(std::string_view name) noexcept;

struct PipelineSettings {
  CompressionMode mode = CompressionMode::SzLv;
  std::array<ErrorBoundSpec, kFieldCount> bounds = {
      ErrorBoundSpec::relative(1e-4), ErrorBoundSpec::relative(1e-4),
      ErrorBoundSpec::relative(1e-4), ErrorBoundSpec::relative(1e-4),
      ErrorBoundSpec::relative(1e-4), ErrorBoundSpec::relative(1e-4)};
  std::uint32_t interval_count = kDefaultIntervalCount;
  std::size_t segment_size = kDefaultSegmentSize;
  unsigned ignored_groups = kDefaultIgnoredGroups;
  // Only SzLvPrx honours this; the CPC2000 coordinate codec needs CoordinateBased keys.
  RIndexVariant variant = RIndexVariant::CoordinateBased;
  unsigned threads = 1;

  static PipelineSettings uniform(CompressionMode mode, ErrorBoundSpec bound) {
    PipelineSettings s;
    s.mode = mode;
    s.bounds.fill(bound);
    return s;
  }
};

inline constexpr std::uint16_t kArchiveVersion = 1;

enum class FieldEncoding : std::uint8_t { Coded = 0, Constant = 1 };

struct FieldHeader {
  double bound = 0.0;  // resolved absolute bound; 0 for constant fields
  FieldEncoding encoding = FieldEncoding::Coded;
  float constant = 0.0f;

  friend bool operator==(const FieldHeader&, const FieldHeader&) = default;
};

/// Per-segment parameters of the R-index coordinate codec.
struct SegmentEntry {
  std::array<std::int64_t, 3> minima{};
  std::uint8_t bits_per_field = 0;
  std::uint8_t dropped_bits = 0;

  friend bool operator==(const SegmentEntry&, const SegmentEntry&) = default;
};

struct ArchiveHeader {
  std::uint16_t version = kArchiveVersion;
  CompressionMode mode = CompressionMode::SzLv;
  RIndexVariant variant = RIndexVariant::CoordinateBased;
  std::uint64_t n = 0;
  std::uint32_t interval_count = kDefaultIntervalCount;
  std::uint32_t segment_size = 0;
  std::uint8_t ignored_groups = 0;
  std::array<FieldHeader, kFieldCount> fields{};
  std::vector<SegmentEntry> segments;

  friend bool operator==(const ArchiveHeader&, const ArchiveHeader&) = default;
};

// Streams 0..5 carry one field each; stream 6 carries the R-index coded coordinates.
inline constexpr std::uint8_t kCoordinateStreamId = 6;

struct ArchiveStream {
  std::uint8_t id = 0;
  std::uint64_t crc = 0;  // CRC-64 of payload
  std::vector<std::uint8_t> payload;

  friend bool operator==(const ArchiveStream&, const ArchiveStream&) = default;
};

struct CompressedArchive {
  ArchiveHeader header;
  std::vector<ArchiveStream> streams;

  const ArchiveStream* find_stream(std::uint8_t id) const noexcept;

  friend bool operator==(const CompressedArchive&, const CompressedArchive&) = default;
};

/// Compresses a snapshot. For reordering modes, `permutation` (when given)
/// receives the gather order relating output positions to input particles;
/// it is never part of the archive.
CompressedArchive compress(const ParticleSnapshot& snapshot, const PipelineSettings& settings,
                           Permutation* permutation = nullptr);

/// Verifies every stream CRC, then decodes. Reordering modes return the
/// particles in their sorted order.
ParticleSnapshot decompress(const CompressedArchive& archive, unsigned threads = 1);

/// original_bytes / serialized archive size; empty for an empty snapshot.
std::optional<double> ratio(const CompressedArchive& archive, std::uint64_t original_bytes);

}  // namespace nbz
