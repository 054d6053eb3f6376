#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace nbz {

enum class Field : std::uint8_t { xx = 0, yy, zz, vx, vy, vz };

inline constexpr std::size_t kFieldCount = 6;
inline constexpr std::array<Field, kFieldCount> kAllFields = {
    Field::xx, Field::yy, Field::zz, Field::vx, Field::vy, Field::vz};

constexpr std::size_t index_of(Field f) noexcept { return static_cast<std::size_t>(f); }
std::string_view field_name(Field f) noexcept;
std::optional<Field> parse_field(std::string_view name) noexcept;
constexpr bool is_coordinate(Field f) noexcept { return index_of(f) < 3; }

using FieldArrays = std::array<std::vector<float>, kFieldCount>;

/// One simulation snapshot stored as six parallel arrays (structure of arrays).
///
/// Index i names the same particle in every array. The constructor rejects
/// arrays of unequal length and any NaN/Inf, so a constructed snapshot is
/// always valid; it is immutable afterwards.
class ParticleSnapshot {
 public:
  ParticleSnapshot() = default;
  explicit ParticleSnapshot(FieldArrays fields);

  std::size_t size() const noexcept { return fields_[0].size(); }
  bool empty() const noexcept { return size() == 0; }

  std::span<const float> field(Field f) const noexcept { return fields_[index_of(f)]; }
  const FieldArrays& fields() const noexcept { return fields_; }

  /// Raw payload size in bytes: 4 bytes x 6 fields x n.
  std::uint64_t byte_size() const noexcept { return 4ull * kFieldCount * size(); }

  friend bool operator==(const ParticleSnapshot&, const ParticleSnapshot&) = default;

 private:
  FieldArrays fields_;
};

enum class BoundKind : std::uint8_t { Absolute, ValueRangeRelative };

struct ErrorBoundSpec {
  BoundKind kind = BoundKind::ValueRangeRelative;
  double value = 1e-4;

  static constexpr ErrorBoundSpec absolute(double v) { return {BoundKind::Absolute, v}; }
  static constexpr ErrorBoundSpec relative(double v) { return {BoundKind::ValueRangeRelative, v}; }

  friend bool operator==(const ErrorBoundSpec&, const ErrorBoundSpec&) = default;
};

/// Absolute error bound for `field`. Relative bounds scale by max - min;
/// a zero-range field under a relative bound throws Errc::degenerate_range.
double resolve_bound(const ErrorBoundSpec& spec, std::span<const float> field);

struct FieldStats {
  float min = 0.0f;
  float max = 0.0f;
  double range = 0.0;
  // Lag-1 Pearson correlation. Empty for n < 2 or a zero-variance lag window.
  std::optional<double> lag1_autocorr;
};

FieldStats field_stats(std::span<const float> field);

/// Pearson correlation of field[0..n-2] against field[1..n-1].
std::optional<double> lag1_autocorrelation(std::span<const float> field);

}  // namespace nbz
