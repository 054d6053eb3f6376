#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "nbz/predict.hpp"

namespace nbz {

inline constexpr std::uint32_t kDefaultIntervalCount = 65536;
inline constexpr std::uint32_t kMaxIntervalCount = 1u << 24;
inline constexpr std::uint32_t kEscapeCode = 0;

struct QuantizedValue {
  std::uint32_t code = kEscapeCode;  // 0 = escape, stored verbatim
  float reconstructed = 0.0f;
};

/// Linear-scaling quantisation of `real - predicted` on a grid of width
/// 2*bound. Codes occupy [1, interval_count]; out-of-range residuals, and
/// residuals whose float reconstruction would miss the bound, escape.
QuantizedValue quantize_residual(float real, double predicted, double bound,
                                 std::uint32_t interval_count) noexcept;

/// Inverse of quantize_residual for a non-escape code.
inline float dequantize_residual(double predicted, std::uint32_t code, double bound,
                                 std::uint32_t interval_count) noexcept {
  const auto q = static_cast<std::int64_t>(code) - static_cast<std::int64_t>(interval_count / 2) - 1;
  return static_cast<float>(predicted + static_cast<double>(q) * (2.0 * bound));
}

/// Validates an interval count: even, >= 2, <= kMaxIntervalCount.
void check_interval_count(std::uint32_t interval_count);

struct QuantizedField {
  std::vector<std::uint32_t> codes;
  std::vector<float> escapes;  // verbatim values, in position order
  std::uint32_t interval_count = kDefaultIntervalCount;
  double bound = 0.0;
};

/// Closed-loop quantisation: every prediction is made from reconstructed
/// predecessors, exactly as the decoder will see them.
QuantizedField quantize_field(std::span<const float> field, PredictorKind predictor,
                              double bound, std::uint32_t interval_count);

/// quantize_field over several equally long fields in one interleaved pass.
/// The prediction chains of different fields are independent, so stepping
/// them together lets the CPU overlap their latencies; the result equals
/// calling quantize_field on each field.
std::vector<QuantizedField> quantize_fields(std::span<const std::span<const float>> fields,
                                            PredictorKind predictor, std::span<const double> bounds,
                                            std::uint32_t interval_count);

std::vector<float> reconstruct_field(const QuantizedField& q, PredictorKind predictor);

struct IntegerizedField {
  std::vector<std::int64_t> ints;
  double bound = 0.0;
  // Positions whose float reconstruction cannot meet the bound (only when
  // 2*bound is comparable to the float spacing); callers store them verbatim.
  std::vector<std::size_t> escapes;
};

inline constexpr double kMaxIntegerMagnitude = 4611686018427387904.0;  // 2^62

/// Whole-value integerisation: ints[i] = round_half_even(field[i] / (2*bound)).
/// Throws Errc::overflow when a quotient exceeds 2^62.
IntegerizedField integerize(std::span<const float> field, double bound);

inline float integer_to_value(std::int64_t q, double bound) noexcept {
  return static_cast<float>(static_cast<double>(q) * (2.0 * bound));
}

}  // namespace nbz
