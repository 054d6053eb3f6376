#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>

namespace nbz {

enum class PredictorKind : std::uint8_t {
  LastValue,  // x[i-1]
  LinearFit,  // 2 x[i-1] - x[i-2]
};

/// Prediction for position `index` given its two nearest predecessors.
/// Position 0 predicts 0; LinearFit degrades to LastValue at position 1.
inline double predict_next(PredictorKind kind, double prev1, double prev2,
                           std::size_t index) noexcept {
  if (index == 0) return 0.0;
  if (kind == PredictorKind::LinearFit && index >= 2) return 2.0 * prev1 - prev2;
  return prev1;
}

/// `history` holds the reconstructed values preceding the predicted position.
double predict(PredictorKind kind, std::span<const float> history) noexcept;

/// Range-normalised RMS error of open-loop prediction (true predecessors)
/// over the positions where the predictor has its full history: i >= 1 for
/// LastValue, i >= 2 for LinearFit. Empty when no such position exists or
/// the field has zero range.
std::optional<double> prediction_nrmse(PredictorKind kind, std::span<const float> field);

}  // namespace nbz
