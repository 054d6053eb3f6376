#include "nbz/predict.hpp"

#include <algorithm>
#include <cmath>

namespace nbz {

double predict(PredictorKind kind, std::span<const float> history) noexcept {
  const std::size_t i = history.size();
  const double prev1 = i >= 1 ? history[i - 1] : 0.0;
  const double prev2 = i >= 2 ? history[i - 2] : 0.0;
  return predict_next(kind, prev1, prev2, i);
}

std::optional<double> prediction_nrmse(PredictorKind kind, std::span<const float> field) {
  const std::size_t warmup = kind == PredictorKind::LinearFit ? 2 : 1;
  if (field.size() <= warmup) return std::nullopt;
  const auto [lo, hi] = std::minmax_element(field.begin(), field.end());
  const double range = static_cast<double>(*hi) - static_cast<double>(*lo);
  if (range == 0.0) return std::nullopt;

  double sum_sq = 0.0;
  for (std::size_t i = warmup; i < field.size(); ++i) {
    const double prev2 = i >= 2 ? field[i - 2] : 0.0;
    const double pred = predict_next(kind, field[i - 1], prev2, i);
    const double e = static_cast<double>(field[i]) - pred;
    sum_sq += e * e;
  }
  return std::sqrt(sum_sq / static_cast<double>(field.size() - warmup)) / range;
}

}  // namespace nbz
