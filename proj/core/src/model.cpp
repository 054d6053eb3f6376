#include "nbz/model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nbz/error.hpp"

namespace nbz {

namespace {
constexpr std::array<std::string_view, kFieldCount> kNames = {"xx", "yy", "zz", "vx", "vy", "vz"};
}

std::string_view field_name(Field f) noexcept { return kNames[index_of(f)]; }

std::optional<Field> parse_field(std::string_view name) noexcept {
  for (Field f : kAllFields) {
    if (kNames[index_of(f)] == name) return f;
  }
  return std::nullopt;
}

ParticleSnapshot::ParticleSnapshot(FieldArrays fields) : fields_(std::move(fields)) {
  const std::size_t n = fields_[0].size();
  for (Field f : kAllFields) {
    const auto& values = fields_[index_of(f)];
    if (values.size() != n) {
      throw Error(Errc::invalid_argument,
                  "field " + std::string(field_name(f)) + " has " + std::to_string(values.size()) +
                      " values, expected " + std::to_string(n));
    }
    const auto bad = std::find_if(values.begin(), values.end(), [](float v) { return !std::isfinite(v); });
    if (bad != values.end()) {
      throw Error(Errc::invalid_argument, "non-finite value in field " + std::string(field_name(f)) +
                                              " at index " + std::to_string(bad - values.begin()));
    }
  }
}

double resolve_bound(const ErrorBoundSpec& spec, std::span<const float> field) {
  if (!(spec.value > 0.0) || !std::isfinite(spec.value)) {
    throw Error(Errc::invalid_argument, "error bound must be positive and finite");
  }
  if (spec.kind == BoundKind::Absolute) return spec.value;
  if (field.empty()) throw Error(Errc::invalid_argument, "relative bound needs a nonempty field");
  const auto [lo, hi] = std::minmax_element(field.begin(), field.end());
  const double range = static_cast<double>(*hi) - static_cast<double>(*lo);
  if (range == 0.0) throw Error(Errc::degenerate_range, "degenerate range");
  return spec.value * range;
}

std::optional<double> lag1_autocorrelation(std::span<const float> field) {
  const std::size_t n = field.size();
  if (n < 2) return std::nullopt;
  const std::size_t m = n - 1;
  double mean_a = 0.0, mean_b = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    mean_a += field[i];
    mean_b += field[i + 1];
  }
  mean_a /= static_cast<double>(m);
  mean_b /= static_cast<double>(m);
  double cov = 0.0, var_a = 0.0, var_b = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double da = field[i] - mean_a;
    const double db = field[i + 1] - mean_b;
    cov += da * db;
    var_a += da * da;
    var_b += db * db;
  }
  if (var_a == 0.0 || var_b == 0.0) return std::nullopt;
  return std::clamp(cov / std::sqrt(var_a * var_b), -1.0, 1.0);
}

FieldStats field_stats(std::span<const float> field) {
  if (field.empty()) throw Error(Errc::invalid_argument, "field_stats needs at least one value");
  const auto [lo, hi] = std::minmax_element(field.begin(), field.end());
  FieldStats s;
  s.min = *lo;
  s.max = *hi;
  s.range = static_cast<double>(s.max) - static_cast<double>(s.min);
  s.lag1_autocorr = lag1_autocorrelation(field);
  return s;
}

}  // namespace nbz
