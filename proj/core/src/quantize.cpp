#include "nbz/quantize.hpp"

#include <array>
#include <cmath>
#include <string>

#include "nbz/error.hpp"
#include "rounding.hpp"

namespace nbz {

namespace {

bool within(float real, float recon, double bound) noexcept {
  return std::fabs(static_cast<double>(real) - static_cast<double>(recon)) <= bound;
}

}  // namespace

void check_interval_count(std::uint32_t interval_count) {
  if (interval_count < 2 || interval_count % 2 != 0 || interval_count > kMaxIntervalCount) {
    throw Error(Errc::invalid_argument,
                "interval count must be even and in [2, 2^24], got " + std::to_string(interval_count));
  }
}

QuantizedValue quantize_residual(float real, double predicted, double bound,
                                 std::uint32_t interval_count) noexcept {
  const double step = 2.0 * bound;
  const double q = detail::round_half_even((static_cast<double>(real) - predicted) / step);
  const double half = static_cast<double>(interval_count / 2);
  // Negated comparison so a NaN quotient escapes too.
  if (!(q >= -half && q <= half - 1.0)) return {kEscapeCode, real};
  const float recon = static_cast<float>(predicted + q * step);
  if (!within(real, recon, bound)) return {kEscapeCode, real};
  const auto code = static_cast<std::int64_t>(q) + interval_count / 2 + 1;
  return {static_cast<std::uint32_t>(code), recon};
}

QuantizedField quantize_field(std::span<const float> field, PredictorKind predictor, double bound,
                              std::uint32_t interval_count) {
  check_interval_count(interval_count);
  if (!(bound > 0.0)) throw Error(Errc::invalid_argument, "quantisation bound must be positive");

  QuantizedField out;
  out.interval_count = interval_count;
  out.bound = bound;
  out.codes.resize(field.size());
  double prev1 = 0.0, prev2 = 0.0;
  for (std::size_t i = 0; i < field.size(); ++i) {
    const double pred = predict_next(predictor, prev1, prev2, i);
    const QuantizedValue qv = quantize_residual(field[i], pred, bound, interval_count);
    out.codes[i] = qv.code;
    if (qv.code == kEscapeCode) out.escapes.push_back(field[i]);
    prev2 = prev1;
    prev1 = qv.reconstructed;
  }
  return out;
}

namespace {

template <std::size_t F>
void quantize_interleaved(std::span<const std::span<const float>> fields, PredictorKind predictor,
                          std::span<const double> bounds, std::uint32_t interval_count,
                          std::vector<QuantizedField>& out, std::size_t first) {
  const std::size_t n = fields[0].size();
  std::array<double, F> prev1{}, prev2{}, bound{};
  std::array<const float*, F> in{};
  std::array<std::uint32_t*, F> codes{};
  for (std::size_t f = 0; f < F; ++f) {
    bound[f] = bounds[first + f];
    in[f] = fields[first + f].data();
    codes[f] = out[first + f].codes.data();
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t f = 0; f < F; ++f) {
      const float x = in[f][i];
      const QuantizedValue qv =
          quantize_residual(x, predict_next(predictor, prev1[f], prev2[f], i), bound[f], interval_count);
      codes[f][i] = qv.code;
      if (qv.code == kEscapeCode) out[first + f].escapes.push_back(x);
      prev2[f] = prev1[f];
      prev1[f] = qv.reconstructed;
    }
  }
}

}  // namespace

std::vector<QuantizedField> quantize_fields(std::span<const std::span<const float>> fields,
                                            PredictorKind predictor, std::span<const double> bounds,
                                            std::uint32_t interval_count) {
  check_interval_count(interval_count);
  if (bounds.size() != fields.size()) throw Error(Errc::invalid_argument, "one bound per field required");
  const std::size_t count = fields.size();
  std::vector<QuantizedField> out(count);
  if (count == 0) return out;
  const std::size_t n = fields[0].size();
  for (std::size_t f = 0; f < count; ++f) {
    if (fields[f].size() != n) throw Error(Errc::invalid_argument, "fields differ in length");
    if (!(bounds[f] > 0.0)) throw Error(Errc::invalid_argument, "quantisation bound must be positive");
    out[f].interval_count = interval_count;
    out[f].bound = bounds[f];
    out[f].codes.resize(n);
  }
  std::size_t f = 0;
  for (; f + 6 <= count; f += 6) quantize_interleaved<6>(fields, predictor, bounds, interval_count, out, f);
  for (; f + 3 <= count; f += 3) quantize_interleaved<3>(fields, predictor, bounds, interval_count, out, f);
  for (; f + 2 <= count; f += 2) quantize_interleaved<2>(fields, predictor, bounds, interval_count, out, f);
  for (; f < count; ++f) quantize_interleaved<1>(fields, predictor, bounds, interval_count, out, f);
  return out;
}

std::vector<float> reconstruct_field(const QuantizedField& q, PredictorKind predictor) {
  std::vector<float> out(q.codes.size());
  std::size_t next_escape = 0;
  double prev1 = 0.0, prev2 = 0.0;
  for (std::size_t i = 0; i < q.codes.size(); ++i) {
    const std::uint32_t code = q.codes[i];
    float value;
    if (code == kEscapeCode) {
      if (next_escape >= q.escapes.size()) {
        throw Error(Errc::corrupt, "escape list exhausted at position " + std::to_string(i));
      }
      value = q.escapes[next_escape++];
    } else {
      if (code > q.interval_count) {
        throw Error(Errc::corrupt, "quantisation code out of range at position " + std::to_string(i));
      }
      value = dequantize_residual(predict_next(predictor, prev1, prev2, i), code, q.bound,
                                  q.interval_count);
    }
    out[i] = value;
    prev2 = prev1;
    prev1 = value;
  }
  if (next_escape != q.escapes.size()) throw Error(Errc::corrupt, "unused escape values");
  return out;
}

IntegerizedField integerize(std::span<const float> field, double bound) {
  if (!(bound > 0.0)) throw Error(Errc::invalid_argument, "integerisation bound must be positive");
  const double step = 2.0 * bound;

  IntegerizedField out;
  out.bound = bound;
  out.ints.resize(field.size());
  for (std::size_t i = 0; i < field.size(); ++i) {
    const float x = field[i];
    const double t = detail::round_half_even(static_cast<double>(x) / step);
    if (!(std::fabs(t) <= kMaxIntegerMagnitude)) {
      throw Error(Errc::overflow, "bound too small for value magnitude at index " + std::to_string(i));
    }
    auto q = static_cast<std::int64_t>(t);
    if (!within(x, integer_to_value(q, bound), bound)) {
      // The float nearest to q*step can land outside the bound when the step
      // is close to the float spacing; a neighbouring quotient may still work.
      if (within(x, integer_to_value(q - 1, bound), bound)) {
        q -= 1;
      } else if (within(x, integer_to_value(q + 1, bound), bound)) {
        q += 1;
      } else {
        out.escapes.push_back(i);
      }
    }
    out.ints[i] = q;
  }
  return out;
}

}  // namespace nbz
