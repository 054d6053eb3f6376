#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nbz/model.hpp"
#include "nbz/pipeline.hpp"

namespace nbz {

/// Brute-force max_i |orig_i - recon_i|. Throws on length mismatch.
double max_abs_error(std::span<const float> orig, std::span<const float> recon);

/// sqrt(sum e_i^2 / N) / (max(orig) - min(orig)); empty when the range is 0.
std::optional<double> nrmse(std::span<const float> orig, std::span<const float> recon);

/// -20 log10(nrmse). Returns +infinity for nrmse == 0.
double psnr(double nrmse_value);

/// Exact size accounting. ratio() * bit_rate() is 32 as a rational
/// identity: ratio = 32 v / c and bit_rate = c / v for c compressed bits and
/// v stored values.
struct CompressionRate {
  std::uint64_t original_bytes = 0;
  std::uint64_t compressed_bytes = 0;

  std::uint64_t value_count() const noexcept { return original_bytes / 4; }
  std::optional<double> ratio() const noexcept;
  std::optional<double> bit_rate() const noexcept;  // bits per stored value
};

struct FieldDistortion {
  double bound = 0.0;
  double range = 0.0;
  double max_abs_error = 0.0;
  std::optional<double> nrmse;
  std::optional<double> psnr;
};

struct DistortionReport {
  std::string mode;
  std::uint64_t n = 0;
  std::array<FieldDistortion, kFieldCount> fields{};
  // Root-mean-square of the defined per-field NRMSE values.
  std::optional<double> overall_nrmse;
  std::optional<double> overall_psnr;
  CompressionRate size;
  double compress_seconds = 0.0;
  double decompress_seconds = 0.0;

  std::optional<double> compress_rate() const noexcept;    // bytes/s
  std::optional<double> decompress_rate() const noexcept;  // bytes/s
  bool within_bounds() const noexcept;
  /// Largest max_abs_error / range over fields with nonzero range.
  double max_relative_error() const noexcept;
};

/// `reference` must already be in the archive's particle order (see
/// apply_permutation); `reconstructed` is the decompressed snapshot.
DistortionReport measure_distortion(const ParticleSnapshot& reference,
                                    const ParticleSnapshot& reconstructed,
                                    const CompressedArchive& archive);

struct Evaluation {
  CompressedArchive archive;
  Permutation permutation;
  ParticleSnapshot reconstructed;
  DistortionReport report;
};

/// Compress (timed), decompress (timed), match particles, measure.
Evaluation evaluate(const ParticleSnapshot& snapshot, const PipelineSettings& settings);

struct SweepPoint {
  double bound = 0.0;  // value-range relative
  std::optional<double> ratio;
  std::optional<double> bit_rate;
  std::optional<double> psnr;
  double max_relative_error = 0.0;
  std::string error;  // non-empty when this bound failed

  bool ok() const noexcept { return error.empty(); }
};

/// One (bit-rate, PSNR) point per relative bound, applied to all six fields.
/// A failing bound is recorded in its point and the sweep continues.
std::vector<SweepPoint> rd_sweep(const ParticleSnapshot& snapshot, const PipelineSettings& base,
                                 std::span<const double> relative_bounds);

void write_sweep_csv(std::ostream& out, std::span<const SweepPoint> points);
void write_report_csv(std::ostream& out, const DistortionReport& report);
/// key=value summary, one line, no trailing newline.
std::string summary_line(const DistortionReport& report);

}  // namespace nbz
