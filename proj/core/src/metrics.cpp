#include "nbz/metrics.hpp"

#include <chrono>
#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>

#include "nbz/error.hpp"
#include "nbz/io.hpp"

namespace nbz {

namespace {

void check_lengths(std::span<const float> a, std::span<const float> b) {
  if (a.size() != b.size()) {
    throw Error(Errc::invalid_argument,
                "length mismatch: " + std::to_string(a.size()) + " vs " + std::to_string(b.size()));
  }
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string fmt(double v) {
  std::ostringstream s;
  s << std::setprecision(10) << v;
  return s.str();
}

std::string fmt(const std::optional<double>& v) { return v ? fmt(*v) : std::string("NA"); }

}  // namespace

double max_abs_error(std::span<const float> orig, std::span<const float> recon) {
  check_lengths(orig, recon);
  double worst = 0.0;
  for (std::size_t i = 0; i < orig.size(); ++i) {
    worst = std::max(worst, std::fabs(static_cast<double>(orig[i]) - static_cast<double>(recon[i])));
  }
  return worst;
}

std::optional<double> nrmse(std::span<const float> orig, std::span<const float> recon) {
  check_lengths(orig, recon);
  if (orig.empty()) return std::nullopt;
  const auto [lo, hi] = std::minmax_element(orig.begin(), orig.end());
  const double range = static_cast<double>(*hi) - static_cast<double>(*lo);
  if (range == 0.0) return std::nullopt;
  double sum = 0.0;
  for (std::size_t i = 0; i < orig.size(); ++i) {
    const double e = static_cast<double>(orig[i]) - static_cast<double>(recon[i]);
    sum += e * e;
  }
  return std::sqrt(sum / static_cast<double>(orig.size())) / range;
}

double psnr(double nrmse_value) {
  if (nrmse_value == 0.0) return std::numeric_limits<double>::infinity();
  return -20.0 * std::log10(nrmse_value);
}

std::optional<double> CompressionRate::ratio() const noexcept {
  if (original_bytes == 0 || compressed_bytes == 0) return std::nullopt;
  return static_cast<double>(original_bytes) / static_cast<double>(compressed_bytes);
}

std::optional<double> CompressionRate::bit_rate() const noexcept {
  if (value_count() == 0 || compressed_bytes == 0) return std::nullopt;
  return 8.0 * static_cast<double>(compressed_bytes) / static_cast<double>(value_count());
}

std::optional<double> DistortionReport::compress_rate() const noexcept {
  if (compress_seconds <= 0.0 || size.original_bytes == 0) return std::nullopt;
  return static_cast<double>(size.original_bytes) / compress_seconds;
}

std::optional<double> DistortionReport::decompress_rate() const noexcept {
  if (decompress_seconds <= 0.0 || size.original_bytes == 0) return std::nullopt;
  return static_cast<double>(size.original_bytes) / decompress_seconds;
}

bool DistortionReport::within_bounds() const noexcept {
  for (const auto& f : fields) {
    if (f.max_abs_error > f.bound) return false;
  }
  return true;
}

double DistortionReport::max_relative_error() const noexcept {
  double worst = 0.0;
  for (const auto& f : fields) {
    if (f.range > 0.0) worst = std::max(worst, f.max_abs_error / f.range);
  }
  return worst;
}

DistortionReport measure_distortion(const ParticleSnapshot& reference, const ParticleSnapshot& reconstructed,
                                    const CompressedArchive& archive) {
  if (reference.size() != reconstructed.size()) {
    throw Error(Errc::invalid_argument, "reference and reconstruction differ in particle count");
  }
  DistortionReport r;
  r.mode = std::string(mode_name(archive.header.mode));
  r.n = reference.size();
  r.size.original_bytes = reference.byte_size();
  r.size.compressed_bytes = encoded_size(archive);

  double sum_sq = 0.0;
  std::size_t defined = 0;
  for (Field f : kAllFields) {
    FieldDistortion& d = r.fields[index_of(f)];
    const auto orig = reference.field(f);
    const auto recon = reconstructed.field(f);
    d.bound = archive.header.fields[index_of(f)].bound;
    if (!orig.empty()) {
      const auto [lo, hi] = std::minmax_element(orig.begin(), orig.end());
      d.range = static_cast<double>(*hi) - static_cast<double>(*lo);
    }
    d.max_abs_error = max_abs_error(orig, recon);
    d.nrmse = nrmse(orig, recon);
    if (d.nrmse) {
      d.psnr = psnr(*d.nrmse);
      sum_sq += *d.nrmse * *d.nrmse;
      ++defined;
    }
  }
  if (defined > 0) {
    r.overall_nrmse = std::sqrt(sum_sq / static_cast<double>(defined));
    r.overall_psnr = psnr(*r.overall_nrmse);
  }
  return r;
}

Evaluation evaluate(const ParticleSnapshot& snapshot, const PipelineSettings& settings) {
  Evaluation e;
  auto start = std::chrono::steady_clock::now();
  e.archive = compress(snapshot, settings, &e.permutation);
  const double compress_seconds = seconds_since(start);

  start = std::chrono::steady_clock::now();
  e.reconstructed = decompress(e.archive, settings.threads);
  const double decompress_seconds = seconds_since(start);

  const ParticleSnapshot matched =
      mode_reorders(settings.mode) ? apply_permutation(snapshot, e.permutation) : snapshot;
  e.report = measure_distortion(matched, e.reconstructed, e.archive);
  e.report.compress_seconds = compress_seconds;
  e.report.decompress_seconds = decompress_seconds;
  return e;
}

std::vector<SweepPoint> rd_sweep(const ParticleSnapshot& snapshot, const PipelineSettings& base,
                                 std::span<const double> relative_bounds) {
  std::vector<SweepPoint> points;
  points.reserve(relative_bounds.size());
  for (double bound : relative_bounds) {
    SweepPoint p;
    p.bound = bound;
    try {
      PipelineSettings s = base;
      s.bounds.fill(ErrorBoundSpec::relative(bound));
      const Evaluation e = evaluate(snapshot, s);
      p.ratio = e.report.size.ratio();
      p.bit_rate = e.report.size.bit_rate();
      p.psnr = e.report.overall_psnr;
      p.max_relative_error = e.report.max_relative_error();
    } catch (const Error& err) {
      p.error = err.what();
    }
    points.push_back(std::move(p));
  }
  return points;
}

void write_sweep_csv(std::ostream& out, std::span<const SweepPoint> points) {
  out << "bound,ratio,bit_rate,psnr,max_err,error\n";
  for (const auto& p : points) {
    out << fmt(p.bound) << ',' << fmt(p.ratio) << ',' << fmt(p.bit_rate) << ',' << fmt(p.psnr) << ','
        << (p.ok() ? fmt(p.max_relative_error) : std::string("NA")) << ',' << p.error << '\n';
  }
}

void write_report_csv(std::ostream& out, const DistortionReport& report) {
  out << "field,bound,range,max_abs_error,nrmse,psnr\n";
  for (Field f : kAllFields) {
    const auto& d = report.fields[index_of(f)];
    out << field_name(f) << ',' << fmt(d.bound) << ',' << fmt(d.range) << ',' << fmt(d.max_abs_error) << ','
        << fmt(d.nrmse) << ',' << fmt(d.psnr) << '\n';
  }
}

std::string summary_line(const DistortionReport& report) {
  std::ostringstream s;
  const auto mbps = [](const std::optional<double>& rate) {
    return rate ? std::optional<double>(*rate / 1e6) : std::nullopt;
  };
  s << "mode=" << report.mode << " n=" << report.n << " original_bytes=" << report.size.original_bytes
    << " compressed_bytes=" << report.size.compressed_bytes << " ratio=" << fmt(report.size.ratio())
    << " bit_rate=" << fmt(report.size.bit_rate()) << " psnr=" << fmt(report.overall_psnr)
    << " max_rel_err=" << fmt(report.max_relative_error()) << " compress_mbps=" << fmt(mbps(report.compress_rate()))
    << " decompress_mbps=" << fmt(mbps(report.decompress_rate()));
  return s.str();
}

}  // namespace nbz
