#include "commands.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <mutex>
#include <sstream>

#include "nbz/error.hpp"
#include "nbz/io.hpp"
#include "nbz/metrics.hpp"
#include "nbz/parallel.hpp"
#include "nbz/predict.hpp"

namespace nbz::cli {

namespace {

using Clock = std::chrono::steady_clock;

std::string num(double v) {
  std::ostringstream s;
  s << std::setprecision(10) << v;
  return s.str();
}

std::string num(const std::optional<double>& v) { return v ? num(*v) : std::string("NA"); }

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

std::optional<double> mbps(std::uint64_t bytes, double seconds) {
  if (seconds <= 0.0 || bytes == 0) return std::nullopt;
  return static_cast<double>(bytes) / seconds / 1e6;
}

std::vector<std::filesystem::path> snapshot_prefixes(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) throw Error(Errc::io, "not a directory: " + dir.string());
  std::vector<std::filesystem::path> out;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".xx") {
      out.push_back(entry.path().parent_path() / entry.path().stem());
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

PipelineSettings CodecOptions::settings() const {
  PipelineSettings s;
  const auto m = parse_mode(mode);
  if (!m) throw Error(Errc::invalid_argument, "unknown mode " + mode);
  s.mode = *m;
  const auto v = parse_variant(rindex);
  if (!v) throw Error(Errc::invalid_argument, "unknown R-index variant " + rindex);
  s.variant = *v;
  s.bounds.fill(eb_abs ? ErrorBoundSpec::absolute(*eb_abs) : ErrorBoundSpec::relative(eb_rel.value_or(1e-4)));
  s.segment_size = segment_size;
  s.ignored_groups = ignored_groups;
  s.interval_count = intervals;
  s.threads = std::max(1u, threads);
  return s;
}

int cmd_compress(const CompressArgs& args) {
  const PipelineSettings settings = args.codec.settings();
  const ParticleSnapshot snapshot = read_snapshot(args.input);

  Permutation perm;
  const auto start = Clock::now();
  const CompressedArchive archive = compress(snapshot, settings, &perm);
  const auto bytes = encode_archive(archive);
  const double seconds = seconds_since(start);
  write_file(args.output, bytes);
  if (!args.permutation.empty()) write_permutation(perm, args.permutation);

  const CompressionRate size{snapshot.byte_size(), bytes.size()};
  std::cout << "mode=" << mode_name(settings.mode) << " n=" << snapshot.size()
            << " original_bytes=" << size.original_bytes << " compressed_bytes=" << size.compressed_bytes
            << " ratio=" << num(size.ratio()) << " bit_rate=" << num(size.bit_rate())
            << " compress_mbps=" << num(mbps(size.original_bytes, seconds)) << '\n';
  return 0;
}

int cmd_decompress(const DecompressArgs& args) {
  const CompressedArchive archive = read_archive(args.input);
  const auto start = Clock::now();
  const ParticleSnapshot snapshot = decompress(archive, std::max(1u, args.threads));
  const double seconds = seconds_since(start);
  write_snapshot(snapshot, args.output);
  std::cout << "mode=" << mode_name(archive.header.mode) << " n=" << snapshot.size()
            << " original_bytes=" << snapshot.byte_size() << " compressed_bytes=" << encoded_size(archive)
            << " decompress_mbps=" << num(mbps(snapshot.byte_size(), seconds)) << '\n';
  return 0;
}

int cmd_analyze(const std::filesystem::path& input) {
  const ParticleSnapshot snapshot = read_snapshot(input);
  std::cout << "field,n,min,max,range,lag1_autocorr,nrmse_lv,nrmse_lcf\n";
  for (Field f : kAllFields) {
    const auto data = snapshot.field(f);
    std::cout << field_name(f) << ',' << data.size() << ',';
    if (data.empty()) {
      std::cout << "NA,NA,NA,undefined,NA,NA\n";
      continue;
    }
    const FieldStats st = field_stats(data);
    const auto ac = st.lag1_autocorr;
    std::cout << num(st.min) << ',' << num(st.max) << ',' << num(st.range) << ','
              << (ac ? num(*ac) : std::string("undefined")) << ','
              << num(prediction_nrmse(PredictorKind::LastValue, data)) << ','
              << num(prediction_nrmse(PredictorKind::LinearFit, data)) << '\n';
  }
  return 0;
}

int cmd_sweep(const SweepArgs& args) {
  if (args.bounds.empty()) throw Error(Errc::invalid_argument, "no bounds given");
  const PipelineSettings base = args.codec.settings();
  const ParticleSnapshot snapshot = read_snapshot(args.input);
  const auto points = rd_sweep(snapshot, base, args.bounds);
  if (args.output.empty()) {
    write_sweep_csv(std::cout, points);
  } else {
    std::ofstream out(args.output);
    if (!out) throw Error(Errc::io, "cannot create " + args.output.string());
    write_sweep_csv(out, points);
  }
  const bool all_ok = std::all_of(points.begin(), points.end(), [](const SweepPoint& p) { return p.ok(); });
  for (const auto& p : points) {
    if (!p.ok()) std::cerr << "nbz: bound " << num(p.bound) << ": " << p.error << '\n';
  }
  return all_ok ? 0 : 1;
}

int cmd_gen(const GenArgs& args) {
  const auto kind = parse_profile(args.profile);
  if (!kind) throw Error(Errc::invalid_argument, "unknown profile " + args.profile);
  GeneratorProfile profile;
  profile.kind = *kind;
  profile.n = args.n;
  profile.seed = args.seed;
  const ParticleSnapshot snapshot = generate(profile);
  write_snapshot(snapshot, args.output);
  std::cout << "profile=" << args.profile << " n=" << snapshot.size() << " seed=" << args.seed
            << " bytes=" << snapshot.byte_size() << '\n';
  return 0;
}

int cmd_batch(const BatchArgs& args) {
  PipelineSettings settings = args.codec.settings();
  const unsigned workers = settings.threads;
  settings.threads = 1;
  const auto inputs = snapshot_prefixes(args.input_dir);
  if (inputs.empty()) {
    std::cerr << "nbz: warning: no snapshots (*.xx) in " << args.input_dir.string() << '\n';
    return 0;
  }
  std::filesystem::create_directories(args.output_dir);

  std::vector<std::string> lines(inputs.size());
  std::atomic<std::size_t> failed{0};
  std::atomic<std::uint64_t> original{0}, compressed{0};
  const auto start = Clock::now();
  parallel_for(inputs.size(), workers, [&](std::size_t k) {
    const auto name = inputs[k].filename().string();
    try {
      const ParticleSnapshot snapshot = read_snapshot(inputs[k]);
      const auto bytes = encode_archive(compress(snapshot, settings));
      write_file(args.output_dir / (name + ".nbz"), bytes);
      const CompressionRate size{snapshot.byte_size(), bytes.size()};
      original += size.original_bytes;
      compressed += size.compressed_bytes;
      lines[k] = "file=" + name + " status=ok n=" + std::to_string(snapshot.size()) +
                 " compressed_bytes=" + std::to_string(bytes.size()) + " ratio=" + num(size.ratio());
    } catch (const std::exception& e) {
      ++failed;
      lines[k] = "file=" + name + " status=error message=\"" + e.what() + "\"";
    }
  });
  const double seconds = seconds_since(start);
  for (const auto& line : lines) std::cout << line << '\n';
  const CompressionRate total{original.load(), compressed.load()};
  std::cout << "files=" << inputs.size() << " failed=" << failed.load() << " original_bytes=" << total.original_bytes
            << " compressed_bytes=" << total.compressed_bytes << " ratio=" << num(total.ratio())
            << " throughput_mbps=" << num(mbps(total.original_bytes, seconds)) << '\n';
  return failed.load() == 0 ? 0 : 1;
}

}  // namespace nbz::cli
