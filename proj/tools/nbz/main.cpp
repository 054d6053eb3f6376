#include <CLI11.hpp>
#include <iostream>
#include <string>

#include "commands.hpp"
#include "nbz/error.hpp"

namespace {

using nbz::cli::CodecOptions;

struct ModeAliases {
  bool speed = false;
  bool tradeoff = false;
  bool compression = false;
};

void add_codec_options(CLI::App* cmd, CodecOptions& opt, ModeAliases& alias) {
  auto* mode = cmd->add_option("--mode", opt.mode, "Codec")
                   ->check(CLI::IsMember({"sz-lcf", "sz-lv", "sz-lv-prx", "sz-cpc2000", "cpc2000"}))
                   ->capture_default_str();
  auto* speed = cmd->add_flag("--best-speed", alias.speed, "Same as --mode sz-lv");
  auto* tradeoff = cmd->add_flag("--best-tradeoff", alias.tradeoff, "Same as --mode sz-lv-prx");
  auto* compression = cmd->add_flag("--best-compression", alias.compression, "Same as --mode sz-cpc2000");
  mode->excludes(speed)->excludes(tradeoff)->excludes(compression);
  speed->excludes(tradeoff)->excludes(compression);
  tradeoff->excludes(compression);

  auto* rel = cmd->add_option("--eb-rel", opt.eb_rel, "Value-range relative error bound (default 1e-4)")
                  ->check(CLI::PositiveNumber);
  auto* abs = cmd->add_option("--eb-abs", opt.eb_abs, "Absolute error bound")->check(CLI::PositiveNumber);
  rel->excludes(abs);

  cmd->add_option("--segment-size", opt.segment_size, "Particles per R-index segment")
      ->check(CLI::Range(std::size_t{1}, std::size_t{0xffffffffu}))
      ->capture_default_str();
  cmd->add_option("--ignored-groups", opt.ignored_groups, "Low radix groups skipped by the partial sort")
      ->check(CLI::Range(0u, 255u))
      ->capture_default_str();
  cmd->add_option("--intervals", opt.intervals, "Quantisation interval count (even)")
      ->check(CLI::Validator(
          [](const std::string& v) {
            const unsigned long long k = std::stoull(v);
            return k >= 2 && k <= (1ull << 24) && k % 2 == 0 ? std::string() : "must be even, in [2, 2^24]";
          },
          "EVEN"))
      ->capture_default_str();
  cmd->add_option("--rindex", opt.rindex, "R-index variant for sz-lv-prx")
      ->check(CLI::IsMember({"coord", "vel", "coordvel"}))
      ->capture_default_str();
  cmd->add_option("--threads", opt.threads, "Worker threads")
      ->envname("NBZ_THREADS")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
}

void apply_aliases(CodecOptions& opt, const ModeAliases& alias) {
  if (alias.speed) opt.mode = "sz-lv";
  if (alias.tradeoff) opt.mode = "sz-lv-prx";
  if (alias.compression) opt.mode = "sz-cpc2000";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Error-bounded lossy compression for N-body particle snapshots", "nbz"};
  app.require_subcommand(1);

  nbz::cli::CompressArgs compress_args;
  ModeAliases compress_alias;
  auto* compress = app.add_subcommand("compress", "Compress a snapshot (six <prefix>.<field> files)");
  compress->add_option("input", compress_args.input, "Snapshot prefix")->required();
  compress->add_option("-o,--output", compress_args.output, "Archive path")->required();
  compress->add_option("--emit-permutation", compress_args.permutation,
                       "Write the particle order as a test sidecar");
  add_codec_options(compress, compress_args.codec, compress_alias);

  nbz::cli::DecompressArgs decompress_args;
  auto* decompress = app.add_subcommand("decompress", "Decompress an archive into six field files");
  decompress->add_option("input", decompress_args.input, "Archive path")->required()->check(CLI::ExistingFile);
  decompress->add_option("-o,--output", decompress_args.output, "Snapshot prefix")->required();
  decompress->add_option("--threads", decompress_args.threads, "Worker threads")
      ->envname("NBZ_THREADS")
      ->check(CLI::PositiveNumber);

  std::filesystem::path analyze_input;
  auto* analyze = app.add_subcommand("analyze", "Per-field statistics as CSV");
  analyze->add_option("input", analyze_input, "Snapshot prefix")->required();

  nbz::cli::SweepArgs sweep_args;
  ModeAliases sweep_alias;
  auto* sweep = app.add_subcommand("sweep", "Rate-distortion sweep over relative bounds, as CSV");
  sweep->add_option("input", sweep_args.input, "Snapshot prefix")->required();
  sweep->add_option("--bounds", sweep_args.bounds, "Relative error bounds")
      ->required()
      ->expected(1, -1)
      ->delimiter(',')
      ->check(CLI::PositiveNumber);
  sweep->add_option("-o,--output", sweep_args.output, "CSV path (default stdout)");
  add_codec_options(sweep, sweep_args.codec, sweep_alias);

  nbz::cli::GenArgs gen_args;
  auto* gen = app.add_subcommand("gen", "Generate a synthetic snapshot");
  gen->add_option("--profile", gen_args.profile, "hacc or amdf")
      ->check(CLI::IsMember({"hacc", "amdf"}))
      ->capture_default_str();
  gen->add_option("--n", gen_args.n, "Particle count")->capture_default_str();
  gen->add_option("--seed", gen_args.seed, "Generator seed")->capture_default_str();
  gen->add_option("-o,--output", gen_args.output, "Snapshot prefix")->required();

  nbz::cli::BatchArgs batch_args;
  ModeAliases batch_alias;
  auto* batch = app.add_subcommand("batch", "Compress every snapshot in a directory");
  batch->add_option("input", batch_args.input_dir, "Directory of snapshots")->required();
  batch->add_option("-o,--output", batch_args.output_dir, "Archive directory")->required();
  add_codec_options(batch, batch_args.codec, batch_alias);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (*compress) {
      apply_aliases(compress_args.codec, compress_alias);
      return nbz::cli::cmd_compress(compress_args);
    }
    if (*decompress) return nbz::cli::cmd_decompress(decompress_args);
    if (*analyze) return nbz::cli::cmd_analyze(analyze_input);
    if (*sweep) {
      apply_aliases(sweep_args.codec, sweep_alias);
      return nbz::cli::cmd_sweep(sweep_args);
    }
    if (*gen) return nbz::cli::cmd_gen(gen_args);
    if (*batch) {
      apply_aliases(batch_args.codec, batch_alias);
      return nbz::cli::cmd_batch(batch_args);
    }
  } catch (const nbz::Error& e) {
    std::cerr << "nbz: error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "nbz: error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
