#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "nbz/datagen.hpp"
#include "nbz/pipeline.hpp"

namespace nbz::cli {

struct CodecOptions {
  std::string mode = "sz-lv";
  std::optional<double> eb_rel;
  std::optional<double> eb_abs;
  std::size_t segment_size = kDefaultSegmentSize;
  unsigned ignored_groups = kDefaultIgnoredGroups;
  std::uint32_t intervals = kDefaultIntervalCount;
  std::string rindex = "coord";
  unsigned threads = 1;

  PipelineSettings settings() const;
};

struct CompressArgs {
  std::filesystem::path input;
  std::filesystem::path output;
  std::filesystem::path permutation;
  CodecOptions codec;
};

struct DecompressArgs {
  std::filesystem::path input;
  std::filesystem::path output;
  unsigned threads = 1;
};

struct SweepArgs {
  std::filesystem::path input;
  std::filesystem::path output;
  std::vector<double> bounds;
  CodecOptions codec;
};

struct GenArgs {
  std::string profile = "amdf";
  std::size_t n = 1 << 20;
  std::uint64_t seed = 1;
  std::filesystem::path output;
};

struct BatchArgs {
  std::filesystem::path input_dir;
  std::filesystem::path output_dir;
  CodecOptions codec;
};

int cmd_compress(const CompressArgs& args);
int cmd_decompress(const DecompressArgs& args);
int cmd_analyze(const std::filesystem::path& input);
int cmd_sweep(const SweepArgs& args);
int cmd_gen(const GenArgs& args);
int cmd_batch(const BatchArgs& args);

}  // namespace nbz::cli
