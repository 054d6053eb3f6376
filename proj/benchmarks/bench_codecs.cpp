#include <benchmark/benchmark.h>

#include <map>
#include <random>

#include "nbz/datagen.hpp"
#include "nbz/huffman.hpp"
#include "nbz/pipeline.hpp"
#include "nbz/rindex.hpp"

namespace {

const nbz::ParticleSnapshot& amdf(std::size_t n) {
  static std::map<std::size_t, nbz::ParticleSnapshot> cache;
  auto it = cache.find(n);
  if (it == cache.end()) {
    nbz::GeneratorProfile p;
    p.kind = nbz::ProfileKind::AmdfLike;
    p.n = n;
    it = cache.emplace(n, nbz::generate(p)).first;
  }
  return it->second;
}

void compress_mode(benchmark::State& state, nbz::CompressionMode mode) {
  const auto& s = amdf(static_cast<std::size_t>(state.range(0)));
  const auto settings = nbz::PipelineSettings::uniform(mode, nbz::ErrorBoundSpec::relative(1e-4));
  for (auto _ : state) benchmark::DoNotOptimize(nbz::compress(s, settings));
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * s.byte_size()));
}

void BM_CompressSzLv(benchmark::State& state) { compress_mode(state, nbz::CompressionMode::SzLv); }
void BM_CompressSzLvPrx(benchmark::State& state) { compress_mode(state, nbz::CompressionMode::SzLvPrx); }
void BM_CompressCpc2000(benchmark::State& state) { compress_mode(state, nbz::CompressionMode::Cpc2000); }

void BM_Decompress(benchmark::State& state) {
  const auto& s = amdf(static_cast<std::size_t>(state.range(0)));
  const auto a = nbz::compress(s, nbz::PipelineSettings::uniform(nbz::CompressionMode::SzLv,
                                                               nbz::ErrorBoundSpec::relative(1e-4)));
  for (auto _ : state) benchmark::DoNotOptimize(nbz::decompress(a));
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * s.byte_size()));
}

// range(1) = ignored groups
void BM_PrxSort(benchmark::State& state) {
  const auto& s = amdf(static_cast<std::size_t>(state.range(0)));
  std::array<double, nbz::kFieldCount> bounds{};
  for (nbz::Field f : nbz::kAllFields) {
    bounds[nbz::index_of(f)] = nbz::resolve_bound(nbz::ErrorBoundSpec::relative(1e-4), s.field(f));
  }
  const auto set = nbz::build_r_indices(s, nbz::RIndexVariant::CoordinateBased, bounds, nbz::kDefaultSegmentSize);
  for (auto _ : state) benchmark::DoNotOptimize(nbz::prx_sort(set, static_cast<unsigned>(state.range(1))));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * s.size()));
}

void BM_HuffmanRoundTrip(benchmark::State& state) {
  std::mt19937_64 rng(1);
  std::geometric_distribution<std::uint32_t> geo(0.2);
  std::vector<std::uint32_t> symbols(static_cast<std::size_t>(state.range(0)));
  std::vector<std::uint64_t> counts(512);
  for (auto& v : symbols) ++counts[v = std::min<std::uint32_t>(geo(rng), 511)];
  const auto table = nbz::huffman_build(counts);
  for (auto _ : state) {
    const auto bits = nbz::huffman_encode(symbols, table);
    benchmark::DoNotOptimize(nbz::huffman_decode(bits, table, symbols.size()));
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * symbols.size()));
}

}  // namespace

BENCHMARK(BM_CompressSzLv)->Arg(1 << 20)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CompressSzLvPrx)->Arg(1 << 20)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CompressCpc2000)->Arg(1 << 20)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Decompress)->Arg(1 << 20)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PrxSort)->Args({1 << 20, 0})->Args({1 << 20, 6})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_HuffmanRoundTrip)->Arg(1 << 20)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
