#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "nbz/error.hpp"
#include "nbz/io.hpp"
#include "nbz/metrics.hpp"
#include "support.hpp"

namespace nbz {
namespace {

TEST(Nrmse, Examples) {
  const std::vector<float> a = {0.0f, 1.0f};
  EXPECT_EQ(nrmse(a, a), 0.0);
  const std::vector<float> b = {0.1f, 1.0f};
  EXPECT_NEAR(*nrmse(a, b), std::sqrt(0.01 / 2), 1e-8);
  const std::vector<float> flat = {2.0f, 2.0f};
  EXPECT_FALSE(nrmse(flat, flat).has_value());
  EXPECT_FALSE(nrmse(std::span<const float>{}, std::span<const float>{}).has_value());
}

TEST(Nrmse, MatchesTwoPassOracle) {
  std::mt19937_64 rng(7);
  std::normal_distribution<float> noise(0.0f, 0.01f);
  for (int trial = 0; trial < 20; ++trial) {
    const auto orig = testing::uniform_field(5000, -50.0f, 80.0f, trial);
    std::vector<float> recon(orig);
    for (auto& v : recon) v += noise(rng);
    long double lo = orig[0], hi = orig[0], sq = 0;
    for (float v : orig) {
      lo = std::min<long double>(lo, v);
      hi = std::max<long double>(hi, v);
    }
    for (std::size_t i = 0; i < orig.size(); ++i) {
      const long double e = static_cast<long double>(orig[i]) - recon[i];
      sq += e * e;
    }
    const double expect = static_cast<double>(std::sqrt(sq / orig.size()) / (hi - lo));
    EXPECT_NEAR(*nrmse(orig, recon), expect, expect * 1e-12);
  }
}

TEST(MaxAbsError, BruteForce) {
  const std::vector<float> a = {1.0f, 2.0f, 3.0f};
  const std::vector<float> b = {1.0f, 2.5f, 2.75f};
  EXPECT_DOUBLE_EQ(max_abs_error(a, b), 0.5);
  EXPECT_THROW(max_abs_error(a, std::span(b).first(2)), Error);
}

TEST(Psnr, Examples) {
  EXPECT_NEAR(psnr(1e-4), 80.0, 1e-9);
  EXPECT_NEAR(psnr(1.0), 0.0, 1e-12);
  EXPECT_TRUE(std::isinf(psnr(0.0)));
  EXPECT_GT(psnr(0.0), 0.0);
}

TEST(CompressionRate, RatioTimesBitRateIs32) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 1000; ++trial) {
    CompressionRate r{4 * (1 + rng() % 1000000), 1 + rng() % 1000000};
    EXPECT_NEAR(*r.ratio() * *r.bit_rate(), 32.0, 1e-12);
  }
  CompressionRate half{1000, 500};
  EXPECT_DOUBLE_EQ(*half.ratio(), 2.0);
  EXPECT_DOUBLE_EQ(*half.bit_rate(), 16.0);
  EXPECT_FALSE(CompressionRate{}.ratio().has_value());
}

TEST(Evaluate, ReportIsConsistent) {
  const auto s = testing::walk_snapshot(4000, 12);
  for (CompressionMode m : kAllModes) {
    const Evaluation e = evaluate(s, PipelineSettings::uniform(m, ErrorBoundSpec::relative(1e-4)));
    EXPECT_TRUE(e.report.within_bounds()) << mode_name(m);
    EXPECT_LE(e.report.max_relative_error(), 1e-4 * (1 + 1e-9));
    EXPECT_EQ(e.report.size.compressed_bytes, encoded_size(e.archive));
    EXPECT_EQ(e.report.size.original_bytes, s.byte_size());
    EXPECT_EQ(e.report.mode, mode_name(m));
    ASSERT_TRUE(e.report.overall_psnr.has_value());
    EXPECT_GT(*e.report.overall_psnr, 80.0);
    const std::string line = summary_line(e.report);
    EXPECT_NE(line.find("mode=" + std::string(mode_name(m))), std::string::npos);
    EXPECT_NE(line.find("ratio="), std::string::npos);
    EXPECT_EQ(line.find('\n'), std::string::npos);
  }
}

TEST(RdSweep, BitRateRisesAsBoundTightens) {
  const auto s = testing::walk_snapshot(10000, 1);
  const std::vector<double> bounds = {1e-3, 1e-4, 1e-5};
  for (CompressionMode m : kAllModes) {
    const auto base = PipelineSettings::uniform(m, ErrorBoundSpec::relative(1.0));
    const auto points = rd_sweep(s, base, bounds);
    ASSERT_EQ(points.size(), 3u);
    for (std::size_t i = 0; i < points.size(); ++i) {
      ASSERT_TRUE(points[i].ok()) << points[i].error;
      EXPECT_EQ(points[i].bound, bounds[i]);
      EXPECT_LE(points[i].max_relative_error, bounds[i] * (1 + 1e-9));
      if (i > 0) EXPECT_GT(*points[i].bit_rate, *points[i - 1].bit_rate);
    }
  }
}

TEST(RdSweep, SinglePointMatchesEvaluate) {
  const auto s = testing::walk_snapshot(3000, 2);
  const auto settings = PipelineSettings::uniform(CompressionMode::SzLv, ErrorBoundSpec::relative(1e-4));
  const std::vector<double> one = {1e-4};
  const auto points = rd_sweep(s, settings, one);
  const auto e = evaluate(s, settings);
  EXPECT_EQ(points[0].ratio, e.report.size.ratio());
  EXPECT_EQ(points[0].psnr, e.report.overall_psnr);
}

TEST(RdSweep, DeterministicCsvAndFailuresRecorded) {
  const auto s = testing::walk_snapshot(3000, 3);
  const auto base = PipelineSettings::uniform(CompressionMode::Cpc2000, ErrorBoundSpec::relative(1.0));
  const std::vector<double> bounds = {1e-2, -1.0, 1e-4};
  std::ostringstream a, b;
  const auto points = rd_sweep(s, base, bounds);
  write_sweep_csv(a, points);
  write_sweep_csv(b, rd_sweep(s, base, bounds));
  EXPECT_EQ(a.str(), b.str());
  EXPECT_EQ(a.str().substr(0, a.str().find('\n')), "bound,ratio,bit_rate,psnr,max_err,error");
  EXPECT_TRUE(points[0].ok());
  EXPECT_FALSE(points[1].ok());
  EXPECT_TRUE(points[2].ok());
}

}  // namespace
}  // namespace nbz
