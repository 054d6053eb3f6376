#include <gtest/gtest.h>

#include "nbz/datagen.hpp"
#include "nbz/error.hpp"
#include "nbz/predict.hpp"

namespace nbz {
namespace {

GeneratorProfile profile(ProfileKind kind, std::size_t n, std::uint64_t seed) {
  GeneratorProfile p;
  p.kind = kind;
  p.n = n;
  p.seed = seed;
  return p;
}

TEST(Generate, Reproducible) {
  for (auto kind : {ProfileKind::HaccLike, ProfileKind::AmdfLike}) {
    EXPECT_EQ(generate(profile(kind, 5000, 3)), generate(profile(kind, 5000, 3)));
    EXPECT_NE(generate(profile(kind, 5000, 3)), generate(profile(kind, 5000, 4)));
  }
}

TEST(Generate, SizesAndEdgeCases) {
  for (auto kind : {ProfileKind::HaccLike, ProfileKind::AmdfLike}) {
    EXPECT_EQ(generate(profile(kind, 0, 1)).size(), 0u);
    EXPECT_EQ(generate(profile(kind, 1, 1)).size(), 1u);
    EXPECT_EQ(generate(profile(kind, 12345, 1)).size(), 12345u);
  }
  auto p = profile(ProfileKind::HaccLike, 10, 1);
  p.box_size = 0.0;
  EXPECT_THROW(generate(p), Error);
}

TEST(Generate, ProfileNames) {
  EXPECT_EQ(parse_profile("hacc"), ProfileKind::HaccLike);
  EXPECT_EQ(parse_profile(profile_name(ProfileKind::AmdfLike)), ProfileKind::AmdfLike);
  EXPECT_FALSE(parse_profile("nbody").has_value());
}

TEST(Generate, HaccAutocorrelationBands) {
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const auto s = generate(profile(ProfileKind::HaccLike, 100000, seed));
    EXPECT_GE(*lag1_autocorrelation(s.field(Field::xx)), 0.999);
    for (Field f : {Field::vx, Field::vy, Field::vz}) {
      const double r = *lag1_autocorrelation(s.field(f));
      EXPECT_GE(r, 0.90);
      EXPECT_LE(r, 0.94);
    }
  }
}

TEST(Generate, AmdfVelocitiesAreWhite) {
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const auto s = generate(profile(ProfileKind::AmdfLike, 100000, seed));
    for (Field f : {Field::vx, Field::vy, Field::vz}) {
      EXPECT_LT(std::abs(*lag1_autocorrelation(s.field(f))), 0.02);
    }
    // Positions stay inside the box.
    for (Field f : {Field::xx, Field::yy, Field::zz}) {
      for (float v : s.field(f)) {
        ASSERT_GE(v, 0.0f);
        ASSERT_LE(v, 256.0f);
      }
    }
  }
}

TEST(Generate, AmdfFavoursLastValue) {
  const auto s = generate(profile(ProfileKind::AmdfLike, 100000, 1));
  for (Field f : kAllFields) {
    EXPECT_LT(*prediction_nrmse(PredictorKind::LastValue, s.field(f)),
              *prediction_nrmse(PredictorKind::LinearFit, s.field(f)));
  }
}

}  // namespace
}  // namespace nbz
