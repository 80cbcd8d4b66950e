#include "circnav/random.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace circnav {
namespace {

// Known-answer vectors published with the Random123 reference implementation.
TEST(Philox, KnownAnswerVectors) {
  using B = CounterRng::Block;
  EXPECT_EQ(CounterRng::philox({0, 0, 0, 0}, {0, 0}),
            (B{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u}));
  EXPECT_EQ(CounterRng::philox({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu},
                               {0xffffffffu, 0xffffffffu}),
            (B{0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu}));
  EXPECT_EQ(CounterRng::philox({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u},
                               {0xa4093822u, 0x299f31d0u}),
            (B{0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u}));
}

// Golden values from an independent Python implementation of the same layout
// and Box-Muller transform.
TEST(CounterRng, GoldenBitsAndNormals) {
  const CounterRng rng(42);
  EXPECT_EQ(rng.bits(0, 0), 8643895580192075859ULL);
  EXPECT_EQ(rng.bits(0, 1), 6033254488940945703ULL);
  EXPECT_EQ(rng.bits(0, 2), 12143778050234647077ULL);
  EXPECT_EQ(rng.bits(0, 3), 12371121732634215541ULL);
  EXPECT_NEAR(rng.normal(0, 0), -0.6653748678073492, 1e-15);
  EXPECT_NEAR(rng.normal(0, 1), -1.4338891806537386, 1e-15);
  EXPECT_NEAR(rng.normal(0, 2), 0.13500793462831817, 1e-15);
  EXPECT_NEAR(rng.normal(0, 3), -0.6482506427558843, 1e-15);
  EXPECT_NEAR(CounterRng(12345678901234567ULL).normal(1, (1ULL << 33) + 5), -0.6401176176488733,
              1e-15);
}

TEST(CounterRng, UniformInOpenInterval) {
  const CounterRng rng(3);
  for (std::uint64_t i = 0; i < 10000; ++i) {
    const double u = rng.uniform(0, i);
    ASSERT_GT(u, 0.0);
    ASSERT_LT(u, 1.0);
  }
}

TEST(CounterRng, NormalMoments) {
  const CounterRng rng(2024);
  constexpr int n = 200000;
  double sum = 0.0;
  double sq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double z = rng.normal(streams::kDiffusion, static_cast<std::uint64_t>(i));
    sum += z;
    sq += z * z;
  }
  const double mean = sum / n;
  const double var = sq / n - mean * mean;
  EXPECT_NEAR(mean, 0.0, 5.0 / std::sqrt(n));
  EXPECT_NEAR(var, 1.0, 0.02);
}

TEST(CounterRng, StreamsAndSeedsAreDistinct) {
  EXPECT_NE(CounterRng(1).bits(0, 0), CounterRng(2).bits(0, 0));
  EXPECT_NE(CounterRng(1).bits(0, 0), CounterRng(1).bits(1, 0));
  EXPECT_EQ(derive_seed(9, 3, 4), derive_seed(9, 3, 4));
  EXPECT_NE(derive_seed(9, 3, 4), derive_seed(9, 4, 3));
}

}  // namespace
}  // namespace circnav
