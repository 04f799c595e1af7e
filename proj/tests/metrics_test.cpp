#include "approxpupil/error.hpp"
#include "approxpupil/metrics.hpp"
#include "approxpupil/pipeline.hpp"
#include "approxpupil/synth_corpus.hpp"
#include "oracles/oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <thread>

namespace {

using namespace approxpupil;
using namespace approxpupil::metrics;

GrayImage shifted(const GrayImage& img, int d) {
  GrayImage out = img;
  for (auto& v : out.data()) v = static_cast<std::uint8_t>(std::clamp(int{v} + d, 0, 255));
  return out;
}

TEST(Psnr, IdenticalImagesAreInfinite) {
  const GrayImage a = oracle::random_image(16, 16, 1);
  EXPECT_EQ(psnr(a, a), std::numeric_limits<double>::infinity());
}

TEST(Psnr, UniformOffset) {
  EXPECT_NEAR(psnr(GrayImage(8, 8, 100), GrayImage(8, 8, 101)), 48.1308036086791, 1e-3);
  EXPECT_DOUBLE_EQ(psnr(GrayImage(8, 8, 0), GrayImage(8, 8, 255)), 0.0);
  for (int d = 1; d < 100; d += 7)
    EXPECT_NEAR(psnr(GrayImage(4, 4, 10), GrayImage(4, 4, static_cast<std::uint8_t>(10 + d))),
                20.0 * std::log10(255.0 / d), 1e-9);
}

TEST(Psnr, SymmetricAndDecreasingWithError) {
  const GrayImage a(16, 16, 128);
  double prev = std::numeric_limits<double>::infinity();
  for (int d = 1; d < 50; ++d) {
    const GrayImage b = shifted(a, d);
    EXPECT_DOUBLE_EQ(psnr(a, b), psnr(b, a));
    EXPECT_LT(psnr(a, b), prev);
    prev = psnr(a, b);
  }
}

TEST(Psnr, RejectsMismatchedOrEmpty) {
  EXPECT_THROW(psnr(GrayImage(4, 4), GrayImage(4, 5)), SizeError);
  EXPECT_THROW(psnr(GrayImage(), GrayImage()), SizeError);
}

TEST(Ssim, IdenticalIsExactlyOne) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const GrayImage a = oracle::random_scene(32, 24, seed);
    EXPECT_EQ(ssim(a, a), 1.0);
  }
  EXPECT_EQ(ssim(GrayImage(11, 11, 0), GrayImage(11, 11, 0)), 1.0);
}

TEST(Ssim, ConstantImagesClosedForm) {
  // Zero variance: only the luminance term remains.
  const double c1 = std::pow(0.01 * 255, 2);
  const double expected = (2.0 * 100 * 150 + c1) / (100.0 * 100 + 150.0 * 150 + c1);
  EXPECT_NEAR(expected, 0.923092310530793, 1e-12);
  EXPECT_NEAR(ssim(GrayImage(32, 32, 100), GrayImage(32, 32, 150)), expected, 1e-9);
}

TEST(Ssim, InvertedImageIsNearMinusOne) {
  const GrayImage a = oracle::random_image(32, 32, 3);
  GrayImage b = a;
  for (auto& v : b.data()) v = static_cast<std::uint8_t>(255 - v);
  EXPECT_LT(ssim(a, b), -0.9);
}

TEST(Ssim, MatchesDirectWindowOracle) {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    const GrayImage a = oracle::random_scene(24, 20, seed);
    const GrayImage b = seed % 2 ? oracle::random_image(24, 20, seed + 100) : shifted(a, 3);
    EXPECT_NEAR(ssim(a, b), oracle::ssim_direct(a, b), 1e-9) << seed;
  }
}

TEST(Ssim, SymmetricAndBounded) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const GrayImage a = oracle::random_scene(20, 20, seed);
    const GrayImage b = oracle::random_scene(20, 20, seed + 50);
    const double s = ssim(a, b);
    EXPECT_NEAR(s, ssim(b, a), 1e-12);
    EXPECT_GE(s, -1.0);
    EXPECT_LE(s, 1.0);
  }
}

TEST(Ssim, RejectsMismatchedOrTooSmall) {
  EXPECT_THROW(ssim(GrayImage(16, 16), GrayImage(16, 17)), SizeError);
  EXPECT_THROW(ssim(GrayImage(10, 16), GrayImage(10, 16)), SizeError);
}

TEST(TimeStage, ReturnsValueAndRecords) {
  StageTimings t;
  const int v = time_stage(t, "work", [] { return 42; });
  EXPECT_EQ(v, 42);
  time_stage(t, "sleep", [] { std::this_thread::sleep_for(std::chrono::milliseconds(2)); });
  ASSERT_EQ(t.size(), 2U);
  EXPECT_EQ(t.entries()[0].first, "work");
  EXPECT_GE(t.entries()[0].second.count(), 0);
  EXPECT_GE(t.entries()[1].second, std::chrono::milliseconds(2));
  EXPECT_EQ(t.total(), t.entries()[0].second + t.entries()[1].second);
}

TEST(TimeStage, FullPipelineHasOneEntryPerStage) {
  const auto img = synth::generate_eye({}).image;
  const auto r = pipeline::run_pipeline(img, pipeline::PipelineConfig::exact());
  EXPECT_EQ(r.stage_timings.size(), 7U);
}

} // namespace
