#include "approxpupil/binarization.hpp"
#include "approxpupil/error.hpp"
#include "oracles/oracles.hpp"

#include <gtest/gtest.h>

namespace {

using namespace approxpupil;
using namespace approxpupil::binarization;

GrayImage ramp8() {
  GrayImage img(256, 1);
  for (int v = 0; v < 256; ++v) img.at(static_cast<std::size_t>(v), 0) = static_cast<std::uint8_t>(v);
  return img;
}

Raster<std::int32_t> ramp12() {
  Raster<std::int32_t> r(4096, 1);
  for (int v = 0; v < 4096; ++v) r.at(static_cast<std::size_t>(v), 0) = v;
  return r;
}

TEST(Binarize, ExactExamples) {
  const GrayImage img(4, 1, std::vector<std::uint8_t>{95, 96, 97, 200});
  const auto b = binarize_exact(img, {96, 0, 8});
  EXPECT_FALSE(b.get(0, 0));
  EXPECT_FALSE(b.get(1, 0));
  EXPECT_TRUE(b.get(2, 0));
  EXPECT_TRUE(b.get(3, 0));
}

TEST(Binarize, TruncatedExamples) {
  const GrayImage img(5, 1, std::vector<std::uint8_t>{95, 96, 97, 127, 64});
  const auto b = binarize_truncated(img, ThresholdParams::intensity_default());
  EXPECT_FALSE(b.get(0, 0));
  EXPECT_TRUE(b.get(1, 0)); // tie reads as >=
  EXPECT_TRUE(b.get(2, 0));
  EXPECT_TRUE(b.get(3, 0));
  EXPECT_FALSE(b.get(4, 0));
}

TEST(Binarize, IntensityDivergesOnlyAtThreshold) {
  const GrayImage img = ramp8();
  const auto ex = binarize_exact(img, ThresholdParams::intensity_default());
  const auto tr = binarize_truncated(img, ThresholdParams::intensity_default());
  for (int v = 0; v < 256; ++v) {
    const auto x = static_cast<std::size_t>(v);
    if (v == 96) {
      EXPECT_FALSE(ex.get(x, 0));
      EXPECT_TRUE(tr.get(x, 0));
    } else {
      EXPECT_EQ(ex.get(x, 0), tr.get(x, 0)) << v;
    }
  }
}

TEST(Binarize, GradientDivergesOnlyAtThreshold) {
  const auto r = ramp12();
  const auto ex = binarize_exact(r, ThresholdParams::gradient_default());
  const auto tr = binarize_truncated(r, ThresholdParams::gradient_default());
  std::size_t diffs = 0;
  for (std::size_t x = 0; x < r.width(); ++x)
    if (ex.get(x, 0) != tr.get(x, 0)) {
      ++diffs;
      EXPECT_EQ(x, 128U);
    }
  EXPECT_EQ(diffs, 1U);
}

TEST(Binarize, EveryAlignedThresholdDivergesOnlyAtTie) {
  const GrayImage img = ramp8();
  for (unsigned k = 0; k < 8; ++k)
    for (std::uint32_t t = 0; t < 256; t += 1U << k) {
      const ThresholdParams p{t, k, 8};
      const auto ex = binarize_exact(img, p);
      const auto tr = binarize_truncated(img, p);
      for (std::uint32_t v = 0; v < 256; ++v)
        ASSERT_EQ(ex.get(v, 0) != tr.get(v, 0), v == t) << "k=" << k << " t=" << t << " v=" << v;
    }
}

TEST(Binarize, MonotoneInThreshold) {
  const GrayImage img = oracle::random_image(32, 32, 5);
  std::size_t prev = img.size() + 1;
  for (std::uint32_t t = 0; t < 256; t += 32) {
    const std::size_t n = binarize_truncated(img, {t, 5, 8}).count();
    EXPECT_LE(n, prev);
    prev = n;
  }
  prev = img.size() + 1;
  for (std::uint32_t t = 0; t < 256; ++t) {
    const std::size_t n = binarize_exact(img, {t, 0, 8}).count();
    EXPECT_LE(n, prev);
    prev = n;
  }
}

TEST(Binarize, ShapeIsPreserved) {
  const GrayImage img = oracle::random_image(13, 7, 1);
  const auto b = binarize_exact(img, {96, 0, 8});
  EXPECT_EQ(b.width(), 13U);
  EXPECT_EQ(b.height(), 7U);
}

TEST(ThresholdParams, Validation) {
  EXPECT_NO_THROW(ThresholdParams::intensity_default().validate(true));
  EXPECT_NO_THROW(ThresholdParams::gradient_default().validate(true));
  EXPECT_THROW((ThresholdParams{100, 5, 8}.validate(true)), ConfigError);
  EXPECT_NO_THROW((ThresholdParams{100, 5, 8}.validate(false)));
  EXPECT_THROW((ThresholdParams{256, 0, 8}.validate(false)), ConfigError);
  EXPECT_THROW((ThresholdParams{0, 8, 8}.validate(false)), ConfigError);
}

TEST(Binarize, TruncatedRejectsMisalignedThreshold) {
  EXPECT_THROW(binarize_truncated(ramp8(), {100, 5, 8}), ConfigError);
}

TEST(Binarize, RasterValuesMustFitTheWord) {
  Raster<std::int32_t> r(2, 1, 0);
  r.at(1, 0) = 4096;
  EXPECT_THROW(binarize_exact(r, ThresholdParams::gradient_default()), RangeError);
  EXPECT_THROW(binarize_truncated(r, ThresholdParams::gradient_default()), RangeError);
  r.at(1, 0) = -1;
  EXPECT_THROW(binarize_exact(r, ThresholdParams::gradient_default()), RangeError);
}

} // namespace
