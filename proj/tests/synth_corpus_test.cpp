#include "approxpupil/error.hpp"
#include "approxpupil/pipeline.hpp"
#include "approxpupil/synth_corpus.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

namespace {

using namespace approxpupil;
using namespace approxpupil::synth;

double dist(std::size_t x, std::size_t y, double cx, double cy) {
  return std::hypot(double(x) - cx, double(y) - cy);
}

TEST(GenerateEye, NoiselessRegionsHaveExactIntensities) {
  EyeSpec s;
  s.pupil_cx = 61.3;
  s.pupil_cy = 66.8;
  const auto e = generate_eye(s);
  for (std::size_t y = 0; y < s.height; ++y)
    for (std::size_t x = 0; x < s.width; ++x) {
      const double d = dist(x, y, s.pupil_cx, s.pupil_cy);
      const int v = e.image.at(x, y);
      if (d < s.pupil_radius) ASSERT_EQ(v, s.pupil_intensity);
      else if (d < s.iris_radius) ASSERT_EQ(v, s.iris_intensity);
      else ASSERT_EQ(v, s.sclera_intensity);
    }
  EXPECT_EQ(e.truth.cx, 61.3);
  EXPECT_EQ(e.truth.radius, 18.0);
}

TEST(GenerateEye, DeterministicPerSeed) {
  EyeSpec s;
  s.noise_sigma = 5.0;
  s.highlight_count = 2;
  s.seed = 42;
  EXPECT_EQ(generate_eye(s).image, generate_eye(s).image);
  EyeSpec t = s;
  t.seed = 43;
  EXPECT_NE(generate_eye(s).image, generate_eye(t).image);
}

TEST(GenerateEye, NoiseFollowsBoxMullerCosineBranch) {
  EyeSpec s;
  s.noise_sigma = 7.5;
  s.seed = 11;
  const auto img = generate_eye(s).image;
  std::mt19937_64 eng(11);
  for (std::size_t i = 0; i < 64; ++i) {
    const double u1 = (double(eng() >> 11) + 1.0) / 9007199254740992.0;
    const double u2 = double(eng() >> 11) / 9007199254740992.0;
    const double z = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    const double expected = std::clamp(std::round(220.0 + 7.5 * z), 0.0, 255.0);
    ASSERT_EQ(img.data()[i], expected) << i; // row 0 is all sclera
  }
}

TEST(GenerateEye, NoiseStatistics) {
  EyeSpec s;
  s.noise_sigma = 10.0;
  s.seed = 3;
  const auto e = generate_eye(s);
  double sum = 0, sum2 = 0;
  std::size_t n = 0;
  for (std::size_t y = 0; y < s.height; ++y)
    for (std::size_t x = 0; x < s.width; ++x)
      if (dist(x, y, 64, 64) > 45) {
        const double v = e.image.at(x, y) - 220.0;
        sum += v;
        sum2 += v * v;
        ++n;
      }
  const double mean = sum / double(n);
  EXPECT_NEAR(mean, 0.0, 0.5);
  EXPECT_NEAR(std::sqrt(sum2 / double(n) - mean * mean), 10.0, 0.5);
}

TEST(GenerateEye, OcclusionCoversTopOfPupil) {
  EyeSpec s;
  s.occlusion = 0.25;
  const auto e = generate_eye(s);
  const double lid = 64 - 18 + 0.25 * 36; // rows above 55 are eyelid
  for (std::size_t y = 0; y < s.height; ++y)
    for (std::size_t x = 0; x < s.width; ++x) {
      if (double(y) < lid) ASSERT_EQ(e.image.at(x, y), s.eyelid_intensity);
      else if (dist(x, y, 64, 64) < 18) ASSERT_EQ(e.image.at(x, y), s.pupil_intensity);
    }
}

TEST(GenerateEye, HighlightsStayInsidePupil) {
  EyeSpec s;
  s.highlight_count = 3;
  s.seed = 5;
  const auto e = generate_eye(s);
  std::size_t lit = 0;
  for (std::size_t y = 0; y < s.height; ++y)
    for (std::size_t x = 0; x < s.width; ++x)
      if (e.image.at(x, y) == 255) {
        ++lit;
        EXPECT_LE(dist(x, y, 64, 64), 0.5 * 18 + 2);
      }
  EXPECT_GT(lit, 0U);
}

TEST(EyeSpec, RejectsImpossibleGeometry) {
  EyeSpec s;
  s.pupil_radius = 50;
  s.iris_radius = 40;
  EXPECT_THROW(generate_eye(s), SpecError);
  s = {};
  s.pupil_cx = 5;
  EXPECT_THROW(s.validate(), SpecError);
  s = {};
  s.occlusion = 1.5;
  EXPECT_THROW(s.validate(), SpecError);
  s = {};
  s.iris_intensity = 300;
  EXPECT_THROW(s.validate(), SpecError);
  s = {};
  s.noise_sigma = -1;
  EXPECT_THROW(s.validate(), SpecError);
}

TEST(Corpus, SeedsAndGeometry) {
  CorpusOptions o;
  const auto c = generate_corpus(o, 100, 20);
  ASSERT_EQ(c.size(), 20U);
  for (std::size_t i = 0; i < c.size(); ++i) {
    EXPECT_EQ(c[i].truth.seed, 100 + i);
    EXPECT_GE(c[i].truth.radius, o.radius_min);
    EXPECT_LT(c[i].truth.radius, o.radius_max);
    EXPECT_LE(std::abs(c[i].truth.cx - 64.0), o.center_jitter);
    EXPECT_LE(std::abs(c[i].truth.cy - 64.0), o.center_jitter);
  }
  // Image i of a corpus does not depend on how many images were requested.
  EXPECT_EQ(generate_corpus(o, 100, 3)[2].image, c[2].image);
}

TEST(Corpus, PinnedRadius) {
  CorpusOptions o;
  o.pupil_radius = 15.0;
  o.iris_radius = 30.0;
  for (std::size_t i = 0; i < 5; ++i) {
    const auto s = corpus_eye_spec(o, 7, i);
    EXPECT_EQ(s.pupil_radius, 15.0);
    EXPECT_EQ(s.iris_radius, 30.0);
  }
}

TEST(Corpus, PupilRecoveredAtLowNoise) {
  CorpusOptions o;
  o.base.noise_sigma = 5.0;
  const auto c = generate_corpus(o, 2024, 40);
  std::size_t ok = 0;
  for (const auto& e : c) {
    try {
      const auto loc = pipeline::run_pipeline(e.image, pipeline::PipelineConfig::exact()).location;
      if (std::hypot(loc.cx - e.truth.cx, loc.cy - e.truth.cy) <= 2.0 &&
          std::abs(loc.radius - e.truth.radius) <= 0.1 * e.truth.radius)
        ++ok;
    } catch (const NoPupilError&) {
    }
  }
  EXPECT_GE(double(ok) / double(c.size()), 0.95);
}

TEST(TruthCsv, RoundTrip) {
  std::vector<TruthRow> rows{{"eye_0000.pgm", {7, 61.25, 66.123456789012345, 18.5}},
                             {"eye_0001.pgm", {8, 1.0 / 3.0, 64.0, 14.000000000000002}}};
  std::stringstream ss;
  write_truth_csv(ss, rows);
  const auto back = read_truth_csv(ss);
  ASSERT_EQ(back.size(), 2U);
  for (std::size_t i = 0; i < 2; ++i) {
    EXPECT_EQ(back[i].file, rows[i].file);
    EXPECT_EQ(back[i].truth.seed, rows[i].truth.seed);
    EXPECT_EQ(back[i].truth.cx, rows[i].truth.cx);
    EXPECT_EQ(back[i].truth.cy, rows[i].truth.cy);
    EXPECT_EQ(back[i].truth.radius, rows[i].truth.radius);
  }
}

TEST(TruthCsv, EmptyAndMalformed) {
  std::stringstream empty;
  write_truth_csv(empty, {});
  EXPECT_EQ(empty.str(), "file,seed,cx,cy,r\n");
  EXPECT_TRUE(read_truth_csv(empty).empty());
  std::stringstream bad_header("a,b\n");
  EXPECT_THROW(read_truth_csv(bad_header), ConfigError);
  std::stringstream bad_row("file,seed,cx,cy,r\nx.pgm,1,2\n");
  EXPECT_THROW(read_truth_csv(bad_row), ConfigError);
  std::stringstream bad_num("file,seed,cx,cy,r\nx.pgm,one,2,3,4\n");
  EXPECT_THROW(read_truth_csv(bad_num), ConfigError);
}

} // namespace
