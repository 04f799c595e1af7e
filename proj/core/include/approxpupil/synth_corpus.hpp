#pragma once

// Deterministic synthetic eye images with analytic pupil ground truth.
//
// Noise: std::mt19937_64 seeded with EyeSpec::seed; each pixel, in row-major
// order, consumes two 64-bit draws u1, u2 mapped to (0,1] and [0,1) via the
// top 53 bits, and adds sigma * sqrt(-2 ln u1) * cos(2 pi u2) (Box-Muller,
// cosine branch only), rounded half away from zero and clamped to [0,255].
// Highlight placement draws from the same engine before any noise.

#include "approxpupil/image.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace approxpupil::synth {

struct EyeSpec {
  std::size_t width = 128;
  std::size_t height = 128;
  double pupil_cx = 64.0;
  double pupil_cy = 64.0;
  double pupil_radius = 18.0;
  int pupil_intensity = 10;
  double iris_radius = 40.0;
  int iris_intensity = 100;
  int sclera_intensity = 220;
  unsigned highlight_count = 0;
  double highlight_radius = 2.0;
  int highlight_intensity = 255;
  double occlusion = 0.0; ///< fraction of the pupil disk covered from the top
  int eyelid_intensity = 180;
  double noise_sigma = 0.0;
  std::uint64_t seed = 0;

  /// Throws SpecError on impossible geometry or out-of-range intensities.
  void validate() const;
};

struct GroundTruth {
  std::uint64_t seed = 0;
  double cx = 0.0;
  double cy = 0.0;
  double radius = 0.0;
};

struct SynthEye {
  GrayImage image;
  GroundTruth truth;
};

SynthEye generate_eye(const EyeSpec& spec);

/// Per-image geometry variation for corpora.
struct CorpusOptions {
  EyeSpec base;
  bool vary_geometry = true;
  double radius_min = 14.0;
  double radius_max = 24.0;
  double center_jitter = 8.0; ///< max offset of the pupil from the image centre, px
  double iris_ratio = 2.2;    ///< iris radius / pupil radius
  std::optional<double> pupil_radius; ///< pins the radius instead of drawing it
  std::optional<double> iris_radius;  ///< pins the iris instead of iris_ratio
};

/// Spec of image `index` in a corpus: seed = master_seed + index; geometry
/// (when varied) is drawn from that seed's own engine.
EyeSpec corpus_eye_spec(const CorpusOptions& opts, std::uint64_t master_seed,
                        std::size_t index);

std::vector<SynthEye> generate_corpus(const CorpusOptions& opts, std::uint64_t master_seed,
                                      std::size_t count);

struct TruthRow {
  std::string file;
  GroundTruth truth;
};

/// Header `file,seed,cx,cy,r`, one row per image.
void write_truth_csv(std::ostream& os, const std::vector<TruthRow>& rows);
std::vector<TruthRow> read_truth_csv(std::istream& is);

} // namespace approxpupil::synth
