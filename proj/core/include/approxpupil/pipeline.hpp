#pragma once

// Pupil segmentation: Gaussian smoothing, then two branches (gradient edge
// map E1; binarized dark-region mask through a second Prewitt pass, E2),
// combined by pointwise AND, then localization of the dark region.

#include "approxpupil/binarization.hpp"
#include "approxpupil/bitlevel_arith.hpp"
#include "approxpupil/filters.hpp"
#include "approxpupil/image.hpp"
#include "approxpupil/metrics.hpp"

#include <string>

namespace approxpupil::pipeline {

enum class Variant { Exact, Approximate };

std::string to_string(Variant v);
Variant parse_variant(const std::string& text);

/// Adder width used by both filters.
inline constexpr unsigned kDatapathBits = 12;
/// LSB cells given to approximate FAs by default.
inline constexpr unsigned kDefaultApproxBits = 5;

struct PipelineConfig {
  arith::AdderConfig gaussian_cfg = arith::AdderConfig::all_exact(kDatapathBits);
  arith::AdderConfig prewitt_cfg = arith::AdderConfig::all_exact(kDatapathBits);
  binarization::ThresholdParams intensity_threshold{96, 0, 8};
  binarization::ThresholdParams gradient_threshold{128, 0, 12};
  Variant variant = Variant::Exact;

  /// Exact adders, full comparators, sqrt magnitude.
  static PipelineConfig exact();
  /// 5 LOA LSBs in both filters, truncated comparators (96/k5, 128/k7),
  /// |gx|+|gy| magnitude.
  static PipelineConfig approximate();

  /// Throws ConfigError if the Exact variant carries approximate adders or
  /// truncated comparators, or any component is malformed.
  void validate() const;

  /// Canonical one-line rendering, stable across runs.
  std::string describe() const;
  /// 16 hex digits, FNV-1a 64 of describe().
  std::string fingerprint() const;
};

struct PupilLocation {
  double cx = 0.0;
  double cy = 0.0;
  double radius = 0.0;
  std::size_t area = 0;
};

struct PupilResult {
  GrayImage smoothed;
  Raster<std::int32_t> gradient_magnitude; ///< filter-1 magnitude
  BinaryImage e1;         ///< gradient edges
  BinaryImage pupil_mask; ///< 1 on the dark region
  BinaryImage e2;         ///< boundary of the dark region
  BinaryImage edge_map;   ///< e1 AND e2
  PupilLocation location;
  metrics::StageTimings stage_timings;
};

/// Stage labels, in execution order, as recorded in stage_timings.
inline constexpr const char* kStageLabels[] = {
    "gaussian", "prewitt1", "edge_threshold", "intensity_threshold",
    "prewitt2", "combine",  "localize"};

/// Throws SizeError below 16x16 and NoPupilError if the dark-region mask or
/// the combined edge map comes out empty.
PupilResult run_pipeline(const GrayImage& img, const PipelineConfig& cfg);

/// Every stage up to and including the combine; `location` is left empty.
PupilResult run_stages(const GrayImage& img, const PipelineConfig& cfg);

/// The final stage of run_pipeline: fills r.location from r.pupil_mask and
/// records its timing. Throws NoPupilError as run_pipeline does.
void localize_stage(PupilResult& r);

BinaryImage combine_edge_maps(const BinaryImage& e1, const BinaryImage& e2);

/// Centroid and equal-area radius of the largest 4-connected component
/// (ties go to the component met first in raster order).
PupilLocation localize_pupil(const BinaryImage& mask);

} // namespace approxpupil::pipeline
