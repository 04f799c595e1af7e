#pragma once

#include "approxpupil/image.hpp"

#include <cstdint>

namespace approxpupil::binarization {

struct ThresholdParams {
  std::uint32_t value = 96;
  unsigned ignored_lsbs = 0;
  unsigned word_width = 8;

  /// Intensity operating point: T = 96 on 8-bit pixels, 5 LSBs dropped.
  static ThresholdParams intensity_default() { return {96, 5, 8}; }
  /// Gradient operating point: T = 128 on 12-bit magnitudes, 7 LSBs dropped.
  static ThresholdParams gradient_default() { return {128, 7, 12}; }

  /// Throws ConfigError for an unusable combination. `require_aligned` adds
  /// the T mod 2^k == 0 check needed by the truncated comparator.
  void validate(bool require_aligned) const;

  friend bool operator==(const ThresholdParams&, const ThresholdParams&) = default;
};

// b = 1 where value > T. ignored_lsbs is not consulted.
BinaryImage binarize_exact(const GrayImage& raster, const ThresholdParams& t);
BinaryImage binarize_exact(const Raster<std::int32_t>& raster, const ThresholdParams& t);

// b = truncated_compare_ge(value, T, k). Matches binarize_exact everywhere
// except value == T.
BinaryImage binarize_truncated(const GrayImage& raster, const ThresholdParams& t);
BinaryImage binarize_truncated(const Raster<std::int32_t>& raster, const ThresholdParams& t);

} // namespace approxpupil::binarization
