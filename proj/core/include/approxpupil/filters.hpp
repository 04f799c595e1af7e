#pragma once

// 3x3 Gaussian smoothing and Prewitt gradients, each as an integer reference
// and as a bit-level datapath built from configured adders.

#include "approxpupil/bitlevel_arith.hpp"
#include "approxpupil/image.hpp"

#include <array>
#include <cstdint>
#include <span>

namespace approxpupil::filters {

struct GaussianParams {
  static constexpr std::array<std::array<int, 3>, 3> kernel{{{1, 2, 1}, {2, 4, 2}, {1, 2, 1}}};
  /// Left shifts realizing each kernel weight, row-major.
  static constexpr std::array<unsigned, 9> weight_shift{0, 1, 0, 1, 2, 1, 0, 1, 0};
  static constexpr unsigned divisor_shift = 4;
  static constexpr double sigma = 1.0; // nominal only; the integer kernel is authoritative
};

/// Minimum adder width for the Gaussian pre-shift sum (max 16*255 = 4080).
inline constexpr unsigned kGaussianSumBits = 12;
/// Minimum adder width for Prewitt partial sums and signed gradients.
inline constexpr unsigned kPrewittMinBits = 11;

struct GradientField {
  Raster<std::int32_t> gx;
  Raster<std::int32_t> gy;
  Raster<std::int32_t> magnitude; ///< empty until a magnitude op runs
};

/// (sum of K * neighborhood) >> 4 in plain integer arithmetic, replicate-edge
/// padding. Throws SizeError below 3x3.
GrayImage gaussian_reference(const GrayImage& img);

/// Same filter as a shift-add datapath. Each neighbor is scaled by a wired
/// left shift (weights 1/2/4). The nine terms, taken row-major, are folded by
/// exact carry-save compression (first three queued operands in, sum and
/// carry appended to the back) until two remain; those two go through
/// ripple_add(cfg). The result is shifted right by 4 and saturated at 255.
///
/// Bit-identical to gaussian_reference when cfg is all-Exact or has a
/// CarryOnly prefix of at most 4 cells.
GrayImage gaussian_datapath(const GrayImage& img, const arith::AdderConfig& cfg);

/// gx = p3 + p6 + p9 - p1 - p4 - p7, gy = p7 + p8 + p9 - p1 - p2 - p3 with p1
/// the top-left and p9 the bottom-right neighbor. Each side is accumulated
/// left to right with ripple_add(cfg), then differenced with ripple_sub(cfg).
GradientField prewitt_gradients(const GrayImage& img, const arith::AdderConfig& cfg);

/// floor(sqrt(gx^2 + gy^2)).
GradientField gradient_magnitude_exact(GradientField gf);

/// |gx| + |gy|, the addition through ripple_add(cfg).
GradientField gradient_magnitude_approx(GradientField gf, const arith::AdderConfig& cfg);

/// Largest |gx|+|gy| magnitude the configured datapath reports on a flat
/// field at any of `levels`. Zero for exact adders; LOA subtractors bias
/// x - x to -1.
std::int32_t gradient_flat_response(const arith::AdderConfig& cfg,
                                    std::span<const std::uint8_t> levels);

/// Exact integer square root, floor.
std::uint64_t isqrt(std::uint64_t v) noexcept;

} // namespace approxpupil::filters
