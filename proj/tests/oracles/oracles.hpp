#pragma once

// Test-only reference computations. Nothing here calls into the library's
// cell model or filter code; each routine recomputes its result from the
// arithmetic definition.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "approxpupil/image.hpp"

namespace oracle {

/// LOA addition formed arithmetically: upper part added as integers plus the
/// AND of the top approximate bit pair, lower part OR-ed.
inline std::uint64_t loa_add(std::uint64_t a, std::uint64_t b, unsigned k) {
  if (k == 0) return a + b;
  const std::uint64_t mask = (std::uint64_t{1} << k) - 1;
  const std::uint64_t carry = (a >> (k - 1)) & (b >> (k - 1)) & 1U;
  return (((a >> k) + (b >> k) + carry) << k) | ((a | b) & mask);
}

/// Carry-only prefix: exact sum with the lower k bits cleared.
inline std::uint64_t carry_only_add(std::uint64_t a, std::uint64_t b, unsigned k) {
  return (a + b) & ~((std::uint64_t{1} << k) - 1);
}

/// Convolution with an explicit 3x3 kernel (cross-correlation orientation:
/// kernel[r][c] weighs the neighbor at row offset r-1, column offset c-1),
/// replicate padding.
inline approxpupil::Raster<std::int64_t> correlate3(const approxpupil::GrayImage& img,
                                                     const std::array<std::array<int, 3>, 3>& k) {
  const auto w = static_cast<long>(img.width());
  const auto h = static_cast<long>(img.height());
  approxpupil::Raster<std::int64_t> out(img.width(), img.height());
  for (long y = 0; y < h; ++y)
    for (long x = 0; x < w; ++x) {
      std::int64_t acc = 0;
      for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) {
          const long sx = std::clamp(x + c - 1, 0L, w - 1);
          const long sy = std::clamp(y + r - 1, 0L, h - 1);
          acc += k[r][c] * img.at(static_cast<std::size_t>(sx), static_cast<std::size_t>(sy));
        }
      out.at(static_cast<std::size_t>(x), static_cast<std::size_t>(y)) = acc;
    }
  return out;
}

inline constexpr std::array<std::array<int, 3>, 3> kPrewittX{{{-1, 0, 1}, {-1, 0, 1}, {-1, 0, 1}}};
inline constexpr std::array<std::array<int, 3>, 3> kPrewittY{{{-1, -1, -1}, {0, 0, 0}, {1, 1, 1}}};
inline constexpr std::array<std::array<int, 3>, 3> kGauss{{{1, 2, 1}, {2, 4, 2}, {1, 2, 1}}};

/// Gaussian reference via correlate3, divided by 16 with floor.
inline approxpupil::GrayImage gaussian(const approxpupil::GrayImage& img) {
  const auto s = correlate3(img, kGauss);
  approxpupil::GrayImage out(img.width(), img.height());
  for (std::size_t i = 0; i < s.size(); ++i)
    out.data()[i] = static_cast<std::uint8_t>(s.data()[i] / 16);
  return out;
}

/// SSIM by direct 2-D windowed sums (no separability), two-pass moments.
inline double ssim_direct(const approxpupil::GrayImage& a, const approxpupil::GrayImage& b) {
  constexpr int n = 11;
  constexpr double sigma = 1.5;
  std::array<std::array<double, n>, n> w{};
  double total = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double d2 = (i - 5.0) * (i - 5.0) + (j - 5.0) * (j - 5.0);
      w[i][j] = std::exp(-d2 / (2 * sigma * sigma));
      total += w[i][j];
    }
  for (auto& row : w)
    for (double& v : row) v /= total;
  const double c1 = std::pow(0.01 * 255, 2), c2 = std::pow(0.03 * 255, 2);
  double acc = 0.0;
  std::size_t count = 0;
  for (std::size_t y = 0; y + n <= a.height(); ++y)
    for (std::size_t x = 0; x + n <= a.width(); ++x) {
      double ma = 0, mb = 0;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          ma += w[i][j] * a.at(x + j, y + i);
          mb += w[i][j] * b.at(x + j, y + i);
        }
      double va = 0, vb = 0, cov = 0;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          const double da = a.at(x + j, y + i) - ma;
          const double db = b.at(x + j, y + i) - mb;
          va += w[i][j] * da * da;
          vb += w[i][j] * db * db;
          cov += w[i][j] * da * db;
        }
      acc += ((2 * ma * mb + c1) * (2 * cov + c2)) / ((ma * ma + mb * mb + c1) * (va + vb + c2));
      ++count;
    }
  return acc / static_cast<double>(count);
}

inline approxpupil::GrayImage random_image(std::size_t w, std::size_t h, std::uint64_t seed) {
  std::mt19937_64 eng(seed);
  approxpupil::GrayImage img(w, h);
  for (auto& v : img.data()) v = static_cast<std::uint8_t>(eng() & 0xFF);
  return img;
}

/// Piecewise-smooth random image: a few random rectangles over a gradient,
/// so filters see both flat areas and strong edges.
inline approxpupil::GrayImage random_scene(std::size_t w, std::size_t h, std::uint64_t seed) {
  std::mt19937_64 eng(seed);
  approxpupil::GrayImage img(w, h);
  for (std::size_t y = 0; y < h; ++y)
    for (std::size_t x = 0; x < w; ++x) img.at(x, y) = static_cast<std::uint8_t>((x * 255) / w);
  for (int r = 0; r < 6; ++r) {
    const std::size_t x0 = eng() % w, y0 = eng() % h;
    const std::size_t x1 = std::min(w, x0 + 1 + eng() % (w / 2)), y1 = std::min(h, y0 + 1 + eng() % (h / 2));
    const auto v = static_cast<std::uint8_t>(eng() & 0xFF);
    for (std::size_t y = y0; y < y1; ++y)
      for (std::size_t x = x0; x < x1; ++x) img.at(x, y) = v;
  }
  return img;
}

} // namespace oracle
