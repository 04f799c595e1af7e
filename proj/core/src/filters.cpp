#include "approxpupil/filters.hpp"

#include "approxpupil/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <deque>

namespace approxpupil::filters {

using arith::AdderConfig;
using arith::Word;

namespace {

/// p1..p9, row-major around (x, y) with replicate padding.
std::array<std::uint8_t, 9> neighborhood(const GrayImage& img, std::size_t x,
                                         std::size_t y) {
  std::array<std::uint8_t, 9> p{};
  const auto sx = static_cast<std::ptrdiff_t>(x);
  const auto sy = static_cast<std::ptrdiff_t>(y);
  std::size_t i = 0;
  for (std::ptrdiff_t dy = -1; dy <= 1; ++dy)
    for (std::ptrdiff_t dx = -1; dx <= 1; ++dx) p[i++] = img.clamped(sx + dx, sy + dy);
  return p;
}

Word sum3(std::uint8_t a, std::uint8_t b, std::uint8_t c, const AdderConfig& cfg) {
  const unsigned w = cfg.width();
  const Word ab = arith::ripple_add(Word(w, a), Word(w, b), cfg).resized(w);
  return arith::ripple_add(ab, Word(w, c), cfg).resized(w);
}

} // namespace

GrayImage gaussian_reference(const GrayImage& img) {
  require_min_size(img.width(), img.height(), 3, "gaussian filter");
  GrayImage out(img.width(), img.height());
  for (std::size_t y = 0; y < img.height(); ++y) {
    for (std::size_t x = 0; x < img.width(); ++x) {
      const auto p = neighborhood(img, x, y);
      int acc = 0;
      for (std::size_t i = 0; i < 9; ++i)
        acc += GaussianParams::kernel[i / 3][i % 3] * p[i];
      out.at(x, y) = static_cast<std::uint8_t>(acc >> GaussianParams::divisor_shift);
    }
  }
  return out;
}

GrayImage gaussian_datapath(const GrayImage& img, const AdderConfig& cfg) {
  require_min_size(img.width(), img.height(), 3, "gaussian filter");
  if (cfg.width() < kGaussianSumBits)
    throw ConfigError("gaussian adder is " + std::to_string(cfg.width()) +
                      " bits; the pre-shift sum needs " +
                      std::to_string(kGaussianSumBits));
  const unsigned w = cfg.width();
  GrayImage out(img.width(), img.height());
  std::deque<Word> operands;
  for (std::size_t y = 0; y < img.height(); ++y) {
    for (std::size_t x = 0; x < img.width(); ++x) {
      const auto p = neighborhood(img, x, y);
      operands.clear();
      for (std::size_t i = 0; i < 9; ++i)
        operands.emplace_back(w, std::uint64_t{p[i]} << GaussianParams::weight_shift[i]);
      while (operands.size() > 2) {
        const Word a = operands[0];
        const Word b = operands[1];
        const Word c = operands[2];
        operands.erase(operands.begin(), operands.begin() + 3);
        auto [s, carry] = arith::csa_compress(a, b, c);
        operands.push_back(s);
        operands.push_back(carry);
      }
      const std::uint64_t sum = arith::ripple_add(operands[0], operands[1], cfg).value();
      out.at(x, y) = static_cast<std::uint8_t>(
          std::min<std::uint64_t>(sum >> GaussianParams::divisor_shift, 255));
    }
  }
  return out;
}

GradientField prewitt_gradients(const GrayImage& img, const AdderConfig& cfg) {
  require_min_size(img.width(), img.height(), 3, "prewitt filter");
  if (cfg.width() < kPrewittMinBits)
    throw ConfigError("prewitt adder is " + std::to_string(cfg.width()) +
                      " bits; signed gradients need " + std::to_string(kPrewittMinBits));
  GradientField gf{Raster<std::int32_t>(img.width(), img.height()),
                   Raster<std::int32_t>(img.width(), img.height()),
                   {}};
  for (std::size_t y = 0; y < img.height(); ++y) {
    for (std::size_t x = 0; x < img.width(); ++x) {
      const auto p = neighborhood(img, x, y);
      // p[0]..p[8] are p1..p9
      const Word right = sum3(p[2], p[5], p[8], cfg);
      const Word left = sum3(p[0], p[3], p[6], cfg);
      const Word bottom = sum3(p[6], p[7], p[8], cfg);
      const Word top = sum3(p[0], p[1], p[2], cfg);
      gf.gx.at(x, y) = static_cast<std::int32_t>(arith::ripple_sub(right, left, cfg));
      gf.gy.at(x, y) = static_cast<std::int32_t>(arith::ripple_sub(bottom, top, cfg));
    }
  }
  return gf;
}

std::uint64_t isqrt(std::uint64_t v) noexcept {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(v)));
  while (r * r > v) --r;
  while ((r + 1) * (r + 1) <= v) ++r;
  return r;
}

GradientField gradient_magnitude_exact(GradientField gf) {
  gf.magnitude = Raster<std::int32_t>(gf.gx.width(), gf.gx.height());
  for (std::size_t i = 0; i < gf.gx.size(); ++i) {
    const std::int64_t a = gf.gx.data()[i];
    const std::int64_t b = gf.gy.data()[i];
    gf.magnitude.data()[i] =
        static_cast<std::int32_t>(isqrt(static_cast<std::uint64_t>(a * a + b * b)));
  }
  return gf;
}

GradientField gradient_magnitude_approx(GradientField gf, const AdderConfig& cfg) {
  const unsigned w = cfg.width();
  gf.magnitude = Raster<std::int32_t>(gf.gx.width(), gf.gx.height());
  for (std::size_t i = 0; i < gf.gx.size(); ++i) {
    const auto a = static_cast<std::uint64_t>(std::abs(gf.gx.data()[i]));
    const auto b = static_cast<std::uint64_t>(std::abs(gf.gy.data()[i]));
    gf.magnitude.data()[i] =
        static_cast<std::int32_t>(arith::ripple_add(Word(w, a), Word(w, b), cfg).value());
  }
  return gf;
}

std::int32_t gradient_flat_response(const AdderConfig& cfg,
                                    std::span<const std::uint8_t> levels) {
  std::int32_t worst = 0;
  for (std::uint8_t level : levels) {
    const GrayImage flat(3, 3, level);
    const GradientField gf = gradient_magnitude_approx(prewitt_gradients(flat, cfg), cfg);
    worst = std::max(worst, gf.magnitude.at(1, 1));
  }
  return worst;
}

} // namespace approxpupil::filters
