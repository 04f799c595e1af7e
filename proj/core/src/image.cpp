#include "approxpupil/image.hpp"

#include <algorithm>

namespace approxpupil {

BinaryImage::BinaryImage(Raster<std::uint8_t> bits) : bits_(std::move(bits)) {
  for (auto v : bits_.data())
    if (v > 1) throw RangeError("binary image entry " + std::to_string(v) + " is not 0/1");
}

std::size_t BinaryImage::count() const noexcept {
  return static_cast<std::size_t>(
      std::count(bits_.data().begin(), bits_.data().end(), std::uint8_t{1}));
}

BinaryImage BinaryImage::complemented() const {
  BinaryImage out = *this;
  for (auto& v : out.bits_.data()) v ^= 1;
  return out;
}

GrayImage BinaryImage::to_gray() const {
  GrayImage g(width(), height());
  std::transform(bits_.data().begin(), bits_.data().end(), g.data().begin(),
                 [](std::uint8_t v) { return static_cast<std::uint8_t>(v ? 255 : 0); });
  return g;
}

void require_min_size(std::size_t width, std::size_t height, std::size_t min_side,
                      const std::string& what) {
  if (width < min_side || height < min_side)
    throw SizeError(what + " needs at least " + std::to_string(min_side) + "x" +
                    std::to_string(min_side) + " pixels, got " + std::to_string(width) +
                    "x" + std::to_string(height));
}

void require_same_shape(std::size_t w1, std::size_t h1, std::size_t w2, std::size_t h2,
                        const std::string& what) {
  if (w1 != w2 || h1 != h2)
    throw SizeError(what + ": dimension mismatch (" + std::to_string(w1) + "x" +
                    std::to_string(h1) + " vs " + std::to_string(w2) + "x" +
                    std::to_string(h2) + ")");
}

} // namespace approxpupil
