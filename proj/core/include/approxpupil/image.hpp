#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace approxpupil {

/// Row-major 2-D raster.
template <class T>
class Raster {
public:
  using value_type = T;

  Raster() = default;
  Raster(std::size_t width, std::size_t height, T fill = T{})
      : width_(width), height_(height), data_(width * height, fill) {}
  Raster(std::size_t width, std::size_t height, std::vector<T> data);

  std::size_t width() const noexcept { return width_; }
  std::size_t height() const noexcept { return height_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }

  T& at(std::size_t x, std::size_t y) { return data_[y * width_ + x]; }
  const T& at(std::size_t x, std::size_t y) const { return data_[y * width_ + x]; }

  /// Replicate-edge access: coordinates are clamped into the raster.
  const T& clamped(std::ptrdiff_t x, std::ptrdiff_t y) const;

  std::vector<T>& data() noexcept { return data_; }
  const std::vector<T>& data() const noexcept { return data_; }

  bool same_shape(const auto& other) const noexcept {
    return width_ == other.width() && height_ == other.height();
  }

  friend bool operator==(const Raster&, const Raster&) = default;

private:
  std::size_t width_ = 0;
  std::size_t height_ = 0;
  std::vector<T> data_;
};

/// 8-bit grayscale intensities.
using GrayImage = Raster<std::uint8_t>;

/// {0,1} mask. Kept distinct from GrayImage so a mask is never mistaken for
/// intensities; `to_gray` rescales to {0,255} for display and metrics.
class BinaryImage {
public:
  BinaryImage() = default;
  BinaryImage(std::size_t width, std::size_t height) : bits_(width, height, 0) {}
  /// Throws RangeError if any entry is not 0 or 1.
  explicit BinaryImage(Raster<std::uint8_t> bits);

  std::size_t width() const noexcept { return bits_.width(); }
  std::size_t height() const noexcept { return bits_.height(); }
  std::size_t size() const noexcept { return bits_.size(); }

  bool get(std::size_t x, std::size_t y) const { return bits_.at(x, y) != 0; }
  void set(std::size_t x, std::size_t y, bool v) { bits_.at(x, y) = v ? 1 : 0; }

  const Raster<std::uint8_t>& raster() const noexcept { return bits_; }
  std::size_t count() const noexcept;

  BinaryImage complemented() const;
  GrayImage to_gray() const;

  friend bool operator==(const BinaryImage&, const BinaryImage&) = default;

private:
  Raster<std::uint8_t> bits_;
};

/// Throws SizeError unless both dimensions are at least `min_side`.
void require_min_size(std::size_t width, std::size_t height, std::size_t min_side,
                      const std::string& what);

/// Throws SizeError if the shapes differ.
void require_same_shape(std::size_t w1, std::size_t h1, std::size_t w2,
                        std::size_t h2, const std::string& what);

} // namespace approxpupil

#include "approxpupil/image_impl.hpp"
