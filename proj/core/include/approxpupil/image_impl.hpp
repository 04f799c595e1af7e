#pragma once

#include "approxpupil/error.hpp"

#include <algorithm>

namespace approxpupil {

template <class T>
Raster<T>::Raster(std::size_t width, std::size_t height, std::vector<T> data)
    : width_(width), height_(height), data_(std::move(data)) {
  if (data_.size() != width * height)
    throw SizeError("raster payload has " + std::to_string(data_.size()) +
                    " entries, expected " + std::to_string(width * height));
}

template <class T>
const T& Raster<T>::clamped(std::ptrdiff_t x, std::ptrdiff_t y) const {
  const auto cx = std::clamp<std::ptrdiff_t>(x, 0, static_cast<std::ptrdiff_t>(width_) - 1);
  const auto cy = std::clamp<std::ptrdiff_t>(y, 0, static_cast<std::ptrdiff_t>(height_) - 1);
  return data_[static_cast<std::size_t>(cy) * width_ + static_cast<std::size_t>(cx)];
}

} // namespace approxpupil
