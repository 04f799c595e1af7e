#include "approxpupil/binarization.hpp"

#include "approxpupil/bitlevel_arith.hpp"
#include "approxpupil/error.hpp"

namespace approxpupil::binarization {

void ThresholdParams::validate(bool require_aligned) const {
  if (word_width == 0 || word_width > arith::Word::kMaxWidth)
    throw ConfigError("threshold word width out of range");
  if ((std::uint64_t{value} >> word_width) != 0)
    throw ConfigError("threshold " + std::to_string(value) + " does not fit in " +
                      std::to_string(word_width) + " bits");
  if (ignored_lsbs >= word_width)
    throw ConfigError("cannot ignore " + std::to_string(ignored_lsbs) + " LSBs of a " +
                      std::to_string(word_width) + "-bit comparator");
  if (require_aligned && (value & ((1U << ignored_lsbs) - 1)) != 0)
    throw ConfigError("threshold " + std::to_string(value) + " is not a multiple of 2^" +
                      std::to_string(ignored_lsbs) +
                      "; truncated comparison would not match the exact one");
}

namespace {

template <class T>
std::uint64_t checked_value(T v, unsigned word_width) {
  if (v < 0 || (static_cast<std::uint64_t>(v) >> word_width) != 0)
    throw RangeError("raster value " + std::to_string(v) + " exceeds the " +
                     std::to_string(word_width) + "-bit comparator word");
  return static_cast<std::uint64_t>(v);
}

template <class T>
BinaryImage exact_impl(const Raster<T>& raster, const ThresholdParams& t) {
  t.validate(false);
  BinaryImage out(raster.width(), raster.height());
  for (std::size_t y = 0; y < raster.height(); ++y)
    for (std::size_t x = 0; x < raster.width(); ++x)
      out.set(x, y, checked_value(raster.at(x, y), t.word_width) > t.value);
  return out;
}

template <class T>
BinaryImage truncated_impl(const Raster<T>& raster, const ThresholdParams& t) {
  t.validate(true);
  const arith::Word threshold(t.word_width, t.value);
  BinaryImage out(raster.width(), raster.height());
  for (std::size_t y = 0; y < raster.height(); ++y)
    for (std::size_t x = 0; x < raster.width(); ++x) {
      const arith::Word v(t.word_width, checked_value(raster.at(x, y), t.word_width));
      out.set(x, y, arith::truncated_compare_ge(v, threshold, t.ignored_lsbs));
    }
  return out;
}

} // namespace

BinaryImage binarize_exact(const GrayImage& raster, const ThresholdParams& t) {
  return exact_impl(raster, t);
}
BinaryImage binarize_exact(const Raster<std::int32_t>& raster, const ThresholdParams& t) {
  return exact_impl(raster, t);
}
BinaryImage binarize_truncated(const GrayImage& raster, const ThresholdParams& t) {
  return truncated_impl(raster, t);
}
BinaryImage binarize_truncated(const Raster<std::int32_t>& raster, const ThresholdParams& t) {
  return truncated_impl(raster, t);
}

} // namespace approxpupil::binarization
