#pragma once

#include <stdexcept>
#include <string>

namespace approxpupil {

/// Base of every error raised by the library. The CLI maps each subclass to
/// its own exit code.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Adder/comparator/threshold parameters that violate their invariants.
class ConfigError : public Error {
public:
  using Error::Error;
};

/// Image dimensions below what an operation needs, or mismatched dimensions.
class SizeError : public Error {
public:
  using Error::Error;
};

/// A raster value outside the declared word width.
class RangeError : public Error {
public:
  using Error::Error;
};

/// Malformed image payload. Carries the byte offset where decoding failed.
class ParseError : public Error {
public:
  ParseError(const std::string& what, std::size_t offset)
      : Error(what + " (at byte offset " + std::to_string(offset) + ")"),
        offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

private:
  std::size_t offset_;
};

/// Well-formed file in a format the tool does not accept (P2, maxval != 255).
class FormatError : public Error {
public:
  using Error::Error;
};

/// Segmentation produced no pupil region to localize.
class NoPupilError : public Error {
public:
  using Error::Error;
};

/// Synthetic eye geometry that cannot be rendered.
class SpecError : public Error {
public:
  using Error::Error;
};

} // namespace approxpupil
