#pragma once

// Binary PGM ("P5", maxval 255) codec. Header comments are accepted on
// read; writes emit "P5\n<w> <h>\n255\n" followed by the raw bytes.

#include "approxpupil/image.hpp"

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace approxpupil::pgm {

/// Throws FormatError (wrong magic, ASCII P2, maxval != 255) or ParseError
/// (malformed header, short payload) with the failing byte offset.
GrayImage decode(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> encode(const GrayImage& img);

GrayImage read(const std::filesystem::path& path);
void write(const std::filesystem::path& path, const GrayImage& img);

} // namespace approxpupil::pgm
