#include "approxpupil/pgm.hpp"

#include "approxpupil/error.hpp"

#include <cctype>
#include <fstream>
#include <iterator>
#include <string>

namespace approxpupil::pgm {

namespace {

class HeaderReader {
public:
  explicit HeaderReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  std::size_t pos() const noexcept { return pos_; }

  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      if (bytes_[pos_] == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else if (std::isspace(bytes_[pos_])) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  std::uint64_t number(const char* field) {
    skip_space_and_comments();
    const std::size_t start = pos_;
    std::uint64_t v = 0;
    while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
      v = v * 10 + (bytes_[pos_] - '0');
      if (v > 0xFFFFFFFFULL) throw ParseError(std::string("PGM ") + field + " too large", start);
      ++pos_;
    }
    if (pos_ == start) throw ParseError(std::string("PGM header: expected ") + field, pos_);
    return v;
  }

private:
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

} // namespace

GrayImage decode(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 2) throw ParseError("file too short for a PGM magic number", bytes.size());
  if (bytes[0] != 'P') throw FormatError("not a PNM file (magic must start with 'P')");
  if (bytes[1] == '2')
    throw FormatError("ASCII PGM (P2) is not supported; convert to binary P5");
  if (bytes[1] != '5')
    throw FormatError(std::string("unsupported PNM type P") + static_cast<char>(bytes[1]) +
                      "; expected binary graymap P5");

  HeaderReader hr(bytes.subspan(2));
  const auto width = hr.number("width");
  const auto height = hr.number("height");
  const auto maxval = hr.number("maxval");
  std::size_t offset = 2 + hr.pos();
  if (width == 0 || height == 0) throw ParseError("PGM dimensions must be positive", offset);
  if (maxval != 255)
    throw FormatError("unsupported maxval " + std::to_string(maxval) + " (only 255 is accepted)");
  if (offset >= bytes.size() || !std::isspace(bytes[offset]))
    throw ParseError("PGM header must end with a single whitespace byte", offset);
  ++offset;

  const std::size_t expected = static_cast<std::size_t>(width * height);
  const std::size_t available = bytes.size() - offset;
  if (available < expected)
    throw ParseError("truncated PGM payload: expected " + std::to_string(expected) +
                         " bytes, got " + std::to_string(available),
                     bytes.size());
  std::vector<std::uint8_t> px(bytes.begin() + static_cast<std::ptrdiff_t>(offset),
                               bytes.begin() + static_cast<std::ptrdiff_t>(offset + expected));
  return GrayImage(static_cast<std::size_t>(width), static_cast<std::size_t>(height), std::move(px));
}

std::vector<std::uint8_t> encode(const GrayImage& img) {
  const std::string header =
      "P5\n" + std::to_string(img.width()) + " " + std::to_string(img.height()) + "\n255\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  out.insert(out.end(), img.data().begin(), img.data().end());
  return out;
}

GrayImage read(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path.string() + "'", 0);
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  return decode(bytes);
}

void write(const std::filesystem::path& path, const GrayImage& img) {
  const auto bytes = encode(img);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error("write to '" + path.string() + "' failed");
}

} // namespace approxpupil::pgm
