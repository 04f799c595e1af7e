#pragma once

// Bit-accurate model of the adder datapath: single-bit full-adder cells and
// ripple-carry words built from them.

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace approxpupil::arith {

using Bit = bool;

struct CellOutput {
  Bit sum;
  Bit cout;

  friend bool operator==(const CellOutput&, const CellOutput&) = default;
};

enum class CellKind : std::uint8_t {
  Exact,     ///< accurate full adder
  CarryOnly, ///< exact carry-out, sum forced to 0 (bit is shifted away later)
  ApproxLOA, ///< lower-part OR: sum = a|b, cout = a&b, carry-in ignored
};

std::string to_string(CellKind kind);
CellKind parse_cell_kind(const std::string& text);

CellOutput fa_exact(Bit a, Bit b, Bit cin) noexcept;
CellOutput fa_carry_only(Bit a, Bit b, Bit cin) noexcept;
CellOutput fa_approx(Bit a, Bit b, Bit cin) noexcept;
CellOutput eval_cell(CellKind kind, Bit a, Bit b, Bit cin) noexcept;

/// Unsigned fixed-width word, bit 0 is the LSB. Widths up to 62 bits so a
/// carry-extended result still fits in 64.
class Word {
public:
  static constexpr unsigned kMaxWidth = 62;

  Word(unsigned width, std::uint64_t value);

  unsigned width() const noexcept { return width_; }
  std::uint64_t value() const noexcept { return value_; }
  Bit bit(unsigned i) const noexcept { return ((value_ >> i) & 1U) != 0; }

  /// LSB-first bit vector.
  std::vector<Bit> bits() const;
  static Word from_bits(std::span<const Bit> bits);

  /// Same value in a different width; throws ConfigError if it does not fit.
  Word resized(unsigned width) const;
  Word inverted() const noexcept;

  friend bool operator==(const Word&, const Word&) = default;

private:
  unsigned width_;
  std::uint64_t value_;
};

/// Per-position cell layout of a ripple adder. Approximate cells
/// (CarryOnly/ApproxLOA) must form a contiguous run starting at bit 0.
class AdderConfig {
public:
  explicit AdderConfig(std::vector<CellKind> cells);

  static AdderConfig all_exact(unsigned width);
  /// `prefix_len` cells of `prefix_kind` at the LSB end, Exact above.
  static AdderConfig with_prefix(unsigned width, CellKind prefix_kind,
                                 unsigned prefix_len);

  unsigned width() const noexcept { return static_cast<unsigned>(cells_.size()); }
  const std::vector<CellKind>& cells() const noexcept { return cells_; }
  CellKind cell(unsigned i) const { return cells_.at(i); }

  /// Number of non-Exact LSB cells.
  unsigned approx_prefix() const noexcept { return prefix_; }
  bool is_exact() const noexcept { return prefix_ == 0; }
  /// Kind used by the approximate prefix, Exact when there is none.
  CellKind prefix_kind() const noexcept;

  std::string describe() const;

  friend bool operator==(const AdderConfig&, const AdderConfig&) = default;

private:
  std::vector<CellKind> cells_;
  unsigned prefix_ = 0;
};

/// Ripple-carry addition; result has cfg.width() + 1 bits (carry-out on top).
/// `cin` feeds the LSB cell (ignored by an ApproxLOA LSB).
Word ripple_add(const Word& x, const Word& y, const AdderConfig& cfg,
                Bit cin = false);

/// x - y as x + ~y + 1 through the same cells, read back as a signed value.
std::int64_t ripple_sub(const Word& x, const Word& y, const AdderConfig& cfg);

/// 3:2 carry-save compression with exact full adders: returns (sum, carry)
/// with sum + carry == x + y + z. The carry word is pre-shifted by one; a
/// carry out of the top bit throws ConfigError.
std::pair<Word, Word> csa_compress(const Word& x, const Word& y, const Word& z);

/// 1 iff (x >> k) >= (threshold >> k); only the upper width-k bits are
/// examined, MSB first.
Bit truncated_compare_ge(const Word& x, const Word& threshold, unsigned k);

} // namespace approxpupil::arith
