#include "approxpupil/bitlevel_arith.hpp"

#include "approxpupil/error.hpp"

#include <sstream>

namespace approxpupil::arith {

std::string to_string(CellKind kind) {
  switch (kind) {
  case CellKind::Exact: return "exact";
  case CellKind::CarryOnly: return "carryonly";
  case CellKind::ApproxLOA: return "loa";
  }
  return "?";
}

CellKind parse_cell_kind(const std::string& text) {
  if (text == "exact") return CellKind::Exact;
  if (text == "carryonly") return CellKind::CarryOnly;
  if (text == "loa") return CellKind::ApproxLOA;
  throw ConfigError("unknown cell kind '" + text +
                    "' (expected exact|carryonly|loa)");
}

CellOutput fa_exact(Bit a, Bit b, Bit cin) noexcept {
  return {static_cast<Bit>(a ^ b ^ cin), static_cast<Bit>((a && b) || (cin && (a ^ b)))};
}

CellOutput fa_carry_only(Bit a, Bit b, Bit cin) noexcept {
  return {false, static_cast<Bit>((a && b) || (cin && (a ^ b)))};
}

CellOutput fa_approx(Bit a, Bit b, Bit /*cin*/) noexcept {
  return {static_cast<Bit>(a || b), static_cast<Bit>(a && b)};
}

CellOutput eval_cell(CellKind kind, Bit a, Bit b, Bit cin) noexcept {
  switch (kind) {
  case CellKind::CarryOnly: return fa_carry_only(a, b, cin);
  case CellKind::ApproxLOA: return fa_approx(a, b, cin);
  case CellKind::Exact: break;
  }
  return fa_exact(a, b, cin);
}

// ---------------------------------------------------------------------------
// Word

Word::Word(unsigned width, std::uint64_t value) : width_(width), value_(value) {
  if (width == 0 || width > kMaxWidth)
    throw ConfigError("word width must be in [1, " + std::to_string(kMaxWidth) +
                      "], got " + std::to_string(width));
  if ((value >> width) != 0)
    throw ConfigError("value " + std::to_string(value) + " does not fit in " +
                      std::to_string(width) + " bits");
}

std::vector<Bit> Word::bits() const {
  std::vector<Bit> out(width_);
  for (unsigned i = 0; i < width_; ++i) out[i] = bit(i);
  return out;
}

Word Word::from_bits(std::span<const Bit> bits) {
  if (bits.empty() || bits.size() > kMaxWidth)
    throw ConfigError("bit vector length out of range");
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < bits.size(); ++i)
    if (bits[i]) v |= std::uint64_t{1} << i;
  return Word(static_cast<unsigned>(bits.size()), v);
}

Word Word::resized(unsigned width) const { return Word(width, value_); }

Word Word::inverted() const noexcept {
  const std::uint64_t mask = (std::uint64_t{1} << width_) - 1;
  Word w = *this;
  w.value_ = ~value_ & mask;
  return w;
}

// ---------------------------------------------------------------------------
// AdderConfig

AdderConfig::AdderConfig(std::vector<CellKind> cells) : cells_(std::move(cells)) {
  if (cells_.empty() || cells_.size() > Word::kMaxWidth)
    throw ConfigError("adder width must be in [1, " +
                      std::to_string(Word::kMaxWidth) + "]");
  while (prefix_ < cells_.size() && cells_[prefix_] != CellKind::Exact) ++prefix_;
  for (std::size_t i = prefix_; i < cells_.size(); ++i)
    if (cells_[i] != CellKind::Exact)
      throw ConfigError("approximate cell at bit " + std::to_string(i) +
                        " is not part of the contiguous LSB prefix");
}

AdderConfig AdderConfig::all_exact(unsigned width) {
  return with_prefix(width, CellKind::Exact, 0);
}

AdderConfig AdderConfig::with_prefix(unsigned width, CellKind prefix_kind,
                                     unsigned prefix_len) {
  if (prefix_len > width)
    throw ConfigError("approximate prefix (" + std::to_string(prefix_len) +
                      ") longer than adder width (" + std::to_string(width) + ")");
  std::vector<CellKind> cells(width, CellKind::Exact);
  for (unsigned i = 0; i < prefix_len; ++i) cells[i] = prefix_kind;
  return AdderConfig(std::move(cells));
}

CellKind AdderConfig::prefix_kind() const noexcept {
  return prefix_ == 0 ? CellKind::Exact : cells_.front();
}

std::string AdderConfig::describe() const {
  std::ostringstream os;
  os << width() << "b";
  if (prefix_ == 0) {
    os << " exact";
    return os.str();
  }
  // Prefixes are normally uniform; spell out mixed ones cell by cell.
  bool uniform = true;
  for (unsigned i = 1; i < prefix_; ++i) uniform = uniform && cells_[i] == cells_[0];
  if (uniform) {
    os << " " << prefix_ << "x" << to_string(cells_[0]);
  } else {
    os << " [";
    for (unsigned i = 0; i < prefix_; ++i) os << (i ? "," : "") << to_string(cells_[i]);
    os << "]";
  }
  os << "+" << (width() - prefix_) << "xexact";
  return os.str();
}

// ---------------------------------------------------------------------------
// Word-level operators

namespace {

void check_operands(const Word& x, const Word& y, const AdderConfig& cfg) {
  if (x.width() != cfg.width() || y.width() != cfg.width())
    throw ConfigError("operand widths (" + std::to_string(x.width()) + ", " +
                      std::to_string(y.width()) + ") do not match adder width " +
                      std::to_string(cfg.width()));
}

} // namespace

Word ripple_add(const Word& x, const Word& y, const AdderConfig& cfg, Bit cin) {
  check_operands(x, y, cfg);
  const unsigned w = cfg.width();
  std::uint64_t out = 0;
  Bit carry = cin;
  for (unsigned i = 0; i < w; ++i) {
    const CellOutput c = eval_cell(cfg.cells()[i], x.bit(i), y.bit(i), carry);
    if (c.sum) out |= std::uint64_t{1} << i;
    carry = c.cout;
  }
  if (carry) out |= std::uint64_t{1} << w;
  return Word(w + 1, out);
}

std::int64_t ripple_sub(const Word& x, const Word& y, const AdderConfig& cfg) {
  check_operands(x, y, cfg);
  const Word sum = ripple_add(x, y.inverted(), cfg, true);
  // x + ~y + 1 = x - y + 2^w; the carry-out is the inverted borrow.
  return static_cast<std::int64_t>(sum.value()) -
         (std::int64_t{1} << cfg.width());
}

std::pair<Word, Word> csa_compress(const Word& x, const Word& y, const Word& z) {
  const unsigned w = x.width();
  if (y.width() != w || z.width() != w)
    throw ConfigError("carry-save operands must share one width");
  std::uint64_t sum = 0;
  std::uint64_t carry = 0;
  for (unsigned i = 0; i < w; ++i) {
    const CellOutput c = fa_exact(x.bit(i), y.bit(i), z.bit(i));
    if (c.sum) sum |= std::uint64_t{1} << i;
    if (c.cout) carry |= std::uint64_t{1} << (i + 1);
  }
  if ((carry >> w) != 0) throw ConfigError("carry-save compression overflowed");
  return {Word(w, sum), Word(w, carry)};
}

Bit truncated_compare_ge(const Word& x, const Word& threshold, unsigned k) {
  if (threshold.width() != x.width())
    throw ConfigError("comparator operand widths differ");
  if (k >= x.width())
    throw ConfigError("cannot ignore " + std::to_string(k) + " LSBs of a " +
                      std::to_string(x.width()) + "-bit comparator");
  for (unsigned i = x.width(); i-- > k;) {
    const Bit a = x.bit(i);
    const Bit t = threshold.bit(i);
    if (a != t) return a;
  }
  return true;
}

} // namespace approxpupil::arith
