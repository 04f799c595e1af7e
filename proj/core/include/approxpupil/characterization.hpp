#pragma once

// Exhaustive error statistics for configured adders and the relative
// hardware-cost proxies (cell counts, comparator bit counts).

#include "approxpupil/bitlevel_arith.hpp"

#include <cstdint>

namespace approxpupil::characterization {

/// Widest adder that is enumerated exhaustively (2^24 operand pairs).
inline constexpr unsigned kMaxExhaustiveWidth = 12;

struct ErrorStats {
  unsigned width = 0;
  unsigned approx_prefix = 0;
  unsigned ignored_lsbs = 0; ///< result bits below this are not compared
  std::uint64_t total_cases = 0;
  std::uint64_t error_cases = 0;
  std::uint64_t sum_error_distance = 0;
  std::uint64_t max_error_distance = 0;
  double error_rate = 0.0;
  double mean_error_distance = 0.0;

  friend bool operator==(const ErrorStats&, const ErrorStats&) = default;
};

/// Compares ripple_add(cfg) with exact addition over every operand pair.
/// With `ignored_lsbs` > 0 both results are masked to the bits that survive a
/// right shift by that amount before the error distance is taken.
/// Throws ConfigError when cfg.width() exceeds kMaxExhaustiveWidth.
ErrorStats characterize_adder(const arith::AdderConfig& cfg,
                              unsigned ignored_lsbs = 0,
                              unsigned threads = 0);

struct Fraction {
  std::uint64_t num = 0;
  std::uint64_t den = 1;

  double value() const noexcept {
    return static_cast<double>(num) / static_cast<double>(den);
  }
  friend bool operator==(const Fraction&, const Fraction&) = default;
};

struct CostReport {
  unsigned exact_cells = 0;
  unsigned carry_only_cells = 0;
  unsigned approx_cells = 0;
  unsigned comparator_bits_exact = 0;
  unsigned comparator_bits_truncated = 0;
  /// 1 - truncated/exact, kept as an exact ratio.
  Fraction comparator_reduction_ratio;

  double comparator_reduction() const noexcept {
    return comparator_reduction_ratio.value();
  }
};

CostReport cost_model(const arith::AdderConfig& cfg, unsigned comparator_width,
                      unsigned k);

} // namespace approxpupil::characterization
