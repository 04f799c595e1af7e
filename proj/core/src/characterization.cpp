#include "approxpupil/characterization.hpp"

#include "approxpupil/error.hpp"

#include <algorithm>
#include <numeric>
#include <thread>
#include <vector>

namespace approxpupil::characterization {

using arith::AdderConfig;
using arith::CellKind;
using arith::Word;

namespace {

struct Partial {
  std::uint64_t error_cases = 0;
  std::uint64_t sum_ed = 0;
  std::uint64_t max_ed = 0;
};

Partial sweep_rows(const AdderConfig& cfg, std::uint64_t keep_mask,
                   std::uint64_t x_begin, std::uint64_t x_end) {
  const unsigned w = cfg.width();
  const std::uint64_t n = std::uint64_t{1} << w;
  Partial p;
  for (std::uint64_t x = x_begin; x < x_end; ++x) {
    const Word wx(w, x);
    for (std::uint64_t y = 0; y < n; ++y) {
      const std::uint64_t approx =
          arith::ripple_add(wx, Word(w, y), cfg).value() & keep_mask;
      const std::uint64_t exact = (x + y) & keep_mask;
      const std::uint64_t ed = approx > exact ? approx - exact : exact - approx;
      if (ed != 0) {
        ++p.error_cases;
        p.sum_ed += ed;
        p.max_ed = std::max(p.max_ed, ed);
      }
    }
  }
  return p;
}

} // namespace

ErrorStats characterize_adder(const AdderConfig& cfg, unsigned ignored_lsbs,
                              unsigned threads) {
  const unsigned w = cfg.width();
  if (w > kMaxExhaustiveWidth)
    throw ConfigError("exhaustive characterization is capped at " +
                      std::to_string(kMaxExhaustiveWidth) + " bits (" +
                      std::to_string(w) +
                      "-bit adders have too many operand pairs; use sampling)");
  if (ignored_lsbs > w)
    throw ConfigError("ignored_lsbs exceeds adder width");

  const std::uint64_t n = std::uint64_t{1} << w;
  const std::uint64_t keep_mask = ~((std::uint64_t{1} << ignored_lsbs) - 1);

  if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, n));

  std::vector<Partial> partials(threads);
  {
    std::vector<std::jthread> pool;
    const std::uint64_t chunk = (n + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
      const std::uint64_t b = t * chunk;
      const std::uint64_t e = std::min(n, b + chunk);
      pool.emplace_back([&, t, b, e] { partials[t] = sweep_rows(cfg, keep_mask, b, e); });
    }
  }

  ErrorStats s;
  s.width = w;
  s.approx_prefix = cfg.approx_prefix();
  s.ignored_lsbs = ignored_lsbs;
  s.total_cases = n * n;
  for (const Partial& p : partials) {
    s.error_cases += p.error_cases;
    s.sum_error_distance += p.sum_ed;
    s.max_error_distance = std::max(s.max_error_distance, p.max_ed);
  }
  s.error_rate = static_cast<double>(s.error_cases) / static_cast<double>(s.total_cases);
  s.mean_error_distance =
      static_cast<double>(s.sum_error_distance) / static_cast<double>(s.total_cases);
  return s;
}

CostReport cost_model(const AdderConfig& cfg, unsigned comparator_width, unsigned k) {
  if (comparator_width == 0)
    throw ConfigError("comparator width must be positive");
  if (k >= comparator_width)
    throw ConfigError("cannot ignore " + std::to_string(k) + " LSBs of a " +
                      std::to_string(comparator_width) + "-bit comparator");
  CostReport r;
  for (CellKind c : cfg.cells()) {
    switch (c) {
    case CellKind::Exact: ++r.exact_cells; break;
    case CellKind::CarryOnly: ++r.carry_only_cells; break;
    case CellKind::ApproxLOA: ++r.approx_cells; break;
    }
  }
  r.comparator_bits_exact = comparator_width;
  r.comparator_bits_truncated = comparator_width - k;
  const unsigned g = std::gcd(k, comparator_width);
  r.comparator_reduction_ratio = {k / g, comparator_width / g};
  return r;
}

} // namespace approxpupil::characterization
