#pragma once

#include "approxpupil/characterization.hpp"
#include "approxpupil/image.hpp"

#include <chrono>
#include <type_traits>
#include <string>
#include <utility>
#include <vector>

namespace approxpupil::metrics {

inline constexpr double kPeak = 255.0;

/// 10*log10(255^2 / MSE); +infinity for identical images.
double psnr(const GrayImage& a, const GrayImage& b);

struct SsimParams {
  int window = 11;
  double sigma = 1.5;
  double k1 = 0.01;
  double k2 = 0.03;
  double dynamic_range = 255.0;
};

/// Mean SSIM over every fully contained window position (no padding),
/// Gaussian-weighted. Throws SizeError on mismatch or images smaller than the
/// window.
double ssim(const GrayImage& a, const GrayImage& b, const SsimParams& params = {});

using Duration = std::chrono::nanoseconds;

/// Stage label -> wall-clock duration, in recording order.
class StageTimings {
public:
  void record(std::string label, Duration d) { entries_.emplace_back(std::move(label), d); }
  const std::vector<std::pair<std::string, Duration>>& entries() const noexcept {
    return entries_;
  }
  std::size_t size() const noexcept { return entries_.size(); }
  Duration total() const noexcept;

private:
  std::vector<std::pair<std::string, Duration>> entries_;
};

/// Runs `fn`, records its wall-clock duration under `label`, returns its
/// result unchanged.
template <class Fn>
decltype(auto) time_stage(StageTimings& timings, std::string label, Fn&& fn) {
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  if constexpr (std::is_void_v<std::invoke_result_t<Fn>>) {
    std::forward<Fn>(fn)();
    timings.record(std::move(label), std::chrono::duration_cast<Duration>(Clock::now() - start));
  } else {
    auto result = std::forward<Fn>(fn)();
    timings.record(std::move(label), std::chrono::duration_cast<Duration>(Clock::now() - start));
    return result;
  }
}

struct StageQuality {
  std::string stage;
  double psnr_db = 0.0;
  double ssim = 0.0;
};

struct MetricsReport {
  double psnr_db = 0.0; ///< headline figure (smoothed-image stage)
  double ssim = 0.0;
  std::vector<StageQuality> stages;
  StageTimings per_stage_timings;
  characterization::CostReport cost;
  std::string config_fingerprint;
};

} // namespace approxpupil::metrics
