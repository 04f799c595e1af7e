#include "approxpupil/metrics.hpp"

#include "approxpupil/error.hpp"

#include <cmath>
#include <limits>

namespace approxpupil::metrics {

double psnr(const GrayImage& a, const GrayImage& b) {
  require_same_shape(a.width(), a.height(), b.width(), b.height(), "psnr");
  if (a.size() == 0) throw SizeError("psnr of empty images");
  std::uint64_t sse = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const int d = int{a.data()[i]} - int{b.data()[i]};
    sse += static_cast<std::uint64_t>(d * d);
  }
  if (sse == 0) return std::numeric_limits<double>::infinity();
  const double mse = static_cast<double>(sse) / static_cast<double>(a.size());
  return 10.0 * std::log10(kPeak * kPeak / mse);
}

namespace {

std::vector<double> gaussian_window(int size, double sigma) {
  std::vector<double> w(static_cast<std::size_t>(size));
  const double c = (size - 1) / 2.0;
  double total = 0.0;
  for (int i = 0; i < size; ++i) {
    const double d = i - c;
    w[static_cast<std::size_t>(i)] = std::exp(-(d * d) / (2.0 * sigma * sigma));
    total += w[static_cast<std::size_t>(i)];
  }
  for (double& v : w) v /= total;
  return w;
}

/// Separable weighted sum over every valid window: horizontal pass then
/// vertical pass.
std::vector<double> filter_valid(const std::vector<double>& src, std::size_t width,
                                 std::size_t height, const std::vector<double>& w) {
  const std::size_t n = w.size();
  const std::size_t ow = width - n + 1;
  const std::size_t oh = height - n + 1;
  std::vector<double> tmp(ow * height);
  for (std::size_t y = 0; y < height; ++y)
    for (std::size_t x = 0; x < ow; ++x) {
      double acc = 0.0;
      for (std::size_t k = 0; k < n; ++k) acc += w[k] * src[y * width + x + k];
      tmp[y * ow + x] = acc;
    }
  std::vector<double> out(ow * oh);
  for (std::size_t y = 0; y < oh; ++y)
    for (std::size_t x = 0; x < ow; ++x) {
      double acc = 0.0;
      for (std::size_t k = 0; k < n; ++k) acc += w[k] * tmp[(y + k) * ow + x];
      out[y * ow + x] = acc;
    }
  return out;
}

} // namespace

double ssim(const GrayImage& a, const GrayImage& b, const SsimParams& params) {
  require_same_shape(a.width(), a.height(), b.width(), b.height(), "ssim");
  if (params.window < 1) throw ConfigError("ssim window must be positive");
  require_min_size(a.width(), a.height(), static_cast<std::size_t>(params.window), "ssim");

  const std::size_t n = a.size();
  std::vector<double> fa(n), fb(n), faa(n), fbb(n), fab(n);
  for (std::size_t i = 0; i < n; ++i) {
    fa[i] = a.data()[i];
    fb[i] = b.data()[i];
    faa[i] = fa[i] * fa[i];
    fbb[i] = fb[i] * fb[i];
    fab[i] = fa[i] * fb[i];
  }
  const auto w = gaussian_window(params.window, params.sigma);
  const auto mu_a = filter_valid(fa, a.width(), a.height(), w);
  const auto mu_b = filter_valid(fb, a.width(), a.height(), w);
  const auto e_aa = filter_valid(faa, a.width(), a.height(), w);
  const auto e_bb = filter_valid(fbb, a.width(), a.height(), w);
  const auto e_ab = filter_valid(fab, a.width(), a.height(), w);

  const double c1 = std::pow(params.k1 * params.dynamic_range, 2);
  const double c2 = std::pow(params.k2 * params.dynamic_range, 2);
  double total = 0.0;
  for (std::size_t i = 0; i < mu_a.size(); ++i) {
    const double ma = mu_a[i];
    const double mb = mu_b[i];
    const double var_a = e_aa[i] - ma * ma;
    const double var_b = e_bb[i] - mb * mb;
    const double cov = e_ab[i] - ma * mb;
    const double num = (2.0 * ma * mb + c1) * (2.0 * cov + c2);
    const double den = (ma * ma + mb * mb + c1) * (var_a + var_b + c2);
    total += num / den;
  }
  return total / static_cast<double>(mu_a.size());
}

Duration StageTimings::total() const noexcept {
  Duration t{0};
  for (const auto& e : entries_) t += e.second;
  return t;
}

} // namespace approxpupil::metrics
