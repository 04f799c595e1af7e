#include "approxpupil/pipeline.hpp"

#include "approxpupil/error.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>
#include <vector>

namespace approxpupil::pipeline {

using arith::AdderConfig;
using arith::CellKind;
using binarization::ThresholdParams;

std::string to_string(Variant v) { return v == Variant::Exact ? "exact" : "approx"; }

Variant parse_variant(const std::string& text) {
  if (text == "exact") return Variant::Exact;
  if (text == "approx" || text == "approximate") return Variant::Approximate;
  throw ConfigError("unknown variant '" + text + "' (expected exact|approx)");
}

PipelineConfig PipelineConfig::exact() { return {}; }

PipelineConfig PipelineConfig::approximate() {
  PipelineConfig c;
  c.gaussian_cfg = AdderConfig::with_prefix(kDatapathBits, CellKind::ApproxLOA, kDefaultApproxBits);
  c.prewitt_cfg = AdderConfig::with_prefix(kDatapathBits, CellKind::ApproxLOA, kDefaultApproxBits);
  c.intensity_threshold = ThresholdParams::intensity_default();
  c.gradient_threshold = ThresholdParams::gradient_default();
  c.variant = Variant::Approximate;
  return c;
}

void PipelineConfig::validate() const {
  if (gaussian_cfg.width() < filters::kGaussianSumBits)
    throw ConfigError("gaussian adder narrower than " +
                      std::to_string(filters::kGaussianSumBits) + " bits");
  if (prewitt_cfg.width() < filters::kPrewittMinBits)
    throw ConfigError("prewitt adder narrower than " +
                      std::to_string(filters::kPrewittMinBits) + " bits");
  if (variant == Variant::Exact) {
    if (!gaussian_cfg.is_exact() || !prewitt_cfg.is_exact())
      throw ConfigError("exact variant requires all-exact adders");
    if (intensity_threshold.ignored_lsbs != 0 || gradient_threshold.ignored_lsbs != 0)
      throw ConfigError("exact variant requires full-width comparators (k = 0)");
    intensity_threshold.validate(false);
    gradient_threshold.validate(false);
  } else {
    intensity_threshold.validate(true);
    gradient_threshold.validate(true);
  }
}

std::string PipelineConfig::describe() const {
  std::ostringstream os;
  auto thr = [](const ThresholdParams& t) {
    return std::to_string(t.value) + "/k" + std::to_string(t.ignored_lsbs) + "/w" +
           std::to_string(t.word_width);
  };
  os << "variant=" << to_string(variant) << ";gaussian=" << gaussian_cfg.describe()
     << ";prewitt=" << prewitt_cfg.describe() << ";intensity=" << thr(intensity_threshold)
     << ";gradient=" << thr(gradient_threshold);
  return os.str();
}

std::string PipelineConfig::fingerprint() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : describe()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

BinaryImage combine_edge_maps(const BinaryImage& e1, const BinaryImage& e2) {
  require_same_shape(e1.width(), e1.height(), e2.width(), e2.height(), "combine_edge_maps");
  BinaryImage out(e1.width(), e1.height());
  for (std::size_t y = 0; y < e1.height(); ++y)
    for (std::size_t x = 0; x < e1.width(); ++x) out.set(x, y, e1.get(x, y) && e2.get(x, y));
  return out;
}

PupilLocation localize_pupil(const BinaryImage& mask) {
  const std::size_t w = mask.width();
  const std::size_t h = mask.height();
  std::vector<std::int32_t> label(w * h, -1);
  std::vector<std::size_t> stack;

  PupilLocation best;
  std::int32_t next = 0;
  for (std::size_t start = 0; start < w * h; ++start) {
    if (label[start] >= 0 || !mask.get(start % w, start / w)) continue;
    const std::int32_t id = next++;
    std::size_t area = 0;
    double sx = 0.0;
    double sy = 0.0;
    label[start] = id;
    stack.assign(1, start);
    while (!stack.empty()) {
      const std::size_t idx = stack.back();
      stack.pop_back();
      const std::size_t x = idx % w;
      const std::size_t y = idx / w;
      ++area;
      sx += static_cast<double>(x);
      sy += static_cast<double>(y);
      auto visit = [&](std::size_t nx, std::size_t ny) {
        const std::size_t n = ny * w + nx;
        if (label[n] < 0 && mask.get(nx, ny)) {
          label[n] = id;
          stack.push_back(n);
        }
      };
      if (x > 0) visit(x - 1, y);
      if (x + 1 < w) visit(x + 1, y);
      if (y > 0) visit(x, y - 1);
      if (y + 1 < h) visit(x, y + 1);
    }
    if (area > best.area) {
      best.area = area;
      best.cx = sx / static_cast<double>(area);
      best.cy = sy / static_cast<double>(area);
    }
  }
  if (best.area == 0) throw NoPupilError("pupil mask is empty");
  best.radius = std::sqrt(static_cast<double>(best.area) / std::numbers::pi);
  return best;
}

namespace {

filters::GradientField magnitude(filters::GradientField gf, const PipelineConfig& cfg) {
  if (cfg.variant == Variant::Exact) return filters::gradient_magnitude_exact(std::move(gf));
  return filters::gradient_magnitude_approx(std::move(gf), cfg.prewitt_cfg);
}

BinaryImage threshold(const auto& raster, const ThresholdParams& t, Variant v) {
  return v == Variant::Exact ? binarization::binarize_exact(raster, t)
                             : binarization::binarize_truncated(raster, t);
}

} // namespace

PupilResult run_stages(const GrayImage& img, const PipelineConfig& cfg) {
  require_min_size(img.width(), img.height(), 16, "pupil pipeline");
  cfg.validate();

  using metrics::time_stage;
  PupilResult r;
  auto& t = r.stage_timings;

  r.smoothed = time_stage(t, kStageLabels[0],
                          [&] { return filters::gaussian_datapath(img, cfg.gaussian_cfg); });

  // Branch A: gradient edges of the smoothed image.
  auto grad = time_stage(t, kStageLabels[1], [&] {
    return magnitude(filters::prewitt_gradients(r.smoothed, cfg.prewitt_cfg), cfg);
  });
  r.gradient_magnitude = std::move(grad.magnitude);
  r.e1 = time_stage(t, kStageLabels[2], [&] {
    return threshold(r.gradient_magnitude, cfg.gradient_threshold, cfg.variant);
  });

  // Branch B: dark region -> {0,255} -> Prewitt; input is already binary, so
  // any response above the datapath's flat-field floor is an edge.
  r.pupil_mask = time_stage(t, kStageLabels[3], [&] {
    return threshold(r.smoothed, cfg.intensity_threshold, cfg.variant).complemented();
  });
  r.e2 = time_stage(t, kStageLabels[4], [&] {
    const auto gf = magnitude(filters::prewitt_gradients(r.pupil_mask.to_gray(), cfg.prewitt_cfg), cfg);
    const std::array<std::uint8_t, 2> levels{0, 255};
    const std::int32_t floor = cfg.variant == Variant::Exact
                                   ? 0
                                   : filters::gradient_flat_response(cfg.prewitt_cfg, levels);
    BinaryImage e(img.width(), img.height());
    for (std::size_t y = 0; y < img.height(); ++y)
      for (std::size_t x = 0; x < img.width(); ++x) e.set(x, y, gf.magnitude.at(x, y) > floor);
    return e;
  });

  r.edge_map = time_stage(t, kStageLabels[5], [&] { return combine_edge_maps(r.e1, r.e2); });
  return r;
}

void localize_stage(PupilResult& r) {
  r.location = metrics::time_stage(r.stage_timings, kStageLabels[6], [&] {
    if (r.edge_map.count() == 0)
      throw NoPupilError("no pupil boundary: combined edge map is empty");
    return localize_pupil(r.pupil_mask);
  });
}

PupilResult run_pipeline(const GrayImage& img, const PipelineConfig& cfg) {
  PupilResult r = run_stages(img, cfg);
  localize_stage(r);
  return r;
}

} // namespace approxpupil::pipeline
