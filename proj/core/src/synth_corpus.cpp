#include "approxpupil/synth_corpus.hpp"

#include "approxpupil/error.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

namespace approxpupil::synth {

namespace {

constexpr double kTwo53 = 9007199254740992.0;

double unit_open_closed(std::mt19937_64& eng) { // (0, 1]
  return (static_cast<double>(eng() >> 11) + 1.0) / kTwo53;
}

double unit_closed_open(std::mt19937_64& eng) { // [0, 1)
  return static_cast<double>(eng() >> 11) / kTwo53;
}

void check_intensity(int v, const char* name) {
  if (v < 0 || v > 255)
    throw SpecError(std::string(name) + " intensity " + std::to_string(v) +
                    " outside [0,255]");
}

} // namespace

void EyeSpec::validate() const {
  if (width == 0 || height == 0) throw SpecError("image size must be positive");
  if (!(pupil_radius > 0.0)) throw SpecError("pupil radius must be positive");
  if (!(pupil_radius < iris_radius))
    throw SpecError("pupil radius (" + std::to_string(pupil_radius) +
                    ") must be smaller than iris radius (" + std::to_string(iris_radius) + ")");
  if (pupil_cx - pupil_radius < 0.0 || pupil_cy - pupil_radius < 0.0 ||
      pupil_cx + pupil_radius > static_cast<double>(width - 1) ||
      pupil_cy + pupil_radius > static_cast<double>(height - 1))
    throw SpecError("pupil circle does not fit inside the image");
  check_intensity(pupil_intensity, "pupil");
  check_intensity(iris_intensity, "iris");
  check_intensity(sclera_intensity, "sclera");
  check_intensity(highlight_intensity, "highlight");
  check_intensity(eyelid_intensity, "eyelid");
  if (!(occlusion >= 0.0 && occlusion <= 1.0))
    throw SpecError("occlusion fraction must lie in [0,1]");
  if (!(noise_sigma >= 0.0)) throw SpecError("noise sigma must be non-negative");
  if (!(highlight_radius >= 0.0)) throw SpecError("highlight radius must be non-negative");
}

SynthEye generate_eye(const EyeSpec& spec) {
  spec.validate();
  std::mt19937_64 eng(spec.seed);
  GrayImage img(spec.width, spec.height);

  std::vector<double> level(spec.width * spec.height);
  for (std::size_t y = 0; y < spec.height; ++y)
    for (std::size_t x = 0; x < spec.width; ++x) {
      const double d = std::hypot(static_cast<double>(x) - spec.pupil_cx,
                                  static_cast<double>(y) - spec.pupil_cy);
      level[y * spec.width + x] = d < spec.pupil_radius  ? spec.pupil_intensity
                                  : d < spec.iris_radius ? spec.iris_intensity
                                                         : spec.sclera_intensity;
    }

  for (unsigned h = 0; h < spec.highlight_count; ++h) {
    const double rho = 0.5 * spec.pupil_radius * std::sqrt(unit_closed_open(eng));
    const double phi = 2.0 * std::numbers::pi * unit_closed_open(eng);
    const double hx = spec.pupil_cx + rho * std::cos(phi);
    const double hy = spec.pupil_cy + rho * std::sin(phi);
    for (std::size_t y = 0; y < spec.height; ++y)
      for (std::size_t x = 0; x < spec.width; ++x)
        if (std::hypot(static_cast<double>(x) - hx, static_cast<double>(y) - hy) <=
            spec.highlight_radius)
          level[y * spec.width + x] = spec.highlight_intensity;
  }

  if (spec.occlusion > 0.0) {
    // Upper eyelid: a full-width band down to the given depth into the pupil.
    const double lid = spec.pupil_cy - spec.pupil_radius + spec.occlusion * 2.0 * spec.pupil_radius;
    for (std::size_t y = 0; y < spec.height && static_cast<double>(y) < lid; ++y)
      for (std::size_t x = 0; x < spec.width; ++x) level[y * spec.width + x] = spec.eyelid_intensity;
  }

  for (std::size_t i = 0; i < level.size(); ++i) {
    double v = level[i];
    if (spec.noise_sigma > 0.0) {
      const double u1 = unit_open_closed(eng);
      const double u2 = unit_closed_open(eng);
      v += spec.noise_sigma * std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * std::numbers::pi * u2);
    }
    img.data()[i] = static_cast<std::uint8_t>(std::clamp(std::round(v), 0.0, 255.0));
  }

  return {std::move(img), {spec.seed, spec.pupil_cx, spec.pupil_cy, spec.pupil_radius}};
}

EyeSpec corpus_eye_spec(const CorpusOptions& opts, std::uint64_t master_seed,
                        std::size_t index) {
  EyeSpec s = opts.base;
  s.seed = master_seed + index;
  if (!opts.vary_geometry) {
    if (opts.pupil_radius) s.pupil_radius = *opts.pupil_radius;
    if (opts.iris_radius) s.iris_radius = *opts.iris_radius;
    return s;
  }
  // Geometry comes from a decorrelated stream so it does not echo the noise.
  std::mt19937_64 eng(s.seed ^ 0x9e3779b97f4a7c15ULL);
  const double drawn = opts.radius_min + (opts.radius_max - opts.radius_min) * unit_closed_open(eng);
  s.pupil_radius = opts.pupil_radius.value_or(drawn);
  s.iris_radius = opts.iris_radius.value_or(s.pupil_radius * opts.iris_ratio);
  s.pupil_cx = static_cast<double>(s.width) / 2.0 +
               opts.center_jitter * (2.0 * unit_closed_open(eng) - 1.0);
  s.pupil_cy = static_cast<double>(s.height) / 2.0 +
               opts.center_jitter * (2.0 * unit_closed_open(eng) - 1.0);
  return s;
}

std::vector<SynthEye> generate_corpus(const CorpusOptions& opts, std::uint64_t master_seed,
                                      std::size_t count) {
  std::vector<SynthEye> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i)
    out.push_back(generate_eye(corpus_eye_spec(opts, master_seed, i)));
  return out;
}

void write_truth_csv(std::ostream& os, const std::vector<TruthRow>& rows) {
  os << "file,seed,cx,cy,r\n";
  for (const auto& row : rows) {
    std::ostringstream line;
    line << std::setprecision(17) << row.file << ',' << row.truth.seed << ',' << row.truth.cx
         << ',' << row.truth.cy << ',' << row.truth.radius << '\n';
    os << line.str();
  }
}

std::vector<TruthRow> read_truth_csv(std::istream& is) {
  std::vector<TruthRow> rows;
  std::string line;
  if (!std::getline(is, line) || line.rfind("file,seed,cx,cy,r", 0) != 0)
    throw ConfigError("ground-truth CSV must start with header 'file,seed,cx,cy,r'");
  std::size_t lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream ls(line);
    TruthRow row;
    std::string seed, cx, cy, r;
    if (!std::getline(ls, row.file, ',') || !std::getline(ls, seed, ',') ||
        !std::getline(ls, cx, ',') || !std::getline(ls, cy, ',') || !std::getline(ls, r))
      throw ConfigError("ground-truth CSV line " + std::to_string(lineno) + " has too few fields");
    try {
      row.truth = {std::stoull(seed), std::stod(cx), std::stod(cy), std::stod(r)};
    } catch (const std::exception&) {
      throw ConfigError("ground-truth CSV line " + std::to_string(lineno) + " is not numeric");
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

} // namespace approxpupil::synth
