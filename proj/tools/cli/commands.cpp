#include "commands.hpp"

#include "approxpupil/error.hpp"
#include "approxpupil/pgm.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <thread>

#include "CLI11.hpp"

#ifndef APPROXPUPIL_VERSION
#define APPROXPUPIL_VERSION "0.0.0"
#endif

namespace approxpupil::cli {

using pipeline::PipelineConfig;

std::string tool_version() { return APPROXPUPIL_VERSION; }

PipelineConfig ConfigFlags::build() const {
  const auto v = pipeline::parse_variant(variant);
  PipelineConfig c = v == pipeline::Variant::Exact ? PipelineConfig::exact()
                                                   : PipelineConfig::approximate();
  c.intensity_threshold.value = threshold_intensity;
  c.gradient_threshold.value = threshold_gradient;
  if (v == pipeline::Variant::Approximate) {
    c.gaussian_cfg = arith::AdderConfig::with_prefix(
        pipeline::kDatapathBits, arith::parse_cell_kind(gauss_cell), gauss_approx_bits);
    c.prewitt_cfg = arith::AdderConfig::with_prefix(
        pipeline::kDatapathBits, arith::CellKind::ApproxLOA, prewitt_approx_bits);
    c.intensity_threshold.ignored_lsbs = ignore_lsbs_intensity;
    c.gradient_threshold.ignored_lsbs = ignore_lsbs_gradient;
  }
  c.validate();
  return c;
}

std::vector<fs::path> expand_inputs(const std::vector<std::string>& args) {
  std::vector<fs::path> out;
  for (const auto& a : args) {
    const fs::path p(a);
    if (fs::is_directory(p)) {
      std::vector<fs::path> found;
      for (const auto& e : fs::directory_iterator(p))
        if (e.is_regular_file() && e.path().extension() == ".pgm") found.push_back(e.path());
      std::sort(found.begin(), found.end());
      out.insert(out.end(), found.begin(), found.end());
    } else {
      out.push_back(p);
    }
  }
  return out;
}

namespace {

/// Truth rows keyed by file name; explicit CSV wins, otherwise a truth.csv
/// next to the first input is picked up.
std::map<std::string, synth::GroundTruth> load_truth(const BatchOptions& opts) {
  std::optional<fs::path> path = opts.truth_csv;
  if (!path && !opts.inputs.empty()) {
    const fs::path candidate = opts.inputs.front().parent_path() / "truth.csv";
    if (fs::exists(candidate)) path = candidate;
  }
  std::map<std::string, synth::GroundTruth> out;
  if (!path) return out;
  std::ifstream in(*path);
  if (!in) throw ConfigError("cannot open ground-truth CSV '" + path->string() + "'");
  for (auto& row : synth::read_truth_csv(in)) out[row.file] = row.truth;
  return out;
}

template <class Fn>
void parallel_for(std::size_t n, unsigned threads, Fn&& fn) {
  if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(n, 1)));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  for (unsigned t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) fn(i);
    });
}

/// Records the failure on the row; rethrows anything unexpected.
template <class Fn>
void guarded(RunRow& row, Fn&& fn) {
  try {
    fn();
  } catch (const NoPupilError& e) {
    row.status = "no_pupil";
    row.error = e.what();
  } catch (const ParseError& e) {
    row.status = "parse_error";
    row.error = e.what();
  } catch (const FormatError& e) {
    row.status = "parse_error";
    row.error = e.what();
  } catch (const Error& e) {
    row.status = "config_error";
    row.error = e.what();
  }
}

GrayImage magnitude_to_gray(const Raster<std::int32_t>& m) {
  GrayImage g(m.width(), m.height());
  for (std::size_t i = 0; i < m.size(); ++i)
    g.data()[i] = static_cast<std::uint8_t>(std::clamp(m.data()[i], 0, 255));
  return g;
}

GrayImage overlay(const GrayImage& img, const pipeline::PupilResult& r) {
  GrayImage out = img;
  for (std::size_t y = 0; y < img.height(); ++y)
    for (std::size_t x = 0; x < img.width(); ++x)
      if (r.edge_map.get(x, y)) out.at(x, y) = 255;
  const auto cx = static_cast<std::ptrdiff_t>(std::lround(r.location.cx));
  const auto cy = static_cast<std::ptrdiff_t>(std::lround(r.location.cy));
  for (std::ptrdiff_t d = -3; d <= 3; ++d) {
    const std::ptrdiff_t w = static_cast<std::ptrdiff_t>(img.width());
    const std::ptrdiff_t h = static_cast<std::ptrdiff_t>(img.height());
    if (cx + d >= 0 && cx + d < w && cy >= 0 && cy < h)
      out.at(static_cast<std::size_t>(cx + d), static_cast<std::size_t>(cy)) = 255;
    if (cy + d >= 0 && cy + d < h && cx >= 0 && cx < w)
      out.at(static_cast<std::size_t>(cx), static_cast<std::size_t>(cy + d)) = 255;
  }
  return out;
}

RunReport make_report(std::string command, const PipelineConfig& cfg) {
  cfg.validate();
  RunReport rep;
  rep.command = std::move(command);
  rep.tool_version = tool_version();
  rep.config = cfg;
  rep.cost_intensity = characterization::cost_model(
      cfg.gaussian_cfg, cfg.intensity_threshold.word_width, cfg.intensity_threshold.ignored_lsbs);
  rep.cost_gradient = characterization::cost_model(
      cfg.prewitt_cfg, cfg.gradient_threshold.word_width, cfg.gradient_threshold.ignored_lsbs);
  return rep;
}

RunRow new_row(const fs::path& input, const std::map<std::string, synth::GroundTruth>& truth) {
  RunRow row;
  row.input = input.string();
  if (auto it = truth.find(input.filename().string()); it != truth.end()) {
    row.truth = it->second;
    row.seed = it->second.seed;
  }
  return row;
}

} // namespace

RunReport cmd_run(const BatchOptions& opts, const PipelineConfig& cfg) {
  if (opts.inputs.empty()) throw CLI::ValidationError("run", "no input images given");
  RunReport rep = make_report("run", cfg);
  const auto truth = load_truth(opts);
  if (opts.out_dir) fs::create_directories(*opts.out_dir);

  rep.rows.resize(opts.inputs.size());
  parallel_for(opts.inputs.size(), opts.threads, [&](std::size_t i) {
    const fs::path& input = opts.inputs[i];
    RunRow row = new_row(input, truth);
    row.metrics.config_fingerprint = cfg.fingerprint();
    row.metrics.cost = rep.cost_intensity;
    guarded(row, [&] {
      const GrayImage img = pgm::read(input);
      pipeline::PupilResult r = pipeline::run_stages(img, cfg);
      row.metrics.per_stage_timings = r.stage_timings;
      if (opts.out_dir) {
        const std::string stem = input.stem().string();
        const fs::path edges = *opts.out_dir / (stem + "_edges.pgm");
        const fs::path mask = *opts.out_dir / (stem + "_mask.pgm");
        pgm::write(edges, r.edge_map.to_gray());
        pgm::write(mask, r.pupil_mask.to_gray());
        row.outputs = {edges.string(), mask.string()};
      }
      pipeline::localize_stage(r);
      row.metrics.per_stage_timings = r.stage_timings;
      row.location = r.location;
      if (opts.out_dir && opts.overlay) {
        const fs::path ov = *opts.out_dir / (input.stem().string() + "_overlay.pgm");
        pgm::write(ov, overlay(img, r));
        row.outputs.push_back(ov.string());
      }
    });
    rep.rows[i] = std::move(row);
  });
  rep.aggregates = aggregate(rep.rows);
  return rep;
}

RunReport cmd_compare(const BatchOptions& opts, const PipelineConfig& candidate) {
  if (opts.inputs.empty()) throw CLI::ValidationError("compare", "no input images given");
  RunReport rep = make_report("compare", candidate);
  const PipelineConfig baseline = PipelineConfig::exact();
  rep.baseline_config = baseline;
  const auto truth = load_truth(opts);

  rep.rows.resize(opts.inputs.size());
  parallel_for(opts.inputs.size(), opts.threads, [&](std::size_t i) {
    const fs::path& input = opts.inputs[i];
    RunRow row = new_row(input, truth);
    row.compared = true;
    row.metrics.config_fingerprint = candidate.fingerprint();
    row.metrics.cost = rep.cost_intensity;
    guarded(row, [&] {
      const GrayImage img = pgm::read(input);
      pipeline::PupilResult exact = pipeline::run_stages(img, baseline);
      pipeline::PupilResult approx = pipeline::run_stages(img, candidate);

      auto add = [&](const char* stage, const GrayImage& a, const GrayImage& b) {
        row.metrics.stages.push_back({stage, metrics::psnr(a, b), metrics::ssim(a, b)});
      };
      add(kQualityStages[0], exact.smoothed, approx.smoothed);
      add(kQualityStages[1], magnitude_to_gray(exact.gradient_magnitude),
          magnitude_to_gray(approx.gradient_magnitude));
      add(kQualityStages[2], exact.e1.to_gray(), approx.e1.to_gray());
      add(kQualityStages[3], exact.pupil_mask.to_gray(), approx.pupil_mask.to_gray());
      add(kQualityStages[4], exact.e2.to_gray(), approx.e2.to_gray());
      add(kQualityStages[5], exact.edge_map.to_gray(), approx.edge_map.to_gray());
      row.metrics.psnr_db = row.metrics.stages.front().psnr_db;
      row.metrics.ssim = row.metrics.stages.front().ssim;

      // Localize each side independently so one failure keeps the other.
      RunRow baseline_row;
      guarded(baseline_row, [&] {
        pipeline::localize_stage(exact);
        row.baseline_location = exact.location;
      });
      row.baseline_timings = exact.stage_timings;
      guarded(row, [&] {
        pipeline::localize_stage(approx);
        row.location = approx.location;
      });
      row.metrics.per_stage_timings = approx.stage_timings;
      if (row.status == "ok" && baseline_row.status != "ok") {
        row.status = baseline_row.status;
        row.error = "exact variant: " + baseline_row.error;
      }
    });
    rep.rows[i] = std::move(row);
  });
  rep.aggregates = aggregate(rep.rows);
  return rep;
}

CharacterizeResult cmd_characterize(unsigned width, arith::CellKind cell, unsigned prefix,
                                    unsigned ignored_lsbs, unsigned comparator_width,
                                    unsigned comparator_k) {
  if (width > characterization::kMaxExhaustiveWidth)
    throw ConfigError("width " + std::to_string(width) + " exceeds the exhaustive cap of " +
                      std::to_string(characterization::kMaxExhaustiveWidth) +
                      " bits (2^" + std::to_string(2 * width) +
                      " operand pairs); characterize a narrower slice instead");
  if (cell == arith::CellKind::Exact) prefix = 0;
  CharacterizeResult r{arith::AdderConfig::with_prefix(width, cell, prefix), {}, {},
                       comparator_width, comparator_k};
  r.stats = characterization::characterize_adder(r.cfg, ignored_lsbs);
  r.cost = characterization::cost_model(r.cfg, comparator_width, comparator_k);
  return r;
}

std::vector<synth::TruthRow> cmd_synth(const SynthOptions& opts) {
  // Validate every spec before touching the filesystem.
  std::vector<synth::EyeSpec> specs;
  for (std::size_t i = 0; i < opts.count; ++i) {
    specs.push_back(synth::corpus_eye_spec(opts.corpus, opts.seed, i));
    specs.back().validate();
  }
  fs::create_directories(opts.out_dir);
  std::vector<synth::TruthRow> rows;
  for (std::size_t i = 0; i < specs.size(); ++i) {
    const synth::SynthEye eye = synth::generate_eye(specs[i]);
    char name[32];
    std::snprintf(name, sizeof name, "eye_%04zu.pgm", i);
    pgm::write(opts.out_dir / name, eye.image);
    rows.push_back({name, eye.truth});
  }
  std::ofstream csv(opts.out_dir / "truth.csv");
  if (!csv) throw Error("cannot write truth.csv in '" + opts.out_dir.string() + "'");
  synth::write_truth_csv(csv, rows);
  return rows;
}

int exit_code_for(const RunReport& report) {
  for (const RunRow& r : report.rows) {
    if (r.status == "parse_error") return kExitParse;
    if (r.status == "config_error") return kExitConfig;
    if (r.status == "no_pupil") return kExitNoPupil;
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// Command line

namespace {

void add_config_flags(CLI::App* cmd, ConfigFlags& f) {
  cmd->add_option("--variant", f.variant, "Pipeline variant")
      ->check(CLI::IsMember({"exact", "approx"}))
      ->capture_default_str();
  cmd->add_option("--gauss-approx-bits", f.gauss_approx_bits,
                  "Approximate LSB cells in the Gaussian adder")
      ->check(CLI::Range(0U, pipeline::kDatapathBits))
      ->capture_default_str();
  cmd->add_option("--gauss-cell", f.gauss_cell, "Cell kind for the Gaussian approximate LSBs")
      ->check(CLI::IsMember({"carryonly", "loa"}))
      ->capture_default_str();
  cmd->add_option("--prewitt-approx-bits", f.prewitt_approx_bits,
                  "Approximate (LOA) LSB cells in the Prewitt adders")
      ->check(CLI::Range(0U, pipeline::kDatapathBits))
      ->capture_default_str();
  cmd->add_option("--threshold-intensity", f.threshold_intensity, "Intensity threshold T")
      ->check(CLI::Range(0U, 255U))
      ->capture_default_str();
  cmd->add_option("--threshold-gradient", f.threshold_gradient, "Gradient-magnitude threshold")
      ->check(CLI::Range(0U, 4095U))
      ->capture_default_str();
  cmd->add_option("--ignore-lsbs-intensity", f.ignore_lsbs_intensity,
                  "LSBs dropped by the intensity comparator")
      ->capture_default_str();
  cmd->add_option("--ignore-lsbs-gradient", f.ignore_lsbs_gradient,
                  "LSBs dropped by the gradient comparator")
      ->capture_default_str();
}

void emit(const std::optional<std::string>& path, std::ostream& out, const auto& write_json,
          const auto& write_csv_fn) {
  const bool csv = path && fs::path(*path).extension() == ".csv";
  if (!path) {
    write_json(out);
    return;
  }
  if (fs::path(*path).has_parent_path()) fs::create_directories(fs::path(*path).parent_path());
  std::ofstream f(*path);
  if (!f) throw Error("cannot write report '" + *path + "'");
  if (csv)
    write_csv_fn(f);
  else
    write_json(f);
}

void emit_run_report(const RunReport& rep, const std::optional<std::string>& path,
                     std::ostream& out) {
  emit(
      path, out, [&](std::ostream& os) { os << to_json(rep).dump(2) << '\n'; },
      [&](std::ostream& os) { write_csv(os, rep); });
}

void print_summary(const RunReport& rep, std::ostream& err) {
  const Aggregates& a = rep.aggregates;
  err << rep.command << ": " << a.ok << "/" << a.images << " images ok";
  for (const auto& s : a.stages)
    if (s.stage == std::string(kQualityStages[0]))
      err << "; smoothed PSNR mean " << csv_number(s.psnr_mean) << " dB, SSIM mean "
          << csv_number(s.ssim_mean);
  if (a.localization_pass_rate)
    err << "; localization pass rate " << csv_number(*a.localization_pass_rate);
  err << '\n';
}

} // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bit-accurate approximate pupil segmentation datapath"};
  app.set_version_flag("--version", tool_version());
  app.require_subcommand(1);

  ConfigFlags run_flags;
  std::vector<std::string> run_inputs;
  std::optional<std::string> run_out, run_report, run_truth;
  bool no_overlay = false;
  unsigned threads = 0;
  auto* run = app.add_subcommand("run", "Segment PGM images with one pipeline variant");
  run->add_option("inputs", run_inputs, "PGM files or directories")->required();
  add_config_flags(run, run_flags);
  run->add_option("--out", run_out, "Directory for edge map / mask / overlay PGMs");
  run->add_option("--report", run_report, "Report path (.json or .csv; default JSON to stdout)");
  run->add_option("--truth", run_truth, "Ground-truth CSV (file,seed,cx,cy,r)");
  run->add_flag("--no-overlay", no_overlay, "Skip the localization overlay image");
  run->add_option("--threads", threads, "Worker threads (0 = all cores)");

  ConfigFlags cmp_flags;
  std::vector<std::string> cmp_inputs;
  std::optional<std::string> cmp_report, cmp_truth;
  auto* compare = app.add_subcommand("compare", "Compare the exact and approximate variants");
  compare->add_option("inputs", cmp_inputs, "PGM files or directories");
  add_config_flags(compare, cmp_flags);
  compare->add_option("--report", cmp_report, "Report path (.json or .csv; default JSON to stdout)");
  compare->add_option("--truth", cmp_truth, "Ground-truth CSV (file,seed,cx,cy,r)");
  compare->add_option("--threads", threads, "Worker threads (0 = all cores)");

  unsigned ch_width = 8, ch_prefix = 5, ch_ignore = 0, ch_cmp_width = 8, ch_cmp_k = 5;
  std::string ch_cell = "loa";
  std::optional<std::string> ch_report;
  auto* characterize = app.add_subcommand("characterize", "Exhaustive adder error statistics");
  characterize->add_option("--width", ch_width, "Adder width in bits (<= 12)")->capture_default_str();
  characterize->add_option("--cell", ch_cell, "Approximate prefix cell kind")
      ->check(CLI::IsMember({"exact", "carryonly", "loa"}))
      ->capture_default_str();
  characterize->add_option("--prefix", ch_prefix, "Approximate prefix length")->capture_default_str();
  characterize->add_option("--ignore-lsbs", ch_ignore,
                           "Compare only result bits at or above this position")
      ->capture_default_str();
  characterize->add_option("--comparator-width", ch_cmp_width, "Comparator width for the cost model")
      ->capture_default_str();
  characterize->add_option("--comparator-k", ch_cmp_k, "Comparator LSBs ignored")->capture_default_str();
  characterize->add_option("--report", ch_report, "Report path (.json or .csv; default CSV to stdout)");

  SynthOptions so;
  std::string synth_out;
  std::optional<double> pupil_r, iris_r;
  std::size_t size = so.corpus.base.width;
  auto* synth_cmd = app.add_subcommand("synth", "Generate a synthetic eye corpus");
  synth_cmd->add_option("--count", so.count, "Number of images")->capture_default_str();
  synth_cmd->add_option("--seed", so.seed, "Master seed")->capture_default_str();
  synth_cmd->add_option("--out", synth_out, "Output directory")->required();
  synth_cmd->add_option("--size", size, "Image side length in pixels")->capture_default_str();
  synth_cmd->add_option("--pupil-radius", pupil_r, "Fixed pupil radius (default: varied 14-24)");
  synth_cmd->add_option("--iris-radius", iris_r, "Fixed iris radius (default: 2.2 x pupil)");
  synth_cmd->add_option("--center-jitter", so.corpus.center_jitter, "Max pupil offset from centre")
      ->capture_default_str();
  synth_cmd->add_option("--noise", so.corpus.base.noise_sigma, "Gaussian noise sigma")
      ->capture_default_str();
  synth_cmd->add_option("--occlusion", so.corpus.base.occlusion, "Eyelid occlusion fraction")
      ->capture_default_str();
  synth_cmd->add_option("--highlights", so.corpus.base.highlight_count, "Specular dots in the pupil")
      ->capture_default_str();
  synth_cmd->add_option("--highlight-radius", so.corpus.base.highlight_radius)->capture_default_str();
  synth_cmd->add_option("--pupil-intensity", so.corpus.base.pupil_intensity)->capture_default_str();
  synth_cmd->add_option("--iris-intensity", so.corpus.base.iris_intensity)->capture_default_str();
  synth_cmd->add_option("--sclera-intensity", so.corpus.base.sclera_intensity)->capture_default_str();
  synth_cmd->add_option("--eyelid-intensity", so.corpus.base.eyelid_intensity)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*run) {
      BatchOptions opts;
      opts.inputs = expand_inputs(run_inputs);
      if (run_truth) opts.truth_csv = *run_truth;
      if (run_out) opts.out_dir = *run_out;
      opts.overlay = !no_overlay;
      opts.threads = threads;
      const RunReport rep = cmd_run(opts, run_flags.build());
      emit_run_report(rep, run_report, out);
      print_summary(rep, err);
      return exit_code_for(rep);
    }
    if (*compare) {
      BatchOptions opts;
      opts.inputs = expand_inputs(cmp_inputs);
      if (opts.inputs.empty()) {
        err << "compare: no input images given\n" << compare->help();
        return kExitUsage;
      }
      if (cmp_truth) opts.truth_csv = *cmp_truth;
      opts.threads = threads;
      const RunReport rep = cmd_compare(opts, cmp_flags.build());
      emit_run_report(rep, cmp_report, out);
      print_summary(rep, err);
      return exit_code_for(rep);
    }
    if (*characterize) {
      const auto r = cmd_characterize(ch_width, arith::parse_cell_kind(ch_cell), ch_prefix,
                                      ch_ignore, ch_cmp_width, ch_cmp_k);
      const bool json_to_stdout = ch_report && fs::path(*ch_report).extension() != ".csv";
      if (!ch_report) {
        write_csv(out, r);
      } else {
        std::ofstream f(*ch_report);
        if (!f) throw Error("cannot write report '" + *ch_report + "'");
        if (json_to_stdout)
          f << to_json(r, tool_version()).dump(2) << '\n';
        else
          write_csv(f, r);
      }
      return kExitOk;
    }
    if (*synth_cmd) {
      so.out_dir = synth_out;
      so.corpus.base.width = so.corpus.base.height = size;
      so.corpus.base.pupil_cx = so.corpus.base.pupil_cy = static_cast<double>(size) / 2.0;
      so.corpus.pupil_radius = pupil_r;
      so.corpus.iris_radius = iris_r;
      const auto rows = cmd_synth(so);
      err << "synth: wrote " << rows.size() << " images to " << so.out_dir.string() << '\n';
      return kExitOk;
    }
  } catch (const CLI::ValidationError& e) {
    err << e.what() << '\n';
    return kExitUsage;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kExitParse;
  } catch (const FormatError& e) {
    err << "format error: " << e.what() << '\n';
    return kExitParse;
  } catch (const NoPupilError& e) {
    err << "no pupil: " << e.what() << '\n';
    return kExitNoPupil;
  } catch (const SpecError& e) {
    err << "spec error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const Error& e) {
    err << "configuration error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}

} // namespace approxpupil::cli
