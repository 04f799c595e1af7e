#pragma once

#include "report.hpp"

#include "approxpupil/bitlevel_arith.hpp"
#include "approxpupil/pipeline.hpp"
#include "approxpupil/synth_corpus.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace approxpupil::cli {

namespace fs = std::filesystem;

std::string tool_version();

/// Process exit codes.
enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,
  kExitUsage = 2,
  kExitParse = 3,
  kExitConfig = 4,
  kExitNoPupil = 5,
};

/// Pipeline flags as given on the command line. Defaults are the approximate
/// operating point (5 LOA LSBs, 96/k5, 128/k7).
struct ConfigFlags {
  std::string variant = "approx";
  unsigned gauss_approx_bits = pipeline::kDefaultApproxBits;
  std::string gauss_cell = "loa";
  unsigned prewitt_approx_bits = pipeline::kDefaultApproxBits;
  unsigned threshold_intensity = 96;
  unsigned threshold_gradient = 128;
  unsigned ignore_lsbs_intensity = 5;
  unsigned ignore_lsbs_gradient = 7;

  /// The exact variant ignores the approximation flags (all-exact adders,
  /// k = 0) but keeps the threshold values.
  pipeline::PipelineConfig build() const;
};

struct BatchOptions {
  std::vector<fs::path> inputs;
  std::optional<fs::path> truth_csv;
  std::optional<fs::path> out_dir;
  bool overlay = true;
  unsigned threads = 0; ///< 0 = hardware concurrency
};

/// Directories expand to their *.pgm files in lexicographic order.
std::vector<fs::path> expand_inputs(const std::vector<std::string>& args);

/// Runs one pipeline variant per input. Writes <stem>_edges.pgm,
/// <stem>_mask.pgm and (optionally) <stem>_overlay.pgm when out_dir is set.
RunReport cmd_run(const BatchOptions& opts, const pipeline::PipelineConfig& cfg);

/// Runs the exact variant and `candidate` on every input and reports quality
/// at each stage boundary, localization deltas, timings and cost proxies.
RunReport cmd_compare(const BatchOptions& opts, const pipeline::PipelineConfig& candidate);

CharacterizeResult cmd_characterize(unsigned width, arith::CellKind cell, unsigned prefix,
                                    unsigned ignored_lsbs, unsigned comparator_width,
                                    unsigned comparator_k);

struct SynthOptions {
  synth::CorpusOptions corpus;
  std::size_t count = 10;
  std::uint64_t seed = 0;
  fs::path out_dir;
};

/// Writes eye_NNNN.pgm files plus truth.csv into out_dir.
std::vector<synth::TruthRow> cmd_synth(const SynthOptions& opts);

/// Most severe exit code implied by the row statuses.
int exit_code_for(const RunReport& report);

/// Full command-line entry point.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace approxpupil::cli
