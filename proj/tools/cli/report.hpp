#pragma once

// Report model shared by the run/compare/characterize commands, plus its
// JSON and CSV renderings. Bump kSchemaVersion whenever a key or column
// changes.

#include "approxpupil/characterization.hpp"
#include "approxpupil/metrics.hpp"
#include "approxpupil/pipeline.hpp"
#include "approxpupil/synth_corpus.hpp"

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"

namespace approxpupil::cli {

inline constexpr int kSchemaVersion = 1;

/// Published CASIA means, echoed in compare reports for context only.
inline constexpr double kReferencePsnrMean = 26.90125;
inline constexpr double kReferenceSsimMean = 0.989025;

/// Stage boundaries at which compare measures exact-vs-candidate quality.
inline constexpr const char* kQualityStages[] = {"smoothed", "gradient",   "edge_e1",
                                                 "pupil_mask", "edge_e2", "edge_map"};

struct RunRow {
  std::string input;
  std::optional<std::uint64_t> seed;
  std::string status = "ok"; ///< ok | no_pupil | parse_error | config_error | error
  std::string error;
  bool compared = false; ///< produced by compare (baseline fields meaningful)

  std::optional<pipeline::PupilLocation> location;          ///< run variant / compare candidate
  std::optional<pipeline::PupilLocation> baseline_location; ///< compare only (exact variant)
  std::optional<synth::GroundTruth> truth;

  metrics::MetricsReport metrics; ///< stages empty for plain runs
  metrics::StageTimings baseline_timings;
  std::vector<std::string> outputs;

  std::optional<double> center_error() const;        ///< location vs truth, px
  std::optional<double> radius_error() const;        ///< |r - r_true| / r_true
  std::optional<double> baseline_center_error() const;
  std::optional<double> baseline_radius_error() const;
  std::optional<double> center_delta() const;        ///< location vs baseline_location, px
};

struct StageAggregate {
  std::string stage;
  std::size_t count = 0;
  double psnr_mean = 0.0, psnr_min = 0.0, psnr_max = 0.0;
  double ssim_mean = 0.0, ssim_min = 0.0, ssim_max = 0.0;
};

struct Aggregates {
  std::size_t images = 0;
  std::size_t ok = 0;
  std::vector<StageAggregate> stages;
  std::optional<double> center_error_mean, center_error_max;
  std::optional<double> radius_error_mean, radius_error_max;
  std::optional<double> baseline_center_error_mean;
  std::optional<double> center_delta_mean, center_delta_max;
  /// Fraction of rows with truth where center error <= 2 px and radius error <= 10 %.
  std::optional<double> localization_pass_rate;
  std::optional<double> baseline_localization_pass_rate;
  /// Fraction of rows where the candidate centre is within 2 px of the baseline's.
  std::optional<double> center_agreement_rate;
};

Aggregates aggregate(const std::vector<RunRow>& rows);

struct RunReport {
  std::string command;
  std::string tool_version;
  pipeline::PipelineConfig config;
  std::optional<pipeline::PipelineConfig> baseline_config;
  characterization::CostReport cost_intensity;
  characterization::CostReport cost_gradient;
  std::vector<RunRow> rows;
  Aggregates aggregates;
};

/// Renders doubles, mapping +/-infinity to the strings "inf"/"-inf".
nlohmann::json number_or_token(double v);
std::string csv_number(double v);

nlohmann::json config_to_json(const pipeline::PipelineConfig& cfg);
nlohmann::json cost_to_json(const characterization::CostReport& c);
nlohmann::json to_json(const RunReport& report);
void write_csv(std::ostream& os, const RunReport& report);

struct CharacterizeResult {
  arith::AdderConfig cfg;
  characterization::ErrorStats stats;
  characterization::CostReport cost;
  unsigned comparator_width = 0;
  unsigned comparator_k = 0;
};

nlohmann::json to_json(const CharacterizeResult& r, const std::string& tool_version);
void write_csv(std::ostream& os, const CharacterizeResult& r);

} // namespace approxpupil::cli
