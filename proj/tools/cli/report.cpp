#include "report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace approxpupil::cli {

using nlohmann::json;

namespace {

double distance(double ax, double ay, double bx, double by) {
  return std::hypot(ax - bx, ay - by);
}

struct Running {
  std::size_t n = 0;
  double sum = 0.0;
  double min = std::numeric_limits<double>::infinity();
  double max = -std::numeric_limits<double>::infinity();

  void add(double v) {
    ++n;
    sum += v;
    min = std::min(min, v);
    max = std::max(max, v);
  }
  double mean() const { return n ? sum / static_cast<double>(n) : 0.0; }
};

json opt(const std::optional<double>& v) { return v ? number_or_token(*v) : json(nullptr); }

json location_json(const std::optional<pipeline::PupilLocation>& loc) {
  if (!loc) return nullptr;
  return {{"cx", loc->cx}, {"cy", loc->cy}, {"radius", loc->radius}, {"area", loc->area}};
}

json timings_json(const metrics::StageTimings& t) {
  json out = json::object();
  for (const auto& [label, d] : t.entries())
    out[label] = std::chrono::duration<double, std::micro>(d).count();
  return out;
}

std::string csv_opt(const std::optional<double>& v) { return v ? csv_number(*v) : ""; }

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

} // namespace

std::optional<double> RunRow::center_error() const {
  if (!location || !truth) return std::nullopt;
  return distance(location->cx, location->cy, truth->cx, truth->cy);
}

std::optional<double> RunRow::radius_error() const {
  if (!location || !truth) return std::nullopt;
  return std::abs(location->radius - truth->radius) / truth->radius;
}

std::optional<double> RunRow::baseline_center_error() const {
  if (!baseline_location || !truth) return std::nullopt;
  return distance(baseline_location->cx, baseline_location->cy, truth->cx, truth->cy);
}

std::optional<double> RunRow::baseline_radius_error() const {
  if (!baseline_location || !truth) return std::nullopt;
  return std::abs(baseline_location->radius - truth->radius) / truth->radius;
}

std::optional<double> RunRow::center_delta() const {
  if (!location || !baseline_location) return std::nullopt;
  return distance(location->cx, location->cy, baseline_location->cx, baseline_location->cy);
}

Aggregates aggregate(const std::vector<RunRow>& rows) {
  Aggregates a;
  a.images = rows.size();
  std::vector<std::pair<Running, Running>> stage_stats;
  std::vector<std::string> stage_names;
  Running center, radius, base_center, delta;
  std::size_t truth_rows = 0, loc_pass = 0, base_truth_rows = 0, base_pass = 0;
  std::size_t delta_rows = 0, agree = 0;

  for (const RunRow& r : rows) {
    if (r.status == "ok") ++a.ok;
    for (const auto& q : r.metrics.stages) {
      auto it = std::find(stage_names.begin(), stage_names.end(), q.stage);
      std::size_t idx = static_cast<std::size_t>(it - stage_names.begin());
      if (it == stage_names.end()) {
        stage_names.push_back(q.stage);
        stage_stats.emplace_back();
      }
      stage_stats[idx].first.add(q.psnr_db);
      stage_stats[idx].second.add(q.ssim);
    }
    // A failed localization counts against the pass rates when truth exists.
    if (r.truth) {
      ++truth_rows;
      if (auto ce = r.center_error()) {
        center.add(*ce);
        radius.add(*r.radius_error());
        if (*ce <= 2.0 && *r.radius_error() <= 0.10) ++loc_pass;
      }
      if (r.compared) ++base_truth_rows;
      if (auto be = r.baseline_center_error()) {
        base_center.add(*be);
        if (*be <= 2.0 && *r.baseline_radius_error() <= 0.10) ++base_pass;
      }
    }
    if (r.compared) {
      ++delta_rows;
      if (auto d = r.center_delta()) {
        delta.add(*d);
        if (*d <= 2.0) ++agree;
      }
    }
  }

  for (std::size_t i = 0; i < stage_names.size(); ++i) {
    const auto& [p, s] = stage_stats[i];
    a.stages.push_back({stage_names[i], p.n, p.mean(), p.min, p.max, s.mean(), s.min, s.max});
  }
  if (center.n) {
    a.center_error_mean = center.mean();
    a.center_error_max = center.max;
    a.radius_error_mean = radius.mean();
    a.radius_error_max = radius.max;
  }
  if (truth_rows) a.localization_pass_rate = static_cast<double>(loc_pass) / static_cast<double>(truth_rows);
  if (base_center.n) a.baseline_center_error_mean = base_center.mean();
  if (base_truth_rows)
    a.baseline_localization_pass_rate =
        static_cast<double>(base_pass) / static_cast<double>(base_truth_rows);
  if (delta.n) {
    a.center_delta_mean = delta.mean();
    a.center_delta_max = delta.max;
  }
  if (delta_rows) a.center_agreement_rate = static_cast<double>(agree) / static_cast<double>(delta_rows);
  return a;
}

json number_or_token(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  return v;
}

std::string csv_number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

json config_to_json(const pipeline::PipelineConfig& cfg) {
  auto adder = [](const arith::AdderConfig& a) {
    return json{{"width", a.width()},
                {"approx_prefix", a.approx_prefix()},
                {"prefix_cell", arith::to_string(a.prefix_kind())},
                {"layout", a.describe()}};
  };
  auto thr = [](const binarization::ThresholdParams& t) {
    return json{{"value", t.value}, {"ignored_lsbs", t.ignored_lsbs}, {"word_width", t.word_width}};
  };
  return {{"variant", pipeline::to_string(cfg.variant)},
          {"gaussian_adder", adder(cfg.gaussian_cfg)},
          {"prewitt_adder", adder(cfg.prewitt_cfg)},
          {"intensity_threshold", thr(cfg.intensity_threshold)},
          {"gradient_threshold", thr(cfg.gradient_threshold)},
          {"fingerprint", cfg.fingerprint()}};
}

json cost_to_json(const characterization::CostReport& c) {
  return {{"exact_cells", c.exact_cells},
          {"carry_only_cells", c.carry_only_cells},
          {"approx_cells", c.approx_cells},
          {"comparator_bits_exact", c.comparator_bits_exact},
          {"comparator_bits_truncated", c.comparator_bits_truncated},
          {"comparator_reduction", c.comparator_reduction()}};
}

json to_json(const RunReport& report) {
  json rows = json::array();
  for (const RunRow& r : report.rows) {
    json row{{"input", r.input},
             {"seed", r.seed ? json(*r.seed) : json(nullptr)},
             {"status", r.status},
             {"location", location_json(r.location)},
             {"timings_us", timings_json(r.metrics.per_stage_timings)},
             {"config_fingerprint", r.metrics.config_fingerprint}};
    if (!r.error.empty()) row["error"] = r.error;
    if (r.truth)
      row["truth"] = {{"cx", r.truth->cx}, {"cy", r.truth->cy}, {"radius", r.truth->radius}};
    row["center_error"] = opt(r.center_error());
    row["radius_error"] = opt(r.radius_error());
    if (report.baseline_config) {
      row["baseline_location"] = location_json(r.baseline_location);
      row["baseline_timings_us"] = timings_json(r.baseline_timings);
      row["baseline_center_error"] = opt(r.baseline_center_error());
      row["baseline_radius_error"] = opt(r.baseline_radius_error());
      row["center_delta"] = opt(r.center_delta());
      json stages = json::object();
      for (const auto& q : r.metrics.stages)
        stages[q.stage] = {{"psnr_db", number_or_token(q.psnr_db)}, {"ssim", q.ssim}};
      row["stages"] = stages;
      row["psnr_db"] = number_or_token(r.metrics.psnr_db);
      row["ssim"] = r.metrics.ssim;
    }
    if (!r.outputs.empty()) row["outputs"] = r.outputs;
    rows.push_back(std::move(row));
  }

  const Aggregates& a = report.aggregates;
  json stages = json::object();
  for (const auto& s : a.stages)
    stages[s.stage] = {{"count", s.count},
                       {"psnr_mean", number_or_token(s.psnr_mean)},
                       {"psnr_min", number_or_token(s.psnr_min)},
                       {"psnr_max", number_or_token(s.psnr_max)},
                       {"ssim_mean", s.ssim_mean},
                       {"ssim_min", s.ssim_min},
                       {"ssim_max", s.ssim_max}};
  json agg{{"images", a.images},
           {"ok", a.ok},
           {"stages", stages},
           {"center_error_mean", opt(a.center_error_mean)},
           {"center_error_max", opt(a.center_error_max)},
           {"radius_error_mean", opt(a.radius_error_mean)},
           {"radius_error_max", opt(a.radius_error_max)},
           {"localization_pass_rate", opt(a.localization_pass_rate)}};
  if (report.baseline_config) {
    agg["baseline_center_error_mean"] = opt(a.baseline_center_error_mean);
    agg["baseline_localization_pass_rate"] = opt(a.baseline_localization_pass_rate);
    agg["center_delta_mean"] = opt(a.center_delta_mean);
    agg["center_delta_max"] = opt(a.center_delta_max);
    agg["center_agreement_rate"] = opt(a.center_agreement_rate);
    agg["reference_casia"] = {{"psnr_mean", kReferencePsnrMean},
                              {"ssim_mean", kReferenceSsimMean}};
  }

  json out{{"schema_version", kSchemaVersion},
           {"tool_version", report.tool_version},
           {"command", report.command},
           {"config", config_to_json(report.config)},
           {"cost", {{"intensity", cost_to_json(report.cost_intensity)},
                     {"gradient", cost_to_json(report.cost_gradient)}}},
           {"rows", rows},
           {"aggregates", agg}};
  if (report.baseline_config) out["baseline_config"] = config_to_json(*report.baseline_config);
  return out;
}

void write_csv(std::ostream& os, const RunReport& report) {
  const bool compare = report.baseline_config.has_value();
  os << "schema_version,input,seed,status,cx,cy,radius,truth_cx,truth_cy,truth_r,center_error,radius_error";
  if (compare) {
    os << ",baseline_cx,baseline_cy,baseline_radius,center_delta";
    for (const char* s : kQualityStages) os << ",psnr_" << s << ",ssim_" << s;
  }
  for (const char* s : pipeline::kStageLabels) os << ",us_" << s;
  os << '\n';

  for (const RunRow& r : report.rows) {
    os << kSchemaVersion << ',' << csv_escape(r.input) << ','
       << (r.seed ? std::to_string(*r.seed) : "") << ',' << r.status << ',';
    if (r.location)
      os << csv_number(r.location->cx) << ',' << csv_number(r.location->cy) << ','
         << csv_number(r.location->radius);
    else
      os << ",,";
    os << ',';
    if (r.truth)
      os << csv_number(r.truth->cx) << ',' << csv_number(r.truth->cy) << ','
         << csv_number(r.truth->radius);
    else
      os << ",,";
    os << ',' << csv_opt(r.center_error()) << ',' << csv_opt(r.radius_error());
    if (compare) {
      os << ',';
      if (r.baseline_location)
        os << csv_number(r.baseline_location->cx) << ',' << csv_number(r.baseline_location->cy)
           << ',' << csv_number(r.baseline_location->radius);
      else
        os << ",,";
      os << ',' << csv_opt(r.center_delta());
      for (const char* s : kQualityStages) {
        auto it = std::find_if(r.metrics.stages.begin(), r.metrics.stages.end(),
                               [&](const auto& q) { return q.stage == s; });
        if (it == r.metrics.stages.end())
          os << ",,";
        else
          os << ',' << csv_number(it->psnr_db) << ',' << csv_number(it->ssim);
      }
    }
    for (const char* s : pipeline::kStageLabels) {
      os << ',';
      for (const auto& [label, d] : r.metrics.per_stage_timings.entries())
        if (label == s) os << csv_number(std::chrono::duration<double, std::micro>(d).count());
    }
    os << '\n';
  }
}

json to_json(const CharacterizeResult& r, const std::string& tool_version) {
  const auto& s = r.stats;
  return {{"schema_version", kSchemaVersion},
          {"tool_version", tool_version},
          {"command", "characterize"},
          {"adder",
           {{"width", r.cfg.width()},
            {"prefix_cell", arith::to_string(r.cfg.prefix_kind())},
            {"approx_prefix", r.cfg.approx_prefix()},
            {"layout", r.cfg.describe()}}},
          {"error_stats",
           {{"ignored_lsbs", s.ignored_lsbs},
            {"total_cases", s.total_cases},
            {"error_cases", s.error_cases},
            {"error_rate", s.error_rate},
            {"mean_error_distance", s.mean_error_distance},
            {"max_error_distance", s.max_error_distance}}},
          {"comparator", {{"width", r.comparator_width}, {"ignored_lsbs", r.comparator_k}}},
          {"cost", cost_to_json(r.cost)}};
}

void write_csv(std::ostream& os, const CharacterizeResult& r) {
  const auto& s = r.stats;
  os << "schema_version,width,prefix_cell,approx_prefix,ignored_lsbs,total_cases,error_cases,"
        "error_rate,mean_error_distance,max_error_distance,exact_cells,carry_only_cells,"
        "approx_cells,comparator_width,comparator_ignored_lsbs,comparator_bits_exact,"
        "comparator_bits_truncated,comparator_reduction\n";
  os << kSchemaVersion << ',' << r.cfg.width() << ',' << arith::to_string(r.cfg.prefix_kind())
     << ',' << r.cfg.approx_prefix() << ',' << s.ignored_lsbs << ',' << s.total_cases << ','
     << s.error_cases << ',' << csv_number(s.error_rate) << ','
     << csv_number(s.mean_error_distance) << ',' << s.max_error_distance << ','
     << r.cost.exact_cells << ',' << r.cost.carry_only_cells << ',' << r.cost.approx_cells << ','
     << r.comparator_width << ',' << r.comparator_k << ',' << r.cost.comparator_bits_exact << ','
     << r.cost.comparator_bits_truncated << ',' << csv_number(r.cost.comparator_reduction())
     << '\n';
}

} // namespace approxpupil::cli
