#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fsqca/analysis.hpp"
#include "fsqca/calibration.hpp"
#include "fsqca/dataset.hpp"
#include "fsqca/minimize.hpp"
#include "fsqca/report.hpp"
#include "fsqca/truthtable.hpp"

namespace fsqca {

/// One analysis block of a run config: which outcome, which conditions,
/// optional directional expectations, and which rendered files to emit.
struct AnalysisSpec {
  std::string name;
  std::string outcome_id;
  std::vector<std::string> condition_ids;
  std::map<std::string, Expectation> expectations; // absent id => agnostic
  std::optional<std::string> chart_path;
  std::optional<std::string> table_path;
};

struct PipelineConfig {
  std::string source_path; // set by load_config; fingerprinted into the bundle
  std::string dataset_path;
  std::string schema_path;
  DatasetKind kind = DatasetKind::scores;
  std::map<std::string, CalibrationSpec> calibration; // explicit anchors
  bool nudge_half = false;
  int frequency_threshold = 1;
  double consistency_threshold = 0.8;
  std::vector<AnalysisSpec> analyses;
  std::vector<std::string> compare_outcomes; // distinctness check subjects
  std::optional<std::string> bundle_path;
  bool ascii = false;
};

/// Parse a JSON run config; file paths inside it are resolved relative to
/// the config file's own directory. Malformed or incomplete configs throw
/// ConfigError.
PipelineConfig load_config(const std::string& path);

struct PipelineResult {
  BundleInput bundle;
  /// Rendered files as (relative path, contents), in emission order. The
  /// caller decides where they land on disk.
  std::vector<std::pair<std::string, std::string>> outputs;
};

/// Full run: load + validate, calibrate, per-analysis truth table and the
/// three solution kinds, measures, case support, charts, distinctness, and
/// the bundle. Never touches the filesystem beyond the declared inputs.
PipelineResult run_pipeline(const PipelineConfig& config);

} // namespace fsqca
