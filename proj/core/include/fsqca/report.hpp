#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fsqca/analysis.hpp"
#include "fsqca/truthtable.hpp"

namespace fsqca {

/// FNV-1a over raw bytes; stable across platforms, used to fingerprint
/// pipeline inputs in the bundle.
std::uint64_t fnv1a64(std::string_view bytes);
std::string fnv1a64_hex(std::string_view bytes);

/// Round-half-even fixed formatting used for all printed measures.
std::string format_measure(double value, int decimals = 2);

struct ChartOptions {
  bool ascii = false; // O / o / X / space instead of the circle glyphs
};

/// One charted solution: its terms become columns labelled
/// "<prefix>1", "<prefix>2", ... (a single solution uses A, B, C, ...).
struct ChartEntry {
  std::string label;
  Solution solution;
  SolutionMeasures measures;
};

/// Fiss-style configuration chart: conditions as rows grouped by their
/// group, one column per term, glyph cells, and the measure footer.
std::string render_chart(const std::vector<ChartEntry>& entries,
                         const std::vector<ConditionDef>& conditions,
                         const ChartOptions& options = {});

/// Everything one analysis run produced.
struct AnalysisRecord {
  std::string name;
  std::string outcome_id;
  std::vector<std::string> condition_ids;
  std::map<std::string, std::string> expectations; // stated directions only
  std::map<std::string, UsedSpec> specs; // calibration anchors actually used
  TruthTable table;
  std::vector<Contradiction> contradictions;
  Solution complex_solution;
  Solution parsimonious_solution;
  Solution intermediate_solution; // carries core/peripheral flags
  SolutionMeasures measures;      // of the intermediate solution as reported
  std::vector<CaseSupport> support;    // per reported term
  std::vector<CaseSupport> eliminated; // terms dropped for lacking cases
  std::optional<GroupIntegration> group_integration;
};

struct BundleInput {
  std::string tool;                                // name and version
  std::map<std::string, std::string> input_hashes; // input name -> fnv1a64
  std::map<std::string, std::string> settings;     // echoed thresholds/flags
  std::vector<std::string> cases;
  std::vector<ConditionDef> conditions;
  Diagnostics diagnostics;
  std::vector<AnalysisRecord> analyses;
  std::optional<DistinctnessReport> distinctness;
};

/// Serialize the whole run as a deterministic JSON document with exactly
/// five top-level sections: meta, dataset, truth_tables, solutions,
/// analysis. Identical inputs yield identical bytes.
std::string export_bundle(const BundleInput& in);

} // namespace fsqca
