#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fsqca/dataset.hpp"
#include "fsqca/errors.hpp"

namespace fsqca {

/// Three anchors of the direct calibration method.
struct CalibrationSpec {
  double full_in = 0.0;   // full membership threshold (n1)
  double crossover = 0.0; // point of maximum ambiguity (n2)
  double full_out = 0.0;  // full non-membership threshold (n3)

  bool valid() const { return full_in > crossover && crossover > full_out; }
  bool operator==(const CalibrationSpec&) const = default;
};

/// Map a raw score onto a set membership in (0,1).
///
/// Log-odds are anchored at +3 / -3 at the full-in / full-out thresholds:
///   x >= crossover: L = 3*(x - crossover)/(full_in - crossover)
///   x <  crossover: L = 3*(x - crossover)/(crossover - full_out)
/// membership = 1/(1 + exp(-L)); strictly increasing, 0.5 exactly at the
/// crossover. Throws DataError on non-finite input or an invalid spec.
double calibrate(double x, const CalibrationSpec& spec);

/// (95th percentile, median, 5th percentile) of a column, the default
/// anchors when the analyst supplies none. Always reported in output.
CalibrationSpec default_spec(std::span<const double> column_values);

/// Calibrated dataset: memberships in [0,1] plus the outcome column.
struct FuzzyDataset {
  std::vector<std::string> cases;
  std::vector<ConditionDef> conditions;
  std::vector<double> values; // row-major, cases x conditions

  std::size_t n_cases() const { return cases.size(); }
  std::size_t n_conditions() const { return conditions.size(); }

  double at(std::size_t case_idx, std::size_t cond_idx) const {
    return values[case_idx * conditions.size() + cond_idx];
  }
  double& at(std::size_t case_idx, std::size_t cond_idx) {
    return values[case_idx * conditions.size() + cond_idx];
  }

  std::optional<std::size_t> condition_index(const std::string& id) const;

  /// Membership column for one condition id.
  std::vector<double> column(const std::string& id) const;
};

/// Per-condition anchors actually used, with a flag for defaulted ones.
struct UsedSpec {
  CalibrationSpec spec;
  bool defaulted = false;
};

struct CalibrationResult {
  FuzzyDataset data;
  std::map<std::string, UsedSpec> specs; // keyed by condition id
  Diagnostics diagnostics;
};

/// Calibrate every column. Conditions without an entry in `specs` fall back
/// to default_spec of their column. A resulting membership of exactly 0.5
/// is a hard error naming case and condition unless `nudge_half` is set, in
/// which case it is shifted by -1e-6 and a warning is recorded.
CalibrationResult calibrate_dataset(const RawDataset& d,
                                    const std::map<std::string, CalibrationSpec>& specs,
                                    bool nudge_half = false);

/// Project a fuzzy dataset onto (causal condition ids..., outcome id), in
/// that column order. Unknown ids raise ConfigError.
FuzzyDataset project(const FuzzyDataset& d, const std::vector<std::string>& condition_ids,
                     const std::string& outcome_id);

} // namespace fsqca
