#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "fsqca/errors.hpp"

namespace fsqca {

enum class ConditionGroup { information_architecture, business_model, outcome, other };

enum class Material { quantitative, qualitative, mixed, boolean_flag };

std::string to_string(ConditionGroup g);
std::string to_string(Material m);
ConditionGroup condition_group_from_string(const std::string& s);
Material material_from_string(const std::string& s);

/// One causal condition (or the outcome) of the analysis.
struct ConditionDef {
  std::string id;    // short identifier, unique within a dataset
  std::string label; // display name
  ConditionGroup group = ConditionGroup::other;
  Material material = Material::quantitative;

  bool operator==(const ConditionDef&) const = default;
};

/// Whether the matrix holds [0,10] index scores or raw measurements
/// that still have to go through the scoring stage.
enum class DatasetKind { scores, measurements };

/// Case-by-condition matrix of raw values plus metadata.
///
/// Immutable after load; row/column order is the file order and all
/// downstream tie-breaking relies on it.
struct RawDataset {
  std::vector<std::string> cases;        // case ids, file order
  std::vector<ConditionDef> conditions;  // file column order
  std::vector<double> values;            // row-major, cases x conditions
  std::vector<std::string> provenance;   // free-text source note per column
  DatasetKind kind = DatasetKind::scores;

  std::size_t n_cases() const { return cases.size(); }
  std::size_t n_conditions() const { return conditions.size(); }

  double at(std::size_t case_idx, std::size_t cond_idx) const {
    return values[case_idx * conditions.size() + cond_idx];
  }
  double& at(std::size_t case_idx, std::size_t cond_idx) {
    return values[case_idx * conditions.size() + cond_idx];
  }

  /// Index of a condition id, or nullopt.
  std::optional<std::size_t> condition_index(const std::string& id) const;
};

/// Parse the schema sidecar (JSON array of {id,label,group,material}).
std::vector<ConditionDef> load_schema(const std::string& path);

/// Load a comma-separated file with a header row; first column is the case
/// id, remaining headers must match the schema ids one to one.
/// Every cell must parse as a finite number; errors name row and column.
RawDataset load_dataset(const std::string& path, const std::vector<ConditionDef>& schema,
                        DatasetKind kind = DatasetKind::scores);

/// Serialize back to the same delimited format load_dataset reads.
void write_dataset(const RawDataset& d, std::ostream& out);
void write_dataset(const RawDataset& d, const std::string& path);

/// Invariant checks that are not hard load failures: value ranges on scored
/// columns, degenerate (constant) columns. Pure; ordering is deterministic.
Diagnostics validate_dataset(const RawDataset& d);

} // namespace fsqca
