#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "fsqca/calibration.hpp"
#include "fsqca/fuzzyset.hpp"

namespace fsqca {

/// Hard cap on causal conditions; a table has 2^k rows.
inline constexpr unsigned kMaxConditions = 16;

enum class OutcomeCode : std::uint8_t { positive, negative, contradiction, remainder };

std::string to_string(OutcomeCode code);

struct TruthTableRow {
  std::uint32_t corner = 0;      // k-bit configuration, condition 0 at the high bit
  std::uint32_t n_cases = 0;     // cases with row membership > 0.5
  double row_consistency = 0.0;  // consistency(corner membership vector, outcome)
  OutcomeCode outcome_code = OutcomeCode::remainder;
};

struct TruthTable {
  unsigned k = 0;
  std::vector<std::string> condition_ids; // causal conditions, column order
  std::string outcome_id;
  std::vector<TruthTableRow> rows;        // all 2^k rows, ascending corner
  std::uint32_t freq_threshold = 1;
  double cons_threshold = 0.8;
  std::vector<std::uint32_t> case_corners; // corner of each case, dataset order

  const TruthTableRow& row(std::uint32_t corner) const { return rows[corner]; }
};

/// Corner of one case plus its membership in that corner.
/// Errors when any membership is exactly 0.5, naming the condition index.
struct CornerAssignment {
  std::uint32_t corner;
  double membership; // > 0.5 by construction
};
CornerAssignment assign_corner(std::span<const double> case_memberships);

/// Sort every case into its corner, compute row consistencies over all
/// cases, and code each row:
///   n_cases < freq_threshold                  -> remainder
///   member cases disagree on the outcome      -> contradiction
///   row_consistency >= cons_threshold         -> positive
///   otherwise                                 -> negative
/// The fuzzy dataset must contain the outcome column; causal conditions are
/// all other columns, in dataset order.
TruthTable build_truth_table(const FuzzyDataset& d, const std::string& outcome_id,
                             std::uint32_t freq_threshold = 1, double cons_threshold = 0.8);

/// Rows whose member cases disagree on the outcome (> 0.5 vs <= 0.5),
/// with the member case ids. Only observed rows (n_cases >= freq
/// threshold) qualify; sparser rows are remainders by definition.
struct Contradiction {
  std::uint32_t corner;
  std::vector<std::string> case_ids;
};
std::vector<Contradiction> detect_contradictions(const TruthTable& t, const FuzzyDataset& d,
                                                 const std::string& outcome_id);

/// Tabular export: one line per corner with per-condition bits, case count,
/// consistency, and coding.
void write_truth_table(const TruthTable& t, std::ostream& out);

} // namespace fsqca
