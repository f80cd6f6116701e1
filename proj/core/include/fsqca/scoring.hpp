#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace fsqca {

/// Population statistics of a single index over its reported values.
struct ScoringStats {
  double mean = 0.0; // the "standard value" of the index
  double sd = 0.0;   // sample standard deviation, >= 0
};

/// Which kinds of source material back an index; fixes the start score.
enum class MaterialKind { qualitative_only, quantitative_only, both, boolean_flag };

/// Start score: 1 for qualitative-only, 3 for quantitative-only, 5 for both.
int start_score(MaterialKind kind);

/// Coded qualitative material for one case on one index.
struct QualitativeCoding {
  enum class Clarity { fuzzy, distinct };
  enum class Execution { low, high };

  Clarity clarity = Clarity::fuzzy;
  Execution execution = Execution::low;
  int refined_items = 0; // only meaningful when execution == high
};

/// Mean and sample (n-1) standard deviation over the given values.
/// Requires at least two values.
ScoringStats compute_stats(std::span<const double> values);

/// Deviation-band bonus in {1..5}.
///
/// Bands relative to (mean, sd), upper thresholds inclusive upward and
/// lower thresholds inclusive downward:
///   value >= mean+sd            -> 5
///   mean+sd   > value >= mean+0.5*sd -> 4
///   mean+0.5*sd > value > mean-0.5*sd -> 3
///   mean-0.5*sd >= value > mean-sd    -> 2
///   value <= mean-sd            -> 1
/// Throws DataError when sd == 0 (degenerate index: assign the start score only).
int bonus_band(double value, const ScoringStats& stats);

/// Score a whole quantitative index: start score plus deviation bonus,
/// capped at 10. Statistics come from the input values themselves.
/// Requires material in {quantitative_only, both} and >= 2 distinct values.
std::vector<double> score_quantitative_index(std::span<const double> values, MaterialKind material);

/// Score one case of a qualitative index: start + clarity mark (+1 fuzzy,
/// +2 distinct) + execution mark (+1 low; high: one mark per started pair
/// of refined items, minimum 1), capped at 10.
double score_qualitative_index(const QualitativeCoding& coding, MaterialKind material);

/// "none" -> 1, "yes" -> 10.
double score_boolean_index(bool present);

/// Equal-weight mean of secondary index scores. Requires a non-empty list.
double aggregate_index(std::span<const double> sub_scores);

} // namespace fsqca
