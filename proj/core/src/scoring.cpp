#include "fsqca/scoring.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "fsqca/errors.hpp"
#include "fsqca/fuzzyset.hpp"

namespace fsqca {

int start_score(MaterialKind kind) {
  switch (kind) {
    case MaterialKind::qualitative_only: return 1;
    case MaterialKind::quantitative_only: return 3;
    case MaterialKind::both: return 5;
    case MaterialKind::boolean_flag:
      throw ConfigError("boolean indexes are scored directly (1 or 10), they have no start score");
  }
  throw ConfigError("unknown material kind");
}

ScoringStats compute_stats(std::span<const double> values) {
  if (values.size() < 2) {
    throw DataError("index statistics need at least two values, got " +
                    std::to_string(values.size()));
  }
  const double n = static_cast<double>(values.size());
  const double mean = stable_sum(values) / n;
  std::vector<double> sq(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double d = values[i] - mean;
    sq[i] = d * d;
  }
  ScoringStats stats;
  stats.mean = mean;
  stats.sd = std::sqrt(stable_sum(sq) / (n - 1.0));
  return stats;
}

int bonus_band(double value, const ScoringStats& stats) {
  if (!(stats.sd > 0.0)) {
    throw DataError("degenerate index: standard deviation is zero, assign the start score only");
  }
  // Upper thresholds inclusive upward, lower thresholds inclusive downward.
  if (value >= stats.mean + stats.sd) return 5;
  if (value >= stats.mean + 0.5 * stats.sd) return 4;
  if (value > stats.mean - 0.5 * stats.sd) return 3;
  if (value > stats.mean - stats.sd) return 2;
  return 1;
}

std::vector<double> score_quantitative_index(std::span<const double> values,
                                             MaterialKind material) {
  if (material != MaterialKind::quantitative_only && material != MaterialKind::both) {
    throw ConfigError("quantitative scoring applies to quantitative or mixed material only");
  }
  const std::set<double> distinct(values.begin(), values.end());
  if (distinct.size() < 2) {
    throw DataError("quantitative scoring needs at least two distinct values");
  }
  const ScoringStats stats = compute_stats(values);
  const int start = start_score(material);
  std::vector<double> scores(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    scores[i] = std::min(10, start + bonus_band(values[i], stats));
  }
  return scores;
}

double score_qualitative_index(const QualitativeCoding& coding, MaterialKind material) {
  if (material != MaterialKind::qualitative_only && material != MaterialKind::both) {
    throw ConfigError("qualitative scoring applies to qualitative or mixed material only");
  }
  if (coding.refined_items < 0) throw DataError("refined item count cannot be negative");
  const int clarity_mark = coding.clarity == QualitativeCoding::Clarity::distinct ? 2 : 1;
  int execution_mark = 1;
  if (coding.execution == QualitativeCoding::Execution::high) {
    // One mark per started pair of refined items, at least one.
    execution_mark = std::max(1, (coding.refined_items + 1) / 2);
  }
  return std::min(10, start_score(material) + clarity_mark + execution_mark);
}

double score_boolean_index(bool present) { return present ? 10.0 : 1.0; }

double aggregate_index(std::span<const double> sub_scores) {
  if (sub_scores.empty()) throw DataError("cannot aggregate an empty list of sub-scores");
  return stable_sum(sub_scores) / static_cast<double>(sub_scores.size());
}

} // namespace fsqca
