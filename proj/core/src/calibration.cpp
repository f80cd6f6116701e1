#include "fsqca/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <span>

#include "fsqca/fuzzyset.hpp"

namespace fsqca {

double calibrate(double x, const CalibrationSpec& spec) {
  if (!std::isfinite(x)) throw DataError("cannot calibrate a non-finite score");
  if (!spec.valid()) {
    throw DataError("calibration anchors must satisfy full_in > crossover > full_out");
  }
  const double scale =
      x >= spec.crossover ? spec.full_in - spec.crossover : spec.crossover - spec.full_out;
  const double log_odds = 3.0 * (x - spec.crossover) / scale;
  return 1.0 / (1.0 + std::exp(-log_odds));
}

namespace {

// Percentile by linear interpolation between closest ranks over the sorted
// sample (the convention is pinned here because the anchors it produces are
// echoed into reports).
double percentile(const std::vector<double>& sorted, double q) {
  const double h = q * static_cast<double>(sorted.size() - 1);
  const std::size_t lo = static_cast<std::size_t>(h);
  if (lo + 1 >= sorted.size()) return sorted.back();
  const double frac = h - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

} // namespace

CalibrationSpec default_spec(std::span<const double> column_values) {
  if (column_values.empty()) throw DataError("cannot derive calibration anchors from no values");
  std::vector<double> sorted(column_values.begin(), column_values.end());
  std::sort(sorted.begin(), sorted.end());
  CalibrationSpec spec;
  spec.full_in = percentile(sorted, 0.95);
  spec.crossover = percentile(sorted, 0.50);
  spec.full_out = percentile(sorted, 0.05);
  return spec;
}

std::optional<std::size_t> FuzzyDataset::condition_index(const std::string& id) const {
  for (std::size_t i = 0; i < conditions.size(); ++i) {
    if (conditions[i].id == id) return i;
  }
  return std::nullopt;
}

std::vector<double> FuzzyDataset::column(const std::string& id) const {
  const auto idx = condition_index(id);
  if (!idx) throw ConfigError("unknown condition id \"" + id + "\"");
  std::vector<double> out(n_cases());
  for (std::size_t i = 0; i < n_cases(); ++i) out[i] = at(i, *idx);
  return out;
}

CalibrationResult calibrate_dataset(const RawDataset& d,
                                    const std::map<std::string, CalibrationSpec>& specs,
                                    bool nudge_half) {
  CalibrationResult result;
  result.data.cases = d.cases;
  result.data.conditions = d.conditions;
  result.data.values.assign(d.values.size(), 0.0);

  if (d.cases.empty()) {
    // Nothing to calibrate; echo only the anchors that were given.
    for (const auto& c : d.conditions) {
      if (auto it = specs.find(c.id); it != specs.end()) {
        result.specs[c.id] = UsedSpec{it->second, false};
      }
    }
    return result;
  }

  for (std::size_t j = 0; j < d.n_conditions(); ++j) {
    const std::string& id = d.conditions[j].id;
    UsedSpec used;
    if (auto it = specs.find(id); it != specs.end()) {
      used = UsedSpec{it->second, false};
    } else {
      std::vector<double> column(d.n_cases());
      for (std::size_t i = 0; i < d.n_cases(); ++i) column[i] = d.at(i, j);
      used = UsedSpec{default_spec(column), true};
      char buf[160];
      std::snprintf(buf, sizeof buf,
                    "no anchors given; defaulted to (p95 %.6g, median %.6g, p5 %.6g)",
                    used.spec.full_in, used.spec.crossover, used.spec.full_out);
      result.diagnostics.push_back({Severity::warning, "column " + id, buf});
    }
    if (!used.spec.valid()) {
      throw DataError("column " + id +
                      ": calibration anchors must satisfy full_in > crossover > full_out" +
                      (used.defaulted ? " (defaulted anchors are degenerate; the column may be "
                                        "nearly constant — supply explicit anchors)"
                                      : ""));
    }
    result.specs[id] = used;

    for (std::size_t i = 0; i < d.n_cases(); ++i) {
      double m = calibrate(d.at(i, j), used.spec);
      if (m == 0.5) {
        if (!nudge_half) {
          throw DataError("case " + d.cases[i] + ", column " + id +
                          ": membership is exactly 0.5 and cannot be assigned to a truth-table "
                          "row; adjust the anchors or opt into the 0.5 nudge");
        }
        m = 0.5 - 1e-6;
        result.diagnostics.push_back({Severity::warning, "case " + d.cases[i] + ", column " + id,
                                      "membership of exactly 0.5 nudged to 0.499999"});
      }
      result.data.at(i, j) = m;
    }
  }
  return result;
}

FuzzyDataset project(const FuzzyDataset& d, const std::vector<std::string>& condition_ids,
                     const std::string& outcome_id) {
  FuzzyDataset out;
  out.cases = d.cases;
  std::vector<std::size_t> picks;
  picks.reserve(condition_ids.size() + 1);
  for (const auto& id : condition_ids) {
    const auto idx = d.condition_index(id);
    if (!idx) throw ConfigError("unknown condition id \"" + id + "\"");
    if (id == outcome_id) {
      throw ConfigError("condition \"" + id + "\" cannot be both causal and the outcome");
    }
    picks.push_back(*idx);
  }
  const auto out_idx = d.condition_index(outcome_id);
  if (!out_idx) throw ConfigError("unknown outcome id \"" + outcome_id + "\"");
  picks.push_back(*out_idx);

  for (std::size_t p : picks) out.conditions.push_back(d.conditions[p]);
  out.values.reserve(d.n_cases() * picks.size());
  for (std::size_t i = 0; i < d.n_cases(); ++i) {
    for (std::size_t p : picks) out.values.push_back(d.at(i, p));
  }
  return out;
}

} // namespace fsqca
