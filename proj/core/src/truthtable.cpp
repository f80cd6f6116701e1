#include "fsqca/truthtable.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>

#include "fsqca/errors.hpp"

namespace fsqca {

std::string to_string(OutcomeCode code) {
  switch (code) {
    case OutcomeCode::positive: return "positive";
    case OutcomeCode::negative: return "negative";
    case OutcomeCode::contradiction: return "contradiction";
    case OutcomeCode::remainder: return "remainder";
  }
  return "remainder";
}

CornerAssignment assign_corner(std::span<const double> case_memberships) {
  const std::size_t k = case_memberships.size();
  if (k == 0 || k > kMaxConditions) {
    throw ConfigError("corner assignment needs between 1 and " +
                      std::to_string(kMaxConditions) + " conditions");
  }
  std::uint32_t corner = 0;
  double membership = 1.0;
  for (std::size_t j = 0; j < k; ++j) {
    const double m = case_memberships[j];
    if (m == 0.5) {
      throw DataError("membership of condition " + std::to_string(j + 1) +
                      " is exactly 0.5; the case belongs to no corner");
    }
    const double side = m > 0.5 ? m : 1.0 - m;
    membership = std::min(membership, side);
    if (m > 0.5) corner |= 1u << (k - 1 - j);
  }
  return CornerAssignment{corner, membership};
}

namespace {

struct Members {
  std::vector<std::size_t> case_idx;
  bool any_high = false; // some member has outcome membership > 0.5
  bool any_low = false;  // some member has outcome membership <= 0.5
};

} // namespace

TruthTable build_truth_table(const FuzzyDataset& d, const std::string& outcome_id,
                             std::uint32_t freq_threshold, double cons_threshold) {
  const auto out_idx = d.condition_index(outcome_id);
  if (!out_idx) throw ConfigError("unknown outcome id \"" + outcome_id + "\"");
  if (d.n_cases() == 0) throw DataError("cannot build a truth table from an empty dataset");
  if (freq_threshold < 1) throw ConfigError("frequency threshold must be at least 1");
  if (!(cons_threshold > 0.0 && cons_threshold <= 1.0)) {
    throw ConfigError("consistency threshold must lie in (0, 1]");
  }

  TruthTable t;
  t.outcome_id = outcome_id;
  t.freq_threshold = freq_threshold;
  t.cons_threshold = cons_threshold;
  std::vector<std::size_t> causal;
  for (std::size_t j = 0; j < d.n_conditions(); ++j) {
    if (j != *out_idx) {
      causal.push_back(j);
      t.condition_ids.push_back(d.conditions[j].id);
    }
  }
  if (causal.empty()) throw ConfigError("no causal conditions besides the outcome");
  if (causal.size() > kMaxConditions) {
    throw ConfigError("too many causal conditions (" + std::to_string(causal.size()) +
                      "); the truth table is capped at " + std::to_string(kMaxConditions));
  }
  t.k = static_cast<unsigned>(causal.size());

  const std::size_t n = d.n_cases();
  std::vector<double> causal_matrix(n * t.k);
  std::vector<double> outcome(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < causal.size(); ++j) {
      causal_matrix[i * t.k + j] = d.at(i, causal[j]);
    }
    outcome[i] = d.at(i, *out_idx);
  }

  const std::size_t n_rows = std::size_t{1} << t.k;
  std::vector<Members> members(n_rows);
  t.case_corners.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    CornerAssignment a;
    try {
      a = assign_corner(std::span<const double>(causal_matrix).subspan(i * t.k, t.k));
    } catch (const DataError& e) {
      throw DataError("case " + d.cases[i] + ": " + e.what());
    }
    t.case_corners[i] = a.corner;
    members[a.corner].case_idx.push_back(i);
    if (outcome[i] > 0.5) {
      members[a.corner].any_high = true;
    } else {
      members[a.corner].any_low = true;
    }
  }

  t.rows.resize(n_rows);
  for (std::uint32_t corner = 0; corner < n_rows; ++corner) {
    TruthTableRow& row = t.rows[corner];
    row.corner = corner;
    row.n_cases = static_cast<std::uint32_t>(members[corner].case_idx.size());

    const MembershipVector corner_vec =
        term_membership_vector(causal_matrix, n, t.k, Implicant::corner(t.k, corner));
    const double denom = stable_sum(corner_vec);
    row.row_consistency = denom > 0.0 ? consistency(corner_vec, outcome) : 0.0;

    if (row.n_cases < freq_threshold) {
      row.outcome_code = OutcomeCode::remainder;
    } else if (members[corner].any_high && members[corner].any_low) {
      row.outcome_code = OutcomeCode::contradiction;
    } else if (row.row_consistency >= cons_threshold) {
      row.outcome_code = OutcomeCode::positive;
    } else {
      row.outcome_code = OutcomeCode::negative;
    }
  }
  return t;
}

std::vector<Contradiction> detect_contradictions(const TruthTable& t, const FuzzyDataset& d,
                                                 const std::string& outcome_id) {
  if (d.n_cases() != t.case_corners.size()) {
    throw ConfigError("truth table was built from a different dataset (case counts differ)");
  }
  const auto out_idx = d.condition_index(outcome_id);
  if (!out_idx) throw ConfigError("unknown outcome id \"" + outcome_id + "\"");

  std::vector<Contradiction> found;
  for (const TruthTableRow& row : t.rows) {
    if (row.outcome_code != OutcomeCode::contradiction) continue;
    Contradiction c;
    c.corner = row.corner;
    for (std::size_t i = 0; i < d.n_cases(); ++i) {
      if (t.case_corners[i] == row.corner) c.case_ids.push_back(d.cases[i]);
    }
    found.push_back(std::move(c));
  }
  return found;
}

void write_truth_table(const TruthTable& t, std::ostream& out) {
  out << "# frequency_threshold=" << t.freq_threshold;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", t.cons_threshold);
  out << " consistency_threshold=" << buf << " outcome=" << t.outcome_id << '\n';
  for (const auto& id : t.condition_ids) out << id << ',';
  out << "n_cases,consistency,code\n";
  for (const TruthTableRow& row : t.rows) {
    const Implicant corner = Implicant::corner(t.k, row.corner);
    const std::string pattern = corner.pattern();
    for (unsigned j = 0; j < t.k; ++j) out << pattern[j] << ',';
    std::snprintf(buf, sizeof buf, "%.6f", row.row_consistency);
    out << row.n_cases << ',' << buf << ',' << to_string(row.outcome_code) << '\n';
  }
}

} // namespace fsqca
