#include "fsqca/analysis.hpp"

#include <algorithm>

namespace fsqca {

namespace {

struct Projection {
  std::vector<double> causal; // row-major, cases x k
  std::vector<double> outcome;
  std::size_t n = 0;
  std::size_t k = 0;
};

// Causal columns are the dataset columns minus the outcome, in order — the
// same convention the truth table uses, so implicant positions line up.
Projection split_columns(const FuzzyDataset& d, const std::string& outcome_id) {
  const auto out_idx = d.condition_index(outcome_id);
  if (!out_idx) throw ConfigError("unknown outcome id \"" + outcome_id + "\"");
  Projection p;
  p.n = d.n_cases();
  p.k = d.n_conditions() - 1;
  p.causal.reserve(p.n * p.k);
  p.outcome.reserve(p.n);
  for (std::size_t i = 0; i < p.n; ++i) {
    for (std::size_t j = 0; j < d.n_conditions(); ++j) {
      if (j == *out_idx) continue;
      p.causal.push_back(d.at(i, j));
    }
    p.outcome.push_back(d.at(i, *out_idx));
  }
  return p;
}

MembershipVector max_of(const std::vector<MembershipVector>& vectors, std::size_t n,
                        const std::vector<bool>& skip) {
  MembershipVector out(n, 0.0);
  for (std::size_t t = 0; t < vectors.size(); ++t) {
    if (skip[t]) continue;
    for (std::size_t i = 0; i < n; ++i) out[i] = std::max(out[i], vectors[t][i]);
  }
  return out;
}

} // namespace

SolutionMeasures solution_measures(const Solution& s, const FuzzyDataset& d,
                                   const std::string& outcome_id) {
  const Projection p = split_columns(d, outcome_id);
  SolutionMeasures m;
  if (s.terms.empty()) return m;
  if (s.terms.front().k() != p.k) {
    throw ConfigError("solution spans " + std::to_string(s.terms.front().k()) +
                      " conditions but the dataset has " + std::to_string(p.k) +
                      " causal columns");
  }

  std::vector<MembershipVector> term_vecs;
  term_vecs.reserve(s.terms.size());
  for (const Implicant& term : s.terms) {
    term_vecs.push_back(term_membership_vector(p.causal, p.n, p.k, term));
  }

  const std::vector<bool> keep_all(s.terms.size(), false);
  const MembershipVector solution_vec = max_of(term_vecs, p.n, keep_all);
  m.solution_consistency = consistency(solution_vec, p.outcome);
  m.solution_coverage = coverage(solution_vec, p.outcome);

  for (std::size_t t = 0; t < s.terms.size(); ++t) {
    m.term_consistency.push_back(consistency(term_vecs[t], p.outcome));
    m.term_raw_coverage.push_back(coverage(term_vecs[t], p.outcome));
    std::vector<bool> skip(s.terms.size(), false);
    skip[t] = true;
    const MembershipVector without = max_of(term_vecs, p.n, skip);
    const double reduced = stable_sum(without) > 0.0 ? coverage(without, p.outcome) : 0.0;
    m.term_unique_coverage.push_back(m.solution_coverage - reduced);
  }
  return m;
}

CaseSupport supporting_cases(const Implicant& term, const FuzzyDataset& d,
                             const std::string& outcome_id) {
  const Projection p = split_columns(d, outcome_id);
  if (term.k() != p.k) {
    throw ConfigError("term spans " + std::to_string(term.k()) +
                      " conditions but the dataset has " + std::to_string(p.k) +
                      " causal columns");
  }
  const MembershipVector tm = term_membership_vector(p.causal, p.n, p.k, term);

  CaseSupport support;
  support.term = term;
  double best = -1.0;
  for (std::size_t i = 0; i < p.n; ++i) {
    if (tm[i] > 0.5 && p.outcome[i] > 0.5) {
      support.supporting_case_ids.push_back(d.cases[i]);
      const double joint = std::min(tm[i], p.outcome[i]);
      if (joint > best) {
        best = joint;
        support.best_case_id = d.cases[i];
      }
    }
  }
  support.eliminate = support.supporting_case_ids.empty();
  return support;
}

GroupIntegration check_group_integration(const Solution& s,
                                         const std::vector<ConditionDef>& conditions) {
  GroupIntegration verdict;
  if (s.terms.empty()) {
    verdict.overall = true;
    verdict.degenerate = true;
    return verdict;
  }
  if (conditions.size() != s.terms.front().k()) {
    throw ConfigError("group check got " + std::to_string(conditions.size()) +
                      " condition definitions for terms over " +
                      std::to_string(s.terms.front().k()) + " conditions");
  }
  verdict.overall = true;
  for (const Implicant& term : s.terms) {
    bool has_ia = false;
    bool has_bm = false;
    for (unsigned j = 0; j < term.k(); ++j) {
      if (term.state(j) != Tri::present) continue;
      if (conditions[j].group == ConditionGroup::information_architecture) has_ia = true;
      if (conditions[j].group == ConditionGroup::business_model) has_bm = true;
    }
    const bool ok = has_ia && has_bm;
    verdict.per_term.push_back(ok);
    verdict.overall = verdict.overall && ok;
  }
  return verdict;
}

DistinctnessReport compare_outcome_solutions(
    const std::vector<std::pair<std::string, Solution>>& per_outcome) {
  if (per_outcome.size() < 2) {
    throw ConfigError("distinctness needs at least two outcomes, got " +
                      std::to_string(per_outcome.size()));
  }
  DistinctnessReport report;
  for (std::size_t a = 0; a < per_outcome.size(); ++a) {
    for (std::size_t b = a + 1; b < per_outcome.size(); ++b) {
      std::vector<Implicant> ta = per_outcome[a].second.terms;
      std::vector<Implicant> tb = per_outcome[b].second.terms;
      std::sort(ta.begin(), ta.end());
      std::sort(tb.begin(), tb.end());
      DistinctnessReport::Pair pair;
      pair.outcome_a = per_outcome[a].first;
      pair.outcome_b = per_outcome[b].first;
      pair.differ = ta != tb;
      report.any_differ = report.any_differ || pair.differ;
      report.pairs.push_back(std::move(pair));
    }
  }
  return report;
}

} // namespace fsqca
