#pragma once

#include <map>
#include <string>
#include <vector>

#include "fsqca/calibration.hpp"
#include "fsqca/minimize.hpp"

namespace fsqca {

/// Consistency/coverage bookkeeping for a whole solution.
struct SolutionMeasures {
  std::vector<double> term_consistency;
  std::vector<double> term_raw_coverage;
  std::vector<double> term_unique_coverage;
  double solution_consistency = 0.0;
  double solution_coverage = 0.0;
};

/// Cases backing one term: members of both the term and the outcome.
struct CaseSupport {
  Implicant term;
  std::vector<std::string> supporting_case_ids; // term and outcome membership > 0.5
  std::string best_case_id;                     // maximal min(term, outcome); empty if none
  bool eliminate = false;                       // no supporting case at all
};

/// Per-term and overall consistency/coverage. Solution membership is the
/// max over terms; unique coverage of T is coverage(solution) minus
/// coverage(solution without T). The fuzzy dataset's causal columns must
/// include every condition the solution refers to, in the same order the
/// solution was built on (dataset columns minus the outcome).
SolutionMeasures solution_measures(const Solution& s, const FuzzyDataset& d,
                                   const std::string& outcome_id);

/// Case-back verification of one term.
CaseSupport supporting_cases(const Implicant& term, const FuzzyDataset& d,
                             const std::string& outcome_id);

/// Both-groups predicate: a term passes when it has at least one present
/// literal from the information-architecture group and one from the
/// business-model group.
struct GroupIntegration {
  std::vector<bool> per_term;
  bool overall = false;   // all terms pass
  bool degenerate = false; // empty solution: vacuously true
};
GroupIntegration check_group_integration(const Solution& s,
                                         const std::vector<ConditionDef>& conditions);

/// Pairwise distinctness of solutions across outcomes.
struct DistinctnessReport {
  struct Pair {
    std::string outcome_a;
    std::string outcome_b;
    bool differ = false;
  };
  std::vector<Pair> pairs;
  bool any_differ = false; // at least one pair of term sets differs
};
DistinctnessReport compare_outcome_solutions(
    const std::vector<std::pair<std::string, Solution>>& per_outcome);

} // namespace fsqca
