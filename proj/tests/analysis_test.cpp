#include <doctest.h>

#include <string>
#include <vector>

#include "fsqca/analysis.hpp"
#include "fsqca/errors.hpp"

using namespace fsqca;

namespace {

// Two causal conditions A, B plus outcome Y; term "1-" has membership m(A),
// "-1" has m(B), so the measures can be set up directly.
FuzzyDataset two_by_two(std::vector<double> values) {
  FuzzyDataset d;
  for (const char* id : {"A", "B", "Y"}) {
    ConditionDef def;
    def.id = id;
    def.label = id;
    d.conditions.push_back(def);
  }
  const std::size_t rows = values.size() / 3;
  for (std::size_t i = 0; i < rows; ++i) d.cases.push_back("case" + std::to_string(i + 1));
  d.values = std::move(values);
  return d;
}

Solution of_patterns(const std::vector<std::string>& patterns) {
  Solution s;
  for (const auto& p : patterns) s.terms.push_back(Implicant::from_pattern(p));
  s.ties = {s.terms};
  return s;
}

} // namespace

TEST_CASE("measures on the worked two-term fixture") {
  // T1 memberships (0.8, 0.1), T2 (0.1, 0.6), outcome (0.9, 0.7).
  const FuzzyDataset d = two_by_two({0.8, 0.1, 0.9, //
                                     0.1, 0.6, 0.7});
  const Solution s = of_patterns({"1-", "-1"});
  const SolutionMeasures m = solution_measures(s, d, "Y");

  // Solution membership (max) = (0.8, 0.6); coverage = 1.4/1.6.
  CHECK(m.solution_coverage == doctest::Approx(0.875).epsilon(1e-12));
  CHECK(m.solution_consistency == doctest::Approx(1.0).epsilon(1e-12));

  REQUIRE(m.term_raw_coverage.size() == 2);
  CHECK(m.term_raw_coverage[0] == doctest::Approx(0.9 / 1.6).epsilon(1e-12));
  CHECK(m.term_raw_coverage[1] == doctest::Approx(0.7 / 1.6).epsilon(1e-12));
  CHECK(m.term_consistency[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(m.term_consistency[1] == doctest::Approx(1.0).epsilon(1e-12));

  // unique(T) = coverage(solution) - coverage(solution without T); dropping
  // T1 leaves T2's full vector (0.1, 0.6), so unique(T1) = 0.875 - 0.7/1.6.
  CHECK(m.term_unique_coverage[0] == doctest::Approx(0.4375).epsilon(1e-12));
  CHECK(m.term_unique_coverage[1] == doctest::Approx(0.3125).epsilon(1e-12));

  // Accounting identity of this fixture: uniques sum under the solution
  // coverage and never exceed their raw counterparts.
  CHECK(m.term_unique_coverage[0] + m.term_unique_coverage[1] <= m.solution_coverage + 1e-12);
  CHECK(m.term_unique_coverage[0] <= m.term_raw_coverage[0] + 1e-12);
  CHECK(m.term_unique_coverage[1] <= m.term_raw_coverage[1] + 1e-12);
}

TEST_CASE("a single-term solution has unique equal to raw coverage") {
  const FuzzyDataset d = two_by_two({0.8, 0.1, 0.9, //
                                     0.1, 0.6, 0.7});
  const Solution s = of_patterns({"1-"});
  const SolutionMeasures m = solution_measures(s, d, "Y");
  CHECK(m.term_unique_coverage[0] == doctest::Approx(m.term_raw_coverage[0]).epsilon(1e-12));
  CHECK(m.solution_coverage == doctest::Approx(m.term_raw_coverage[0]).epsilon(1e-12));
}

TEST_CASE("duplicated terms have zero unique coverage") {
  const FuzzyDataset d = two_by_two({0.8, 0.1, 0.9, //
                                     0.1, 0.6, 0.7});
  const Solution s = of_patterns({"1-", "1-"});
  const SolutionMeasures m = solution_measures(s, d, "Y");
  CHECK(m.term_unique_coverage[0] == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(m.term_unique_coverage[1] == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("measures are invariant under term reordering") {
  const FuzzyDataset d = two_by_two({0.8, 0.3, 0.9, //
                                     0.2, 0.7, 0.6, //
                                     0.6, 0.6, 0.8});
  const SolutionMeasures fwd = solution_measures(of_patterns({"1-", "-1"}), d, "Y");
  const SolutionMeasures rev = solution_measures(of_patterns({"-1", "1-"}), d, "Y");
  CHECK(fwd.solution_consistency == rev.solution_consistency);
  CHECK(fwd.solution_coverage == rev.solution_coverage);
  CHECK(fwd.term_raw_coverage[0] == rev.term_raw_coverage[1]);
  CHECK(fwd.term_unique_coverage[0] == rev.term_unique_coverage[1]);
}

TEST_CASE("an empty solution has empty measures") {
  const FuzzyDataset d = two_by_two({0.8, 0.1, 0.9});
  const SolutionMeasures m = solution_measures(Solution{}, d, "Y");
  CHECK(m.term_consistency.empty());
  CHECK(m.solution_coverage == 0.0);
}

TEST_CASE("measure failures: unknown outcome, width mismatch, dead outcome") {
  const FuzzyDataset d = two_by_two({0.8, 0.1, 0.9});
  CHECK_THROWS_AS(solution_measures(of_patterns({"1-"}), d, "NOPE"), ConfigError);
  CHECK_THROWS_AS(solution_measures(of_patterns({"1--"}), d, "Y"), ConfigError);
  const FuzzyDataset dead = two_by_two({0.8, 0.1, 0.0});
  CHECK_THROWS_AS(solution_measures(of_patterns({"1-"}), dead, "Y"), DataError);
}

TEST_CASE("supporting cases need membership in term and outcome") {
  const FuzzyDataset d = two_by_two({
      0.7, 0.2, 0.8, // member of "1-" and of the outcome
      0.7, 0.3, 0.3, // member of the term only
      0.3, 0.9, 0.9, // member of the outcome only
      0.9, 0.1, 0.95 // the best case: joint membership 0.9
  });
  const CaseSupport support = supporting_cases(Implicant::from_pattern("1-"), d, "Y");
  CHECK(support.supporting_case_ids == std::vector<std::string>{"case1", "case4"});
  CHECK(support.best_case_id == "case4");
  CHECK_FALSE(support.eliminate);
}

TEST_CASE("a term with no supporting case is flagged for elimination") {
  const FuzzyDataset d = two_by_two({0.3, 0.2, 0.8, //
                                     0.7, 0.3, 0.3});
  const CaseSupport support = supporting_cases(Implicant::from_pattern("1-"), d, "Y");
  CHECK(support.supporting_case_ids.empty());
  CHECK(support.best_case_id.empty());
  CHECK(support.eliminate);
}

namespace {

std::vector<ConditionDef> grouped_conditions() {
  std::vector<ConditionDef> defs(4);
  defs[0].id = "IA1";
  defs[0].group = ConditionGroup::information_architecture;
  defs[1].id = "IA2";
  defs[1].group = ConditionGroup::information_architecture;
  defs[2].id = "BM1";
  defs[2].group = ConditionGroup::business_model;
  defs[3].id = "BM2";
  defs[3].group = ConditionGroup::business_model;
  return defs;
}

} // namespace

TEST_CASE("group integration needs a present literal from both groups") {
  const auto defs = grouped_conditions();

  const GroupIntegration both = check_group_integration(of_patterns({"1-1-"}), defs);
  CHECK(both.per_term == std::vector<bool>{true});
  CHECK(both.overall);
  CHECK_FALSE(both.degenerate);

  // Only IA literals: fails. An absent BM literal does not count.
  const GroupIntegration ia_only = check_group_integration(of_patterns({"11--"}), defs);
  CHECK_FALSE(ia_only.per_term[0]);
  CHECK_FALSE(ia_only.overall);
  const GroupIntegration absent_bm = check_group_integration(of_patterns({"1-0-"}), defs);
  CHECK_FALSE(absent_bm.per_term[0]);

  // One failing term sinks the overall verdict.
  const GroupIntegration mixed = check_group_integration(of_patterns({"1-1-", "-1--"}), defs);
  CHECK(mixed.per_term == std::vector<bool>{true, false});
  CHECK_FALSE(mixed.overall);
}

TEST_CASE("an empty solution is vacuously integrated but flagged degenerate") {
  const GroupIntegration verdict = check_group_integration(Solution{}, grouped_conditions());
  CHECK(verdict.overall);
  CHECK(verdict.degenerate);
  CHECK(verdict.per_term.empty());
}

TEST_CASE("group integration rejects a mismatched condition list") {
  CHECK_THROWS_AS(check_group_integration(of_patterns({"1-"}), grouped_conditions()),
                  ConfigError);
}

TEST_CASE("distinctness compares term sets pairwise") {
  std::vector<std::pair<std::string, Solution>> per_outcome{
      {"PUB", of_patterns({"1-"})},
      {"FAC", of_patterns({"-1"})},
      {"EDU", of_patterns({"1-"})},
  };
  const DistinctnessReport report = compare_outcome_solutions(per_outcome);
  REQUIRE(report.pairs.size() == 3);
  CHECK(report.pairs[0].outcome_a == "PUB");
  CHECK(report.pairs[0].outcome_b == "FAC");
  CHECK(report.pairs[0].differ);
  CHECK_FALSE(report.pairs[1].differ); // PUB vs EDU identical
  CHECK(report.pairs[2].differ);
  CHECK(report.any_differ);
}

TEST_CASE("identical solutions across outcomes report no difference") {
  std::vector<std::pair<std::string, Solution>> per_outcome{
      {"PUB", of_patterns({"1-"})},
      {"FAC", of_patterns({"1-"})},
  };
  const DistinctnessReport report = compare_outcome_solutions(per_outcome);
  CHECK_FALSE(report.pairs[0].differ);
  CHECK_FALSE(report.any_differ);
}

TEST_CASE("term order does not affect distinctness") {
  std::vector<std::pair<std::string, Solution>> per_outcome{
      {"PUB", of_patterns({"1-", "-1"})},
      {"FAC", of_patterns({"-1", "1-"})},
  };
  CHECK_FALSE(compare_outcome_solutions(per_outcome).any_differ);
}

TEST_CASE("distinctness requires at least two outcomes") {
  std::vector<std::pair<std::string, Solution>> per_outcome{{"PUB", of_patterns({"1-"})}};
  CHECK_THROWS_AS(compare_outcome_solutions(per_outcome), ConfigError);
}
