#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fsqca/fuzzyset.hpp"
#include "fsqca/truthtable.hpp"

namespace fsqca {

enum class SolutionKind { complex_solution, parsimonious, intermediate };

std::string to_string(SolutionKind kind);

enum class Expectation : std::uint8_t { expect_present, expect_absent, agnostic };

/// Theory-driven priors per condition; gate the easy counterfactuals of the
/// intermediate solution.
struct DirectionalExpectations {
  std::vector<Expectation> per_condition; // length k; empty means all agnostic

  bool all_agnostic() const;
  static DirectionalExpectations agnostic(unsigned k);
};

/// A minimized solution: the primary cover plus any tied alternatives.
struct Solution {
  SolutionKind kind = SolutionKind::complex_solution;
  std::vector<Implicant> terms;                 // primary cover, reported order
  std::vector<std::vector<bool>> core_flags;    // per term, per condition
  std::vector<std::vector<Implicant>> ties;     // every minimum cover, primary first
  std::string note;                             // e.g. intermediate == complex fallback

  bool has_core_flags() const { return !core_flags.empty(); }
};

/// Quine-McCluskey merging. Returns exactly the maximal implicants that
/// cover only on/dc corners and at least one on corner, sorted.
/// Requires a non-empty on-set disjoint from the dc-set and k <= 16;
/// an empty on-set raises DataError ("no positive rows").
std::vector<Implicant> prime_implicants(const std::vector<std::uint32_t>& on_set,
                                        const std::vector<std::uint32_t>& dc_set, unsigned k);

/// Every cover of minimum cardinality: essential implicants first, exact
/// branch-and-bound for the rest. Covers and their terms are sorted; the
/// first cover is the primary one.
std::vector<std::vector<Implicant>> minimal_covers(const std::vector<Implicant>& pis,
                                                   const std::vector<std::uint32_t>& on_set);

/// Minimize a truth table into one of the three solution kinds.
///   complex:       don't-care set empty
///   parsimonious:  every remainder row is a don't-care
///   intermediate:  counterfactual add-back from the parsimonious terms,
///                  bounded by the complex terms (see solve notes); with no
///                  stated expectations this falls back to the complex
///                  solution and says so in Solution::note.
/// Contradiction rows are excluded from both sets.
Solution solve(const TruthTable& t, SolutionKind kind,
               const DirectionalExpectations& expectations = {});

/// Mark each literal of the intermediate terms core when it appears in a
/// parsimonious term implied by that intermediate term; everything else is
/// peripheral. Returns the intermediate solution with core_flags filled.
Solution label_core_peripheral(const Solution& intermediate, const Solution& parsimonious);

} // namespace fsqca
