#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fsqca/calibration.hpp"
#include "fsqca/dataset.hpp"
#include "fsqca/fuzzyset.hpp"

namespace fsqca {

/// Recipe-driven generator spec. The planted recipe is a DNF over the k
/// conditions; the outcome membership of each case is the max over terms
/// of the min over term literals, flipped about 0.5 with probability
/// `noise`.
struct SynthSpec {
  int k = 6;
  int n_cases = 69;
  std::uint64_t seed = 1;
  std::vector<Implicant> recipe; // planted terms, each over k conditions
  double noise = 0.0;            // outcome flip probability in [0, 1)
};

/// What the generator planted, kept so tests can check recovery.
struct GroundTruth {
  std::vector<Implicant> recipe;
  // Anchors for the raw scores. Symmetric around the scale midpoint, so
  // calibration commutes with min/max/negation and the planted structure
  // survives the full pipeline; memberships are pushed poleward, not
  // reproduced value-for-value.
  CalibrationSpec spec;
};

struct SynthResult {
  RawDataset raw;     // measurement-scale values, conditions C1..Ck + OUT
  FuzzyDataset fuzzy; // the memberships the raw values calibrate to
  GroundTruth truth;
};

/// Deterministic: the same spec always yields byte-identical datasets.
SynthResult generate_synthetic(const SynthSpec& spec);

/// Independent minimizer oracle for small tables (k <= 4). Enumerates all
/// 3^k candidate terms, keeps the ones that avoid every off-set corner and
/// that no single-literal generalization also avoids it, then searches
/// subsets in increasing size for every cover of the on-set of minimum
/// term count. Shares no code with the merge-based minimizer.
std::vector<std::vector<Implicant>> brute_force_minimal_dnf(
    const std::vector<std::uint32_t>& on_set,
    const std::vector<std::uint32_t>& dc_set, int k);

/// Bundled demo inputs: an index-score dataset with planted structure in
/// both condition groups plus ready-to-run configs.
struct DemoFiles {
  std::string schema_json;
  std::string scores_csv;
  std::string config_json;    // development outcome analysis
  std::string config_bm_json; // per-business-model analyses
};

DemoFiles make_demo(std::uint64_t seed);

} // namespace fsqca
