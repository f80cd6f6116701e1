#include "fsqca/synth.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <random>
#include <set>
#include <sstream>

#include <json.hpp>

#include "fsqca/errors.hpp"

namespace fsqca {

namespace {

// 53-bit uniform draw in [0,1); spelled out so the value stream is part of
// the contract rather than an artifact of a library distribution.
double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Membership drawn uniformly on either side of the crossover, with a wide
// guard band around 0.5: a fair coin picks the side, then the value is
// uniform in [0.75, 0.95] (in) or [0.05, 0.25] (out). Every case lands
// cleanly on one side of every condition, and set-membership stays crisp
// enough that corner consistencies separate sufficient configurations from
// insufficient ones instead of saturating.
double draw_membership(std::mt19937_64& rng) {
  const bool in = uniform01(rng) < 0.5;
  const double u = 0.05 + 0.20 * uniform01(rng);
  return in ? 0.70 + u : u;
}

double recipe_membership(std::span<const double> case_memberships,
                         const std::vector<Implicant>& recipe) {
  double y = 0.0;
  for (const Implicant& term : recipe) {
    y = std::max(y, term_membership(case_memberships, term));
  }
  return y;
}

} // namespace

SynthResult generate_synthetic(const SynthSpec& spec) {
  if (spec.k < 1 || spec.k > 16) throw ConfigError("synthetic k must be in [1, 16]");
  if (spec.n_cases < 1) throw DataError("synthetic datasets need at least one case");
  if (spec.recipe.empty()) throw ConfigError("a synthetic dataset needs a planted recipe");
  if (!(spec.noise >= 0.0 && spec.noise < 1.0)) {
    throw ConfigError("noise must be a flip probability in [0, 1)");
  }
  for (const Implicant& term : spec.recipe) {
    if (term.k() != static_cast<unsigned>(spec.k)) {
      throw ConfigError("planted term " + term.pattern() + " does not span k conditions");
    }
  }

  std::mt19937_64 rng(spec.seed);
  const std::size_t n = static_cast<std::size_t>(spec.n_cases);
  const std::size_t k = static_cast<std::size_t>(spec.k);

  SynthResult result;
  result.truth.recipe = spec.recipe;
  // Anchors symmetric around the scale midpoint: rescaling to [0,10] and
  // calibrating back commutes with min/max/negation, so the planted
  // structure survives the full pipeline exactly. Placing them at the inner
  // edges of the two draw bands (raw 7.5 and 2.5) pushes calibrated
  // memberships toward the poles, so corner consistencies separate
  // sufficient configurations from insufficient ones instead of saturating.
  result.truth.spec = CalibrationSpec{7.5, 5.0, 2.5};

  for (std::size_t j = 0; j < k; ++j) {
    ConditionDef def;
    def.id = "C" + std::to_string(j + 1);
    def.label = def.id;
    def.group = ConditionGroup::other;
    def.material = Material::quantitative;
    result.fuzzy.conditions.push_back(def);
  }
  ConditionDef out_def;
  out_def.id = "OUT";
  out_def.label = "Outcome";
  out_def.group = ConditionGroup::outcome;
  out_def.material = Material::quantitative;
  result.fuzzy.conditions.push_back(out_def);

  char buf[16];
  for (std::size_t i = 0; i < n; ++i) {
    std::snprintf(buf, sizeof buf, "case%03zu", i + 1);
    result.fuzzy.cases.emplace_back(buf);
    std::vector<double> row(k);
    for (std::size_t j = 0; j < k; ++j) row[j] = draw_membership(rng);
    double y = recipe_membership(row, spec.recipe);
    if (uniform01(rng) < spec.noise) y = 1.0 - y; // outcome flip
    result.fuzzy.values.insert(result.fuzzy.values.end(), row.begin(), row.end());
    result.fuzzy.values.push_back(y);
  }

  result.raw.cases = result.fuzzy.cases;
  result.raw.conditions = result.fuzzy.conditions;
  result.raw.kind = DatasetKind::scores;
  result.raw.provenance.assign(result.raw.conditions.size(), "synthetic");
  result.raw.values.resize(result.fuzzy.values.size());
  for (std::size_t i = 0; i < result.fuzzy.values.size(); ++i) {
    result.raw.values[i] = 10.0 * result.fuzzy.values[i];
  }
  return result;
}

namespace {

struct OracleTerm {
  std::uint32_t bits = 0;
  std::uint32_t mask = 0;
  std::uint32_t corner_coverage = 0; // bitset over the on-set corners
};

} // namespace

std::vector<std::vector<Implicant>> brute_force_minimal_dnf(
    const std::vector<std::uint32_t>& on_set, const std::vector<std::uint32_t>& dc_set, int k) {
  if (k < 1 || k > 4) throw ConfigError("the exhaustive oracle handles k in [1, 4] only");
  if (on_set.empty()) throw DataError("no positive rows to explain: the table has no solution");

  const std::uint32_t n_corners = 1u << k;
  std::vector<bool> off(n_corners, true);
  for (std::uint32_t c : on_set) off.at(c) = false;
  for (std::uint32_t c : dc_set) off.at(c) = false;

  std::vector<std::uint32_t> on(on_set.begin(), on_set.end());
  std::sort(on.begin(), on.end());
  on.erase(std::unique(on.begin(), on.end()), on.end());

  const auto valid = [&](std::uint32_t bits, std::uint32_t mask) {
    for (std::uint32_t c = 0; c < n_corners; ++c) {
      if (off[c] && ((c ^ bits) & mask) == 0) return false;
    }
    return true;
  };

  // Every pattern, filtered to the ones no single-literal generalization
  // could replace, then to the ones touching the on-set at all.
  std::vector<OracleTerm> candidates;
  for (std::uint32_t mask = 0; mask < n_corners; ++mask) {
    std::uint32_t bits = 0;
    do { // enumerate all bit choices inside this mask
      if (valid(bits, mask)) {
        bool maximal = true;
        for (std::uint32_t j = 0; j < static_cast<std::uint32_t>(k) && maximal; ++j) {
          const std::uint32_t bit = 1u << j;
          if ((mask & bit) && valid(bits & ~bit, mask & ~bit)) maximal = false;
        }
        if (maximal) {
          OracleTerm term{bits, mask, 0};
          for (std::size_t c = 0; c < on.size(); ++c) {
            if (((on[c] ^ bits) & mask) == 0) term.corner_coverage |= 1u << c;
          }
          if (term.corner_coverage != 0) candidates.push_back(term);
        }
      }
      bits = (bits - mask) & mask; // next subset of mask
    } while (bits != 0);
  }

  std::vector<Implicant> imps;
  for (const OracleTerm& t : candidates) imps.push_back(Implicant(k, t.bits, t.mask));
  std::vector<std::size_t> order(imps.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return imps[a] < imps[b]; });

  std::vector<std::uint32_t> coverage(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    coverage[i] = candidates[order[i]].corner_coverage;
  }
  const std::uint32_t all_on = on.size() == 32 ? ~0u : (1u << on.size()) - 1u;

  // Suffix unions let the combination walk abandon hopeless prefixes early
  // while still visiting every subset of each size in index order.
  std::vector<std::uint32_t> suffix(order.size() + 1, 0);
  for (std::size_t i = order.size(); i > 0; --i) suffix[i - 1] = suffix[i] | coverage[i - 1];

  std::vector<std::vector<Implicant>> covers;
  std::vector<std::size_t> picked;
  const auto walk = [&](auto&& self, std::size_t next, std::uint32_t covered,
                        std::size_t target) -> void {
    if (covered == all_on && picked.size() == target) {
      std::vector<Implicant> cover;
      for (std::size_t i : picked) cover.push_back(imps[order[i]]);
      covers.push_back(std::move(cover));
      return;
    }
    if (picked.size() >= target || next >= order.size()) return;
    if ((covered | suffix[next]) != all_on) return;
    picked.push_back(next);
    self(self, next + 1, covered | coverage[next], target);
    picked.pop_back();
    self(self, next + 1, covered, target);
  };

  for (std::size_t target = 1; target <= order.size(); ++target) {
    walk(walk, 0, 0, target);
    if (!covers.empty()) break;
  }
  if (covers.empty()) {
    throw InternalError("oracle found no cover although maximal terms span the on-set");
  }
  return covers;
}

namespace {

const char* kIaIds[5] = {"NET", "DATA", "TERM", "SENS", "PAY"};
const char* kIaLabels[5] = {"Networking", "Data warehouse", "Intelligent terminals", "Sensors",
                            "Interaction & payment"};
const char* kBmIds[5] = {"PUB", "FAC", "HEALTH", "EDU", "ACC"};
const char* kBmLabels[5] = {"Public information", "Facilities management", "Healthcare service",
                            "Education service", "Accessibility service"};

// Per business-model recipes over (NET, DATA, TERM, SENS, PAY).
const char* kBmRecipes[5] = {"1-1--", "11-1-", "-1--1", "--11-", "1--11"};

// Development recipes over the ten columns
// (NET, DATA, TERM, SENS, PAY, PUB, FAC, HEALTH, EDU, ACC);
// each spans both condition groups, and the second carries negated
// conditions so the rendered chart exercises the absence glyph.
const char* kDevRecipes[2] = {"--11-1----", "0--1--0-1-"};

std::string format_cell(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

nlohmann::ordered_json spec_json(const CalibrationSpec& spec) {
  return {{"full_in", spec.full_in}, {"crossover", spec.crossover}, {"full_out", spec.full_out}};
}

} // namespace

DemoFiles make_demo(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  constexpr std::size_t n = 69;

  // Information-architecture memberships are free draws; business-model
  // memberships follow their recipes except for occasional independent
  // flips, so no business-model column is a pure function of the
  // architecture columns; the development outcome follows its recipe
  // exactly.
  std::vector<Implicant> bm_recipes;
  for (const char* r : kBmRecipes) bm_recipes.push_back(Implicant::from_pattern(r));
  std::vector<Implicant> dev_recipes;
  for (const char* r : kDevRecipes) dev_recipes.push_back(Implicant::from_pattern(r));

  std::vector<std::array<double, 11>> rows(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::array<double, 11>& row = rows[i];
    for (std::size_t j = 0; j < 5; ++j) row[j] = draw_membership(rng);
    const std::span<const double> ia(row.data(), 5);
    for (std::size_t b = 0; b < 5; ++b) {
      double m = term_membership(ia, bm_recipes[b]);
      if (uniform01(rng) < 0.08) m = 1.0 - m;
      row[5 + b] = m;
    }
    const std::span<const double> all10(row.data(), 10);
    row[10] = recipe_membership(all10, dev_recipes);
  }

  std::ostringstream csv;
  csv << "case,NET,DATA,TERM,SENS,PAY,PUB,FAC,HEALTH,EDU,ACC,DEV\n";
  char case_id[16];
  for (std::size_t i = 0; i < n; ++i) {
    std::snprintf(case_id, sizeof case_id, "community%02zu", i + 1);
    csv << case_id;
    for (double m : rows[i]) csv << ',' << format_cell(10.0 * m);
    csv << '\n';
  }

  nlohmann::ordered_json schema = nlohmann::ordered_json::array();
  for (std::size_t j = 0; j < 5; ++j) {
    schema.push_back({{"id", kIaIds[j]},
                      {"label", kIaLabels[j]},
                      {"group", "information_architecture"},
                      {"material", "mixed"}});
  }
  for (std::size_t j = 0; j < 5; ++j) {
    schema.push_back({{"id", kBmIds[j]},
                      {"label", kBmLabels[j]},
                      {"group", "business_model"},
                      {"material", "mixed"}});
  }
  schema.push_back(
      {{"id", "DEV"}, {"label", "Development level"}, {"group", "outcome"}, {"material", "mixed"}});

  // Anchors symmetric around the score midpoint keep the planted structure
  // intact through calibration (see generate_synthetic).
  const CalibrationSpec anchors{7.5, 5.0, 2.5};
  nlohmann::ordered_json calibration;
  for (const char* id : kIaIds) calibration[id] = spec_json(anchors);
  for (const char* id : kBmIds) calibration[id] = spec_json(anchors);
  calibration["DEV"] = spec_json(anchors);

  nlohmann::ordered_json config;
  config["dataset"] = "scores.csv";
  config["schema"] = "schema.json";
  config["kind"] = "scores";
  config["frequency_threshold"] = 1;
  config["consistency_threshold"] = 0.8;
  config["nudge_half"] = false;
  config["ascii"] = false;
  config["calibration"] = calibration;
  config["analyses"] = nlohmann::ordered_json::array(
      {{{"name", "development"},
        {"outcome", "DEV"},
        {"conditions", {"NET", "DATA", "TERM", "SENS", "PAY", "PUB", "FAC", "HEALTH", "EDU", "ACC"}},
        {"expectations",
         {{"TERM", "present"},
          {"SENS", "present"},
          {"PUB", "present"},
          {"NET", "absent"},
          {"FAC", "absent"},
          {"EDU", "present"}}},
        {"chart", "chart_development.txt"},
        {"table", "table_development.txt"}}});
  config["bundle"] = "bundle_development.json";

  nlohmann::ordered_json bm_config;
  bm_config["dataset"] = "scores.csv";
  bm_config["schema"] = "schema.json";
  bm_config["kind"] = "scores";
  bm_config["frequency_threshold"] = 1;
  bm_config["consistency_threshold"] = 0.8;
  bm_config["nudge_half"] = false;
  bm_config["ascii"] = false;
  bm_config["calibration"] = calibration;
  bm_config["analyses"] = nlohmann::ordered_json::array();
  for (std::size_t b = 0; b < 5; ++b) {
    nlohmann::ordered_json analysis;
    std::string name = kBmIds[b];
    std::transform(name.begin(), name.end(), name.begin(),
                   [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
    analysis["name"] = name;
    analysis["outcome"] = kBmIds[b];
    analysis["conditions"] = {"NET", "DATA", "TERM", "SENS", "PAY"};
    nlohmann::ordered_json expectations;
    const Implicant& recipe = bm_recipes[b];
    for (unsigned j = 0; j < 5; ++j) {
      if (recipe.state(j) == Tri::present) expectations[kIaIds[j]] = "present";
      if (recipe.state(j) == Tri::absent) expectations[kIaIds[j]] = "absent";
    }
    analysis["expectations"] = expectations;
    analysis["chart"] = "chart_" + name + ".txt";
    bm_config["analyses"].push_back(analysis);
  }
  bm_config["compare_outcomes"] = {"PUB", "FAC", "HEALTH", "EDU", "ACC"};
  bm_config["bundle"] = "bundle_business_models.json";

  DemoFiles files;
  files.schema_json = schema.dump(2) + "\n";
  files.scores_csv = csv.str();
  files.config_json = config.dump(2) + "\n";
  files.config_bm_json = bm_config.dump(2) + "\n";
  return files;
}

} // namespace fsqca
