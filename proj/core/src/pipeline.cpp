#include "fsqca/pipeline.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace fsqca {

namespace {

std::string read_file_or_throw(const std::string& path, const char* what) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(std::string(what) + " \"" + path + "\" cannot be opened");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Expectation expectation_from_string(const std::string& s) {
  if (s == "present") return Expectation::expect_present;
  if (s == "absent") return Expectation::expect_absent;
  if (s == "agnostic") return Expectation::agnostic;
  throw ConfigError("unknown expectation \"" + s + "\" (want present, absent or agnostic)");
}

std::string basename_of(const std::string& path) {
  return std::filesystem::path(path).filename().string();
}

} // namespace

PipelineConfig load_config(const std::string& path) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(read_file_or_throw(path, "config"));
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("config \"" + path + "\": " + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config \"" + path + "\": expected a JSON object");

  const std::filesystem::path dir = std::filesystem::path(path).parent_path();
  const auto resolve = [&](const std::string& p) {
    std::filesystem::path fp(p);
    return fp.is_absolute() ? fp.string() : (dir / fp).string();
  };

  PipelineConfig config;
  config.source_path = path;
  try {
    config.dataset_path = resolve(doc.at("dataset").get<std::string>());
    config.schema_path = resolve(doc.at("schema").get<std::string>());
    const std::string kind = doc.value("kind", std::string("scores"));
    if (kind == "scores") {
      config.kind = DatasetKind::scores;
    } else if (kind == "measurements") {
      config.kind = DatasetKind::measurements;
    } else {
      throw ConfigError("unknown dataset kind \"" + kind + "\" (want scores or measurements)");
    }
    config.nudge_half = doc.value("nudge_half", false);
    config.ascii = doc.value("ascii", false);
    config.frequency_threshold = doc.value("frequency_threshold", 1);
    config.consistency_threshold = doc.value("consistency_threshold", 0.8);
    if (config.frequency_threshold < 1) throw ConfigError("frequency threshold must be at least 1");
    if (!(config.consistency_threshold > 0.0 && config.consistency_threshold <= 1.0)) {
      throw ConfigError("consistency threshold must lie in (0, 1]");
    }

    if (doc.contains("calibration")) {
      for (const auto& [id, anchors] : doc.at("calibration").items()) {
        CalibrationSpec spec;
        spec.full_in = anchors.at("full_in").get<double>();
        spec.crossover = anchors.at("crossover").get<double>();
        spec.full_out = anchors.at("full_out").get<double>();
        if (!spec.valid()) {
          throw ConfigError("calibration anchors for \"" + id +
                            "\" must satisfy full_in > crossover > full_out");
        }
        config.calibration[id] = spec;
      }
    }

    if (!doc.contains("analyses") || !doc.at("analyses").is_array() ||
        doc.at("analyses").empty()) {
      throw ConfigError("config needs a non-empty \"analyses\" array");
    }
    for (const auto& entry : doc.at("analyses")) {
      AnalysisSpec a;
      a.outcome_id = entry.at("outcome").get<std::string>();
      a.name = entry.value("name", a.outcome_id);
      a.condition_ids = entry.at("conditions").get<std::vector<std::string>>();
      if (a.condition_ids.empty()) {
        throw ConfigError("analysis \"" + a.name + "\" lists no conditions");
      }
      if (entry.contains("expectations")) {
        for (const auto& [id, direction] : entry.at("expectations").items()) {
          a.expectations[id] = expectation_from_string(direction.get<std::string>());
        }
      }
      if (entry.contains("chart")) a.chart_path = entry.at("chart").get<std::string>();
      if (entry.contains("table")) a.table_path = entry.at("table").get<std::string>();
      config.analyses.push_back(std::move(a));
    }

    if (doc.contains("compare_outcomes")) {
      config.compare_outcomes = doc.at("compare_outcomes").get<std::vector<std::string>>();
    }
    if (doc.contains("bundle")) config.bundle_path = doc.at("bundle").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("config \"" + path + "\": " + e.what());
  }
  return config;
}

PipelineResult run_pipeline(const PipelineConfig& config) {
  const std::vector<ConditionDef> schema = load_schema(config.schema_path);
  const RawDataset raw = load_dataset(config.dataset_path, schema, config.kind);

  Diagnostics diagnostics = validate_dataset(raw);
  if (has_errors(diagnostics)) {
    std::string message = "dataset validation failed:";
    for (const Diagnostic& d : diagnostics) {
      if (d.severity == Severity::error) message += "\n  " + d.location + ": " + d.message;
    }
    throw DataError(message);
  }

  const CalibrationResult calibrated =
      calibrate_dataset(raw, config.calibration, config.nudge_half);
  diagnostics.insert(diagnostics.end(), calibrated.diagnostics.begin(),
                     calibrated.diagnostics.end());

  PipelineResult result;
  BundleInput& bundle = result.bundle;
  bundle.tool = "fsqca 0.1.0";
  if (!config.source_path.empty()) {
    bundle.input_hashes["config"] = fnv1a64_hex(read_file_or_throw(config.source_path, "config"));
  }
  bundle.input_hashes["dataset"] =
      fnv1a64_hex(read_file_or_throw(config.dataset_path, "dataset"));
  bundle.input_hashes["schema"] = fnv1a64_hex(read_file_or_throw(config.schema_path, "schema"));
  bundle.settings["dataset"] = basename_of(config.dataset_path);
  bundle.settings["schema"] = basename_of(config.schema_path);
  bundle.settings["kind"] = config.kind == DatasetKind::scores ? "scores" : "measurements";
  bundle.settings["frequency_threshold"] = std::to_string(config.frequency_threshold);
  {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", config.consistency_threshold);
    bundle.settings["consistency_threshold"] = buf;
  }
  bundle.settings["nudge_half"] = config.nudge_half ? "true" : "false";
  bundle.settings["ascii"] = config.ascii ? "true" : "false";
  bundle.cases = raw.cases;
  bundle.conditions = raw.conditions;

  for (const AnalysisSpec& spec : config.analyses) {
    AnalysisRecord record;
    record.name = spec.name;
    record.outcome_id = spec.outcome_id;
    record.condition_ids = spec.condition_ids;

    const FuzzyDataset projected = project(calibrated.data, spec.condition_ids, spec.outcome_id);
    std::vector<ConditionDef> causal_defs;
    for (std::size_t j = 0; j < spec.condition_ids.size(); ++j) {
      causal_defs.push_back(projected.conditions[j]);
    }
    for (const std::string& id : spec.condition_ids) {
      record.specs[id] = calibrated.specs.at(id);
    }
    record.specs[spec.outcome_id] = calibrated.specs.at(spec.outcome_id);

    record.table = build_truth_table(projected, spec.outcome_id,
                                     static_cast<std::uint32_t>(config.frequency_threshold),
                                     config.consistency_threshold);
    record.contradictions = detect_contradictions(record.table, projected, spec.outcome_id);
    for (const Contradiction& c : record.contradictions) {
      std::string cases;
      for (const std::string& id : c.case_ids) cases += (cases.empty() ? "" : ", ") + id;
      diagnostics.push_back(
          {Severity::warning, "analysis " + spec.name,
           "contradictory configuration " + Implicant::corner(record.table.k, c.corner).pattern() +
               " excluded from minimization (cases: " + cases + ")"});
    }

    DirectionalExpectations expectations = DirectionalExpectations::agnostic(record.table.k);
    for (const auto& [id, e] : spec.expectations) {
      const auto pos = std::find(spec.condition_ids.begin(), spec.condition_ids.end(), id);
      if (pos == spec.condition_ids.end()) {
        throw ConfigError("analysis \"" + spec.name + "\": expectation names unknown condition \"" +
                          id + "\"");
      }
      expectations.per_condition[pos - spec.condition_ids.begin()] = e;
      if (e != Expectation::agnostic) {
        record.expectations[id] = e == Expectation::expect_present ? "present" : "absent";
      }
    }

    record.complex_solution = solve(record.table, SolutionKind::complex_solution);
    record.parsimonious_solution = solve(record.table, SolutionKind::parsimonious);
    Solution intermediate = solve(record.table, SolutionKind::intermediate, expectations);
    intermediate = label_core_peripheral(intermediate, record.parsimonious_solution);

    // Case-back verification: terms no observed case supports are dropped
    // from the reported solution and parked in the audit appendix.
    Solution reported = intermediate;
    reported.terms.clear();
    reported.core_flags.clear();
    for (std::size_t t = 0; t < intermediate.terms.size(); ++t) {
      CaseSupport support =
          supporting_cases(intermediate.terms[t], projected, spec.outcome_id);
      if (support.eliminate) {
        diagnostics.push_back({Severity::warning, "analysis " + spec.name,
                               "term " + intermediate.terms[t].pattern() +
                                   " has no supporting case and was eliminated"});
        record.eliminated.push_back(std::move(support));
      } else {
        reported.terms.push_back(intermediate.terms[t]);
        reported.core_flags.push_back(intermediate.core_flags[t]);
        record.support.push_back(std::move(support));
      }
    }
    reported.ties = {reported.terms};
    record.intermediate_solution = reported;
    record.measures = solution_measures(reported, projected, spec.outcome_id);

    bool any_ia = false;
    bool any_bm = false;
    for (const ConditionDef& def : causal_defs) {
      any_ia = any_ia || def.group == ConditionGroup::information_architecture;
      any_bm = any_bm || def.group == ConditionGroup::business_model;
    }
    if (any_ia && any_bm) {
      record.group_integration = check_group_integration(reported, causal_defs);
    }

    if (spec.chart_path) {
      ChartOptions options;
      options.ascii = config.ascii;
      const std::string chart =
          render_chart({ChartEntry{spec.name, reported, record.measures}}, causal_defs, options);
      result.outputs.emplace_back(*spec.chart_path, chart);
    }
    if (spec.table_path) {
      std::ostringstream table_text;
      write_truth_table(record.table, table_text);
      result.outputs.emplace_back(*spec.table_path, table_text.str());
    }
    bundle.analyses.push_back(std::move(record));
  }

  if (!config.compare_outcomes.empty()) {
    std::vector<std::pair<std::string, Solution>> per_outcome;
    for (const std::string& outcome : config.compare_outcomes) {
      const AnalysisRecord* found = nullptr;
      for (const AnalysisRecord& record : bundle.analyses) {
        if (record.outcome_id == outcome) {
          found = &record;
          break;
        }
      }
      if (!found) {
        throw ConfigError("compare_outcomes lists \"" + outcome +
                          "\" but no analysis has that outcome");
      }
      per_outcome.emplace_back(outcome, found->intermediate_solution);
    }
    bundle.distinctness = compare_outcome_solutions(per_outcome);

    std::ostringstream text;
    text << "Distinctness of solutions across outcomes\n";
    for (const auto& pair : bundle.distinctness->pairs) {
      text << pair.outcome_a << " vs " << pair.outcome_b << ": "
           << (pair.differ ? "differ" : "identical") << '\n';
    }
    text << "Any pair differs: " << (bundle.distinctness->any_differ ? "yes" : "no") << '\n';
    result.outputs.emplace_back("distinctness.txt", text.str());
  }

  bundle.diagnostics = diagnostics;
  if (config.bundle_path) {
    result.outputs.emplace_back(*config.bundle_path, export_bundle(bundle));
  }
  return result;
}

} // namespace fsqca
