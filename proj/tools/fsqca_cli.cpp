// Batch entry point for the fsQCA pipeline.
//
// Subcommands expose each stage on its own (score, calibrate, table, solve,
// analyze, report) next to the all-in-one `run`, so analysts can inspect any
// intermediate artifact, adjust the inputs, and rerun from there.
//
// Exit codes: 0 success, 1 usage/config error, 2 data/validation error,
// 3 internal invariant violation.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fsqca/analysis.hpp"
#include "fsqca/calibration.hpp"
#include "fsqca/dataset.hpp"
#include "fsqca/errors.hpp"
#include "fsqca/minimize.hpp"
#include "fsqca/pipeline.hpp"
#include "fsqca/report.hpp"
#include "fsqca/scoring.hpp"
#include "fsqca/synth.hpp"
#include "fsqca/truthtable.hpp"

namespace {

using namespace fsqca;

void print_warnings(const Diagnostics& diagnostics) {
  for (const Diagnostic& d : diagnostics) {
    if (d.severity == Severity::warning) {
      std::cerr << "warning: " << d.location << ": " << d.message << '\n';
    }
  }
}

void write_text_file(const std::filesystem::path& path, const std::string& contents) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot open \"" + path.string() + "\" for writing");
  out << contents;
  if (!out) throw DataError("failed while writing \"" + path.string() + "\"");
}

PipelineConfig load_config_with_flags(const std::string& config_path, bool ascii,
                                      bool nudge_half) {
  PipelineConfig config = load_config(config_path);
  if (ascii) config.ascii = true;
  if (nudge_half) config.nudge_half = true;
  return config;
}

const AnalysisRecord& find_record(const BundleInput& bundle, const std::string& name) {
  for (const AnalysisRecord& record : bundle.analyses) {
    if (record.name == name) return record;
  }
  std::string known;
  for (const AnalysisRecord& record : bundle.analyses) {
    known += (known.empty() ? "" : ", ") + record.name;
  }
  throw ConfigError("no analysis named \"" + name + "\" (have: " + known + ")");
}

std::string term_expression(const Implicant& term, const std::vector<std::string>& ids) {
  std::string expr;
  for (std::size_t j = 0; j < term.k(); ++j) {
    if (term.state(j) == Tri::dontcare) continue;
    if (!expr.empty()) expr += "*";
    if (term.state(j) == Tri::absent) expr += "~";
    expr += ids[j];
  }
  return expr.empty() ? "(universal)" : expr;
}

std::string describe_solution(const Solution& solution, const std::vector<std::string>& ids) {
  std::ostringstream out;
  out << to_string(solution.kind) << " solution";
  if (solution.terms.empty()) {
    out << ": (no solution)\n";
  } else {
    out << ":\n";
    for (std::size_t t = 0; t < solution.terms.size(); ++t) {
      out << "  " << solution.terms[t].pattern() << "  "
          << term_expression(solution.terms[t], ids);
      if (solution.has_core_flags()) {
        std::string core;
        for (std::size_t j = 0; j < ids.size(); ++j) {
          if (solution.terms[t].state(j) == Tri::dontcare) continue;
          if (!solution.core_flags[t][j]) continue;
          core += (core.empty() ? "" : ", ") + ids[j];
        }
        if (!core.empty()) out << "  [core: " << core << "]";
      }
      out << '\n';
    }
  }
  if (solution.ties.size() > 1) {
    out << "ties: " << solution.ties.size() << " equally minimal covers\n";
    for (const auto& tie : solution.ties) {
      out << "  {";
      for (std::size_t t = 0; t < tie.size(); ++t) {
        out << (t ? "; " : " ") << term_expression(tie[t], ids);
      }
      out << " }\n";
    }
  }
  if (!solution.note.empty()) out << "note: " << solution.note << '\n';
  return out.str();
}

int run_command(const std::string& config_path, const std::string& out_dir, bool ascii,
                bool nudge_half) {
  const PipelineConfig config = load_config_with_flags(config_path, ascii, nudge_half);
  const PipelineResult result = run_pipeline(config);
  print_warnings(result.bundle.diagnostics);

  const std::filesystem::path base =
      out_dir.empty() ? std::filesystem::path(config_path).parent_path()
                      : std::filesystem::path(out_dir);
  for (const auto& [rel, contents] : result.outputs) {
    const std::filesystem::path target = base / rel;
    write_text_file(target, contents);
    std::cout << "wrote " << target.string() << '\n';
  }
  for (const AnalysisRecord& record : result.bundle.analyses) {
    char line[160];
    std::snprintf(line, sizeof line,
                  "analysis %s: %zu term(s), solution consistency %.6f, coverage %.6f",
                  record.name.c_str(), record.intermediate_solution.terms.size(),
                  record.measures.solution_consistency, record.measures.solution_coverage);
    std::cout << line << '\n';
  }
  return 0;
}

// Measurement cells for qualitative indexes arrive as packed codes
// <clarity><items>: tens digit 1 = fuzzy, 2 = distinct; ones digit = number
// of refined implementation items (0 = low execution phase).
QualitativeCoding decode_qualitative_cell(double value, const std::string& where) {
  const double rounded = std::nearbyint(value);
  if (!(std::fabs(value - rounded) < 1e-9) || rounded < 10.0 || rounded > 29.0) {
    throw DataError(where + ": qualitative cell must be a packed code in 10..29, got " +
                    std::to_string(value));
  }
  const int code = static_cast<int>(rounded);
  QualitativeCoding coding;
  coding.clarity = (code / 10 == 2) ? QualitativeCoding::Clarity::distinct
                                    : QualitativeCoding::Clarity::fuzzy;
  coding.refined_items = code % 10;
  coding.execution = coding.refined_items == 0 ? QualitativeCoding::Execution::low
                                               : QualitativeCoding::Execution::high;
  return coding;
}

int score_command(const std::string& schema_path, const std::string& data_path,
                  const std::string& out_path) {
  const std::vector<ConditionDef> schema = load_schema(schema_path);
  const RawDataset raw = load_dataset(data_path, schema, DatasetKind::measurements);
  print_warnings(validate_dataset(raw));

  RawDataset scored = raw;
  scored.kind = DatasetKind::scores;
  const std::size_t n = raw.cases.size();
  for (std::size_t j = 0; j < raw.conditions.size(); ++j) {
    const ConditionDef& def = raw.conditions[j];
    std::vector<double> column(n);
    for (std::size_t i = 0; i < n; ++i) column[i] = raw.at(i, j);

    std::vector<double> scores(n);
    switch (def.material) {
      case Material::quantitative:
        scores = score_quantitative_index(column, MaterialKind::quantitative_only);
        break;
      case Material::mixed:
        scores = score_quantitative_index(column, MaterialKind::both);
        break;
      case Material::boolean_flag:
        for (std::size_t i = 0; i < n; ++i) {
          if (column[i] != 0.0 && column[i] != 1.0) {
            throw DataError("case \"" + raw.cases[i] + "\", column \"" + def.id +
                            "\": boolean cell must be 0 or 1");
          }
          scores[i] = score_boolean_index(column[i] == 1.0);
        }
        break;
      case Material::qualitative:
        for (std::size_t i = 0; i < n; ++i) {
          const QualitativeCoding coding = decode_qualitative_cell(
              column[i], "case \"" + raw.cases[i] + "\", column \"" + def.id + "\"");
          scores[i] = score_qualitative_index(coding, MaterialKind::qualitative_only);
        }
        break;
    }
    for (std::size_t i = 0; i < n; ++i) scored.values[i * raw.conditions.size() + j] = scores[i];
  }

  std::ostringstream out;
  write_dataset(scored, out);
  write_text_file(out_path, out.str());
  std::cout << "wrote " << out_path << '\n';
  return 0;
}

int calibrate_command(const std::string& config_path, const std::string& out_path,
                      bool nudge_half) {
  const PipelineConfig config = load_config_with_flags(config_path, false, nudge_half);
  const std::vector<ConditionDef> schema = load_schema(config.schema_path);
  const RawDataset raw = load_dataset(config.dataset_path, schema, config.kind);
  Diagnostics diagnostics = validate_dataset(raw);
  if (has_errors(diagnostics)) {
    print_warnings(diagnostics);
    for (const Diagnostic& d : diagnostics) {
      if (d.severity == Severity::error) {
        std::cerr << "error: " << d.location << ": " << d.message << '\n';
      }
    }
    throw DataError("dataset validation failed");
  }
  const CalibrationResult result = calibrate_dataset(raw, config.calibration, config.nudge_half);
  print_warnings(diagnostics);
  print_warnings(result.diagnostics);

  std::ostringstream out;
  out << "case";
  for (const ConditionDef& def : result.data.conditions) out << ',' << def.id;
  out << '\n';
  for (std::size_t i = 0; i < result.data.cases.size(); ++i) {
    out << result.data.cases[i];
    for (std::size_t j = 0; j < result.data.conditions.size(); ++j) {
      char cell[40];
      std::snprintf(cell, sizeof cell, "%.17g", result.data.at(i, j));
      out << ',' << cell;
    }
    out << '\n';
  }
  write_text_file(out_path, out.str());
  std::cout << "wrote " << out_path << '\n';
  return 0;
}

int table_command(const std::string& config_path, const std::string& analysis,
                  const std::string& out_path, bool nudge_half) {
  const PipelineConfig config = load_config_with_flags(config_path, false, nudge_half);
  const PipelineResult result = run_pipeline(config);
  print_warnings(result.bundle.diagnostics);
  const AnalysisRecord& record = find_record(result.bundle, analysis);
  std::ostringstream out;
  write_truth_table(record.table, out);
  if (out_path.empty()) {
    std::cout << out.str();
  } else {
    write_text_file(out_path, out.str());
    std::cout << "wrote " << out_path << '\n';
  }
  return 0;
}

int solve_command(const std::string& config_path, const std::string& analysis,
                  const std::string& kind, bool nudge_half) {
  const PipelineConfig config = load_config_with_flags(config_path, false, nudge_half);
  const PipelineResult result = run_pipeline(config);
  print_warnings(result.bundle.diagnostics);
  const AnalysisRecord& record = find_record(result.bundle, analysis);
  const Solution* solution = nullptr;
  if (kind == "complex") {
    solution = &record.complex_solution;
  } else if (kind == "parsimonious") {
    solution = &record.parsimonious_solution;
  } else if (kind == "intermediate") {
    solution = &record.intermediate_solution;
  } else {
    throw ConfigError("unknown solution kind \"" + kind +
                      "\" (want complex, parsimonious or intermediate)");
  }
  std::cout << describe_solution(*solution, record.condition_ids);
  if (kind == "intermediate" && !record.eliminated.empty()) {
    std::cout << "eliminated by case-back verification:\n";
    for (const CaseSupport& support : record.eliminated) {
      std::cout << "  " << term_expression(support.term, record.condition_ids) << '\n';
    }
  }
  return 0;
}

int analyze_command(const std::string& config_path, const std::string& analysis,
                    bool nudge_half) {
  const PipelineConfig config = load_config_with_flags(config_path, false, nudge_half);
  const PipelineResult result = run_pipeline(config);
  print_warnings(result.bundle.diagnostics);
  const AnalysisRecord& record = find_record(result.bundle, analysis);

  std::cout << "analysis " << record.name << " (outcome " << record.outcome_id << ")\n";
  std::cout << describe_solution(record.intermediate_solution, record.condition_ids);
  for (std::size_t t = 0; t < record.intermediate_solution.terms.size(); ++t) {
    char line[200];
    std::snprintf(line, sizeof line, "  term %s: consistency %.6f, raw %.6f, unique %.6f",
                  term_expression(record.intermediate_solution.terms[t], record.condition_ids)
                      .c_str(),
                  record.measures.term_consistency[t], record.measures.term_raw_coverage[t],
                  record.measures.term_unique_coverage[t]);
    std::cout << line << '\n';
    const CaseSupport& support = record.support[t];
    std::cout << "    supporting cases (" << support.supporting_case_ids.size() << ")";
    if (!support.best_case_id.empty()) std::cout << ", best " << support.best_case_id;
    std::cout << '\n';
  }
  char overall[160];
  std::snprintf(overall, sizeof overall,
                "  overall: solution consistency %.6f, solution coverage %.6f",
                record.measures.solution_consistency, record.measures.solution_coverage);
  std::cout << overall << '\n';
  if (record.group_integration) {
    std::cout << "  every term spans both condition groups: "
              << (record.group_integration->overall ? "yes" : "no") << '\n';
  }
  if (!record.eliminated.empty()) {
    std::cout << "  eliminated terms (no supporting case):\n";
    for (const CaseSupport& support : record.eliminated) {
      std::cout << "    " << term_expression(support.term, record.condition_ids) << '\n';
    }
  }
  return 0;
}

int report_command(const std::string& config_path, bool ascii, bool nudge_half) {
  const PipelineConfig config = load_config_with_flags(config_path, ascii, nudge_half);
  const PipelineResult result = run_pipeline(config);
  print_warnings(result.bundle.diagnostics);
  bool first = true;
  for (const auto& [rel, contents] : result.outputs) {
    if (rel.find("chart") == std::string::npos && rel.find("distinctness") == std::string::npos) {
      continue;
    }
    if (!first) std::cout << '\n';
    first = false;
    std::cout << contents;
  }
  return 0;
}

int synth_command(int k, int n_cases, unsigned long long seed, double noise,
                  const std::string& out_dir) {
  SynthSpec spec;
  spec.k = static_cast<std::size_t>(k);
  spec.n_cases = static_cast<std::size_t>(n_cases);
  spec.seed = seed;
  spec.noise = noise;
  // Default recipe: two overlapping three-literal terms.
  spec.recipe.push_back(Implicant::from_pattern("11" + std::string(spec.k - 2, '-')));
  if (spec.k >= 3) {
    std::string second(spec.k, '-');
    second[spec.k - 1] = '1';
    second[spec.k - 2] = '0';
    spec.recipe.push_back(Implicant::from_pattern(second));
  }
  const SynthResult result = generate_synthetic(spec);
  const std::filesystem::path base(out_dir);
  {
    std::ostringstream out;
    write_dataset(result.raw, out);
    write_text_file(base / "synthetic.csv", out.str());
  }
  {
    const TruthTable table = build_truth_table(result.fuzzy, "OUT");
    std::ostringstream out;
    write_truth_table(table, out);
    write_text_file(base / "synthetic_table.txt", out.str());
  }
  std::cout << "wrote " << (base / "synthetic.csv").string() << '\n';
  std::cout << "wrote " << (base / "synthetic_table.txt").string() << '\n';
  return 0;
}

int demo_command(const std::string& out_dir, unsigned long long seed) {
  const DemoFiles files = make_demo(seed);
  const std::filesystem::path base(out_dir);
  write_text_file(base / "schema.json", files.schema_json);
  write_text_file(base / "scores.csv", files.scores_csv);
  write_text_file(base / "config.json", files.config_json);
  write_text_file(base / "config_bm.json", files.config_bm_json);
  for (const char* name : {"schema.json", "scores.csv", "config.json", "config_bm.json"}) {
    std::cout << "wrote " << (base / name).string() << '\n';
  }
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fuzzy-set configurational analysis pipeline"};
  app.require_subcommand(1);

  std::string config_path;
  std::string schema_path;
  std::string data_path;
  std::string analysis;
  std::string out_path;
  std::string out_dir;
  std::string kind = "intermediate";
  bool ascii = false;
  bool nudge_half = false;
  int synth_k = 6;
  int synth_n = 69;
  unsigned long long seed = 1;
  double noise = 0.0;

  CLI::App* run = app.add_subcommand("run", "Run the full pipeline from a config file");
  run->add_option("--config", config_path, "Run configuration (JSON)")->required();
  run->add_option("--out", out_dir, "Directory for emitted files (default: config directory)");
  run->add_flag("--ascii", ascii, "Use ASCII chart glyphs (O o X)");
  run->add_flag("--nudge-half", nudge_half, "Nudge exact 0.5 memberships to 0.499999");

  CLI::App* score = app.add_subcommand("score", "Score raw measurements into 1..10 indexes");
  score->add_option("--schema", schema_path, "Condition schema (JSON)")->required();
  score->add_option("--data", data_path, "Raw measurements (CSV)")->required();
  score->add_option("--out", out_path, "Output scores CSV")->required();

  CLI::App* calibrate = app.add_subcommand("calibrate", "Calibrate scores to memberships");
  calibrate->add_option("--config", config_path, "Run configuration (JSON)")->required();
  calibrate->add_option("--out", out_path, "Output memberships CSV")->required();
  calibrate->add_flag("--nudge-half", nudge_half, "Nudge exact 0.5 memberships to 0.499999");

  CLI::App* table = app.add_subcommand("table", "Export a truth table");
  table->add_option("--config", config_path, "Run configuration (JSON)")->required();
  table->add_option("--analysis", analysis, "Analysis name from the config")->required();
  table->add_option("--out", out_path, "Output file (default: stdout)");
  table->add_flag("--nudge-half", nudge_half, "Nudge exact 0.5 memberships to 0.499999");

  CLI::App* solve = app.add_subcommand("solve", "Print one solution kind for an analysis");
  solve->add_option("--config", config_path, "Run configuration (JSON)")->required();
  solve->add_option("--analysis", analysis, "Analysis name from the config")->required();
  solve->add_option("--kind", kind, "complex | parsimonious | intermediate");
  solve->add_flag("--nudge-half", nudge_half, "Nudge exact 0.5 memberships to 0.499999");

  CLI::App* analyze = app.add_subcommand("analyze", "Print measures and case support");
  analyze->add_option("--config", config_path, "Run configuration (JSON)")->required();
  analyze->add_option("--analysis", analysis, "Analysis name from the config")->required();
  analyze->add_flag("--nudge-half", nudge_half, "Nudge exact 0.5 memberships to 0.499999");

  CLI::App* report = app.add_subcommand("report", "Print charts to stdout");
  report->add_option("--config", config_path, "Run configuration (JSON)")->required();
  report->add_flag("--ascii", ascii, "Use ASCII chart glyphs (O o X)");
  report->add_flag("--nudge-half", nudge_half, "Nudge exact 0.5 memberships to 0.499999");

  CLI::App* synth = app.add_subcommand("synth", "Generate a synthetic benchmark dataset");
  synth->add_option("--k", synth_k, "Number of causal conditions")->check(CLI::Range(1, 16));
  synth->add_option("--n", synth_n, "Number of cases")->check(CLI::PositiveNumber);
  synth->add_option("--seed", seed, "Random seed");
  synth->add_option("--noise", noise, "Outcome flip probability")->check(CLI::Range(0.0, 1.0));
  synth->add_option("--out", out_dir, "Output directory")->required();

  CLI::App* demo = app.add_subcommand("demo", "Write the bundled demo inputs");
  demo->add_option("--out", out_dir, "Output directory")->required();
  demo->add_option("--seed", seed, "Random seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (run->parsed()) return run_command(config_path, out_dir, ascii, nudge_half);
    if (score->parsed()) return score_command(schema_path, data_path, out_path);
    if (calibrate->parsed()) return calibrate_command(config_path, out_path, nudge_half);
    if (table->parsed()) return table_command(config_path, analysis, out_path, nudge_half);
    if (solve->parsed()) return solve_command(config_path, analysis, kind, nudge_half);
    if (analyze->parsed()) return analyze_command(config_path, analysis, nudge_half);
    if (report->parsed()) return report_command(config_path, ascii, nudge_half);
    if (synth->parsed()) return synth_command(synth_k, synth_n, seed, noise, out_dir);
    if (demo->parsed()) return demo_command(out_dir, seed);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const DataError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const InternalError& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 3;
  }
  return 1;
}
