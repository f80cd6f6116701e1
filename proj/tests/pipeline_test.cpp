#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "fsqca/errors.hpp"
#include "fsqca/pipeline.hpp"
#include "fsqca/synth.hpp"

using namespace fsqca;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("fsqca_pipeline_test_" + std::to_string(std::random_device{}()));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  fs::path file(const std::string& name, const std::string& content) const {
    const fs::path p = path / name;
    std::ofstream out(p, std::ios::binary);
    out << content;
    return p;
  }
};

// The bundled demo, written to a temp directory.
struct DemoDir {
  TempDir tmp;
  fs::path config;
  fs::path config_bm;
  DemoDir() {
    const DemoFiles files = make_demo(1);
    tmp.file("schema.json", files.schema_json);
    tmp.file("scores.csv", files.scores_csv);
    config = tmp.file("config.json", files.config_json);
    config_bm = tmp.file("config_bm.json", files.config_bm_json);
  }
};

const std::string* find_output(const PipelineResult& result, const std::string& name) {
  for (const auto& [path, content] : result.outputs) {
    if (path == name) return &content;
  }
  return nullptr;
}

// Shared by the hand-built fixtures: anchors 9/5/1 for every column, so a
// raw 9 lands at 0.9526, 8 at 0.9047, 4 at 0.3208, and 1 at 0.0474.
const char* kAbyCalibration = R"("calibration": {
    "A": {"full_in": 9, "crossover": 5, "full_out": 1},
    "B": {"full_in": 9, "crossover": 5, "full_out": 1},
    "Y": {"full_in": 9, "crossover": 5, "full_out": 1}
  })";

std::string aby_config(const std::string& extra = "") {
  std::ostringstream out;
  out << R"({
    "dataset": "scores.csv",
    "schema": "schema.json",
    )"
      << kAbyCalibration << R"(,
    "analyses": [{"outcome": "Y", "conditions": ["A", "B"]}])"
      << extra << "\n}";
  return out.str();
}

const char* kAbySchema = R"([
  {"id": "A"},
  {"id": "B"},
  {"id": "Y", "group": "outcome"}
])";

} // namespace

TEST_CASE("config loading resolves paths and applies defaults") {
  TempDir tmp;
  const fs::path path = tmp.file("config.json", R"({
    "dataset": "scores.csv",
    "schema": "schema.json",
    "analyses": [{"outcome": "Y", "conditions": ["A", "B"]}]
  })");
  const PipelineConfig config = load_config(path.string());
  CHECK(config.dataset_path == (tmp.path / "scores.csv").string());
  CHECK(config.schema_path == (tmp.path / "schema.json").string());
  CHECK(config.kind == DatasetKind::scores);
  CHECK(config.frequency_threshold == 1);
  CHECK(config.consistency_threshold == 0.8);
  CHECK_FALSE(config.nudge_half);
  CHECK_FALSE(config.ascii);
  CHECK(config.calibration.empty());
  REQUIRE(config.analyses.size() == 1);
  CHECK(config.analyses[0].name == "Y"); // defaults to the outcome id
  CHECK(config.analyses[0].outcome_id == "Y");
  CHECK(config.analyses[0].condition_ids == std::vector<std::string>{"A", "B"});
  CHECK(config.analyses[0].expectations.empty());
  CHECK_FALSE(config.analyses[0].chart_path.has_value());
  CHECK_FALSE(config.analyses[0].table_path.has_value());
  CHECK_FALSE(config.bundle_path.has_value());
  CHECK(config.compare_outcomes.empty());
}

TEST_CASE("bad configs raise ConfigError") {
  TempDir tmp;
  CHECK_THROWS_AS(load_config((tmp.path / "missing.json").string()), ConfigError);
  CHECK_THROWS_AS(load_config(tmp.file("c1.json", "{not json").string()), ConfigError);
  CHECK_THROWS_AS(load_config(tmp.file("c2.json", "[]").string()), ConfigError);
  CHECK_THROWS_AS(load_config(tmp.file("c3.json", R"({"dataset": "d.csv"})").string()),
                  ConfigError);
  CHECK_THROWS_AS(
      load_config(tmp.file("c4.json",
                           R"({"dataset": "d", "schema": "s", "analyses": []})")
                      .string()),
      ConfigError);
  CHECK_THROWS_AS(
      load_config(
          tmp.file("c5.json",
                   R"({"dataset": "d", "schema": "s", "kind": "nope",
                       "analyses": [{"outcome": "Y", "conditions": ["A"]}]})")
              .string()),
      ConfigError);
  CHECK_THROWS_AS(
      load_config(
          tmp.file("c6.json",
                   R"({"dataset": "d", "schema": "s", "consistency_threshold": 1.5,
                       "analyses": [{"outcome": "Y", "conditions": ["A"]}]})")
              .string()),
      ConfigError);
  CHECK_THROWS_AS(
      load_config(
          tmp.file("c7.json",
                   R"({"dataset": "d", "schema": "s", "frequency_threshold": 0,
                       "analyses": [{"outcome": "Y", "conditions": ["A"]}]})")
              .string()),
      ConfigError);
  CHECK_THROWS_AS(
      load_config(
          tmp.file("c8.json",
                   R"({"dataset": "d", "schema": "s",
                       "calibration": {"A": {"full_in": 1, "crossover": 5, "full_out": 9}},
                       "analyses": [{"outcome": "Y", "conditions": ["A"]}]})")
              .string()),
      ConfigError);
  CHECK_THROWS_AS(
      load_config(
          tmp.file("c9.json",
                   R"({"dataset": "d", "schema": "s",
                       "analyses": [{"outcome": "Y", "conditions": []}]})")
              .string()),
      ConfigError);
  CHECK_THROWS_AS(
      load_config(
          tmp.file("c10.json",
                   R"({"dataset": "d", "schema": "s",
                       "analyses": [{"outcome": "Y", "conditions": ["A"],
                                     "expectations": {"A": "sideways"}}]})")
              .string()),
      ConfigError);
}

TEST_CASE("the demo development run emits its three outputs") {
  DemoDir demo;
  const PipelineResult result = run_pipeline(load_config(demo.config.string()));
  REQUIRE(result.outputs.size() == 3);
  REQUIRE(find_output(result, "chart_development.txt") != nullptr);
  REQUIRE(find_output(result, "table_development.txt") != nullptr);
  REQUIRE(find_output(result, "bundle_development.json") != nullptr);

  // The chart exercises the glyph set, the grouped rows, and the footer.
  const std::string& chart = *find_output(result, "chart_development.txt");
  CHECK(chart.find("●") != std::string::npos);
  CHECK(chart.find("⊗") != std::string::npos);
  CHECK(chart.find("Consistency") != std::string::npos);
  CHECK(chart.find("Raw Coverage") != std::string::npos);
  CHECK(chart.find("Unique Coverage") != std::string::npos);
  CHECK(chart.find("Overall Solution Consistency") != std::string::npos);
  CHECK(chart.find("Overall Solution Coverage") != std::string::npos);
  CHECK(chart.find("-- Information architecture --") != std::string::npos);
  CHECK(chart.find("-- Business model --") != std::string::npos);

  const std::string& table = *find_output(result, "table_development.txt");
  CHECK(table.find("NET,DATA,TERM,SENS,PAY,PUB,FAC,HEALTH,EDU,ACC,n_cases,consistency,code") !=
        std::string::npos);

  // Both groups appear among the conditions, so the integration predicate
  // is computed -- and holds for the planted recipes.
  REQUIRE(result.bundle.analyses.size() == 1);
  const AnalysisRecord& record = result.bundle.analyses[0];
  CHECK(record.name == "development");
  REQUIRE(record.group_integration.has_value());
  CHECK(record.group_integration->overall);
  CHECK_FALSE(record.group_integration->degenerate);
  CHECK_FALSE(record.intermediate_solution.terms.empty());
  CHECK(record.eliminated.empty());
  CHECK(record.support.size() == record.intermediate_solution.terms.size());
}

TEST_CASE("the business-model comparison run emits five charts and distinctness") {
  DemoDir demo;
  const PipelineResult result = run_pipeline(load_config(demo.config_bm.string()));
  REQUIRE(result.outputs.size() == 7);
  for (const char* name : {"chart_pub.txt", "chart_fac.txt", "chart_health.txt",
                           "chart_edu.txt", "chart_acc.txt", "distinctness.txt",
                           "bundle_business_models.json"}) {
    CHECK(find_output(result, name) != nullptr);
  }

  REQUIRE(result.bundle.distinctness.has_value());
  CHECK(result.bundle.distinctness->pairs.size() == 10); // 5 choose 2
  CHECK(result.bundle.distinctness->any_differ);

  const std::string& text = *find_output(result, "distinctness.txt");
  CHECK(text.find("Distinctness of solutions across outcomes") != std::string::npos);
  CHECK(text.find("PUB vs FAC:") != std::string::npos);
  CHECK(text.find("Any pair differs: yes") != std::string::npos);

  // Each comparison run uses the architecture conditions only, so the
  // two-group predicate is not applicable and must stay unset.
  REQUIRE(result.bundle.analyses.size() == 5);
  for (const AnalysisRecord& record : result.bundle.analyses) {
    CHECK_FALSE(record.group_integration.has_value());
    CHECK_FALSE(record.intermediate_solution.terms.empty());
  }
}

TEST_CASE("pipeline results are byte-identical across runs") {
  DemoDir demo;
  const PipelineConfig config = load_config(demo.config.string());
  const PipelineResult a = run_pipeline(config);
  const PipelineResult b = run_pipeline(config);
  REQUIRE(a.outputs.size() == b.outputs.size());
  for (std::size_t i = 0; i < a.outputs.size(); ++i) {
    CHECK(a.outputs[i].first == b.outputs[i].first);
    CHECK(a.outputs[i].second == b.outputs[i].second);
  }
}

TEST_CASE("the demo bundle carries the full provenance block") {
  DemoDir demo;
  const PipelineResult result = run_pipeline(load_config(demo.config.string()));
  const auto doc = nlohmann::json::parse(*find_output(result, "bundle_development.json"));
  CHECK(doc.size() == 5);
  CHECK(doc["meta"]["tool"] == "fsqca 0.1.0");
  for (const char* input : {"config", "dataset", "schema"}) {
    const std::string hash = doc["meta"]["input_hashes"][input];
    CHECK(hash.size() == 16);
  }
  CHECK(doc["meta"]["settings"]["consistency_threshold"] == "0.8");
  CHECK(doc["meta"]["settings"]["frequency_threshold"] == "1");
  CHECK(doc["dataset"]["cases"].size() == 69);
  CHECK(doc["dataset"]["conditions"].size() == 11);
  CHECK(doc["truth_tables"][0]["rows"].size() == 1024);
  CHECK(doc["solutions"][0]["expectations"].size() == 6);
  CHECK_FALSE(doc["analysis"]["per_analysis"][0]["group_integration"].is_null());
}

TEST_CASE("an unknown condition id in an analysis is named in the error") {
  DemoDir demo;
  PipelineConfig config = load_config(demo.config.string());
  config.analyses[0].condition_ids.push_back("NOPE");
  try {
    run_pipeline(config);
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("NOPE") != std::string::npos);
  }
}

TEST_CASE("an unknown expectation id is named in the error") {
  DemoDir demo;
  PipelineConfig config = load_config(demo.config.string());
  config.analyses[0].expectations["GHOST"] = Expectation::expect_present;
  try {
    run_pipeline(config);
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    const std::string what = e.what();
    CHECK(what.find("GHOST") != std::string::npos);
    CHECK(what.find("expectation") != std::string::npos);
  }
}

TEST_CASE("compare_outcomes must reference an analysis") {
  DemoDir demo;
  PipelineConfig config = load_config(demo.config_bm.string());
  config.compare_outcomes.push_back("DEV");
  CHECK_THROWS_AS(run_pipeline(config), ConfigError);
}

TEST_CASE("validation errors stop the run") {
  TempDir tmp;
  tmp.file("schema.json", kAbySchema);
  tmp.file("scores.csv", "case,A,B,Y\nc1,12.5,2,3\nc2,4,8,9\n");
  const fs::path config = tmp.file("config.json", aby_config());
  try {
    run_pipeline(load_config(config.string()));
    FAIL("expected DataError");
  } catch (const DataError& e) {
    const std::string what = e.what();
    CHECK(what.find("12.5") != std::string::npos);
    CHECK(what.find("outside") != std::string::npos);
    CHECK(what.find("column A") != std::string::npos);
  }
}

TEST_CASE("contradictions surface as warnings and stay out of the solutions") {
  TempDir tmp;
  tmp.file("schema.json", kAbySchema);
  // c1 and c2 share corner 11 but disagree on the outcome; c3 and c4 give
  // the run a clean positive row at corner 01.
  tmp.file("scores.csv",
           "case,A,B,Y\n"
           "c1,9,9,9\n"
           "c2,9,8,1\n"
           "c3,1,9,9\n"
           "c4,1,8,9\n");
  const fs::path config = tmp.file("config.json", aby_config());
  const PipelineResult result = run_pipeline(load_config(config.string()));
  REQUIRE(result.bundle.analyses.size() == 1);
  const AnalysisRecord& record = result.bundle.analyses[0];
  REQUIRE(record.contradictions.size() == 1);
  CHECK(record.contradictions[0].corner == 0b11);
  CHECK(record.contradictions[0].case_ids == std::vector<std::string>{"c1", "c2"});

  bool warned = false;
  for (const Diagnostic& d : result.bundle.diagnostics) {
    if (d.severity == Severity::warning &&
        d.message.find("contradictory configuration 11") != std::string::npos) {
      warned = true;
      CHECK(d.message.find("c1") != std::string::npos);
      CHECK(d.message.find("c2") != std::string::npos);
    }
  }
  CHECK(warned);

  // The contradictory corner is excluded from minimization: no reported
  // term of any solution kind may cover it.
  for (const Solution* s : {&record.complex_solution, &record.parsimonious_solution,
                            &record.intermediate_solution}) {
    for (const Implicant& term : s->terms) CHECK_FALSE(term.covers(0b11));
  }
  REQUIRE(record.intermediate_solution.terms.size() == 1);
  CHECK(record.intermediate_solution.terms[0].pattern() == "01");
}

TEST_CASE("terms without case support are eliminated and recorded") {
  TempDir tmp;
  tmp.file("schema.json", kAbySchema);
  // Corner 11 holds exactly one case, whose outcome membership is low
  // (raw 4 -> 0.32): no disagreement, so not a contradiction. The fifty
  // corner-00 cases each contribute min(corner, outcome) == corner
  // membership, dragging the corner-11 row consistency above 0.8, so the
  // row codes positive -- yet no case is a member of both the term and
  // the outcome, and the case-back check must throw the term out.
  std::ostringstream csv;
  csv << "case,A,B,Y\nc1,9,8,4\n";
  for (int i = 1; i <= 50; ++i) csv << "f" << i << ",1,1,9\n";
  tmp.file("scores.csv", csv.str());
  const fs::path config = tmp.file("config.json", aby_config());
  const PipelineResult result = run_pipeline(load_config(config.string()));
  REQUIRE(result.bundle.analyses.size() == 1);
  const AnalysisRecord& record = result.bundle.analyses[0];

  CHECK(record.table.row(0b11).outcome_code == OutcomeCode::positive);
  CHECK(record.table.row(0b00).outcome_code == OutcomeCode::positive);

  REQUIRE(record.eliminated.size() == 1);
  CHECK(record.eliminated[0].term.pattern() == "11");
  CHECK(record.eliminated[0].supporting_case_ids.empty());
  CHECK(record.eliminated[0].eliminate);

  REQUIRE(record.intermediate_solution.terms.size() == 1);
  CHECK(record.intermediate_solution.terms[0].pattern() == "00");
  REQUIRE(record.support.size() == 1);
  CHECK(record.support[0].supporting_case_ids.size() == 50);

  bool warned = false;
  for (const Diagnostic& d : result.bundle.diagnostics) {
    if (d.severity == Severity::warning &&
        d.message.find("term 11 has no supporting case and was eliminated") !=
            std::string::npos) {
      warned = true;
    }
  }
  CHECK(warned);
}

TEST_CASE("ascii charts carry no unicode glyphs") {
  DemoDir demo;
  PipelineConfig config = load_config(demo.config.string());
  config.ascii = true;
  const PipelineResult result = run_pipeline(config);
  const std::string& chart = *find_output(result, "chart_development.txt");
  CHECK(chart.find("●") == std::string::npos);
  CHECK(chart.find("•") == std::string::npos);
  CHECK(chart.find("⊗") == std::string::npos);
  CHECK(chart.find('O') != std::string::npos);
  CHECK(chart.find('X') != std::string::npos);
}
