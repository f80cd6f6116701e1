#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "fsqca/dataset.hpp"
#include "fsqca/errors.hpp"

using namespace fsqca;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("fsqca_dataset_test_" + std::to_string(std::random_device{}()) + "_" +
            std::to_string(counter()++));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  static int& counter() {
    static int n = 0;
    return n;
  }
  fs::path file(const std::string& name, const std::string& content) const {
    const fs::path p = path / name;
    std::ofstream out(p, std::ios::binary);
    out << content;
    return p;
  }
};

const char* kSchema = R"([
  {"id": "NET", "label": "Networking", "group": "information_architecture", "material": "mixed"},
  {"id": "PUB", "label": "Public information", "group": "business_model", "material": "qualitative"},
  {"id": "DEV", "label": "Development", "group": "outcome", "material": "quantitative"}
])";

} // namespace

TEST_CASE("schema loads ids, labels, groups and materials") {
  TempDir tmp;
  const auto schema = load_schema(tmp.file("schema.json", kSchema).string());
  REQUIRE(schema.size() == 3);
  CHECK(schema[0].id == "NET");
  CHECK(schema[0].label == "Networking");
  CHECK(schema[0].group == ConditionGroup::information_architecture);
  CHECK(schema[0].material == Material::mixed);
  CHECK(schema[1].group == ConditionGroup::business_model);
  CHECK(schema[2].group == ConditionGroup::outcome);
}

TEST_CASE("schema defaults and failures") {
  TempDir tmp;
  const auto schema =
      load_schema(tmp.file("minimal.json", R"([{"id": "A"}])").string());
  CHECK(schema[0].label == "A");
  CHECK(schema[0].group == ConditionGroup::other);
  CHECK(schema[0].material == Material::quantitative);

  CHECK_THROWS_AS(load_schema(tmp.file("bad1.json", "{}").string()), ConfigError);
  CHECK_THROWS_AS(load_schema(tmp.file("bad2.json", "[").string()), ConfigError);
  CHECK_THROWS_AS(load_schema(tmp.file("bad3.json", "[]").string()), ConfigError);
  CHECK_THROWS_AS(
      load_schema(tmp.file("bad4.json", R"([{"id":"A"},{"id":"A"}])").string()),
      ConfigError);
  CHECK_THROWS_AS(
      load_schema(tmp.file("bad5.json", R"([{"id":"A","group":"nope"}])").string()),
      ConfigError);
  CHECK_THROWS_AS(load_schema((tmp.path / "missing.json").string()), DataError);
}

TEST_CASE("group and material string round-trips") {
  for (auto g : {ConditionGroup::information_architecture, ConditionGroup::business_model,
                 ConditionGroup::outcome, ConditionGroup::other}) {
    CHECK(condition_group_from_string(to_string(g)) == g);
  }
  for (auto m : {Material::quantitative, Material::qualitative, Material::mixed,
                 Material::boolean_flag}) {
    CHECK(material_from_string(to_string(m)) == m);
  }
  CHECK(to_string(Material::boolean_flag) == "boolean");
}

TEST_CASE("dataset loads in file order") {
  TempDir tmp;
  const auto schema = load_schema(tmp.file("schema.json", kSchema).string());
  const auto csv = tmp.file("data.csv",
                            "case,NET,PUB,DEV\n"
                            "alpha,7.5,3.25,9\n"
                            "beta,2,8.5,1.5\n");
  const RawDataset d = load_dataset(csv.string(), schema);
  REQUIRE(d.n_cases() == 2);
  REQUIRE(d.n_conditions() == 3);
  CHECK(d.cases[0] == "alpha");
  CHECK(d.cases[1] == "beta");
  CHECK(d.at(0, 0) == 7.5);
  CHECK(d.at(0, 1) == 3.25);
  CHECK(d.at(1, 2) == 1.5);
  CHECK(d.kind == DatasetKind::scores);
  CHECK(d.condition_index("PUB") == std::size_t{1});
  CHECK_FALSE(d.condition_index("NOPE").has_value());
}

TEST_CASE("a non-numeric cell is an error naming row and column") {
  TempDir tmp;
  const auto schema = load_schema(tmp.file("schema.json", kSchema).string());
  const auto csv = tmp.file("data.csv",
                            "case,NET,PUB,DEV\n"
                            "alpha,7.5,n/a,9\n");
  try {
    load_dataset(csv.string(), schema);
    FAIL("expected DataError");
  } catch (const DataError& e) {
    const std::string what = e.what();
    CHECK(what.find("alpha") != std::string::npos);
    CHECK(what.find("PUB") != std::string::npos);
    CHECK(what.find("n/a") != std::string::npos);
  }
}

TEST_CASE("structural failures: header mismatch, ragged rows, duplicates") {
  TempDir tmp;
  const auto schema = load_schema(tmp.file("schema.json", kSchema).string());

  CHECK_THROWS_AS(load_dataset(tmp.file("head1.csv", "case,NET,PUB\nalpha,1,2\n").string(), schema),
                  DataError);
  CHECK_THROWS_AS(
      load_dataset(tmp.file("head2.csv", "case,NET,DEV,PUB\nalpha,1,2,3\n").string(), schema),
      DataError);
  CHECK_THROWS_AS(
      load_dataset(tmp.file("r1.csv", "case,NET,PUB,DEV\nalpha,1,2\n").string(), schema),
      DataError);
  CHECK_THROWS_AS(
      load_dataset(tmp.file("e1.csv", "case,NET,PUB,DEV\n").string(), schema), DataError);
  CHECK_THROWS_AS(load_dataset(tmp.file("e2.csv", "").string(), schema), DataError);
  try {
    load_dataset(tmp.file("d1.csv",
                          "case,NET,PUB,DEV\n"
                          "alpha,1,2,3\n"
                          "alpha,4,5,6\n")
                     .string(),
                 schema);
    FAIL("expected DataError");
  } catch (const DataError& e) {
    CHECK(std::string(e.what()).find("alpha") != std::string::npos);
  }
}

TEST_CASE("windows line endings are accepted") {
  TempDir tmp;
  const auto schema = load_schema(tmp.file("schema.json", kSchema).string());
  const auto csv = tmp.file("data.csv",
                            "case,NET,PUB,DEV\r\n"
                            "alpha,7.5,3.25,9\r\n");
  const RawDataset d = load_dataset(csv.string(), schema);
  CHECK(d.n_cases() == 1);
  CHECK(d.at(0, 2) == 9.0);
}

TEST_CASE("write_dataset round-trips exactly") {
  TempDir tmp;
  const auto schema = load_schema(tmp.file("schema.json", kSchema).string());
  const auto csv = tmp.file("data.csv",
                            "case,NET,PUB,DEV\n"
                            "alpha,7.5,3.25,9\n"
                            "beta,0.1,8.5,1.5\n");
  const RawDataset d = load_dataset(csv.string(), schema);
  const fs::path out = tmp.path / "copy.csv";
  write_dataset(d, out.string());
  const RawDataset again = load_dataset(out.string(), schema);
  CHECK(again.cases == d.cases);
  CHECK(again.values == d.values); // %.17g preserves doubles bit-for-bit
}

TEST_CASE("validate flags out-of-range scores with row and column") {
  TempDir tmp;
  const auto schema = load_schema(tmp.file("schema.json", kSchema).string());
  const auto csv = tmp.file("data.csv",
                            "case,NET,PUB,DEV\n"
                            "alpha,12.3,3,9\n"
                            "beta,2,8,1\n");
  const RawDataset d = load_dataset(csv.string(), schema);
  const Diagnostics diags = validate_dataset(d);
  REQUIRE(has_errors(diags));
  bool found = false;
  for (const auto& diag : diags) {
    if (diag.severity == Severity::error && diag.location.find("alpha") != std::string::npos &&
        diag.location.find("NET") != std::string::npos &&
        diag.message.find("12.3") != std::string::npos) {
      found = true;
    }
  }
  CHECK(found);
}

TEST_CASE("validate warns on constant columns but does not error") {
  TempDir tmp;
  const auto schema = load_schema(tmp.file("schema.json", kSchema).string());
  const auto csv = tmp.file("data.csv",
                            "case,NET,PUB,DEV\n"
                            "alpha,4,3,9\n"
                            "beta,4,8,1\n");
  const RawDataset d = load_dataset(csv.string(), schema);
  const Diagnostics diags = validate_dataset(d);
  CHECK_FALSE(has_errors(diags));
  bool warned = false;
  for (const auto& diag : diags) {
    if (diag.severity == Severity::warning && diag.location.find("NET") != std::string::npos) {
      warned = true;
    }
  }
  CHECK(warned);
}

TEST_CASE("measurement datasets skip the score range check") {
  TempDir tmp;
  const auto schema = load_schema(tmp.file("schema.json", kSchema).string());
  const auto csv = tmp.file("data.csv",
                            "case,NET,PUB,DEV\n"
                            "alpha,1234,3,9\n"
                            "beta,2,8,1\n");
  const RawDataset d = load_dataset(csv.string(), schema, DatasetKind::measurements);
  CHECK(d.kind == DatasetKind::measurements);
  CHECK_FALSE(has_errors(validate_dataset(d)));
}
