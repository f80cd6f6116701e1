#include "fsqca/dataset.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace fsqca {

std::string to_string(ConditionGroup g) {
  switch (g) {
    case ConditionGroup::information_architecture: return "information_architecture";
    case ConditionGroup::business_model: return "business_model";
    case ConditionGroup::outcome: return "outcome";
    case ConditionGroup::other: return "other";
  }
  return "other";
}

std::string to_string(Material m) {
  switch (m) {
    case Material::quantitative: return "quantitative";
    case Material::qualitative: return "qualitative";
    case Material::mixed: return "mixed";
    case Material::boolean_flag: return "boolean";
  }
  return "quantitative";
}

ConditionGroup condition_group_from_string(const std::string& s) {
  if (s == "information_architecture") return ConditionGroup::information_architecture;
  if (s == "business_model") return ConditionGroup::business_model;
  if (s == "outcome") return ConditionGroup::outcome;
  if (s == "other") return ConditionGroup::other;
  throw ConfigError("unknown condition group \"" + s +
                    "\" (want information_architecture, business_model, outcome or other)");
}

Material material_from_string(const std::string& s) {
  if (s == "quantitative") return Material::quantitative;
  if (s == "qualitative") return Material::qualitative;
  if (s == "mixed") return Material::mixed;
  if (s == "boolean") return Material::boolean_flag;
  throw ConfigError("unknown material \"" + s +
                    "\" (want quantitative, qualitative, mixed or boolean)");
}

std::optional<std::size_t> RawDataset::condition_index(const std::string& id) const {
  for (std::size_t i = 0; i < conditions.size(); ++i) {
    if (conditions[i].id == id) return i;
  }
  return std::nullopt;
}

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open \"" + path + "\"");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  for (char ch : line) {
    if (ch == ',') {
      cells.push_back(cell);
      cell.clear();
    } else if (ch != '\r') {
      cell += ch;
    }
  }
  cells.push_back(cell);
  return cells;
}

} // namespace

std::vector<ConditionDef> load_schema(const std::string& path) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(read_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("schema \"" + path + "\": " + e.what());
  }
  if (!doc.is_array()) throw ConfigError("schema \"" + path + "\": expected a JSON array");

  std::vector<ConditionDef> schema;
  std::set<std::string> seen;
  for (const auto& entry : doc) {
    if (!entry.is_object() || !entry.contains("id")) {
      throw ConfigError("schema \"" + path + "\": every entry needs at least an \"id\"");
    }
    ConditionDef def;
    def.id = entry.at("id").get<std::string>();
    def.label = entry.value("label", def.id);
    def.group = condition_group_from_string(entry.value("group", std::string("other")));
    def.material = material_from_string(entry.value("material", std::string("quantitative")));
    if (!seen.insert(def.id).second) {
      throw ConfigError("schema \"" + path + "\": duplicate condition id \"" + def.id + "\"");
    }
    schema.push_back(std::move(def));
  }
  if (schema.empty()) throw ConfigError("schema \"" + path + "\": no conditions defined");
  return schema;
}

RawDataset load_dataset(const std::string& path, const std::vector<ConditionDef>& schema,
                        DatasetKind kind) {
  const std::string text = read_file(path);

  std::vector<std::string> lines;
  std::string line;
  std::istringstream in(text);
  while (std::getline(in, line)) {
    if (!line.empty() && line != "\r") lines.push_back(line);
  }
  if (lines.empty()) throw DataError("\"" + path + "\" is empty");

  const auto header = split_csv_line(lines[0]);
  if (header.size() != schema.size() + 1) {
    throw DataError("\"" + path + "\": header has " + std::to_string(header.size() - 1) +
                    " condition columns but the schema defines " + std::to_string(schema.size()));
  }
  for (std::size_t j = 0; j < schema.size(); ++j) {
    if (header[j + 1] != schema[j].id) {
      throw DataError("\"" + path + "\": column " + std::to_string(j + 2) + " is \"" +
                      header[j + 1] + "\" but the schema expects \"" + schema[j].id + "\"");
    }
  }

  RawDataset d;
  d.conditions = schema;
  d.kind = kind;
  d.provenance.assign(schema.size(), "");

  std::set<std::string> seen_cases;
  for (std::size_t r = 1; r < lines.size(); ++r) {
    const auto cells = split_csv_line(lines[r]);
    if (cells.size() != schema.size() + 1) {
      throw DataError("\"" + path + "\": row " + std::to_string(r + 1) + " has " +
                      std::to_string(cells.size()) + " cells, expected " +
                      std::to_string(schema.size() + 1));
    }
    const std::string& case_id = cells[0];
    if (case_id.empty()) {
      throw DataError("\"" + path + "\": row " + std::to_string(r + 1) + " has an empty case id");
    }
    if (!seen_cases.insert(case_id).second) {
      throw DataError("\"" + path + "\": duplicate case id \"" + case_id + "\"");
    }
    d.cases.push_back(case_id);
    for (std::size_t j = 0; j < schema.size(); ++j) {
      const std::string& cell = cells[j + 1];
      char* end = nullptr;
      const double v = std::strtod(cell.c_str(), &end);
      if (cell.empty() || end != cell.c_str() + cell.size() || !std::isfinite(v)) {
        throw DataError("\"" + path + "\": cell \"" + cell + "\" in row " + case_id +
                        ", column " + schema[j].id + " is not a finite number");
      }
      d.values.push_back(v);
    }
  }
  if (d.cases.empty()) throw DataError("\"" + path + "\" has a header but no data rows");
  return d;
}

void write_dataset(const RawDataset& d, std::ostream& out) {
  out << "case";
  for (const auto& c : d.conditions) out << ',' << c.id;
  out << '\n';
  char buf[64];
  for (std::size_t i = 0; i < d.n_cases(); ++i) {
    out << d.cases[i];
    for (std::size_t j = 0; j < d.n_conditions(); ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", d.at(i, j));
      out << ',' << buf;
    }
    out << '\n';
  }
}

void write_dataset(const RawDataset& d, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write \"" + path + "\"");
  write_dataset(d, out);
}

Diagnostics validate_dataset(const RawDataset& d) {
  Diagnostics diags;
  for (std::size_t j = 0; j < d.n_conditions(); ++j) {
    const std::string& id = d.conditions[j].id;
    if (d.kind == DatasetKind::scores) {
      for (std::size_t i = 0; i < d.n_cases(); ++i) {
        const double v = d.at(i, j);
        if (v < 0.0 || v > 10.0) {
          char buf[96];
          std::snprintf(buf, sizeof buf, "score %.6g is outside [0, 10]", v);
          diags.push_back({Severity::error, "row " + d.cases[i] + ", column " + id, buf});
        }
      }
    }
    bool constant = d.n_cases() > 0;
    for (std::size_t i = 1; i < d.n_cases() && constant; ++i) {
      constant = d.at(i, j) == d.at(0, j);
    }
    if (constant && d.n_cases() > 1) {
      diags.push_back({Severity::warning, "column " + id,
                       "column is constant; calibration anchors cannot be defaulted and "
                       "memberships will not separate cases"});
    }
  }
  return diags;
}

} // namespace fsqca
