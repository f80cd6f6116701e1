#include "fsqca/report.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "fsqca/minimize.hpp"

namespace fsqca {

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string fnv1a64_hex(std::string_view bytes) {
  char buf[24];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(bytes)));
  return buf;
}

std::string format_measure(double value, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
  return buf;
}

namespace {

struct Glyphs {
  const char* core_present;
  const char* peripheral_present;
  const char* absent;
};

constexpr Glyphs kUnicode{"●", "•", "⊗"}; // ● • ⊗
constexpr Glyphs kAscii{"O", "o", "X"};

// Column width bookkeeping counts code points, not bytes; every glyph used
// here occupies one terminal cell.
std::size_t display_width(const std::string& s) {
  std::size_t w = 0;
  for (unsigned char c : s) {
    if ((c & 0xC0) != 0x80) ++w;
  }
  return w;
}

std::string pad(const std::string& s, std::size_t width) {
  std::string out = s;
  const std::size_t w = display_width(s);
  if (w < width) out.append(width - w, ' ');
  return out;
}

const char* group_heading(ConditionGroup g) {
  switch (g) {
    case ConditionGroup::information_architecture: return "Information architecture";
    case ConditionGroup::business_model: return "Business model";
    case ConditionGroup::outcome: return "Outcome";
    case ConditionGroup::other: return "Other conditions";
  }
  return "Other conditions";
}

} // namespace

std::string render_chart(const std::vector<ChartEntry>& entries,
                         const std::vector<ConditionDef>& conditions,
                         const ChartOptions& options) {
  const Glyphs& glyphs = options.ascii ? kAscii : kUnicode;

  // Columns: one per term, labeled A, B, ... within each entry.
  struct Column {
    std::size_t entry;
    std::size_t term;
    std::string label;
  };
  std::vector<Column> columns;
  for (std::size_t e = 0; e < entries.size(); ++e) {
    const Solution& s = entries[e].solution;
    for (std::size_t t = 0; t < s.terms.size(); ++t) {
      std::string label(1, static_cast<char>('A' + (t % 26)));
      if (entries.size() > 1) label = entries[e].label + " " + label;
      columns.push_back({e, t, label});
    }
  }

  std::ostringstream out;
  if (columns.empty()) {
    out << "Configuration chart";
    if (!entries.empty()) out << ": " << entries.front().label;
    out << "\n(no solution)\n";
    for (const ChartEntry& entry : entries) {
      if (!entry.solution.note.empty()) out << "Note: " << entry.solution.note << "\n";
    }
    return out.str();
  }

  std::size_t label_width = display_width("Overall Solution Consistency");
  for (const ConditionDef& c : conditions) {
    label_width = std::max(label_width, display_width(c.label));
  }
  for (std::size_t g = 0; g < 4; ++g) {
    label_width = std::max(label_width, display_width(group_heading(static_cast<ConditionGroup>(g))) + 3);
  }
  std::vector<std::size_t> widths;
  for (const Column& col : columns) {
    widths.push_back(std::max<std::size_t>(display_width(col.label), 4));
  }

  const auto cell_row = [&](const std::string& label, const std::vector<std::string>& cells) {
    out << pad(label, label_width);
    for (std::size_t c = 0; c < cells.size(); ++c) out << "  " << pad(cells[c], widths[c]);
    out << '\n';
  };

  out << "Configuration chart";
  if (entries.size() == 1) out << ": " << entries.front().label;
  out << '\n';
  {
    std::vector<std::string> headers;
    for (const Column& col : columns) headers.push_back(col.label);
    cell_row("Condition", headers);
  }

  // Rows grouped the way the published layout groups them.
  const ConditionGroup group_order[3] = {ConditionGroup::information_architecture,
                                         ConditionGroup::business_model, ConditionGroup::other};
  for (ConditionGroup group : group_order) {
    bool any = false;
    for (std::size_t j = 0; j < conditions.size(); ++j) {
      if (conditions[j].group != group) continue;
      if (!any) {
        out << "-- " << group_heading(group) << " --\n";
        any = true;
      }
      std::vector<std::string> cells;
      for (const Column& col : columns) {
        const Solution& s = entries[col.entry].solution;
        const Implicant& term = s.terms[col.term];
        const bool core = s.has_core_flags() && s.core_flags[col.term][j];
        switch (term.state(static_cast<unsigned>(j))) {
          case Tri::present:
            cells.push_back(core ? glyphs.core_present : glyphs.peripheral_present);
            break;
          case Tri::absent: cells.push_back(glyphs.absent); break;
          case Tri::dontcare: cells.push_back(""); break;
        }
      }
      cell_row(conditions[j].label, cells);
    }
  }

  const auto measure_row = [&](const std::string& label, auto getter) {
    std::vector<std::string> cells;
    for (const Column& col : columns) {
      cells.push_back(format_measure(getter(entries[col.entry].measures, col.term)));
    }
    cell_row(label, cells);
  };
  out << '\n';
  measure_row("Consistency",
              [](const SolutionMeasures& m, std::size_t t) { return m.term_consistency[t]; });
  measure_row("Raw Coverage",
              [](const SolutionMeasures& m, std::size_t t) { return m.term_raw_coverage[t]; });
  measure_row("Unique Coverage",
              [](const SolutionMeasures& m, std::size_t t) { return m.term_unique_coverage[t]; });
  for (const ChartEntry& entry : entries) {
    const std::string prefix = entries.size() > 1 ? entry.label + ": " : "";
    out << pad(prefix + "Overall Solution Consistency", label_width) << "  "
        << format_measure(entry.measures.solution_consistency) << '\n';
    out << pad(prefix + "Overall Solution Coverage", label_width) << "  "
        << format_measure(entry.measures.solution_coverage) << '\n';
  }
  for (const ChartEntry& entry : entries) {
    if (!entry.solution.note.empty()) out << "Note: " << entry.solution.note << '\n';
  }
  return out.str();
}

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json json_terms(const std::vector<Implicant>& terms) {
  ordered_json arr = ordered_json::array();
  for (const Implicant& t : terms) arr.push_back(t.pattern());
  return arr;
}

ordered_json json_solution(const Solution& s) {
  ordered_json doc;
  doc["kind"] = to_string(s.kind);
  doc["terms"] = json_terms(s.terms);
  if (s.has_core_flags()) {
    ordered_json flags = ordered_json::array();
    for (const auto& term_flags : s.core_flags) {
      ordered_json row = ordered_json::array();
      for (bool b : term_flags) row.push_back(b);
      flags.push_back(row);
    }
    doc["core_flags"] = flags;
  }
  if (s.ties.size() > 1) {
    ordered_json ties = ordered_json::array();
    for (const auto& tie : s.ties) ties.push_back(json_terms(tie));
    doc["ties"] = ties;
  }
  if (!s.note.empty()) doc["note"] = s.note;
  return doc;
}

ordered_json json_diagnostics(const Diagnostics& diags) {
  ordered_json arr = ordered_json::array();
  for (const Diagnostic& d : diags) {
    arr.push_back({{"severity", d.severity == Severity::error ? "error" : "warning"},
                   {"location", d.location},
                   {"message", d.message}});
  }
  return arr;
}

} // namespace

std::string export_bundle(const BundleInput& in) {
  ordered_json doc;

  ordered_json meta;
  meta["tool"] = in.tool;
  ordered_json hashes;
  for (const auto& [name, hash] : in.input_hashes) hashes[name] = hash;
  meta["input_hashes"] = hashes;
  ordered_json settings;
  for (const auto& [key, value] : in.settings) settings[key] = value;
  meta["settings"] = settings;
  meta["diagnostics"] = json_diagnostics(in.diagnostics);
  doc["meta"] = meta;

  ordered_json dataset;
  dataset["cases"] = in.cases;
  ordered_json conditions = ordered_json::array();
  for (const ConditionDef& c : in.conditions) {
    conditions.push_back({{"id", c.id},
                          {"label", c.label},
                          {"group", to_string(c.group)},
                          {"material", to_string(c.material)}});
  }
  dataset["conditions"] = conditions;
  doc["dataset"] = dataset;

  ordered_json tables = ordered_json::array();
  for (const AnalysisRecord& a : in.analyses) {
    ordered_json entry;
    entry["analysis"] = a.name;
    entry["outcome"] = a.outcome_id;
    entry["conditions"] = a.condition_ids;
    entry["frequency_threshold"] = a.table.freq_threshold;
    entry["consistency_threshold"] = a.table.cons_threshold;
    ordered_json specs;
    for (const auto& [id, used] : a.specs) {
      specs[id] = {{"full_in", used.spec.full_in},
                   {"crossover", used.spec.crossover},
                   {"full_out", used.spec.full_out},
                   {"defaulted", used.defaulted}};
    }
    entry["calibration"] = specs;
    ordered_json rows = ordered_json::array();
    for (const TruthTableRow& row : a.table.rows) {
      rows.push_back({{"corner", Implicant::corner(a.table.k, row.corner).pattern()},
                      {"n_cases", row.n_cases},
                      {"consistency", row.row_consistency},
                      {"code", to_string(row.outcome_code)}});
    }
    entry["rows"] = rows;
    ordered_json contradictions = ordered_json::array();
    for (const Contradiction& c : a.contradictions) {
      contradictions.push_back(
          {{"corner", Implicant::corner(a.table.k, c.corner).pattern()}, {"cases", c.case_ids}});
    }
    entry["contradictions"] = contradictions;
    tables.push_back(entry);
  }
  doc["truth_tables"] = tables;

  ordered_json solutions = ordered_json::array();
  for (const AnalysisRecord& a : in.analyses) {
    ordered_json entry;
    entry["analysis"] = a.name;
    ordered_json expectations;
    for (const auto& [id, direction] : a.expectations) expectations[id] = direction;
    entry["expectations"] = expectations;
    entry["complex"] = json_solution(a.complex_solution);
    entry["parsimonious"] = json_solution(a.parsimonious_solution);
    entry["intermediate"] = json_solution(a.intermediate_solution);
    solutions.push_back(entry);
  }
  doc["solutions"] = solutions;

  ordered_json analysis = ordered_json::array();
  for (const AnalysisRecord& a : in.analyses) {
    ordered_json entry;
    entry["analysis"] = a.name;
    ordered_json measures;
    ordered_json per_term = ordered_json::array();
    for (std::size_t t = 0; t < a.measures.term_consistency.size(); ++t) {
      per_term.push_back({{"term", a.intermediate_solution.terms[t].pattern()},
                          {"consistency", a.measures.term_consistency[t]},
                          {"raw_coverage", a.measures.term_raw_coverage[t]},
                          {"unique_coverage", a.measures.term_unique_coverage[t]}});
    }
    measures["per_term"] = per_term;
    measures["solution_consistency"] = a.measures.solution_consistency;
    measures["solution_coverage"] = a.measures.solution_coverage;
    entry["measures"] = measures;

    ordered_json support = ordered_json::array();
    for (const CaseSupport& cs : a.support) {
      support.push_back({{"term", cs.term.pattern()},
                         {"cases", cs.supporting_case_ids},
                         {"best_case", cs.best_case_id}});
    }
    entry["support"] = support;
    ordered_json eliminated = ordered_json::array();
    for (const CaseSupport& cs : a.eliminated) eliminated.push_back(cs.term.pattern());
    entry["eliminated_terms"] = eliminated;

    if (a.group_integration) {
      ordered_json gi;
      ordered_json per_term_gi = ordered_json::array();
      for (bool b : a.group_integration->per_term) per_term_gi.push_back(b);
      gi["per_term"] = per_term_gi;
      gi["overall"] = a.group_integration->overall;
      gi["degenerate"] = a.group_integration->degenerate;
      entry["group_integration"] = gi;
    } else {
      entry["group_integration"] = nullptr;
    }
    analysis.push_back(entry);
  }
  ordered_json analysis_section;
  analysis_section["per_analysis"] = analysis;
  if (in.distinctness) {
    ordered_json pairs = ordered_json::array();
    for (const auto& pair : in.distinctness->pairs) {
      pairs.push_back(
          {{"outcome_a", pair.outcome_a}, {"outcome_b", pair.outcome_b}, {"differ", pair.differ}});
    }
    analysis_section["distinctness"] = {{"pairs", pairs},
                                        {"any_differ", in.distinctness->any_differ}};
  } else {
    analysis_section["distinctness"] = nullptr;
  }
  doc["analysis"] = analysis_section;

  return doc.dump(2) + "\n";
}

} // namespace fsqca
