// Copyright 2026 The ompdiff Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ompdiff/patterns.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <regex>
#include <set>
#include <sstream>

#include "ompdiff/analysis.hpp"

namespace ompdiff::patterns {

namespace {

bool is_parallelized(const Stmt& s) {
  return s.kind == StmtKind::For && s.omp && s.omp->is_worksharing_loop();
}

// Loops of `fn` that sit lexically inside a `parallel` region.
std::set<const Stmt*> loops_in_regions(const Function& fn) {
  std::set<const Stmt*> out;
  std::function<void(const Stmt&, bool)> rec = [&](const Stmt& s, bool inside) {
    if (inside && s.kind == StmtKind::For) out.insert(&s);
    bool next = inside || (s.omp && s.omp->kind == OmpKind::Parallel);
    for (const auto& c : s.stmts) rec(*c, next);
    if (s.init) rec(*s.init, next);
    if (s.body) rec(*s.body, next);
    if (s.else_body) rec(*s.else_body, next);
  };
  if (fn.body) rec(*fn.body, false);
  return out;
}

bool writes_indirectly(const Stmt& loop) {
  bool hit = false;
  auto indirect_sub = [](const Expr& sub) {
    bool found = false;
    visit_expr(sub, [&](const Expr& x) {
      if (x.kind == ExprKind::Index || (x.kind == ExprKind::Unary && x.text == "*")) found = true;
    });
    return found;
  };
  visit_exprs(*loop.body, [&](const Expr& e) {
    bool store = e.kind == ExprKind::Assign || e.kind == ExprKind::Postfix ||
                 (e.kind == ExprKind::Unary && (e.text == "++" || e.text == "--"));
    if (!store || e.arg(0).kind != ExprKind::Index) return;
    std::vector<const Expr*> subs;
    index_base(e.arg(0), &subs);
    for (const Expr* s : subs)
      if (indirect_sub(*s)) hit = true;
  });
  return hit;
}

bool mentions_expr(const Expr& hay, const Expr& needle) {
  bool hit = false;
  visit_expr(hay, [&](const Expr& x) {
    if (!hit && same_expr(x, needle)) hit = true;
  });
  return hit;
}

// `a[...] op= e`, `a[...]++` or `a[...] = a[...] op e`.
bool accumulates_element(const Expr& e) {
  bool hit = false;
  visit_expr(e, [&](const Expr& x) {
    bool store = x.kind == ExprKind::Assign || x.kind == ExprKind::Postfix ||
                 (x.kind == ExprKind::Unary && (x.text == "++" || x.text == "--"));
    if (!store || x.arg(0).kind != ExprKind::Index) return;
    if (x.kind != ExprKind::Assign || x.text != "=" || mentions_expr(x.arg(1), x.arg(0))) hit = true;
  });
  return hit;
}

bool guarded_array_accumulation(const Stmt& s) {
  if (!s.omp) return false;
  if (s.omp->kind == OmpKind::Atomic) return s.expr && accumulates_element(*s.expr);
  if (s.omp->kind != OmpKind::Critical) return false;
  bool hit = false;
  visit_stmts(s, [&](const Stmt& st) {
    if (st.expr && accumulates_element(*st.expr)) hit = true;
  });
  return hit;
}

const Function& section_function(const TranslationUnit& unit, const SectionId& section,
                                 std::vector<const Stmt*>& loops) {
  const Function* fn = unit.find_function(section.function);
  if (!fn || !fn->body)
    throw Error(Errc::UnknownSection, "no function '" + section.function + "' in " + unit.path,
                section.render());
  loops = frontend::top_level_loops(*fn);
  if (section.first < 0 || section.first > section.last ||
      section.last >= static_cast<int>(loops.size()))
    throw Error(Errc::UnknownSection,
                "section " + section.render() + " does not exist (" + section.function + " has " +
                    std::to_string(loops.size()) + " loop nests)",
                section.render());
  return *fn;
}

bool fits(const TranslationUnit& unit, const SectionId& s) {
  const Function* fn = unit.find_function(s.function);
  if (!fn || !fn->body) return false;
  int n = static_cast<int>(frontend::top_level_loops(*fn).size());
  return s.first >= 0 && s.first <= s.last && s.last < n;
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

bool PatternProfile::all_zero() const {
  return std::all_of(p.begin(), p.end(), [](int v) { return v == 0; });
}

Annotations Annotations::parse(const std::string& text) {
  Annotations a;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  static const std::regex re(R"(^(\S+)\s+p9\s*=\s*([01])$)");
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find(" #"); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty() || line[0] == '#' || line[0] == ';') continue;
    std::smatch m;
    auto id = std::regex_match(line, m, re) ? SectionId::parse(m[1].str()) : std::nullopt;
    if (!id)
      throw Error(Errc::ConfigError,
                  "annotation line " + std::to_string(lineno) + ": expected 'function#a-#b p9=0|1'",
                  line);
    a.p9[*id] = std::stoi(m[2].str());
  }
  return a;
}

Annotations Annotations::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::IoError, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

int Annotations::p9_of(const SectionId& s) const {
  auto it = p9.find(s);
  return it == p9.end() ? 0 : it->second;
}

PatternProfile profile_section(const TranslationUnit& unit, const SectionId& section,
                               const Annotations& annotations) {
  std::vector<const Stmt*> loops;
  const Function& fn = section_function(unit, section, loops);
  std::set<const Stmt*> in_region = loops_in_regions(fn);
  std::set<std::string> tp = analysis::threadprivate_vars(unit);

  PatternProfile prof;
  prof.section = section;
  bool p4 = false, p5 = false, p6 = false, p7 = false;
  for (int k = section.first; k <= section.last; ++k) {
    const Stmt& nest = *loops[k];
    if (nest.omp && (nest.omp->kind == OmpKind::ParallelFor ||
                     (nest.omp->kind == OmpKind::For && in_region.count(&nest))))
      ++prof[1];
    visit_stmts(nest, [&](const Stmt& s) {
      if (s.omp) {
        if (s.omp->nowait) ++prof[8];
        if (s.omp->schedule && s.omp->schedule->kind != ScheduleKind::Static) p4 = true;
        for (const auto& r : s.omp->reductions)
          for (const auto& v : r.vars) {
            auto info = analysis::lookup_var(unit, &fn, v);
            if (info && info->decl && info->decl->is_array_like()) p7 = true;
          }
        if (guarded_array_accumulation(s)) p7 = true;
      }
      if (!is_parallelized(s)) return;
      if (analysis::contains_call(s)) ++prof[2];
      if (in_region.count(&s)) ++prof[3];
      if (writes_indirectly(s)) p5 = true;
    });
    // Locals and params shadow a threadprivate global of the same name.
    auto is_tp = [&](const std::string& v) {
      if (!tp.count(v)) return false;
      auto info = analysis::lookup_var(unit, &fn, v);
      return info && !info->is_param && (info->is_global || info->storage == StorageClass::Static);
    };
    for (const auto& v : analysis::names_read(nest))
      if (is_tp(v)) p6 = true;
    for (const auto& v : analysis::names_written(nest))
      if (is_tp(v)) p6 = true;
  }
  prof[4] = p4;
  prof[5] = p5;
  prof[6] = p6;
  prof[7] = p7;
  prof[9] = annotations.p9_of(section) ? 1 : 0;
  return prof;
}

std::vector<SectionId> report_sections(const TranslationUnit& unit, const Annotations& annotations) {
  std::vector<SectionId> out;
  for (const Function* fn : unit.functions()) {
    if (!fn->body) continue;
    int n = static_cast<int>(frontend::top_level_loops(*fn).size());
    std::vector<SectionId> ranges;
    for (const auto& [id, v] : annotations.p9)
      if (id.function == fn->name && fits(unit, id)) ranges.push_back(id);
    for (int k = 0; k < n;) {
      auto r = std::find_if(ranges.begin(), ranges.end(),
                            [&](const SectionId& s) { return s.first <= k && k <= s.last; });
      if (r != ranges.end() && r->first == k) {
        out.push_back(*r);
        k = r->last + 1;
      } else if (r != ranges.end()) {
        ++k;  // overlapped by an earlier range
      } else {
        out.push_back(SectionId{fn->name, k, k});
        ++k;
      }
    }
  }
  return out;
}

PatternProfile profile_program(const TranslationUnit& unit, const Annotations& annotations) {
  PatternProfile total;
  total.section = SectionId{"", 0, 0};
  for (const auto& s : report_sections(unit, annotations)) {
    PatternProfile p = profile_section(unit, s, annotations);
    for (int k = 0; k < kPatternCount; ++k) total.p[k] += p.p[k];
  }
  return total;
}

DiffReport compare_versions(const TranslationUnit& auto_unit, const TranslationUnit& manual_unit,
                            const Annotations& annotations, const SectionTimings& timings) {
  bool common = false;
  for (const Function* f : auto_unit.functions()) {
    const Function* g = manual_unit.find_function(f->name);
    if (f->body && g && g->body) common = true;
  }
  if (!common)
    throw Error(Errc::MismatchedPrograms, "'" + auto_unit.path + "' and '" + manual_unit.path +
                                              "' define no common function");

  Annotations no_p9;
  for (const auto& [id, v] : annotations.p9) no_p9.p9[id] = 0;

  std::vector<SectionId> order = report_sections(manual_unit, annotations);
  for (const auto& s : report_sections(auto_unit, annotations))
    if (std::find(order.begin(), order.end(), s) == order.end()) order.push_back(s);

  DiffReport report;
  for (const auto& s : order) {
    DiffRow row;
    row.section = s;
    if (fits(auto_unit, s)) row.auto_profile = profile_section(auto_unit, s, no_p9);
    if (fits(manual_unit, s)) row.manual_profile = profile_section(manual_unit, s, annotations);
    for (int k = 0; k < kPatternCount; ++k)
      row.delta[k] = (row.manual_profile ? row.manual_profile->p[k] : 0) -
                     (row.auto_profile ? row.auto_profile->p[k] : 0);
    if (auto t = timings.find(s.render()); t != timings.end()) row.timing = t->second;
    bool zero = std::all_of(row.delta.begin(), row.delta.end(), [](int v) { return v == 0; });
    if (zero && !row.timing && !row.only_in_one()) continue;
    report.rows.push_back(std::move(row));
  }
  report.auto_program = profile_program(auto_unit, no_p9);
  report.manual_program = profile_program(manual_unit, annotations);
  return report;
}

namespace {

std::string seconds(double v) {
  std::ostringstream ss;
  ss << v;
  return ss.str();
}

std::vector<std::string> header() {
  std::vector<std::string> h = {"App", "Loop Name", "Auto", "Manual"};
  for (int k = 1; k <= kPatternCount; ++k) h.push_back("P" + std::to_string(k));
  return h;
}

std::vector<std::string> cells(const TableRow& r) {
  std::vector<std::string> c = {r.app, r.loop, r.auto_time, r.manual_time};
  for (int v : r.p) c.push_back(std::to_string(v));
  return c;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) {
    if (ch == '"') q += '"';
    q += ch;
  }
  return q + "\"";
}

std::string markdown_table(const std::vector<std::vector<std::string>>& table) {
  std::vector<std::size_t> width(table.front().size(), 3);
  for (const auto& row : table)
    for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
  std::ostringstream out;
  auto line = [&](const std::vector<std::string>& row) {
    out << "|";
    for (std::size_t c = 0; c < row.size(); ++c)
      out << " " << row[c] << std::string(width[c] - row[c].size(), ' ') << " |";
    out << "\n";
  };
  line(table.front());
  out << "|";
  for (std::size_t w : width) out << std::string(w + 2, '-') << "|";
  out << "\n";
  for (std::size_t r = 1; r < table.size(); ++r) line(table[r]);
  return out.str();
}

}  // namespace

std::vector<TableRow> profile_rows(const std::string& app, const TranslationUnit& unit,
                                   const Annotations& annotations) {
  std::vector<TableRow> rows;
  for (const auto& s : report_sections(unit, annotations)) {
    PatternProfile p = profile_section(unit, s, annotations);
    rows.push_back(TableRow{app, s.render(), "", "", p.p});
  }
  rows.push_back(TableRow{app, "Program", "", "", profile_program(unit, annotations).p});
  return rows;
}

std::vector<TableRow> diff_rows(const std::string& app, const DiffReport& report) {
  std::vector<TableRow> rows;
  for (const auto& r : report.rows) {
    TableRow t{app, r.section.render(), "", "", {}};
    if (r.timing) {
      t.auto_time = seconds(r.timing->first);
      t.manual_time = seconds(r.timing->second);
    }
    if (r.manual_profile) t.p = r.manual_profile->p;
    rows.push_back(std::move(t));
  }
  rows.push_back(TableRow{app, "Program", "", "", report.manual_program.p});
  return rows;
}

std::string to_csv(const std::vector<TableRow>& rows) {
  std::ostringstream out;
  auto emit = [&](const std::vector<std::string>& c) {
    for (std::size_t k = 0; k < c.size(); ++k) out << (k ? "," : "") << csv_field(c[k]);
    out << "\n";
  };
  emit(header());
  for (const auto& r : rows) emit(cells(r));
  return out.str();
}

std::string to_markdown(const std::vector<TableRow>& rows) {
  std::vector<std::vector<std::string>> table{header()};
  for (const auto& r : rows) table.push_back(cells(r));
  return markdown_table(table);
}

std::string delta_markdown(const DiffReport& report) {
  std::vector<std::vector<std::string>> table{{"Loop Name", "Present"}};
  for (int k = 1; k <= kPatternCount; ++k) table.front().push_back("dP" + std::to_string(k));
  for (const auto& r : report.rows) {
    std::vector<std::string> row{r.section.render(), !r.auto_profile     ? "manual only"
                                                     : !r.manual_profile ? "auto only"
                                                                         : "both"};
    for (int v : r.delta) row.push_back((v > 0 ? "+" : "") + std::to_string(v));
    table.push_back(std::move(row));
  }
  return markdown_table(table);
}

}  // namespace ompdiff::patterns
