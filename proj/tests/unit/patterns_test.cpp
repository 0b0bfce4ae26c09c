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

#include <gtest/gtest.h>

#include <regex>

#include "ompdiff/error.hpp"
#include "ompdiff/frontend.hpp"
#include "ompdiff/patterns.hpp"
#include "support.hpp"

namespace ompdiff {
namespace {

using frontend::parse_text;
using frontend::SectionId;
using patterns::Annotations;
using patterns::PatternProfile;

using Row = std::array<int, patterns::kPatternCount>;

struct Expected {
  const char* app;
  const char* section;
  Row p;
};

// Reference rows for the bundled sections.
const Expected kRows[] = {
    {"bt", "initialize#0-#7", {8, 7, 8, 0, 0, 0, 0, 6, 0}},
    {"bt", "compute_rhs#0-#10", {0, 0, 11, 0, 0, 0, 0, 7, 0}},
    {"is", "rank#1-#7", {1, 0, 3, 1, 1, 1, 0, 0, 1}},
    {"cg", "conj_grad#0-#4", {0, 0, 5, 0, 0, 0, 0, 1, 1}},
    {"ep", "main#3", {1, 1, 1, 0, 0, 1, 1, 0, 1}},
    {"mg", "zran3#1-#3", {1, 1, 3, 0, 0, 0, 0, 0, 1}},
};

const testing::FixtureApp& app(const std::string& name) {
  for (const auto& a : testing::fixture_apps())
    if (a.name == name) return a;
  throw std::runtime_error("no fixture " + name);
}

TranslationUnit manual_unit(const std::string& name) {
  return frontend::parse(frontend::read_source(app(name).manual, Origin::Manual));
}

SectionId sid(const std::string& text) { return *SectionId::parse(text); }

std::string row_text(const Row& r) {
  std::string s;
  for (int v : r) s += std::to_string(v) + " ";
  return s;
}

TEST(Profile, FixtureSectionsMatchPublishedRows) {
  for (const auto& e : kRows) {
    auto unit = manual_unit(e.app);
    auto ann = Annotations::load(app(e.app).annotations);
    auto prof = patterns::profile_section(unit, sid(e.section), ann);
    EXPECT_EQ(row_text(prof.p), row_text(e.p)) << e.app << " " << e.section;
  }
}

TEST(Profile, NoLoopsIsAllZero) {
  auto u = parse_text("void f(void) { int x; x = 1; }\nvoid g(int n, double a[]) { int i; for (i = 0; i < n; i++) a[i] = 0.0; }");
  // f has no sections at all; its program contribution is zero.
  EXPECT_TRUE(frontend::enumerate_sections(u).size() == 1u);
  auto prog = patterns::profile_program(parse_text("void f(void) { int x; x = 1; }"));
  EXPECT_TRUE(prog.all_zero());
  EXPECT_TRUE(patterns::profile_program(TranslationUnit{}).all_zero());
}

TEST(Profile, UnknownSection) {
  auto u = parse_text("void g(int n, double a[]) { int i; for (i = 0; i < n; i++) a[i] = 0.0; }");
  for (const char* s : {"g#1", "h#0"}) {
    try {
      patterns::profile_section(u, sid(s));
      ADD_FAILURE() << s;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), Errc::UnknownSection);
    }
  }
}

TEST(Profile, PatternDefinitions) {
  auto u = parse_text(
      "double a[64]; double b[64]; int idx[64]; double r[4]; double tp;\n"
      "#pragma omp threadprivate(tp)\n"
      "double work(double x) { return x * 2.0; }\n"
      "void f(int n) { int i, j;\n"
      "#pragma omp parallel for schedule(dynamic)\n"
      "  for (i = 0; i < n; i++) a[idx[i]] = work(b[i]);\n"
      "  for (i = 0; i < n; i++) {\n"
      "#pragma omp parallel for\n"
      "    for (j = 0; j < n; j++) a[j] = b[j];\n"
      "  }\n"
      "#pragma omp parallel private(i)\n"
      "  {\n"
      "#pragma omp for nowait\n"
      "    for (i = 0; i < n; i++) { tp = a[i]; b[i] = tp; }\n"
      "#pragma omp for reduction(+: r)\n"
      "    for (i = 0; i < n; i++) r[0] = r[0] + a[i];\n"
      "  }\n"
      "}\n");
  auto p0 = patterns::profile_section(u, sid("f#0"));
  EXPECT_EQ(row_text(p0.p), row_text({1, 1, 0, 1, 1, 0, 0, 0, 0}));
  // Inner-only parallelization: no P1, and outside a region no P3.
  auto p1 = patterns::profile_section(u, sid("f#1"));
  EXPECT_EQ(row_text(p1.p), row_text({0, 0, 0, 0, 0, 0, 0, 0, 0}));
  auto p2 = patterns::profile_section(u, sid("f#2"));
  EXPECT_EQ(row_text(p2.p), row_text({1, 0, 1, 0, 0, 1, 0, 1, 0}));
  auto p3 = patterns::profile_section(u, sid("f#3"));
  EXPECT_EQ(row_text(p3.p), row_text({1, 0, 1, 0, 0, 0, 1, 0, 0}));
}

TEST(Profile, ThreadprivateShadowedByParameterDoesNotCount) {
  auto u = parse_text(
      "double x;\n#pragma omp threadprivate(x)\ndouble a[8];\n"
      "void f(double x) { int i;\n#pragma omp parallel for\n  for (i = 0; i < 8; i++) a[i] = x; }\n");
  EXPECT_EQ(patterns::profile_section(u, sid("f#0"))[6], 0);
}

TEST(Program, SumsReportSections) {
  for (const auto& a : testing::fixture_apps()) {
    auto unit = manual_unit(a.name);
    auto ann = Annotations::load(a.annotations);
    PatternProfile sum;
    for (const auto& s : patterns::report_sections(unit, ann)) {
      auto p = patterns::profile_section(unit, s, ann);
      for (int k = 1; k <= patterns::kPatternCount; ++k) sum[k] += p[k];
    }
    EXPECT_EQ(row_text(patterns::profile_program(unit, ann).p), row_text(sum.p)) << a.name;
  }
}

TEST(Program, SingleSectionEqualsItsRow) {
  auto unit = manual_unit("bt");
  auto fn = unit.find_function("compute_rhs");
  ASSERT_NE(fn, nullptr);
  TranslationUnit only;
  for (const auto& item : unit.items)
    if (item.kind != TopItem::Kind::Function || item.fn.name == "compute_rhs") only.items.push_back(item);
  auto ann = Annotations::parse("compute_rhs#0-#10 p9=0\n");
  auto prog = patterns::profile_program(only, ann);
  auto row = patterns::profile_section(only, sid("compute_rhs#0-#10"), ann);
  EXPECT_EQ(row_text(prog.p), row_text(row.p));
  EXPECT_EQ(prog[8], 7);
}

TEST(Program, NowaitAdditivity) {
  auto unit = manual_unit("bt");
  TranslationUnit two;
  for (const auto& item : unit.items)
    if (item.kind != TopItem::Kind::Function || item.fn.name == "compute_rhs") two.items.push_back(item);
  // A second copy of compute_rhs under another name: 7 + 7 nowaits.
  for (const auto& item : unit.items)
    if (item.kind == TopItem::Kind::Function && item.fn.name == "compute_rhs") {
      TopItem copy = item;
      copy.fn.name = "compute_rhs2";
      two.items.push_back(copy);
    }
  EXPECT_EQ(patterns::profile_program(two)[8], 14);
}

// Every `for` directive in a region; adding nowait to any one of them moves
// P8 by exactly one in that section.
TEST(Invariants, NowaitMonotonicity) {
  for (const auto& a : testing::fixture_apps()) {
    auto unit = manual_unit(a.name);
    auto ann = Annotations::load(a.annotations);
    auto base = patterns::profile_program(unit, ann);
    int tried = 0;
    for (std::size_t fi = 0; fi < unit.items.size(); ++fi) {
      if (unit.items[fi].kind != TopItem::Kind::Function || !unit.items[fi].fn.body) continue;
      std::vector<Stmt*> candidates;
      visit_stmts_mut(*unit.items[fi].fn.body, [&](Stmt& s) {
        if (s.omp && s.omp->kind == OmpKind::For && !s.omp->nowait) candidates.push_back(&s);
      });
      for (std::size_t k = 0; k < candidates.size(); ++k) {
        TranslationUnit copy = unit;
        std::vector<Stmt*> mirror;
        visit_stmts_mut(*copy.items[fi].fn.body, [&](Stmt& s) {
          if (s.omp && s.omp->kind == OmpKind::For && !s.omp->nowait) mirror.push_back(&s);
        });
        mirror[k]->omp->nowait = true;
        auto after = patterns::profile_program(copy, ann);
        for (int p = 1; p <= patterns::kPatternCount; ++p)
          EXPECT_EQ(after[p], base[p] + (p == 8 ? 1 : 0)) << a.name << " P" << p;
        ++tried;
      }
    }
    (void)tried;
  }
}

TEST(Invariants, ReformattingKeepsProfiles) {
  for (const auto& a : testing::fixture_apps()) {
    auto unit = manual_unit(a.name);
    auto ann = Annotations::load(a.annotations);
    auto again = parse_text(frontend::print_text(unit));
    EXPECT_EQ(patterns::profile_program(unit, ann).p, patterns::profile_program(again, ann).p) << a.name;
    // Extra blank lines and comments between statements.
    std::string text = std::regex_replace(frontend::print_text(unit), std::regex(";\n"), ";\n\n/* x */\n");
    auto spaced = parse_text(text);
    EXPECT_EQ(patterns::profile_program(unit, ann).p, patterns::profile_program(spaced, ann).p) << a.name;
  }
}

TEST(Annotations, ParseAndLookup) {
  auto ann = Annotations::parse("# comment\n\nrank#1-#7 p9=1\nmain#3 p9=0\n");
  EXPECT_EQ(ann.p9_of(sid("rank#1-#7")), 1);
  EXPECT_EQ(ann.p9_of(sid("main#3")), 0);
  EXPECT_EQ(ann.p9_of(sid("main#4")), 0);
}

TEST(Compare, IdenticalInputsGiveEmptyReport) {
  auto unit = manual_unit("cg");
  auto rep = patterns::compare_versions(unit, unit);
  EXPECT_TRUE(rep.rows.empty());
}

TEST(Compare, OuterVersusInnerParallelization) {
  std::string head = "double a[16][16];\nvoid f(int n) { int i, j;\n";
  auto auto_u = parse_text(head +
                           "  for (i = 0; i < n; i++) {\n#pragma omp parallel for\n"
                           "    for (j = 0; j < n; j++) a[i][j] = 0.0;\n  }\n}\n");
  auto man_u = parse_text(head +
                          "#pragma omp parallel for private(j)\n  for (i = 0; i < n; i++) {\n"
                          "    for (j = 0; j < n; j++) a[i][j] = 0.0;\n  }\n}\n");
  auto rep = patterns::compare_versions(auto_u, man_u);
  ASSERT_EQ(rep.rows.size(), 1u);
  EXPECT_EQ(rep.rows[0].delta[0], 1);
}

TEST(Compare, NowaitDelta) {
  auto man = manual_unit("bt");
  TranslationUnit plain = man;
  for (auto& item : plain.items)
    if (item.kind == TopItem::Kind::Function && item.fn.body && item.fn.name == "compute_rhs")
      visit_stmts_mut(*item.fn.body, [](Stmt& s) {
        if (s.omp) s.omp->nowait = false;
      });
  auto ann = Annotations::load(app("bt").annotations);
  auto rep = patterns::compare_versions(plain, man, ann);
  bool found = false;
  for (const auto& r : rep.rows)
    if (r.section.render() == "compute_rhs#0-#10") {
      found = true;
      EXPECT_EQ(r.delta[7], 7);
    }
  EXPECT_TRUE(found);
}

TEST(Compare, MismatchedPrograms) {
  try {
    patterns::compare_versions(parse_text("void f(void) { }"), parse_text("void g(void) { }"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::MismatchedPrograms);
  }
}

TEST(Export, CsvColumnOrder) {
  auto unit = manual_unit("is");
  auto rows = patterns::profile_rows("IS", unit, Annotations::load(app("is").annotations));
  std::string csv = patterns::to_csv(rows);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "App,Loop Name,Auto,Manual,P1,P2,P3,P4,P5,P6,P7,P8,P9");
  EXPECT_NE(csv.find("IS,rank#1-#7,"), std::string::npos);
  EXPECT_EQ(rows.back().loop, "Program");
  EXPECT_EQ(csv, patterns::to_csv(rows));
}

}  // namespace
}  // namespace ompdiff
