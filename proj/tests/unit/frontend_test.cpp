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

#include "ompdiff/analysis.hpp"
#include "ompdiff/frontend.hpp"
#include "support.hpp"

namespace ompdiff {
namespace {

using frontend::parse_text;
using frontend::print_text;
using frontend::SectionId;

const Function& only_function(const TranslationUnit& u) {
  auto fns = u.functions();
  EXPECT_FALSE(fns.empty());
  return *fns.front();
}

TEST(Parse, MinimalLoop) {
  auto u = parse_text("void f(int n, double a[]) { int i; for(i=0;i<n;i++) a[i]=0; }");
  auto loops = frontend::top_level_loops(only_function(u));
  ASSERT_EQ(loops.size(), 1u);
  auto h = analysis::loop_header(*loops[0]);
  EXPECT_TRUE(h.canonical);
  EXPECT_EQ(h.index, "i");
  EXPECT_EQ(frontend::print_expr(*h.lower), "0");
  EXPECT_EQ(frontend::print_expr(*h.upper), "n");
  EXPECT_EQ(h.stride, 1);
  EXPECT_TRUE(h.ascending);
  EXPECT_FALSE(h.inclusive);
  const Stmt& body = *loops[0]->body;
  ASSERT_EQ(body.kind, StmtKind::Expr);
  EXPECT_EQ(body.expr->kind, ExprKind::Assign);
}

TEST(Parse, AttachesPragmaToFollowingLoop) {
  auto u = parse_text(
      "void f(int n, double a[]) {\n  int i;\n#pragma omp parallel for\n  for (i = 0; i < n; i++) a[i] = 0;\n}\n");
  auto loops = frontend::top_level_loops(only_function(u));
  ASSERT_EQ(loops.size(), 1u);
  ASSERT_TRUE(loops[0]->omp);
  EXPECT_EQ(loops[0]->omp->kind, OmpKind::ParallelFor);
}

TEST(Parse, RejectsGoto) {
  try {
    parse_text("void f(void) { goto done; }");
    FAIL() << "expected an error";
  } catch (const SourceError& e) {
    EXPECT_EQ(e.code(), Errc::UnsupportedConstruct);
  }
}

TEST(Parse, RejectsOutOfSubsetStatements) {
  for (const char* src : {"void f(void) { int i; i = 0; while (i < 3) i++; }",
                          "void f(void) { int i; for (i = 0; i < 3; i++) { break; } }",
                          "#define N 10\nint a[N];"}) {
    try {
      parse_text(src);
      ADD_FAILURE() << "accepted: " << src;
    } catch (const SourceError& e) {
      EXPECT_EQ(e.code(), Errc::UnsupportedConstruct) << src;
    }
  }
}

TEST(Parse, SyntaxErrorCarriesLocation) {
  try {
    parse_text("int f(void) {\n  return 1 +;\n}\n", "bad.c");
    FAIL() << "expected an error";
  } catch (const SourceError& e) {
    EXPECT_EQ(e.code(), Errc::SyntaxError);
    EXPECT_EQ(e.span().line, 2);
    EXPECT_TRUE(std::regex_search(e.format("bad.c"), std::regex("^bad\\.c:2:[0-9]+: ")))
        << e.format("bad.c");
  }
}

TEST(Parse, RejectsVariableInTwoDataSharingClauses) {
  EXPECT_THROW(parse_text("void f(void) { int t;\n#pragma omp parallel private(t) firstprivate(t)\n{ t = 1; }\n}"),
               SourceError);
}

TEST(Parse, DirectiveClauses) {
  OmpDirective d = frontend::parse_directive(
      "omp for private(a, b) reduction(+:s) schedule(dynamic, 4) nowait");
  EXPECT_EQ(d.kind, OmpKind::For);
  EXPECT_EQ(d.private_vars, (std::vector<std::string>{"a", "b"}));
  ASSERT_EQ(d.reductions.size(), 1u);
  EXPECT_EQ(d.reductions[0].op, ReductionOp::Add);
  ASSERT_TRUE(d.schedule);
  EXPECT_EQ(d.schedule->kind, ScheduleKind::Dynamic);
  EXPECT_TRUE(d.nowait);
  OmpDirective p = frontend::parse_directive("omp parallel for if(n > 10) default(none)");
  ASSERT_TRUE(p.if_condition);
  EXPECT_EQ(frontend::print_expr(*p.if_condition), "n > 10");
  EXPECT_THROW(frontend::parse_directive("omp parallel for nowait"), Error);
}

TEST(Print, RendersParallelPrivate) {
  auto u = parse_text("void f(void) { int t;\n#pragma omp parallel private(t)\n{ t = 1; }\n}");
  EXPECT_NE(print_text(u).find("#pragma omp parallel private(t)"), std::string::npos);
}

// Hand-written combine: the atomic sits on the update inside the loop.
TEST(Print, AtomicCombineSurvivesReparse) {
  const char* src =
      "double rms[5];\n"
      "void f(void) {\n"
      "  int m;\n"
      "  double rms_local[5];\n"
      "#pragma omp parallel private(m, rms_local)\n"
      "  {\n"
      "    for (m = 0; m < 5; m++) {\n"
      "#pragma omp atomic\n"
      "      rms[m] += rms_local[m];\n"
      "    }\n"
      "  }\n"
      "}\n";
  auto again = parse_text(print_text(parse_text(src)));
  bool atomic_in_loop = false;
  visit_stmts(*only_function(again).body, [&](const Stmt& s) {
    if (s.kind != StmtKind::For) return;
    visit_stmts(*s.body, [&](const Stmt& inner) {
      if (inner.omp && inner.omp->kind == OmpKind::Atomic) atomic_in_loop = true;
    });
  });
  EXPECT_TRUE(atomic_in_loop);
}

TEST(Sections, FourSequentialLoops) {
  auto u = parse_text(
      "int main(void) { int i; double a[4];\n"
      "for (i = 0; i < 4; i++) a[i] = 0;\n"
      "for (i = 0; i < 4; i++) a[i] = 1;\n"
      "for (i = 0; i < 4; i++) a[i] = 2;\n"
      "for (i = 0; i < 4; i++) a[i] = 3;\n"
      "return 0; }");
  auto s = frontend::enumerate_sections(u);
  ASSERT_EQ(s.size(), 4u);
  for (int k = 0; k < 4; ++k) EXPECT_EQ(s[k].render(), "main#" + std::to_string(k));
  EXPECT_EQ((SectionId{"main", 1, 3}).render(), "main#1-#3");
}

TEST(Sections, NoLoopsAndNesting) {
  EXPECT_TRUE(frontend::enumerate_sections(parse_text("int f(int x) { return x + 1; }")).empty());
  auto u = parse_text("void f(double a[4][4]) { int i, j; for (i = 0; i < 4; i++) for (j = 0; j < 4; j++) a[i][j] = 0; }");
  auto s = frontend::enumerate_sections(u);
  ASSERT_EQ(s.size(), 1u);
  EXPECT_EQ(s[0].render(), "f#0");
}

TEST(Sections, ParseRoundTrip) {
  auto id = SectionId::parse("rank#1-#7");
  ASSERT_TRUE(id);
  EXPECT_EQ(id->function, "rank");
  EXPECT_EQ(id->first, 1);
  EXPECT_EQ(id->last, 7);
  EXPECT_EQ(id->render(), "rank#1-#7");
  EXPECT_EQ(SectionId::parse("main#3")->render(), "main#3");
  EXPECT_FALSE(SectionId::parse("main#3-#1"));
  EXPECT_FALSE(SectionId::parse("main"));
}

TEST(Sections, StableUnderWhitespaceAndComments) {
  const char* a = "void f(double x[8]) { int i; for (i = 0; i < 8; i++) x[i] = 0; for (i = 0; i < 8; i++) x[i] += 1; }";
  const char* b =
      "/* header */\nvoid f(double x[8])\n{\n  int i;   // counter\n\n  for (i = 0;\n       i < 8; i++)\n"
      "    x[i] = 0;\n  /* second */ for (i = 0; i < 8; i++) x[i] += 1;\n}\n";
  EXPECT_EQ(frontend::enumerate_sections(parse_text(a)), frontend::enumerate_sections(parse_text(b)));
  EXPECT_TRUE(same_unit(parse_text(a), parse_text(b)));
}

TEST(RoundTrip, Snippets) {
  for (const char* src : {
           "int g;\nstatic double h[3][4];\n",
           "double f(double *x, double a) { *x = a * (*x) - 1.0e-3; return -(*x) + (double) 2; }",
           "void f(int n, double a[]) { int i;\n#pragma omp parallel for schedule(guided) if(3 * n > 100)\n"
           "for (i = n - 1; i >= 0; i -= 2) { if (a[i] > 0.5 && !(i % 3)) a[i] = a[i] > 1 ? 1 : a[i]; else a[i]++; } }",
           "int x[4];\n#pragma omp threadprivate(x)\nvoid f(void) { int i;\n#pragma omp parallel\n{\n"
           "#pragma omp for nowait\nfor (i = 0; i < 4; i++) x[i] = i;\n#pragma omp barrier\n"
           "#pragma omp single\n{ x[0] = 1; }\n#pragma omp critical\n{ x[1] = 2; }\n} }",
           "#include <stdio.h>\nint main(void) { printf(\"%d\\n\", (int) sizeof(double)); return 0; }",
       }) {
    auto first = parse_text(src);
    auto second = parse_text(print_text(first));
    EXPECT_TRUE(same_unit(first, second)) << src << "\n---\n" << print_text(first);
  }
}

TEST(RoundTrip, Fixtures) {
  for (const auto& app : testing::fixture_apps()) {
    for (const auto& path : {app.serial, app.manual}) {
      auto first = frontend::parse(frontend::read_source(path));
      auto second = parse_text(print_text(first), path);
      EXPECT_TRUE(same_unit(first, second)) << path;
    }
  }
}

int count_directives(const TranslationUnit& u) {
  int n = 0;
  auto count = [&](const Stmt& s) {
    visit_stmts(s, [&](const Stmt& x) { n += x.omp ? 1 : 0; });
  };
  for (const auto& item : u.items) {
    if (item.kind == TopItem::Kind::Directive) count(item.stmt);
    if (item.kind == TopItem::Kind::Function && item.fn.body) count(*item.fn.body);
  }
  return n;
}

TEST(Parse, EveryPragmaLandsInOneDirectiveSlot) {
  for (const auto& app : testing::fixture_apps()) {
    std::string text = testing::read_file(app.manual);
    int pragmas = 0;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);)
      if (line.find("#pragma omp") != std::string::npos) ++pragmas;
    EXPECT_EQ(count_directives(parse_text(text, app.manual)), pragmas) << app.manual;
  }
}

TEST(Strip, RemovesEveryDirective) {
  for (const auto& app : testing::fixture_apps()) {
    auto manual = frontend::parse(frontend::read_source(app.manual));
    auto stripped = strip_directives(manual);
    EXPECT_EQ(count_directives(stripped), 0) << app.manual;
    EXPECT_TRUE(same_unit(stripped, strip_directives(stripped)));
  }
}

TEST(Source, MissingFileIsIoError) {
  try {
    frontend::read_source("/nonexistent/file.c");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::IoError);
  }
}

}  // namespace
}  // namespace ompdiff
