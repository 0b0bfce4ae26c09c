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

// Parsing, printing and loop-section naming for the supported C subset.
//
// The subset covers functions, scalar and fixed-rank array declarations,
// for/if/compound/expression/return statements, compound assignments, calls,
// integer and floating literals. `#include` lines are kept verbatim so that
// bundled programs stay compilable; any other preprocessor line is rejected,
// as are goto, switch, while/do, break/continue and aggregate types.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ompdiff/ast.hpp"

namespace ompdiff::frontend {

/// Throws SourceError with Errc::SyntaxError or Errc::UnsupportedConstruct.
TranslationUnit parse(const SourceUnit& unit);

/// Convenience for tests and tools.
TranslationUnit parse_text(const std::string& text, const std::string& path = "<input>",
                           Origin origin = Origin::Serial);

/// Parses a single C expression.
Expr parse_expression(const std::string& text);

/// Parses one `#pragma omp ...` line (without the leading `#pragma`).
OmpDirective parse_directive(const std::string& text, SourceSpan where = {});

SourceUnit print(const TranslationUnit& unit);
std::string print_text(const TranslationUnit& unit);
std::string print_stmt(const Stmt& stmt, int indent = 0);
std::string print_expr(const Expr& expr);
std::string print_directive(const OmpDirective& directive);

/// Reads a file; throws Error(IoError) when it cannot be opened.
SourceUnit read_source(const std::string& path, Origin origin = Origin::Serial);

// ---------------------------------------------------------------------------
// Sections

/// A run of adjacent top-level loop nests within one function, rendered
/// "func#a" or "func#a-#b".
struct SectionId {
  std::string function;
  int first = 0;
  int last = 0;

  std::string render() const;
  static std::optional<SectionId> parse(const std::string& text);

  bool contains(const SectionId& other) const {
    return function == other.function && first <= other.first && other.last <= last;
  }
  friend bool operator==(const SectionId&, const SectionId&) = default;
  friend auto operator<=>(const SectionId&, const SectionId&) = default;
};

/// One entry per top-level loop nest per function, in source order. Loops
/// nested inside another loop share their outer loop's ordinal.
std::vector<SectionId> enumerate_sections(const TranslationUnit& unit);

/// The outermost loop statements of `fn`, indexed by ordinal.
std::vector<const Stmt*> top_level_loops(const Function& fn);
std::vector<Stmt*> top_level_loops(Function& fn);

}  // namespace ompdiff::frontend
