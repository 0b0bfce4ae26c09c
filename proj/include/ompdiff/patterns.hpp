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

// Per-section P1..P9 pattern profiles and version comparison.
//
//   P1  nests whose outermost loop is parallelized (parallel for, or a
//       worksharing for directly inside a region)
//   P2  parallelized loops containing calls
//   P3  worksharing loops inside parallel regions
//   P4  flag: dynamic or guided schedule
//   P5  flag: indirect (subscripted-subscript) write in a parallelized loop
//   P6  flag: threadprivate variable accessed
//   P7  flag: array reduction (clause on an array, or an atomic/critical
//       guarded element accumulation)
//   P8  nowait clauses
//   P9  flag: hand code modification, taken from the annotation sidecar

#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ompdiff/ast.hpp"
#include "ompdiff/frontend.hpp"

namespace ompdiff::patterns {

using frontend::SectionId;

inline constexpr int kPatternCount = 9;

struct PatternProfile {
  SectionId section;
  std::array<int, kPatternCount> p{};  // p[0] is P1

  int& operator[](int k) { return p[k - 1]; }
  int operator[](int k) const { return p[k - 1]; }
  bool all_zero() const;
  friend bool operator==(const PatternProfile&, const PatternProfile&) = default;
};

/// Sidecar lines `function#a-#b p9=1`; `#` comments and blank lines skipped.
/// Each line also declares a report row covering that range.
struct Annotations {
  std::map<SectionId, int> p9;

  static Annotations parse(const std::string& text);
  static Annotations load(const std::string& path);
  int p9_of(const SectionId& s) const;
};

/// Throws Error(UnknownSection) when the function or loop ordinals do not
/// exist in `unit`.
PatternProfile profile_section(const TranslationUnit& unit, const SectionId& section,
                               const Annotations& annotations = {});

/// Report rows: every annotated range plus every top-level nest not covered
/// by one, in source order.
std::vector<SectionId> report_sections(const TranslationUnit& unit, const Annotations& annotations);

/// Component-wise sum over report_sections (flags summed too, as in the
/// program rows of the published table).
PatternProfile profile_program(const TranslationUnit& unit, const Annotations& annotations = {});

struct DiffRow {
  SectionId section;
  std::optional<PatternProfile> auto_profile;
  std::optional<PatternProfile> manual_profile;
  std::array<int, kPatternCount> delta{};  // manual - auto
  std::optional<std::pair<double, double>> timing;  // seconds, auto and manual

  bool only_in_one() const { return !auto_profile || !manual_profile; }
};

struct DiffReport {
  std::vector<DiffRow> rows;
  PatternProfile auto_program;
  PatternProfile manual_program;
};

/// Timings keyed by rendered section id, e.g. "rank#1-#7".
using SectionTimings = std::map<std::string, std::pair<double, double>>;

/// Aligns the two versions by section id. Rows whose deltas are all zero
/// and that carry no timing are suppressed; rows present in only one
/// version are always kept. Annotations supply the row ranges for both
/// versions and P9 for the manual one. Throws Error(MismatchedPrograms)
/// when the versions share no defined function.
DiffReport compare_versions(const TranslationUnit& auto_unit, const TranslationUnit& manual_unit,
                            const Annotations& annotations = {},
                            const SectionTimings& timings = {});

// ---------------------------------------------------------------------------
// Export (columns: App, Loop Name, Auto, Manual, P1..P9)

struct TableRow {
  std::string app;
  std::string loop;
  std::string auto_time;
  std::string manual_time;
  std::array<int, kPatternCount> p{};
};

/// Rows for a single version: one per report section, then "Program".
std::vector<TableRow> profile_rows(const std::string& app, const TranslationUnit& unit,
                                   const Annotations& annotations);
/// Rows for a comparison: manual profile values for every kept row, then the
/// manual program row.
std::vector<TableRow> diff_rows(const std::string& app, const DiffReport& report);

std::string to_csv(const std::vector<TableRow>& rows);
std::string to_markdown(const std::vector<TableRow>& rows);
/// Markdown listing per-row deltas and one-sided sections.
std::string delta_markdown(const DiffReport& report);

}  // namespace ompdiff::patterns
