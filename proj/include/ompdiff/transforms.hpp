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

// Source rewrites that insert and reshape OpenMP directives. Passes run in a
// fixed order: inline, parallelize, region, reduction, schedule, condpar,
// nowait, threadprivate. Every pass except inline and reduction leaves the
// program unchanged once directives are stripped.

#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ompdiff/analysis.hpp"
#include "ompdiff/ast.hpp"
#include "ompdiff/costmodel.hpp"
#include "ompdiff/frontend.hpp"

namespace ompdiff::transforms {

enum class Pass { Inline, Parallelize, Region, Reduction, Schedule, Condpar, Nowait, Threadprivate };
enum class ReductionStrategy { Atomic, Critical };
enum class TpDirection { ToLoopPrivate, ToThreadprivate };

const char* pass_name(Pass p);

struct TransformPlan {
  std::set<Pass> passes;
  ReductionStrategy reduction = ReductionStrategy::Atomic;
  std::int64_t threshold = costmodel::kDefaultThreshold;
  TpDirection tp_direction = TpDirection::ToLoopPrivate;
  std::vector<std::string> tp_vars;  // empty: every eligible variable
  bool guided = false;               // schedule(guided) instead of dynamic
  analysis::Config config;

  /// "inline,parallelize,region,reduction=atomic,schedule,condpar,nowait,
  /// threadprivate=to_loop_private". Throws Error(ConfigError).
  static TransformPlan parse(const std::string& passes);
  bool has(Pass p) const { return passes.count(p) > 0; }
};

struct LogEntry {
  std::string pass;
  std::string section;
  std::string action;
  std::string reason;

  /// pass<TAB>section<TAB>action<TAB>reason
  std::string str() const;
};

struct RewriteResult {
  TranslationUnit ast;
  std::vector<LogEntry> log;
  std::vector<LogEntry> refusals;
};

RewriteResult apply(const TranslationUnit& unit, const TransformPlan& plan);

// ---------------------------------------------------------------------------
// Individual rewrites. They mutate `unit` in place; on error nothing changes.

struct Placement {
  Stmt* loop = nullptr;
  int level = 0;       // nesting depth of the chosen loop within the nest
  bool inner = false;  // an enclosing loop of the nest did not qualify
  std::vector<std::string> reasons;  // why enclosing levels were rejected
};

/// Puts `parallel for` (with private/lastprivate/reduction clauses) on the
/// outermost qualifying loops of `nest`. Throws Error(NoParallelLoop) whose
/// detail lists the reason per level.
std::vector<Placement> parallelize_loop(TranslationUnit& unit, Stmt& nest,
                                        const analysis::Config& config = {});

/// Merges `count` adjacent `parallel for` statements of `block` starting at
/// `first` into one region. Throws Error(FewerThanTwo) or Error(NotAdjacent).
void form_parallel_region(Stmt& block, std::size_t first, std::size_t count);

/// Adds nowait to worksharing loops of `region` (a compound carrying a
/// `parallel` directive) where no later construct up to the next barrier
/// conflicts. Returns the number of clauses added.
int insert_nowait(TranslationUnit& unit, Stmt& region, const analysis::Config& config = {});

/// Rewrites the array reduction on `candidate.variable` performed by
/// `loop` (which carries `parallel for` or a worksharing `for`). Throws
/// Error(NotAnArrayReduction).
void lower_array_reduction(TranslationUnit& unit, Stmt& loop,
                           const analysis::ReductionCandidate& candidate, ReductionStrategy strategy);

/// Adds schedule(dynamic) (or guided) when `signal` is non-empty and no
/// schedule is present. Returns true if the directive changed.
bool apply_schedule(Stmt& loop, const costmodel::ImbalanceSignal& signal, bool guided = false);

enum class CondparOutcome { Removed, Unconditional, IfClause, Skipped };

/// `stmt` carries `parallel for` or `parallel`. Removal strips the directive
/// (and every directive nested in a region).
CondparOutcome conditional_parallelize(Stmt& stmt, const costmodel::WorkloadEstimate& estimate,
                                       std::int64_t threshold);

/// Throws Error(PersistsAcrossRegions) or Error(NotStaticOrGlobal), or
/// Error(UnsupportedConstruct) when the variable is used in a way the
/// rewrite cannot express.
void convert_threadprivate(TranslationUnit& unit, const std::vector<std::string>& vars,
                           TpDirection direction);

/// Section of the nest containing `stmt` (or the range of nests inside it).
std::string section_of(const TranslationUnit& unit, const Stmt* stmt);

}  // namespace ompdiff::transforms
