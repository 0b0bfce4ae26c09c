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

// Workload estimates (statements times iterations), profitability decisions
// against a threshold and load-imbalance signals.

#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>

#include "ompdiff/analysis.hpp"
#include "ompdiff/ast.hpp"
#include "ompdiff/symbolic.hpp"

namespace ompdiff::costmodel {

using symbolic::Poly;

inline constexpr std::int64_t kDefaultThreshold = 10000;

struct WorkloadEstimate {
  Poly expr;
  bool evaluable = true;
  std::int64_t value = 0;  // meaningful when evaluable
  /// False when the symbolic expression names variables that are declared or
  /// assigned inside the nest, so it cannot be tested before entering it.
  bool expressible = true;

  std::string str() const { return expr.str(); }
};

/// Syntactic count of executable statements in `s`, inner loops multiplied
/// by their trip counts. Directive-only statements count zero.
Poly statement_work(const Stmt& s);

/// Trip count of `loop` times the work of its body. Inner bounds that use an
/// enclosing loop's index are bounded by that index's upper limit; a loop
/// whose header is not canonical counts as one trip.
WorkloadEstimate workload(const Stmt& nest);

enum class Decision { Serial, Parallel, Conditional };

const char* decision_name(Decision d);

struct Profitability {
  Decision decision = Decision::Parallel;
  /// For Conditional: `expr > threshold`.
  ExprBox condition;
};

/// Evaluable: value < threshold is serial, otherwise parallel. Symbolic:
/// conditional on `expr > threshold`, or parallel when not expressible.
Profitability is_profitable(const WorkloadEstimate& estimate, std::int64_t threshold);

enum class ImbalanceReason { TriangularInner, ConditionalBody, IterationDependentCall };

const char* imbalance_reason_name(ImbalanceReason r);

struct ImbalanceSignal {
  std::set<ImbalanceReason> reasons;

  bool empty() const { return reasons.empty(); }
  bool has(ImbalanceReason r) const { return reasons.count(r) > 0; }
  std::string str() const;
};

/// `unit` (optional) resolves callees for iteration_dependent_call.
ImbalanceSignal imbalance_score(const Stmt& nest, const TranslationUnit* unit = nullptr,
                                const analysis::Config& config = {});

}  // namespace ompdiff::costmodel
