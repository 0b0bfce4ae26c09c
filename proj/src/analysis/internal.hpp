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

#pragma once

#include <functional>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "ompdiff/analysis.hpp"

namespace ompdiff::analysis::detail {

/// One variable touch found while walking an expression in evaluation order.
struct Touch {
  std::string name;
  AccessMode mode = AccessMode::Read;
  const Expr* expr = nullptr;  // Ident, Index chain root or the `*p` node
  bool element = false;        // through a subscript or dereference
  bool must = true;            // false for writes that may not happen
  bool via_address = false;    // `&x` handed to a call
};

/// Calls `fn` for every variable read and write in `e`, in the order the
/// values are consumed: right-hand sides and subscripts before the store.
void walk_touches(const Expr& e, const std::function<void(const Touch&)>& fn,
                  bool conditional = false);

/// Call-effect hook: given a call expression, report extra touches (callee
/// summaries). May be empty.
using CallHook = std::function<void(const Expr& call, const std::function<void(const Touch&)>&)>;

/// Same as walk_touches but invokes `hook` after each call's arguments.
void walk_touches_with_calls(const Expr& e, const std::function<void(const Touch&)>& fn,
                             const CallHook& hook, bool conditional = false);

/// Side-effect summaries computed on demand and memoized for the lifetime of
/// one analysis call.
class EffectOracle {
 public:
  EffectOracle(const TranslationUnit* unit, const Config& config);

  SideEffectSummary summary(const std::string& function);

  /// Touches a call performs through its callee: globals it reads or writes
  /// and array arguments it writes. Touches carry a null `expr`.
  void call_touches(const Expr& call, const std::function<void(const Touch&)>& fn);

  CallHook hook() {
    return [this](const Expr& call, const std::function<void(const Touch&)>& fn) {
      call_touches(call, fn);
    };
  }

 private:
  SideEffectSummary compute(const std::string& function);

  const TranslationUnit* unit_;
  Config config_;
  std::map<std::string, SideEffectSummary> memo_;
  std::set<std::string> active_;
};

/// Classifies one subscript expression.
Subscript analyze_subscript(const Expr& sub, const std::set<std::string>& indices,
                            const std::set<std::string>& variant);

/// Canonical index names of `loop` and every loop nested in its body.
std::vector<std::string> nest_indices(const Stmt& loop);

/// Fixed extents of an array declarator when all dims fold to constants.
std::optional<std::vector<std::int64_t>> constant_dims(const Declarator& d);

/// Must-def / upward-exposed-read walker.
class ExposureWalker {
 public:
  ExposureWalker(const TranslationUnit* unit, const Config* config);

  /// Walks `s` starting from `defined`; names read while not defined are
  /// added to `exposed`; `defined` is updated with must-definitions.
  void walk(const Stmt& s, std::set<std::string>& defined, std::set<std::string>& exposed) const;
  void walk_expr(const Expr& e, std::set<std::string>& defined, std::set<std::string>& exposed,
                 bool conditional = false) const;

  /// Arrays whose whole extent is overwritten by `loop` (a covering nest).
  std::set<std::string> covered_arrays(const Stmt& loop) const;

  /// Function whose declarations resolve array extents (may be null).
  const Function* function = nullptr;

 private:
  const TranslationUnit* unit_;
  const Config* config_;
  mutable std::unique_ptr<EffectOracle> oracle_;
};

/// True when the value `var` holds right after `loop` finishes may be read
/// later: in the rest of the function, on another trip of an enclosing loop,
/// or (for globals and static locals) in any function after a call returns.
bool live_after(const LoopRef& loop, const std::string& var, const Config& config);

/// Returns the chain of statements from the function body down to `target`
/// (inclusive). Empty when not found.
std::vector<const Stmt*> path_to(const Stmt& root, const Stmt* target);

/// Counts references (reads and writes) to `name` in `s`, including headers.
int count_refs(const Stmt& s, const std::string& name);
int count_refs(const Expr& e, const std::string& name);

bool is_float_type(const std::string& type);

}  // namespace ompdiff::analysis::detail
