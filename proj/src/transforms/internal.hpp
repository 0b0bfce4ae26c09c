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

#include <cstdint>
#include <functional>
#include <set>
#include <utility>
#include <string>
#include <vector>

#include "ompdiff/transforms.hpp"

namespace ompdiff::transforms::detail {

/// Function whose body contains `stmt`; null if none.
Function* function_of(TranslationUnit& unit, const Stmt* stmt);

/// Statements from the function body down to `stmt` (inclusive).
std::vector<Stmt*> path_in(Function& fn, const Stmt* stmt);

/// Every identifier spelled anywhere in the unit.
std::set<std::string> identifiers(const TranslationUnit& unit);

/// `base`, or `base_2`, `base_3`, ... whichever is not taken; records it.
std::string fresh_name(std::set<std::string>& taken, const std::string& base);

/// True if `s` or anything nested in it carries a directive.
bool has_directive(const Stmt& s);

/// True if some ancestor of `stmt` in `fn` carries a directive that spawns a
/// team (or is a `parallel` region).
bool inside_parallel(Function& fn, const Stmt* stmt);

/// `for (i = 0; i < n; i++) body`
Stmt counted_loop(const std::string& index, std::int64_t n, Stmt body);

/// Removes `omp` from `s` and every nested statement; drops barrier and
/// other standalone directive statements.
void strip_all(Stmt& s);

void add_unique(std::vector<std::string>& list, const std::string& v);

/// insert_nowait with the reason each remaining loop was left alone.
int nowait_scan(TranslationUnit& unit, Stmt& region, const analysis::Config& config,
                std::vector<std::pair<Stmt*, std::string>>* refused);

void convert_one(TranslationUnit& unit, const std::string& var, TpDirection direction,
                 const analysis::Config& config);

/// Variables the threadprivate pass tries when the plan names none.
std::vector<std::string> threadprivate_candidates(TranslationUnit& unit, TpDirection direction);

/// Applies `fn` to every expression owned by `s` or nested statements.
void for_each_expr_mut(Stmt& s, const std::function<void(Expr&)>& fn);

}  // namespace ompdiff::transforms::detail
