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

#include <algorithm>

#include "analysis/internal.hpp"

namespace ompdiff::analysis {

namespace {

// Allocation routines are thread-safe and touch no program variables.
const std::set<std::string> kAllocation = {"malloc", "calloc", "realloc", "free"};

bool is_omp_query(const std::string& name) { return name.rfind("omp_", 0) == 0; }

}  // namespace

namespace detail {

EffectOracle::EffectOracle(const TranslationUnit* unit, const Config& config)
    : unit_(unit), config_(config) {}

SideEffectSummary EffectOracle::summary(const std::string& function) {
  if (auto it = memo_.find(function); it != memo_.end()) return it->second;
  if (active_.count(function)) {
    SideEffectSummary s;
    s.function = function;
    s.classification = EffectClass::Unknown;
    s.reason = "recursive";
    return s;
  }
  active_.insert(function);
  SideEffectSummary s = compute(function);
  active_.erase(function);
  memo_[function] = s;
  return s;
}

SideEffectSummary EffectOracle::compute(const std::string& name) {
  SideEffectSummary s;
  s.function = name;
  const Function* fn = unit_ ? unit_->find_function(name) : nullptr;
  if (config_.pure_functions.count(name)) {
    s.reason = "listed as pure";
    return s;
  }
  if (!fn || !fn->body) {
    if (default_pure_functions().count(name) || kAllocation.count(name) || is_omp_query(name)) {
      s.reason = "known pure";
    } else if (io_functions().count(name)) {
      s.classification = EffectClass::Io;
      s.reason = "performs input/output";
    } else {
      s.classification = EffectClass::Unknown;
      s.reason = "no definition available";
    }
    return s;
  }

  std::map<std::string, int> params;
  for (int i = 0; i < static_cast<int>(fn->params.size()); ++i)
    params[fn->params[i].decl.name] = i;
  std::set<std::string> locals, statics;
  visit_stmts(*fn->body, [&](const Stmt& st) {
    if (st.kind != StmtKind::Decl) return;
    for (const auto& d : st.decl.declarators)
      (st.decl.storage == StorageClass::Static ? statics : locals).insert(d.name);
  });

  bool io = false, unknown = false;
  std::string why;
  auto on_touch = [&](const Touch& t) {
    bool local = locals.count(t.name) > 0;
    bool is_static = statics.count(t.name) > 0;
    auto p = params.find(t.name);
    if (t.mode == AccessMode::Write) {
      if (p != params.end()) {
        if (t.element) s.written_params.insert(p->second);
      } else if (is_static) {
        s.written_globals.insert(name + "::" + t.name);
      } else if (!local) {
        s.written_globals.insert(t.name);
      }
    } else if (p == params.end() && !local) {
      s.read_globals.insert(is_static ? name + "::" + t.name : t.name);
    }
  };
  CallHook hook = [&](const Expr& call, const std::function<void(const Touch&)>& emit) {
    SideEffectSummary c = summary(call.text);
    if (c.classification == EffectClass::Io) {
      io = true;
      if (why.empty()) why = "calls " + call.text + " (io)";
    } else if (c.classification == EffectClass::Unknown) {
      unknown = true;
      if (why.empty()) why = "calls " + call.text + " (" + c.reason + ")";
    }
    call_touches(call, emit);
  };
  visit_stmts(*fn->body, [&](const Stmt& st) {
    for (const Expr* e : {st.cond.get(), st.step.get(), st.expr.get()})
      if (e) walk_touches_with_calls(*e, on_touch, hook);
    for (const auto& d : st.decl.declarators)
      if (d.init) walk_touches_with_calls(*d.init, on_touch, hook);
  });

  if (io) {
    s.classification = EffectClass::Io;
  } else if (unknown) {
    s.classification = EffectClass::Unknown;
  } else if (!s.written_globals.empty()) {
    s.classification = EffectClass::WritesGlobals;
  } else if (!s.written_params.empty()) {
    s.classification = EffectClass::WritesParams;
  }
  s.reason = why;
  return s;
}

void EffectOracle::call_touches(const Expr& call, const std::function<void(const Touch&)>& fn) {
  SideEffectSummary c = summary(call.text);
  for (const auto& g : c.read_globals) fn(Touch{g, AccessMode::Read, nullptr, true, false});
  for (const auto& g : c.written_globals) fn(Touch{g, AccessMode::Write, nullptr, true, false});
  for (int idx : c.written_params) {
    if (idx >= static_cast<int>(call.args.size())) continue;
    const Expr& arg = call.arg(idx);
    std::string base = lvalue_name(arg);
    if (arg.kind == ExprKind::Unary && arg.text == "&") base = lvalue_name(arg.arg(0));
    if (!base.empty()) fn(Touch{base, AccessMode::Write, nullptr, true, false});
  }
}

}  // namespace detail

SideEffectSummary side_effects(const TranslationUnit& unit, const std::string& function,
                               const Config& config) {
  detail::EffectOracle oracle(&unit, config);
  return oracle.summary(function);
}

std::set<std::string> callees(const TranslationUnit& unit, const std::string& function,
                              bool transitive) {
  std::set<std::string> out;
  std::vector<std::string> work{function};
  std::set<std::string> seen{function};
  while (!work.empty()) {
    std::string f = work.back();
    work.pop_back();
    const Function* fn = unit.find_function(f);
    if (!fn || !fn->body) continue;
    for (const auto& c : called_functions(*fn->body)) {
      out.insert(c);
      if (transitive && seen.insert(c).second) work.push_back(c);
    }
    if (!transitive) break;
  }
  return out;
}

}  // namespace ompdiff::analysis
