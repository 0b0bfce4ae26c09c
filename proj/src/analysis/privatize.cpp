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

#include "analysis/internal.hpp"

namespace ompdiff::analysis {

PrivatizationResult find_private(const LoopRef& ref, const Config& config) {
  PrivatizationResult result;
  if (!ref.loop || ref.loop->kind != StmtKind::For) return result;
  const Stmt& loop = *ref.loop;
  LoopHeader header = loop_header(loop);

  std::set<std::string> referenced, written, via_calls;
  auto note = [&](const detail::Touch& t) {
    referenced.insert(t.name);
    if (t.mode == AccessMode::Write) written.insert(t.name);
    if (!t.expr) via_calls.insert(t.name);
  };
  std::unique_ptr<detail::EffectOracle> oracle;
  if (ref.unit) oracle = std::make_unique<detail::EffectOracle>(ref.unit, config);
  auto walk = [&](const Expr& e) {
    if (oracle) {
      detail::walk_touches_with_calls(e, note, oracle->hook());
    } else {
      detail::walk_touches(e, note);
    }
  };
  visit_stmts(loop, [&](const Stmt& st) {
    for (const Expr* e : {st.cond.get(), st.step.get(), st.expr.get()})
      if (e) walk(*e);
    for (const auto& d : st.decl.declarators) {
      if (d.init) walk(*d.init);
      if (d.init) written.insert(d.name);
    }
  });

  std::set<std::string> excluded = names_declared(*loop.body);
  if (header.canonical) excluded.insert(header.index);
  if (ref.unit)
    for (const auto& v : threadprivate_vars(*ref.unit)) excluded.insert(v);

  detail::ExposureWalker walker(ref.unit, &config);
  walker.function = ref.function;
  std::set<std::string> defined, exposed;
  walker.walk(*loop.body, defined, exposed);

  for (const auto& v : referenced) {
    if (excluded.count(v)) continue;
    VarClass cls = VarClass::Shared;
    std::optional<VarInfo> info;
    if (ref.unit) info = lookup_var(*ref.unit, ref.function, v);
    bool pointer = info && info->decl && info->decl->pointer_depth > 0 && info->decl->dims.empty();
    bool array = info && info->decl && !info->decl->dims.empty();
    bool candidate = written.count(v) && !via_calls.count(v) && !pointer && !exposed.count(v);
    if (candidate && array && !defined.count(v)) candidate = false;
    if (candidate && info && info->is_param && array) candidate = false;
    if (candidate) {
      bool live = detail::live_after(ref, v, config);
      bool global = info && (info->is_global || info->storage == StorageClass::Static);
      if (live) {
        cls = defined.count(v) ? VarClass::Lastprivate : VarClass::Shared;
      } else {
        cls = global ? VarClass::ThreadprivateCandidate : VarClass::Private;
      }
    }
    result.classes[v] = cls;
  }
  return result;
}

}  // namespace ompdiff::analysis
