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
#include <functional>
#include <map>

#include "analysis/internal.hpp"
#include "ompdiff/error.hpp"
#include "transforms/internal.hpp"

namespace ompdiff::transforms {

namespace {

using analysis::VarClass;

struct Verdict {
  bool ok = false;
  std::string reason;
  OmpDirective directive;
};

bool has_return(const Stmt& s) {
  bool found = false;
  visit_stmts(s, [&](const Stmt& st) {
    if (st.kind == StmtKind::Return) found = true;
  });
  return found;
}

bool constant_extent(const TranslationUnit& unit, const Function* fn, const std::string& var) {
  auto info = analysis::lookup_var(unit, fn, var);
  return info && info->decl && analysis::detail::constant_dims(*info->decl).has_value();
}

Verdict qualify(const TranslationUnit& unit, const Function* fn, const Stmt& loop,
                const analysis::Config& config) {
  Verdict v;
  analysis::LoopHeader header = analysis::loop_header(loop);
  if (!header.canonical) {
    v.reason = "not canonical: " + header.reason;
    return v;
  }
  if (detail::has_directive(loop)) {
    v.reason = "already contains OpenMP directives";
    return v;
  }
  if (has_return(*loop.body)) {
    v.reason = "body contains a return statement";
    return v;
  }
  if (auto info = analysis::lookup_var(unit, fn, header.index);
      info && analysis::detail::is_float_type(info->type)) {
    v.reason = "loop index '" + header.index + "' is floating point";
    return v;
  }
  for (const auto& f : analysis::called_functions(loop)) {
    analysis::SideEffectSummary fx = analysis::side_effects(unit, f, config);
    if (!fx.parallel_safe()) {
      v.reason = "call to '" + f + "' (" + analysis::effect_class_name(fx.classification) + ")";
      return v;
    }
  }

  analysis::LoopRef ref = analysis::locate(unit, &loop);
  auto accesses = analysis::collect_accesses(ref, config);
  auto edges = analysis::dependence_test(loop, accesses);
  analysis::PrivatizationResult priv = analysis::find_private(ref, config);
  auto reductions = analysis::recognize_reductions(ref);

  std::map<std::string, const analysis::ReductionCandidate*> red;
  for (const auto& c : reductions) red[c.variable] = &c;

  // Block-scoped locals of the body are fresh objects in every iteration.
  std::set<std::string> body_locals = analysis::names_declared(*loop.body);
  for (const auto& e : edges) {
    if (!e.carried()) continue;
    const std::string& base = e.src.base;
    if (base == header.index || body_locals.count(base)) continue;
    if (auto it = red.find(base); it != red.end()) {
      if (!it->second->is_array() || constant_extent(unit, fn, base)) continue;
      v.reason = "array reduction on '" + base + "' has no constant extent";
      return v;
    }
    if (priv.privatizable(base)) continue;
    v.reason = std::string(e.status == analysis::DepStatus::Proven ? "" : "assumed ") + "carried " +
               analysis::dep_kind_name(e.kind) + " dependence on '" + base + "'";
    if (!e.reason.empty()) v.reason += " (" + e.reason + ")";
    return v;
  }

  OmpDirective d;
  d.kind = OmpKind::ParallelFor;
  for (const auto& [var, cls] : priv.classes) {
    if (red.count(var)) continue;
    if (cls == VarClass::Private || cls == VarClass::ThreadprivateCandidate)
      d.private_vars.push_back(var);
    else if (cls == VarClass::Lastprivate)
      d.lastprivate_vars.push_back(var);
  }
  bool declared_in_header = loop.init && loop.init->kind == StmtKind::Decl;
  if (!declared_in_header && !red.count(header.index) &&
      analysis::detail::live_after(ref, header.index, config))
    detail::add_unique(d.lastprivate_vars, header.index);
  for (const auto& c : reductions) {
    auto it = std::find_if(d.reductions.begin(), d.reductions.end(),
                           [&](const ReductionClause& r) { return r.op == c.op; });
    if (it == d.reductions.end()) {
      d.reductions.push_back(ReductionClause{c.op, {}});
      it = std::prev(d.reductions.end());
    }
    it->vars.push_back(c.variable);
  }
  v.ok = true;
  v.directive = std::move(d);
  return v;
}

// Loops directly nested in `s` without another loop in between.
void child_loops(Stmt& s, std::vector<Stmt*>& out) {
  for (auto& c : s.stmts) {
    if (c->kind == StmtKind::For) out.push_back(c.get());
    else child_loops(*c, out);
  }
  if (s.kind != StmtKind::For && s.body) {
    if (s.body->kind == StmtKind::For) out.push_back(s.body.get());
    else child_loops(*s.body, out);
  }
  if (s.else_body) {
    if (s.else_body->kind == StmtKind::For) out.push_back(s.else_body.get());
    else child_loops(*s.else_body, out);
  }
}

}  // namespace

std::vector<Placement> parallelize_loop(TranslationUnit& unit, Stmt& nest,
                                        const analysis::Config& config) {
  if (nest.kind != StmtKind::For)
    throw Error(Errc::NoParallelLoop, "statement is not a loop", "level 0: not a loop");
  const Function* fn = detail::function_of(unit, &nest);

  std::vector<Placement> placements;
  std::vector<OmpDirective> directives;
  std::vector<std::string> reasons;
  std::function<void(Stmt&, int, std::vector<std::string>)> visit =
      [&](Stmt& loop, int level, std::vector<std::string> above) {
        Verdict v = qualify(unit, fn, loop, config);
        if (v.ok) {
          Placement p;
          p.loop = &loop;
          p.level = level;
          p.inner = level > 0;
          p.reasons = std::move(above);
          placements.push_back(std::move(p));
          directives.push_back(std::move(v.directive));
          return;
        }
        std::string r = "level " + std::to_string(level) + ": " + v.reason;
        reasons.push_back(r);
        above.push_back(r);
        std::vector<Stmt*> kids;
        if (loop.body->kind == StmtKind::For) kids.push_back(loop.body.get());
        else child_loops(*loop.body, kids);
        for (Stmt* k : kids) visit(*k, level + 1, above);
      };
  visit(nest, 0, {});

  if (placements.empty()) {
    std::string detail;
    for (const auto& r : reasons) detail += (detail.empty() ? "" : "; ") + r;
    throw Error(Errc::NoParallelLoop, "no loop of the nest can be parallelized", detail);
  }
  for (std::size_t k = 0; k < placements.size(); ++k) placements[k].loop->omp = directives[k];
  return placements;
}

}  // namespace ompdiff::transforms
