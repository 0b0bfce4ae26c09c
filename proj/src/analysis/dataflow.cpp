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

namespace detail {

ExposureWalker::ExposureWalker(const TranslationUnit* unit, const Config* config)
    : unit_(unit), config_(config) {}

void ExposureWalker::walk_expr(const Expr& e, std::set<std::string>& defined,
                               std::set<std::string>& exposed, bool conditional) const {
  auto on = [&](const Touch& t) {
    if (t.mode == AccessMode::Read) {
      if (!defined.count(t.name)) exposed.insert(t.name);
      return;
    }
    if (!t.expr) {
      // A callee may have replaced the value: later reads see the callee's.
      defined.erase(t.name);
    } else if (t.must && !t.element) {
      defined.insert(t.name);
    }
  };
  if (unit_) {
    if (!oracle_) oracle_ = std::make_unique<EffectOracle>(unit_, config_ ? *config_ : Config{});
    walk_touches_with_calls(e, on, oracle_->hook(), conditional);
  } else {
    walk_touches(e, on, conditional);
  }
}

void ExposureWalker::walk(const Stmt& s, std::set<std::string>& defined,
                          std::set<std::string>& exposed) const {
  switch (s.kind) {
    case StmtKind::Compound:
      for (const auto& c : s.stmts) walk(*c, defined, exposed);
      break;
    case StmtKind::Expr:
    case StmtKind::Return:
      if (s.expr) walk_expr(*s.expr, defined, exposed);
      break;
    case StmtKind::Decl:
      for (const auto& d : s.decl.declarators) {
        for (const auto& dim : d.dims)
          if (dim) walk_expr(*dim, defined, exposed);
        if (d.init) {
          walk_expr(*d.init, defined, exposed);
          defined.insert(d.name);
        } else {
          // A fresh object: nothing flows into it from outside.
          defined.insert(d.name);
        }
      }
      break;
    case StmtKind::If: {
      walk_expr(*s.cond, defined, exposed);
      std::set<std::string> then_defs = defined, else_defs = defined;
      walk(*s.body, then_defs, exposed);
      if (s.else_body) walk(*s.else_body, else_defs, exposed);
      std::set<std::string> both;
      std::set_intersection(then_defs.begin(), then_defs.end(), else_defs.begin(), else_defs.end(),
                            std::inserter(both, both.begin()));
      defined = std::move(both);
      break;
    }
    case StmtKind::For: {
      if (s.init) walk(*s.init, defined, exposed);
      if (s.cond) walk_expr(*s.cond, defined, exposed);
      std::set<std::string> inner = defined;
      walk(*s.body, inner, exposed);
      if (s.step) walk_expr(*s.step, inner, exposed);
      LoopHeader h = loop_header(s);
      auto trips = h.canonical ? h.constant_trip_count() : std::nullopt;
      if (trips && *trips >= 1) {
        defined = std::move(inner);
        for (const auto& a : covered_arrays(s)) defined.insert(a);
      } else {
        // The body may not run; callee kills inside it still count.
        std::set<std::string> kept;
        for (const auto& d : defined)
          if (inner.count(d)) kept.insert(d);
        defined = std::move(kept);
      }
      break;
    }
    case StmtKind::Directive:
    case StmtKind::Empty: break;
  }
}

std::set<std::string> ExposureWalker::covered_arrays(const Stmt& loop) const {
  struct Level {
    std::string index;
    std::int64_t extent;
  };
  std::set<std::string> out;
  std::function<void(const Stmt&, std::vector<Level>&)> rec = [&](const Stmt& s,
                                                                  std::vector<Level>& nest) {
    switch (s.kind) {
      case StmtKind::Compound:
        for (const auto& c : s.stmts) rec(*c, nest);
        break;
      case StmtKind::For: {
        LoopHeader h = loop_header(s);
        if (!h.canonical || !h.ascending || h.stride != 1) return;
        auto lb = symbolic::to_poly(*h.lower);
        auto trips = h.constant_trip_count();
        if (!lb || lb->constant_value() != std::int64_t{0} || !trips) return;
        nest.push_back({h.index, *trips});
        rec(*s.body, nest);
        nest.pop_back();
        break;
      }
      case StmtKind::Expr: {
        const Expr& e = *s.expr;
        if (e.kind != ExprKind::Assign || e.text != "=" || e.arg(0).kind != ExprKind::Index) return;
        std::vector<const Expr*> subs;
        const Expr& base = index_base(e.arg(0), &subs);
        if (base.kind != ExprKind::Ident || !unit_) return;
        auto info = lookup_var(*unit_, function, base.text);
        if (!info || !info->decl) return;
        auto dims = constant_dims(*info->decl);
        if (!dims || dims->size() != subs.size()) return;
        std::set<std::string> used;
        for (std::size_t k = 0; k < subs.size(); ++k) {
          if (subs[k]->kind != ExprKind::Ident) return;
          auto lvl = std::find_if(nest.begin(), nest.end(),
                                  [&](const Level& l) { return l.index == subs[k]->text; });
          if (lvl == nest.end() || lvl->extent < (*dims)[k] || !used.insert(lvl->index).second)
            return;
        }
        // Right-hand sides must not feed on the array being covered.
        if (count_refs(e.arg(1), base.text) == 0) out.insert(base.text);
        break;
      }
      default: break;
    }
  };
  std::vector<Level> nest;
  rec(loop, nest);
  return out;
}

namespace {

// Exposure of `var` when execution starts at `s`; returns 1 if read first,
// 0 if defined first, -1 if neither.
int first_touch(const ExposureWalker& w, const Stmt& s, const std::string& var,
                std::set<std::string>& defined) {
  std::set<std::string> exposed;
  w.walk(s, defined, exposed);
  if (exposed.count(var)) return 1;
  if (defined.count(var)) return 0;
  return -1;
}

bool exposed_in(const ExposureWalker& w, const Stmt& s, const std::string& var) {
  std::set<std::string> defined;
  return first_touch(w, s, var, defined) == 1;
}

// For loops executing `fn` body more than once matter for static locals.
bool exposed_at_some_entry(const TranslationUnit& unit, const std::string& var,
                           const Config& config) {
  for (const Function* f : unit.functions()) {
    if (!f->body) continue;
    if (lookup_var(unit, f, var) && !lookup_var(unit, f, var)->is_global) continue;
    ExposureWalker w(&unit, &config);
    w.function = f;
    if (exposed_in(w, *f->body, var)) return true;
  }
  return false;
}

}  // namespace

bool live_after(const LoopRef& ref, const std::string& var, const Config& config) {
  if (!ref.unit || !ref.function || !ref.function->body) return true;
  const Function& fn = *ref.function;
  ExposureWalker w(ref.unit, &config);
  w.function = &fn;
  auto path = path_to(*fn.body, ref.loop);
  if (path.empty()) return true;

  for (std::size_t k = path.size() - 1; k-- > 0;) {
    const Stmt& parent = *path[k];
    const Stmt* child = path[k + 1];
    if (parent.kind == StmtKind::Compound) {
      auto it = std::find_if(parent.stmts.begin(), parent.stmts.end(),
                             [&](const StmtBox& c) { return c.get() == child; });
      std::set<std::string> defined;
      for (++it; it != parent.stmts.end(); ++it) {
        int r = first_touch(w, **it, var, defined);
        if (r == 1) return true;
        if (r == 0) return false;
      }
    } else if (parent.kind == StmtKind::For && child == parent.body.get()) {
      // Another trip of the enclosing loop.
      std::set<std::string> defined, exposed;
      if (parent.step) w.walk_expr(*parent.step, defined, exposed);
      if (parent.cond) w.walk_expr(*parent.cond, defined, exposed);
      if (exposed.count(var)) return true;
      if (!defined.count(var) && exposed_in(w, *parent.body, var)) return true;
    }
  }

  auto info = lookup_var(*ref.unit, &fn, var);
  if (!info) return true;
  if (info->is_param) return info->decl && info->decl->is_array_like();
  if (info->is_global || info->storage == StorageClass::Static) {
    if (info->storage == StorageClass::Static && !info->is_global)
      return exposed_in(w, *fn.body, var);
    return exposed_at_some_entry(*ref.unit, var, config);
  }
  return false;
}

}  // namespace detail

bool live_across_regions(const TranslationUnit& unit, const std::string& var) {
  struct Region {
    const Function* fn;
    const Stmt* stmt;
    bool exposed;
    bool writes;
    bool repeats;
  };
  Config config;
  std::set<std::string> called_in_loops;
  for (const Function* f : unit.functions()) {
    if (!f->body) continue;
    visit_stmts(*f->body, [&](const Stmt& s) {
      if (s.kind == StmtKind::For)
        for (const auto& c : called_functions(*s.body)) called_in_loops.insert(c);
    });
  }

  std::vector<Region> regions;
  detail::EffectOracle oracle(&unit, config);
  for (const Function* f : unit.functions()) {
    if (!f->body) continue;
    detail::ExposureWalker w(&unit, &config);
    w.function = f;
    std::string qualified = f->name + "::" + var;
    std::function<void(const Stmt&, bool)> rec = [&](const Stmt& s, bool in_loop) {
      if (s.omp && s.omp->spawns_team()) {
        std::set<std::string> defined, exposed;
        w.walk(s, defined, exposed);
        bool writes = false;
        auto note = [&](const detail::Touch& t) {
          if (t.mode == AccessMode::Write && (t.name == var || t.name == qualified)) writes = true;
        };
        visit_stmts(s, [&](const Stmt& st) {
          for (const Expr* e : {st.cond.get(), st.step.get(), st.expr.get()})
            if (e) detail::walk_touches_with_calls(*e, note, oracle.hook());
          for (const auto& d : st.decl.declarators)
            if (d.init) detail::walk_touches_with_calls(*d.init, note, oracle.hook());
        });
        bool exp = exposed.count(var) || exposed.count(qualified);
        regions.push_back({f, &s, exp, writes, in_loop || called_in_loops.count(f->name) > 0});
        return;
      }
      for (const auto& c : s.stmts) rec(*c, in_loop);
      if (s.init) rec(*s.init, in_loop);
      if (s.body) rec(*s.body, in_loop || s.kind == StmtKind::For);
      if (s.else_body) rec(*s.else_body, in_loop);
    };
    rec(*f->body, false);
  }

  for (const auto& r2 : regions) {
    if (!r2.exposed) continue;
    if (r2.writes && r2.repeats) return true;
    for (const auto& r1 : regions)
      if (&r1 != &r2 && r1.writes) return true;
  }
  return false;
}

}  // namespace ompdiff::analysis
