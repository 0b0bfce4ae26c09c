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

#include "analysis/internal.hpp"
#include "ompdiff/error.hpp"
#include "transforms/internal.hpp"

namespace ompdiff::transforms {

namespace {

using analysis::detail::count_refs;

struct Region {
  Function* fn = nullptr;
  Stmt* stmt = nullptr;
};

std::vector<Region> regions(TranslationUnit& unit) {
  std::vector<Region> out;
  for (Function* fn : unit.functions()) {
    if (!fn->body) continue;
    std::function<void(Stmt&)> rec = [&](Stmt& s) {
      if (s.omp && s.omp->spawns_team() && s.kind != StmtKind::Directive) {
        out.push_back({fn, &s});
        return;
      }
      for (auto& c : s.stmts) rec(*c);
      if (s.init) rec(*s.init);
      if (s.body) rec(*s.body);
      if (s.else_body) rec(*s.else_body);
    };
    rec(*fn->body);
  }
  return out;
}

// Own expressions of `s`, not those of nested statements.
int own_refs(const Stmt& s, const std::string& var) {
  int n = 0;
  auto count = [&](const Expr& e) { n += count_refs(e, var); };
  for (const ExprBox* e : {&s.cond, &s.step, &s.expr})
    if (*e) count(**e);
  for (const auto& d : s.decl.declarators) {
    for (const auto& dim : d.dims)
      if (dim) count(*dim);
    if (d.init) count(*d.init);
  }
  return n;
}

void drop_from_threadprivate(TranslationUnit& unit, const std::string& var) {
  auto scrub = [&](Stmt& s) {
    if (s.kind != StmtKind::Directive || !s.omp || s.omp->kind != OmpKind::Threadprivate) return;
    auto& v = s.omp->threadprivate_vars;
    v.erase(std::remove(v.begin(), v.end(), var), v.end());
  };
  auto empty_tp = [](const Stmt& s) {
    return s.kind == StmtKind::Directive && s.omp && s.omp->kind == OmpKind::Threadprivate &&
           s.omp->threadprivate_vars.empty();
  };
  for (auto& item : unit.items) {
    if (item.kind == TopItem::Kind::Directive) scrub(item.stmt);
    if (item.kind == TopItem::Kind::Function && item.fn.body) {
      visit_stmts_mut(*item.fn.body, [&](Stmt& s) {
        for (auto& c : s.stmts) scrub(*c);
        s.stmts.erase(std::remove_if(s.stmts.begin(), s.stmts.end(),
                                     [&](const StmtBox& c) { return empty_tp(*c); }),
                      s.stmts.end());
      });
    }
  }
  unit.items.erase(std::remove_if(unit.items.begin(), unit.items.end(),
                                  [&](const TopItem& i) {
                                    return i.kind == TopItem::Kind::Directive && empty_tp(i.stmt);
                                  }),
                   unit.items.end());
}

// A parameter or outermost-block local of `fn` hides the global `var`.
bool shadows(const Function& fn, const std::string& var) {
  for (const auto& p : fn.params)
    if (p.decl.name == var) return true;
  if (!fn.body) return false;
  for (const auto& c : fn.body->stmts)
    if (c->kind == StmtKind::Decl)
      for (const auto& d : c->decl.declarators)
        if (d.name == var) return true;
  return false;
}

void to_loop_private(TranslationUnit& unit, const std::string& var, const analysis::Config& config) {
  if (!analysis::threadprivate_vars(unit).count(var))
    throw Error(Errc::UnsupportedConstruct, "'" + var + "' is not threadprivate");
  if (analysis::live_across_regions(unit, var))
    throw Error(Errc::PersistsAcrossRegions,
                "'" + var + "' carries a per-thread value from one parallel region to another");

  std::vector<Region> regs = regions(unit);
  std::set<std::string> called;
  for (Function* fn : unit.functions()) {
    if (!fn->body || shadows(*fn, var)) continue;
    int total = count_refs(*fn->body, var);
    int inside = 0;
    for (const auto& r : regs)
      if (r.fn == fn) inside += count_refs(*r.stmt, var);
    if (total > inside)
      throw Error(Errc::UnsupportedConstruct,
                  "'" + var + "' is used outside parallel regions in '" + fn->name + "'");
  }
  for (const auto& r : regs) {
    for (const auto& f : analysis::called_functions(*r.stmt)) {
      called.insert(f);
      auto more = analysis::callees(unit, f, true);
      called.insert(more.begin(), more.end());
    }
  }
  for (const auto& f : called) {
    const Function* fn = unit.find_function(f);
    if (fn && fn->body && !shadows(*fn, var) && count_refs(*fn->body, var) > 0)
      throw Error(Errc::UnsupportedConstruct,
                  "'" + var + "' is used by '" + f + "', which is called from a parallel region");
  }

  drop_from_threadprivate(unit, var);
  for (const auto& r : regs) {
    if (count_refs(*r.stmt, var) == 0 || r.stmt->omp->privatizes(var)) continue;
    analysis::detail::ExposureWalker walker(&unit, &config);
    walker.function = r.fn;
    std::set<std::string> defined, exposed;
    walker.walk(*r.stmt, defined, exposed);
    if (exposed.count(var))
      detail::add_unique(r.stmt->omp->firstprivate_vars, var);
    else
      detail::add_unique(r.stmt->omp->private_vars, var);
  }
}

void to_threadprivate(TranslationUnit& unit, const std::string& var) {
  // Locate the one declaration of `var`.
  std::size_t global_item = unit.items.size();
  for (std::size_t k = 0; k < unit.items.size(); ++k) {
    const auto& item = unit.items[k];
    if (item.kind != TopItem::Kind::Decl) continue;
    for (const auto& d : item.stmt.decl.declarators)
      if (d.name == var && item.stmt.decl.storage != StorageClass::Extern) global_item = k;
  }
  Stmt* static_block = nullptr;
  std::size_t static_pos = 0;
  int local_decls = 0;
  for (Function* fn : unit.functions()) {
    for (const auto& p : fn->params)
      if (p.decl.name == var) ++local_decls;
    if (!fn->body) continue;
    visit_stmts_mut(*fn->body, [&](Stmt& s) {
      for (std::size_t k = 0; k < s.stmts.size(); ++k) {
        const Stmt& c = *s.stmts[k];
        if (c.kind != StmtKind::Decl) continue;
        for (const auto& d : c.decl.declarators) {
          if (d.name != var) continue;
          ++local_decls;
          if (c.decl.storage == StorageClass::Static) {
            static_block = &s;
            static_pos = k;
          }
        }
      }
      if (s.kind == StmtKind::For && s.init && s.init->kind == StmtKind::Decl)
        for (const auto& d : s.init->decl.declarators)
          if (d.name == var) ++local_decls;
    });
  }
  bool global = global_item < unit.items.size();
  if (!global && !static_block)
    throw Error(Errc::NotStaticOrGlobal, "'" + var + "' is neither static nor global");
  if ((global && local_decls > 0) || (!global && local_decls > 1))
    throw Error(Errc::UnsupportedConstruct, "'" + var + "' is declared more than once");
  if (analysis::threadprivate_vars(unit).count(var))
    throw Error(Errc::UnsupportedConstruct, "'" + var + "' is already threadprivate");

  // Every use must sit inside a construct that makes it private.
  for (Function* fn : unit.functions()) {
    if (!fn->body) continue;
    std::function<void(const Stmt&, bool)> rec = [&](const Stmt& s, bool covered) {
      if (s.omp) {
        const OmpDirective& d = *s.omp;
        if (std::find(d.private_vars.begin(), d.private_vars.end(), var) != d.private_vars.end())
          covered = true;
        else if (d.privatizes(var))
          throw Error(Errc::UnsupportedConstruct,
                      "'" + var + "' is copied in or out of a construct in '" + fn->name + "'");
      }
      if (!covered && own_refs(s, var) > 0)
        throw Error(Errc::UnsupportedConstruct,
                    "'" + var + "' is used outside a privatizing construct in '" + fn->name + "'");
      for (const auto& c : s.stmts) rec(*c, covered);
      if (s.init) rec(*s.init, covered);
      if (s.body) rec(*s.body, covered);
      if (s.else_body) rec(*s.else_body, covered);
    };
    rec(*fn->body, false);
  }

  for (Function* fn : unit.functions()) {
    if (!fn->body) continue;
    visit_stmts_mut(*fn->body, [&](Stmt& s) {
      if (!s.omp) return;
      auto& pv = s.omp->private_vars;
      pv.erase(std::remove(pv.begin(), pv.end(), var), pv.end());
    });
  }
  OmpDirective d;
  d.kind = OmpKind::Threadprivate;
  d.threadprivate_vars = {var};
  if (global) {
    TopItem item;
    item.kind = TopItem::Kind::Directive;
    item.stmt = make_directive_stmt(std::move(d));
    unit.items.insert(unit.items.begin() + static_cast<std::ptrdiff_t>(global_item + 1),
                      std::move(item));
  } else {
    static_block->stmts.insert(static_block->stmts.begin() + static_cast<std::ptrdiff_t>(static_pos + 1),
                               StmtBox(make_directive_stmt(std::move(d))));
  }
}

}  // namespace

namespace detail {

void convert_one(TranslationUnit& unit, const std::string& var, TpDirection direction,
                 const analysis::Config& config) {
  if (direction == TpDirection::ToLoopPrivate) to_loop_private(unit, var, config);
  else to_threadprivate(unit, var);
}

std::vector<std::string> threadprivate_candidates(TranslationUnit& unit, TpDirection direction) {
  std::vector<std::string> out;
  if (direction == TpDirection::ToLoopPrivate) {
    for (const auto& v : analysis::threadprivate_vars(unit)) out.push_back(v);
    return out;
  }
  for (const auto& r : regions(unit)) {
    visit_stmts(*r.stmt, [&](const Stmt& s) {
      if (!s.omp) return;
      for (const auto& v : s.omp->private_vars) {
        auto info = analysis::lookup_var(unit, r.fn, v);
        if (info && (info->is_global || info->storage == StorageClass::Static)) add_unique(out, v);
      }
    });
  }
  return out;
}

}  // namespace detail

void convert_threadprivate(TranslationUnit& unit, const std::vector<std::string>& vars,
                           TpDirection direction) {
  TranslationUnit work = unit;
  for (const auto& v : vars) detail::convert_one(work, v, direction, analysis::Config{});
  unit = std::move(work);
}

}  // namespace ompdiff::transforms
