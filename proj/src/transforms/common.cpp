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

#include "transforms/internal.hpp"

namespace ompdiff::transforms {

namespace detail {

Function* function_of(TranslationUnit& unit, const Stmt* stmt) {
  for (Function* fn : unit.functions()) {
    if (!fn->body) continue;
    bool found = false;
    visit_stmts(*fn->body, [&](const Stmt& s) {
      if (&s == stmt) found = true;
    });
    if (found) return fn;
  }
  return nullptr;
}

std::vector<Stmt*> path_in(Function& fn, const Stmt* stmt) {
  std::vector<Stmt*> path;
  std::function<bool(Stmt&)> rec = [&](Stmt& s) {
    path.push_back(&s);
    if (&s == stmt) return true;
    for (auto& c : s.stmts)
      if (rec(*c)) return true;
    if (s.init && rec(*s.init)) return true;
    if (s.body && rec(*s.body)) return true;
    if (s.else_body && rec(*s.else_body)) return true;
    path.pop_back();
    return false;
  };
  if (fn.body) rec(*fn.body);
  return path;
}

std::set<std::string> identifiers(const TranslationUnit& unit) {
  std::set<std::string> out;
  auto note_stmt = [&](const Stmt& s) {
    visit_exprs(s, [&](const Expr& e) {
      if (e.kind == ExprKind::Ident || e.kind == ExprKind::Call) out.insert(e.text);
    });
    for (const auto& n : analysis::names_declared(s)) out.insert(n);
  };
  for (const auto& item : unit.items) {
    if (item.kind == TopItem::Kind::Decl) note_stmt(item.stmt);
    if (item.kind != TopItem::Kind::Function) continue;
    out.insert(item.fn.name);
    for (const auto& p : item.fn.params) out.insert(p.decl.name);
    if (item.fn.body) note_stmt(*item.fn.body);
  }
  return out;
}

std::string fresh_name(std::set<std::string>& taken, const std::string& base) {
  std::string name = base;
  for (int k = 2; taken.count(name); ++k) name = base + "_" + std::to_string(k);
  taken.insert(name);
  return name;
}

bool has_directive(const Stmt& s) {
  bool found = false;
  visit_stmts(s, [&](const Stmt& st) {
    if (st.omp) found = true;
  });
  return found;
}

bool inside_parallel(Function& fn, const Stmt* stmt) {
  auto path = path_in(fn, stmt);
  for (std::size_t k = 0; k + 1 < path.size(); ++k)
    if (path[k]->omp && path[k]->omp->spawns_team()) return true;
  return false;
}

Stmt counted_loop(const std::string& index, std::int64_t n, Stmt body) {
  Expr step;
  step.kind = ExprKind::Postfix;
  step.text = "++";
  step.args.emplace_back(make_ident(index));
  return make_for(make_assign("=", make_ident(index), make_int(0)),
                  make_binary("<", make_ident(index), make_int(n)), std::move(step),
                  std::move(body));
}

void strip_all(Stmt& s) {
  s.omp.reset();
  auto& kids = s.stmts;
  kids.erase(std::remove_if(kids.begin(), kids.end(),
                            [](const StmtBox& c) { return c->kind == StmtKind::Directive; }),
             kids.end());
  for (auto& c : kids) strip_all(*c);
  if (s.init) strip_all(*s.init);
  if (s.body) strip_all(*s.body);
  if (s.else_body) strip_all(*s.else_body);
}

void for_each_expr_mut(Stmt& s, const std::function<void(Expr&)>& fn) {
  visit_stmts_mut(s, [&](Stmt& st) {
    for (ExprBox* e : {&st.cond, &st.step, &st.expr})
      if (*e) visit_expr_mut(**e, fn);
    for (auto& d : st.decl.declarators) {
      for (auto& dim : d.dims)
        if (dim) visit_expr_mut(*dim, fn);
      if (d.init) visit_expr_mut(*d.init, fn);
    }
  });
}

void add_unique(std::vector<std::string>& list, const std::string& v) {
  if (std::find(list.begin(), list.end(), v) == list.end()) list.push_back(v);
}

}  // namespace detail

}  // namespace ompdiff::transforms
