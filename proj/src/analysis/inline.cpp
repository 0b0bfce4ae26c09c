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

namespace {

[[noreturn]] void refuse(const std::string& why, const std::string& detail) {
  throw Error(Errc::InlineRefused, "cannot inline: " + why, detail);
}

std::vector<const Expr*> calls_of(const Function& fn) {
  std::vector<const Expr*> out;
  if (!fn.body) return out;
  visit_exprs(*fn.body, [&](const Expr& e) {
    if (e.kind == ExprKind::Call) out.push_back(&e);
  });
  return out;
}

Function* find_definition(TranslationUnit& unit, const std::string& name) {
  for (auto& item : unit.items)
    if (item.kind == TopItem::Kind::Function && item.fn.name == name && item.fn.body) return &item.fn;
  return nullptr;
}

void rename_in_list(std::vector<std::string>& vars, const std::map<std::string, std::string>& names) {
  for (auto& v : vars)
    if (auto it = names.find(v); it != names.end()) v = it->second;
}

// Renames identifiers and declarators throughout `s`.
void rename(Stmt& s, const std::map<std::string, std::string>& names) {
  auto fix = [&](Expr& e) {
    visit_expr_mut(e, [&](Expr& x) {
      if (x.kind != ExprKind::Ident) return;
      if (auto it = names.find(x.text); it != names.end()) x.text = it->second;
    });
  };
  visit_stmts_mut(s, [&](Stmt& st) {
    if (st.cond) fix(*st.cond);
    if (st.step) fix(*st.step);
    if (st.expr) fix(*st.expr);
    for (auto& d : st.decl.declarators) {
      if (auto it = names.find(d.name); it != names.end()) d.name = it->second;
      for (auto& dim : d.dims)
        if (dim) fix(*dim);
      if (d.init) fix(*d.init);
    }
    if (st.omp) {
      rename_in_list(st.omp->private_vars, names);
      rename_in_list(st.omp->firstprivate_vars, names);
      rename_in_list(st.omp->lastprivate_vars, names);
      rename_in_list(st.omp->shared_vars, names);
      rename_in_list(st.omp->threadprivate_vars, names);
      for (auto& r : st.omp->reductions) rename_in_list(r.vars, names);
      if (st.omp->if_condition) fix(*st.omp->if_condition);
    }
  });
}

// Replaces `*p` and `p[0]` by `x` for every pointer parameter bound to `&x`.
// Returns false if the pointer is used any other way.
bool bind_addresses(Stmt& s, const std::map<std::string, std::string>& bound) {
  bool ok = true;
  auto fix = [&](Expr& root) {
    std::function<void(Expr&)> rec = [&](Expr& e) {
      if (e.kind == ExprKind::Unary && e.text == "*" && e.arg(0).kind == ExprKind::Ident) {
        if (auto it = bound.find(e.arg(0).text); it != bound.end()) {
          e = make_ident(it->second);
          return;
        }
      }
      if (e.kind == ExprKind::Index && e.arg(0).kind == ExprKind::Ident) {
        if (auto it = bound.find(e.arg(0).text); it != bound.end()) {
          auto zero = symbolic::to_poly(e.arg(1));
          if (zero && zero->constant_value() == std::int64_t{0}) {
            e = make_ident(it->second);
          } else {
            ok = false;
          }
          return;
        }
      }
      if (e.kind == ExprKind::Ident && bound.count(e.text)) {
        ok = false;
        return;
      }
      for (auto& a : e.args) rec(*a);
    };
    rec(root);
  };
  visit_stmts_mut(s, [&](Stmt& st) {
    if (st.cond) fix(*st.cond);
    if (st.step) fix(*st.step);
    if (st.expr) fix(*st.expr);
    for (auto& d : st.decl.declarators)
      if (d.init) fix(*d.init);
    if (st.omp)
      for (const auto& [p, x] : bound)
        if (st.omp->lists(p)) ok = false;
  });
  return ok;
}

std::set<std::string> identifiers(const TranslationUnit& unit) {
  std::set<std::string> out;
  for (const auto& item : unit.items) {
    if (item.kind == TopItem::Kind::Decl)
      for (const auto& d : item.stmt.decl.declarators) out.insert(d.name);
    if (item.kind != TopItem::Kind::Function) continue;
    out.insert(item.fn.name);
    for (const auto& p : item.fn.params) out.insert(p.decl.name);
    if (!item.fn.body) continue;
    visit_exprs(*item.fn.body, [&](const Expr& e) {
      if (e.kind == ExprKind::Ident) out.insert(e.text);
    });
    for (const auto& n : names_declared(*item.fn.body)) out.insert(n);
  }
  return out;
}

struct Located {
  Stmt* stmt = nullptr;
  Stmt* parent = nullptr;  // enclosing compound, if any
};

Located find_stmt_with(Stmt& root, const Expr* call) {
  Located found;
  std::function<void(Stmt&, Stmt*)> rec = [&](Stmt& s, Stmt* parent) {
    if (found.stmt) return;
    bool hit = false;
    auto check = [&](const Expr* e) {
      if (!e) return;
      visit_expr(*e, [&](const Expr& x) {
        if (&x == call) hit = true;
      });
    };
    check(s.cond.get());
    check(s.step.get());
    check(s.expr.get());
    for (const auto& d : s.decl.declarators) check(d.init.get());
    if (hit) {
      found = {&s, parent};
      return;
    }
    Stmt* self = s.kind == StmtKind::Compound ? &s : nullptr;
    for (auto& c : s.stmts) rec(*c, self);
    if (s.init) rec(*s.init, nullptr);
    if (s.body) rec(*s.body, nullptr);
    if (s.else_body) rec(*s.else_body, nullptr);
  };
  rec(root, nullptr);
  return found;
}

}  // namespace

std::vector<CallSite> find_call_sites(const TranslationUnit& unit) {
  std::vector<CallSite> out;
  for (const Function* fn : unit.functions()) {
    if (!fn->body) continue;
    int ordinal = 0;
    for (const Expr* c : calls_of(*fn))
      out.push_back(CallSite{fn->name, ordinal++, c->text, c->span});
  }
  return out;
}

TranslationUnit inline_expand(const TranslationUnit& input, const CallSite& site,
                              const Config& config) {
  TranslationUnit unit = input;
  Function* caller = find_definition(unit, site.caller);
  if (!caller) throw Error(Errc::ConfigError, "no definition of '" + site.caller + "'");
  auto calls = calls_of(*caller);
  if (site.ordinal < 0 || site.ordinal >= static_cast<int>(calls.size()) ||
      calls[site.ordinal]->text != site.callee)
    throw Error(Errc::ConfigError, "no call to '" + site.callee + "' at position " +
                                       std::to_string(site.ordinal) + " in '" + site.caller + "'");
  const Expr* call = calls[site.ordinal];

  const Function* callee = input.find_function(site.callee);
  if (!callee || !callee->body) {
    if (io_functions().count(site.callee)) refuse(site.callee + " performs input/output", "io");
    refuse(site.callee + " has no definition", "undefined");
  }
  if (site.callee == site.caller || callees(input, site.callee, true).count(site.callee))
    refuse(site.callee + " is recursive", "recursive");
  if (callee->variadic) refuse(site.callee + " is variadic", "variadic");
  SideEffectSummary fx = side_effects(input, site.callee, config);
  if (fx.classification == EffectClass::Io || fx.classification == EffectClass::Unknown)
    refuse(site.callee + " " + (fx.reason.empty() ? "has unknown effects" : fx.reason), "io");

  auto unsupported = [&](const std::string& why) { refuse(why, "unsupported"); };

  // Shape of the call site.
  Located at = find_stmt_with(*caller->body, call);
  if (!at.stmt) unsupported("call not found");
  Stmt& host = *at.stmt;
  if (host.omp) unsupported("call statement carries a directive");
  const Expr* result_target = nullptr;
  bool declares = false;
  if (host.kind == StmtKind::Expr && host.expr.get() == call) {
  } else if (host.kind == StmtKind::Expr && host.expr->kind == ExprKind::Assign &&
             host.expr->text == "=" && &host.expr->arg(1) == call) {
    result_target = &host.expr->arg(0);
  } else if (host.kind == StmtKind::Decl && host.decl.declarators.size() == 1 &&
             host.decl.declarators[0].init.get() == call) {
    declares = true;
    if (!at.parent) unsupported("declaration outside a block");
  } else {
    unsupported("call is not a statement, assignment or initializer");
  }

  // Shape of the callee body.
  Stmt body = *callee->body;
  int returns = 0;
  bool statics = false;
  visit_stmts(body, [&](const Stmt& s) {
    if (s.kind == StmtKind::Return) ++returns;
    if (s.kind == StmtKind::Decl && s.decl.storage == StorageClass::Static) statics = true;
  });
  if (statics) unsupported(site.callee + " has static locals");
  ExprBox result;
  if (returns > 0) {
    const Stmt* last = body.stmts.empty() ? nullptr : body.stmts.back().get();
    if (returns > 1 || !last || last->kind != StmtKind::Return)
      unsupported(site.callee + " returns from the middle of its body");
    result = last->expr;
    body.stmts.pop_back();
  }
  if ((result_target || declares) && !result) unsupported(site.callee + " returns no value");

  // Fresh names for parameters and locals.
  std::set<std::string> taken = identifiers(unit);
  auto fresh = [&](const std::string& base) {
    std::string name = site.callee + "_" + base;
    for (int k = 1; taken.count(name); ++k) name = site.callee + "_" + base + "_" + std::to_string(k);
    taken.insert(name);
    return name;
  };

  std::set<std::string> caller_locals = names_declared(*caller->body);
  for (const auto& p : caller->params) caller_locals.insert(p.decl.name);
  std::set<std::string> callee_locals = names_declared(body);
  for (const auto& p : callee->params) callee_locals.insert(p.decl.name);
  std::set<std::string> callee_refs;
  visit_exprs(body, [&](const Expr& e) {
    if (e.kind == ExprKind::Ident) callee_refs.insert(e.text);
  });
  if (result) visit_expr(*result, [&](const Expr& e) {
    if (e.kind == ExprKind::Ident) callee_refs.insert(e.text);
  });
  for (const auto& r : callee_refs)
    if (!callee_locals.count(r) && caller_locals.count(r))
      unsupported("'" + r + "' is shadowed by a local of " + site.caller);

  if (call->args.size() != callee->params.size()) unsupported("argument count mismatch");

  std::map<std::string, std::string> names;
  std::map<std::string, std::string> addresses;
  std::vector<Stmt> prologue;
  for (std::size_t i = 0; i < callee->params.size(); ++i) {
    const Param& p = callee->params[i];
    const Expr& arg = call->arg(i);
    if (p.decl.is_array_like()) {
      if (arg.kind == ExprKind::Ident) {
        names[p.decl.name] = arg.text;
      } else if (arg.kind == ExprKind::Unary && arg.text == "&" && arg.arg(0).kind == ExprKind::Ident &&
                 p.decl.pointer_depth == 1 && p.decl.dims.empty()) {
        // Bound through a placeholder so renaming cannot capture either side.
        std::string slot = fresh(p.decl.name + "_addr");
        names[p.decl.name] = slot;
        addresses[slot] = arg.arg(0).text;
      } else {
        unsupported("array argument " + std::to_string(i + 1) + " is not a plain name");
      }
      continue;
    }
    std::string local = fresh(p.decl.name);
    names[p.decl.name] = local;
    Declarator d;
    d.name = local;
    d.init = ExprBox(arg);
    prologue.push_back(make_decl_stmt(p.type, {std::move(d)}));
  }
  for (const auto& l : names_declared(body)) names[l] = fresh(l);

  rename(body, names);
  if (result) {
    Stmt tmp = make_expr_stmt(*result);
    rename(tmp, names);
    result = tmp.expr;
  }
  if (!addresses.empty()) {
    if (!bind_addresses(body, addresses)) unsupported("pointer parameter used beyond *p");
    if (result) {
      Stmt tmp = make_expr_stmt(*result);
      if (!bind_addresses(tmp, addresses)) unsupported("pointer parameter used beyond *p");
      result = tmp.expr;
    }
  }

  std::vector<Stmt> block = std::move(prologue);
  for (auto& s : body.stmts) block.push_back(std::move(*s));
  if (result_target || declares) {
    Expr target = declares ? make_ident(host.decl.declarators[0].name) : *result_target;
    block.push_back(make_expr_stmt(make_assign("=", std::move(target), *result)));
  } else if (result && (contains_call(make_expr_stmt(*result)) ||
                        !names_written(make_expr_stmt(*result)).empty())) {
    block.push_back(make_expr_stmt(*result));
  }
  Stmt replacement = make_compound(std::move(block));
  replacement.span = host.span;

  if (declares) {
    host.decl.declarators[0].init = ExprBox{};
    Stmt& parent = *at.parent;
    for (std::size_t k = 0; k < parent.stmts.size(); ++k) {
      if (parent.stmts[k].get() != &host) continue;
      parent.stmts.insert(parent.stmts.begin() + k + 1, StmtBox(std::move(replacement)));
      break;
    }
  } else {
    host = std::move(replacement);
  }
  return unit;
}

}  // namespace ompdiff::analysis
