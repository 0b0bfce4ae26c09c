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

#include "ompdiff/ast.hpp"

#include <algorithm>
#include <sstream>

namespace ompdiff {

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::SyntaxError: return "SyntaxError";
    case Errc::UnsupportedConstruct: return "UnsupportedConstruct";
    case Errc::UnknownSection: return "UnknownSection";
    case Errc::MismatchedPrograms: return "MismatchedPrograms";
    case Errc::InlineRefused: return "InlineRefused";
    case Errc::NoParallelLoop: return "NoParallelLoop";
    case Errc::NotAdjacent: return "NotAdjacent";
    case Errc::FewerThanTwo: return "FewerThanTwo";
    case Errc::NotAnArrayReduction: return "NotAnArrayReduction";
    case Errc::PersistsAcrossRegions: return "PersistsAcrossRegions";
    case Errc::NotStaticOrGlobal: return "NotStaticOrGlobal";
    case Errc::CompileError: return "CompileError";
    case Errc::RunError: return "RunError";
    case Errc::IoError: return "IoError";
    case Errc::ConfigError: return "ConfigError";
  }
  return "Error";
}

std::string SourceError::format(const std::string& file) const {
  std::ostringstream os;
  os << file << ':' << span_.line << ':' << span_.col << ": " << what();
  return os.str();
}

// ---------------------------------------------------------------------------
// Expression helpers

Expr make_int(long long value) {
  if (value < 0) return make_unary("-", make_int(-value));
  Expr e;
  e.kind = ExprKind::IntLit;
  e.text = std::to_string(value);
  return e;
}

Expr make_float(const std::string& spelling) {
  Expr e;
  e.kind = ExprKind::FloatLit;
  e.text = spelling;
  return e;
}

Expr make_ident(std::string name) {
  Expr e;
  e.kind = ExprKind::Ident;
  e.text = std::move(name);
  return e;
}

Expr make_unary(std::string op, Expr operand) {
  Expr e;
  e.kind = ExprKind::Unary;
  e.text = std::move(op);
  e.args.emplace_back(std::move(operand));
  return e;
}

Expr make_binary(std::string op, Expr lhs, Expr rhs) {
  Expr e;
  e.kind = ExprKind::Binary;
  e.text = std::move(op);
  e.args.emplace_back(std::move(lhs));
  e.args.emplace_back(std::move(rhs));
  return e;
}

Expr make_assign(std::string op, Expr lhs, Expr rhs) {
  Expr e = make_binary(std::move(op), std::move(lhs), std::move(rhs));
  e.kind = ExprKind::Assign;
  return e;
}

Expr make_index(Expr base, Expr subscript) {
  Expr e;
  e.kind = ExprKind::Index;
  e.args.emplace_back(std::move(base));
  e.args.emplace_back(std::move(subscript));
  return e;
}

Expr make_call(std::string callee, std::vector<Expr> arguments) {
  Expr e;
  e.kind = ExprKind::Call;
  e.text = std::move(callee);
  for (auto& a : arguments) e.args.emplace_back(std::move(a));
  return e;
}

Expr make_cast(std::string type, Expr operand) {
  Expr e;
  e.kind = ExprKind::Cast;
  e.text = std::move(type);
  e.args.emplace_back(std::move(operand));
  return e;
}

Expr make_sizeof(std::string type) {
  Expr e;
  e.kind = ExprKind::SizeofType;
  e.text = std::move(type);
  return e;
}

bool same_expr(const Expr& a, const Expr& b) {
  if (a.kind != b.kind || a.text != b.text || a.args.size() != b.args.size()) return false;
  for (std::size_t i = 0; i < a.args.size(); ++i) {
    if (!same_expr(*a.args[i], *b.args[i])) return false;
  }
  return true;
}

const Expr& index_base(const Expr& e, std::vector<const Expr*>* subscripts) {
  const Expr* cur = &e;
  std::vector<const Expr*> subs;
  while (cur->kind == ExprKind::Index) {
    subs.push_back(&cur->arg(1));
    cur = &cur->arg(0);
  }
  if (subscripts) {
    std::reverse(subs.begin(), subs.end());
    *subscripts = std::move(subs);
  }
  return *cur;
}

std::string lvalue_name(const Expr& e) {
  switch (e.kind) {
    case ExprKind::Ident: return e.text;
    case ExprKind::Index: {
      const Expr& base = index_base(e);
      return base.kind == ExprKind::Ident ? base.text : std::string{};
    }
    case ExprKind::Unary:
      if (e.text == "*" && e.arg(0).kind == ExprKind::Ident) return e.arg(0).text;
      return {};
    default: return {};
  }
}

// ---------------------------------------------------------------------------
// Directives

namespace {

bool contains(const std::vector<std::string>& v, const std::string& s) {
  return std::find(v.begin(), v.end(), s) != v.end();
}

void erase(std::vector<std::string>& v, const std::string& s) {
  v.erase(std::remove(v.begin(), v.end(), s), v.end());
}

bool same_opt_expr(const ExprBox& a, const ExprBox& b) {
  if (!a || !b) return !a && !b;
  return same_expr(*a, *b);
}

}  // namespace

bool OmpDirective::lists(const std::string& var) const {
  if (contains(shared_vars, var)) return true;
  return privatizes(var);
}

bool OmpDirective::privatizes(const std::string& var) const {
  if (contains(private_vars, var) || contains(firstprivate_vars, var) ||
      contains(lastprivate_vars, var))
    return true;
  for (const auto& r : reductions) {
    if (contains(r.vars, var)) return true;
  }
  return false;
}

void OmpDirective::forget(const std::string& var) {
  erase(private_vars, var);
  erase(firstprivate_vars, var);
  erase(lastprivate_vars, var);
  erase(shared_vars, var);
  for (auto& r : reductions) erase(r.vars, var);
  reductions.erase(std::remove_if(reductions.begin(), reductions.end(),
                                  [](const ReductionClause& r) { return r.vars.empty(); }),
                   reductions.end());
}

const char* omp_kind_name(OmpKind kind) {
  switch (kind) {
    case OmpKind::Parallel: return "parallel";
    case OmpKind::For: return "for";
    case OmpKind::ParallelFor: return "parallel for";
    case OmpKind::Single: return "single";
    case OmpKind::Critical: return "critical";
    case OmpKind::Atomic: return "atomic";
    case OmpKind::Barrier: return "barrier";
    case OmpKind::Threadprivate: return "threadprivate";
  }
  return "?";
}

const char* reduction_op_spelling(ReductionOp op) {
  switch (op) {
    case ReductionOp::Add: return "+";
    case ReductionOp::Mul: return "*";
    case ReductionOp::Min: return "min";
    case ReductionOp::Max: return "max";
  }
  return "?";
}

const char* schedule_kind_name(ScheduleKind kind) {
  switch (kind) {
    case ScheduleKind::Static: return "static";
    case ScheduleKind::Dynamic: return "dynamic";
    case ScheduleKind::Guided: return "guided";
  }
  return "?";
}

bool same_directive(const OmpDirective& a, const OmpDirective& b) {
  if (a.kind != b.kind || a.critical_name != b.critical_name ||
      a.threadprivate_vars != b.threadprivate_vars || a.default_kind != b.default_kind ||
      a.private_vars != b.private_vars || a.firstprivate_vars != b.firstprivate_vars ||
      a.lastprivate_vars != b.lastprivate_vars || a.shared_vars != b.shared_vars ||
      a.nowait != b.nowait || a.reductions.size() != b.reductions.size() ||
      a.schedule.has_value() != b.schedule.has_value())
    return false;
  for (std::size_t i = 0; i < a.reductions.size(); ++i) {
    if (a.reductions[i].op != b.reductions[i].op || a.reductions[i].vars != b.reductions[i].vars)
      return false;
  }
  if (a.schedule) {
    if (a.schedule->kind != b.schedule->kind) return false;
    if (!same_opt_expr(a.schedule->chunk, b.schedule->chunk)) return false;
  }
  return same_opt_expr(a.if_condition, b.if_condition);
}

// ---------------------------------------------------------------------------
// Statements

Stmt make_compound(std::vector<Stmt> stmts) {
  Stmt s;
  s.kind = StmtKind::Compound;
  for (auto& st : stmts) s.stmts.emplace_back(std::move(st));
  return s;
}

Stmt make_expr_stmt(Expr e) {
  Stmt s;
  s.kind = StmtKind::Expr;
  s.expr = ExprBox(std::move(e));
  return s;
}

Stmt make_decl_stmt(std::string type, std::vector<Declarator> declarators, StorageClass storage) {
  Stmt s;
  s.kind = StmtKind::Decl;
  s.decl.storage = storage;
  s.decl.type = std::move(type);
  s.decl.declarators = std::move(declarators);
  return s;
}

Stmt make_for(Expr init, Expr cond, Expr step, Stmt body) {
  Stmt s;
  s.kind = StmtKind::For;
  s.init = StmtBox(make_expr_stmt(std::move(init)));
  s.cond = ExprBox(std::move(cond));
  s.step = ExprBox(std::move(step));
  s.body = StmtBox(std::move(body));
  return s;
}

Stmt make_directive_stmt(OmpDirective directive) {
  Stmt s;
  s.kind = StmtKind::Directive;
  s.omp = std::move(directive);
  return s;
}

namespace {

bool same_opt_stmt(const StmtBox& a, const StmtBox& b) {
  if (!a || !b) return !a && !b;
  return same_stmt(*a, *b);
}

bool same_declarator(const Declarator& a, const Declarator& b) {
  if (a.name != b.name || a.pointer_depth != b.pointer_depth || a.dims.size() != b.dims.size())
    return false;
  for (std::size_t i = 0; i < a.dims.size(); ++i) {
    if (!same_opt_expr(a.dims[i], b.dims[i])) return false;
  }
  return same_opt_expr(a.init, b.init);
}

bool same_declaration(const Declaration& a, const Declaration& b) {
  if (a.storage != b.storage || a.type != b.type || a.declarators.size() != b.declarators.size())
    return false;
  for (std::size_t i = 0; i < a.declarators.size(); ++i) {
    if (!same_declarator(a.declarators[i], b.declarators[i])) return false;
  }
  return true;
}

bool same_function(const Function& a, const Function& b) {
  if (a.name != b.name || a.return_type != b.return_type ||
      a.return_pointer_depth != b.return_pointer_depth || a.storage != b.storage ||
      a.variadic != b.variadic || a.params.size() != b.params.size())
    return false;
  for (std::size_t i = 0; i < a.params.size(); ++i) {
    if (a.params[i].type != b.params[i].type ||
        !same_declarator(a.params[i].decl, b.params[i].decl))
      return false;
  }
  return same_opt_stmt(a.body, b.body);
}

}  // namespace

bool same_stmt(const Stmt& a, const Stmt& b) {
  if (a.kind != b.kind || a.omp.has_value() != b.omp.has_value()) return false;
  if (a.omp && !same_directive(*a.omp, *b.omp)) return false;
  if (a.stmts.size() != b.stmts.size()) return false;
  for (std::size_t i = 0; i < a.stmts.size(); ++i) {
    if (!same_stmt(*a.stmts[i], *b.stmts[i])) return false;
  }
  return same_opt_stmt(a.init, b.init) && same_opt_expr(a.cond, b.cond) &&
         same_opt_expr(a.step, b.step) && same_opt_stmt(a.body, b.body) &&
         same_opt_stmt(a.else_body, b.else_body) && same_opt_expr(a.expr, b.expr) &&
         same_declaration(a.decl, b.decl);
}

// ---------------------------------------------------------------------------
// Translation unit

const char* origin_name(Origin origin) {
  switch (origin) {
    case Origin::Serial: return "serial";
    case Origin::AutoParallelized: return "auto-parallelized";
    case Origin::Manual: return "manual";
  }
  return "serial";
}

std::optional<Origin> parse_origin(const std::string& text) {
  if (text == "serial") return Origin::Serial;
  if (text == "auto" || text == "auto-parallelized") return Origin::AutoParallelized;
  if (text == "manual") return Origin::Manual;
  return std::nullopt;
}

const Function* TranslationUnit::find_function(const std::string& name) const {
  const Function* proto = nullptr;
  for (const auto& item : items) {
    if (item.kind != TopItem::Kind::Function || item.fn.name != name) continue;
    if (item.fn.is_definition()) return &item.fn;
    proto = &item.fn;
  }
  return proto;
}

Function* TranslationUnit::find_function(const std::string& name) {
  return const_cast<Function*>(std::as_const(*this).find_function(name));
}

std::vector<const Function*> TranslationUnit::functions() const {
  std::vector<const Function*> out;
  for (const auto& item : items) {
    if (item.kind == TopItem::Kind::Function && item.fn.is_definition()) out.push_back(&item.fn);
  }
  return out;
}

std::vector<Function*> TranslationUnit::functions() {
  std::vector<Function*> out;
  for (auto& item : items) {
    if (item.kind == TopItem::Kind::Function && item.fn.is_definition()) out.push_back(&item.fn);
  }
  return out;
}

bool same_unit(const TranslationUnit& a, const TranslationUnit& b) {
  if (a.items.size() != b.items.size()) return false;
  for (std::size_t i = 0; i < a.items.size(); ++i) {
    const TopItem& x = a.items[i];
    const TopItem& y = b.items[i];
    if (x.kind != y.kind) return false;
    switch (x.kind) {
      case TopItem::Kind::Include:
        if (x.raw != y.raw) return false;
        break;
      case TopItem::Kind::Decl:
      case TopItem::Kind::Directive:
        if (!same_stmt(x.stmt, y.stmt)) return false;
        break;
      case TopItem::Kind::Function:
        if (!same_function(x.fn, y.fn)) return false;
        break;
    }
  }
  return true;
}

namespace {

void strip_stmt(Stmt& s) {
  s.omp.reset();
  if (s.kind == StmtKind::Compound) {
    std::vector<StmtBox> out;
    for (auto& child : s.stmts) {
      if (child->kind == StmtKind::Directive) continue;
      bool splice = child->kind == StmtKind::Compound && child->omp.has_value();
      strip_stmt(*child);
      if (splice) {
        for (auto& grandchild : child->stmts) out.push_back(std::move(grandchild));
      } else {
        out.push_back(std::move(child));
      }
    }
    s.stmts = std::move(out);
    return;
  }
  if (s.init) strip_stmt(*s.init);
  if (s.body) strip_stmt(*s.body);
  if (s.else_body) strip_stmt(*s.else_body);
}

}  // namespace

TranslationUnit strip_directives(const TranslationUnit& unit) {
  TranslationUnit out;
  out.path = unit.path;
  out.origin = unit.origin;
  for (const auto& item : unit.items) {
    if (item.kind == TopItem::Kind::Directive) continue;
    TopItem copy = item;
    if (copy.kind == TopItem::Kind::Function && copy.fn.body) strip_stmt(*copy.fn.body);
    out.items.push_back(std::move(copy));
  }
  return out;
}

}  // namespace ompdiff
