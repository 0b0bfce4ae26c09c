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

// AST for the supported C subset plus attached OpenMP directives.
//
// Nodes are plain value types: copying a node deep-copies the subtree. Child
// pointers are held in Box<T>, so node addresses stay stable while the owning
// vectors grow, which lets analyses key maps on `const Stmt*`.

#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ompdiff/error.hpp"

namespace ompdiff {

/// Owning, nullable, deep-copying pointer.
template <typename T>
class Box {
 public:
  Box() = default;
  Box(std::nullptr_t) {}
  explicit Box(T value) : ptr_(std::make_unique<T>(std::move(value))) {}
  Box(const Box& other) : ptr_(other.ptr_ ? std::make_unique<T>(*other.ptr_) : nullptr) {}
  Box(Box&&) noexcept = default;
  Box& operator=(const Box& other) {
    if (this != &other) ptr_ = other.ptr_ ? std::make_unique<T>(*other.ptr_) : nullptr;
    return *this;
  }
  Box& operator=(Box&&) noexcept = default;

  T* get() const { return ptr_.get(); }
  T& operator*() const { return *ptr_; }
  T* operator->() const { return ptr_.get(); }
  explicit operator bool() const { return static_cast<bool>(ptr_); }

 private:
  std::unique_ptr<T> ptr_;
};

// ---------------------------------------------------------------------------
// Expressions

enum class ExprKind {
  IntLit,
  FloatLit,
  StringLit,
  CharLit,
  Ident,
  Unary,       // text: - + ! ~ ++ -- * &   args: [operand]
  Postfix,     // text: ++ --               args: [operand]
  Binary,      // text: operator            args: [lhs, rhs]
  Assign,      // text: = += -= ...         args: [lhs, rhs]
  Conditional, // args: [cond, then, else]
  Call,        // text: callee name         args: arguments
  Index,       // args: [base, subscript]; a[i][j] == Index(Index(a, i), j)
  Cast,        // text: type spelling       args: [operand]
  SizeofType,  // text: type spelling
};

struct Expr {
  ExprKind kind = ExprKind::IntLit;
  std::string text;
  std::vector<Box<Expr>> args;
  SourceSpan span;

  const Expr& arg(std::size_t i) const { return *args.at(i); }
  Expr& arg(std::size_t i) { return *args.at(i); }
};

using ExprBox = Box<Expr>;

Expr make_int(long long value);
Expr make_float(const std::string& spelling);
Expr make_ident(std::string name);
Expr make_unary(std::string op, Expr operand);
Expr make_binary(std::string op, Expr lhs, Expr rhs);
Expr make_assign(std::string op, Expr lhs, Expr rhs);
Expr make_index(Expr base, Expr subscript);
Expr make_call(std::string callee, std::vector<Expr> arguments);
Expr make_cast(std::string type, Expr operand);
Expr make_sizeof(std::string type);

/// Structural equality; spans are ignored.
bool same_expr(const Expr& a, const Expr& b);

/// For an Index chain returns the base expression and fills `subscripts`
/// outermost-first (a[i][j] -> a, {i, j}).
const Expr& index_base(const Expr& e, std::vector<const Expr*>* subscripts = nullptr);

/// Name of the array or scalar an lvalue designates: `a[i][j]` -> "a",
/// `*p` -> "p", `x` -> "x". Empty when the expression is not a plain lvalue.
std::string lvalue_name(const Expr& e);

/// Pre-order visit of every sub-expression (including `e`).
template <typename F>
void visit_expr(const Expr& e, F&& fn) {
  fn(e);
  for (const auto& a : e.args) visit_expr(*a, fn);
}

template <typename F>
void visit_expr_mut(Expr& e, F&& fn) {
  fn(e);
  for (auto& a : e.args) visit_expr_mut(*a, fn);
}

// ---------------------------------------------------------------------------
// OpenMP directives

enum class OmpKind { Parallel, For, ParallelFor, Single, Critical, Atomic, Barrier, Threadprivate };
enum class ReductionOp { Add, Mul, Min, Max };
enum class ScheduleKind { Static, Dynamic, Guided };
enum class DefaultKind { Shared, None };

struct ReductionClause {
  ReductionOp op = ReductionOp::Add;
  std::vector<std::string> vars;
};

struct ScheduleClause {
  ScheduleKind kind = ScheduleKind::Static;
  ExprBox chunk;
};

struct OmpDirective {
  OmpKind kind = OmpKind::Parallel;
  std::string critical_name;
  std::vector<std::string> threadprivate_vars;

  std::optional<DefaultKind> default_kind;
  std::vector<std::string> private_vars;
  std::vector<std::string> firstprivate_vars;
  std::vector<std::string> lastprivate_vars;
  std::vector<std::string> shared_vars;
  std::vector<ReductionClause> reductions;
  std::optional<ScheduleClause> schedule;
  bool nowait = false;
  ExprBox if_condition;

  bool is_worksharing_loop() const { return kind == OmpKind::For || kind == OmpKind::ParallelFor; }
  bool spawns_team() const { return kind == OmpKind::Parallel || kind == OmpKind::ParallelFor; }
  bool needs_statement() const {
    return kind != OmpKind::Barrier && kind != OmpKind::Threadprivate;
  }
  /// True if `var` appears in any data-sharing clause.
  bool lists(const std::string& var) const;
  /// True if `var` is private, firstprivate, lastprivate or a reduction target.
  bool privatizes(const std::string& var) const;
  /// Drops `var` from every data-sharing clause; empty reduction clauses go too.
  void forget(const std::string& var);
};

const char* omp_kind_name(OmpKind kind);
const char* reduction_op_spelling(ReductionOp op);
const char* schedule_kind_name(ScheduleKind kind);

bool same_directive(const OmpDirective& a, const OmpDirective& b);

// ---------------------------------------------------------------------------
// Declarations

enum class StorageClass { None, Static, Extern };

struct Declarator {
  std::string name;
  int pointer_depth = 0;
  std::vector<ExprBox> dims;  // null entry for `[]`
  ExprBox init;
  SourceSpan span;

  bool is_array_like() const { return pointer_depth > 0 || !dims.empty(); }
};

struct Declaration {
  StorageClass storage = StorageClass::None;
  std::string type;  // specifier spelling without storage class, e.g. "const double"
  std::vector<Declarator> declarators;
};

// ---------------------------------------------------------------------------
// Statements

enum class StmtKind { Compound, For, If, Expr, Decl, Return, Directive, Empty };

struct Stmt {
  StmtKind kind = StmtKind::Empty;
  SourceSpan span;
  std::optional<OmpDirective> omp;

  std::vector<Box<Stmt>> stmts;  // Compound
  Box<Stmt> init;                // For: Expr or Decl statement, may be null
  ExprBox cond;                  // For (may be null), If
  ExprBox step;                  // For (may be null)
  Box<Stmt> body;                // For body, If then-branch
  Box<Stmt> else_body;           // If
  ExprBox expr;                  // Expr, Return (may be null)
  Declaration decl;              // Decl
};

using StmtBox = Box<Stmt>;

Stmt make_compound(std::vector<Stmt> stmts = {});
Stmt make_expr_stmt(Expr e);
Stmt make_decl_stmt(std::string type, std::vector<Declarator> declarators,
                    StorageClass storage = StorageClass::None);
Stmt make_for(Expr init, Expr cond, Expr step, Stmt body);
Stmt make_directive_stmt(OmpDirective directive);

bool same_stmt(const Stmt& a, const Stmt& b);

/// Pre-order visit of every statement.
template <typename F>
void visit_stmts(const Stmt& s, F&& fn) {
  fn(s);
  for (const auto& c : s.stmts) visit_stmts(*c, fn);
  if (s.init) visit_stmts(*s.init, fn);
  if (s.body) visit_stmts(*s.body, fn);
  if (s.else_body) visit_stmts(*s.else_body, fn);
}

template <typename F>
void visit_stmts_mut(Stmt& s, F&& fn) {
  fn(s);
  for (auto& c : s.stmts) visit_stmts_mut(*c, fn);
  if (s.init) visit_stmts_mut(*s.init, fn);
  if (s.body) visit_stmts_mut(*s.body, fn);
  if (s.else_body) visit_stmts_mut(*s.else_body, fn);
}

/// Visits every expression directly owned by `s` or any nested statement,
/// including declarator dimensions, initializers and directive clauses.
template <typename F>
void visit_exprs(const Stmt& s, F&& fn) {
  visit_stmts(s, [&](const Stmt& st) {
    if (st.cond) visit_expr(*st.cond, fn);
    if (st.step) visit_expr(*st.step, fn);
    if (st.expr) visit_expr(*st.expr, fn);
    for (const auto& d : st.decl.declarators) {
      for (const auto& dim : d.dims)
        if (dim) visit_expr(*dim, fn);
      if (d.init) visit_expr(*d.init, fn);
    }
  });
}

// ---------------------------------------------------------------------------
// Translation unit

enum class Origin { Serial, AutoParallelized, Manual };

const char* origin_name(Origin origin);
std::optional<Origin> parse_origin(const std::string& text);

struct Param {
  std::string type;
  Declarator decl;
};

struct Function {
  std::string name;
  std::string return_type;
  int return_pointer_depth = 0;
  StorageClass storage = StorageClass::None;
  std::vector<Param> params;
  bool variadic = false;
  StmtBox body;  // null for a prototype
  SourceSpan span;

  bool is_definition() const { return static_cast<bool>(body); }
};

struct TopItem {
  enum class Kind { Include, Decl, Directive, Function };
  Kind kind = Kind::Decl;
  std::string raw;  // Include: the directive line verbatim
  Stmt stmt;        // Decl or Directive
  Function fn;      // Function
};

/// Input text plus provenance, as handed over by the CLI.
struct SourceUnit {
  std::string path;
  std::string text;
  Origin origin = Origin::Serial;
};

struct TranslationUnit {
  std::string path;
  Origin origin = Origin::Serial;
  std::vector<TopItem> items;

  const Function* find_function(const std::string& name) const;
  Function* find_function(const std::string& name);
  std::vector<const Function*> functions() const;
  std::vector<Function*> functions();
};

using Ast = TranslationUnit;

bool same_unit(const TranslationUnit& a, const TranslationUnit& b);

/// Copy of `unit` with every OpenMP directive removed. Standalone directive
/// statements disappear; a compound that carried a directive and sits inside
/// another compound is spliced into it.
TranslationUnit strip_directives(const TranslationUnit& unit);

}  // namespace ompdiff
