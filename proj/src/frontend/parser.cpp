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
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "frontend/lexer.hpp"
#include "ompdiff/frontend.hpp"

namespace ompdiff::frontend {

using detail::Tok;
using detail::Token;

namespace {

const std::set<std::string> kTypeWords = {"void",   "char",     "short",  "int",
                                          "long",   "float",    "double", "signed",
                                          "unsigned", "const",  "volatile"};
const std::set<std::string> kStorageWords = {"static", "extern"};
const std::set<std::string> kRejectedWords = {
    "goto",  "switch", "case",   "default", "while",  "do",       "break",
    "continue", "struct", "union", "enum",   "typedef", "register", "inline",
    "_Bool", "restrict"};

bool is_assign_op(const std::string& t) {
  return t == "=" || t == "+=" || t == "-=" || t == "*=" || t == "/=" || t == "%=" ||
         t == "<<=" || t == ">>=" || t == "&=" || t == "|=" || t == "^=";
}

int binary_precedence(const std::string& op) {
  if (op == "||") return 4;
  if (op == "&&") return 5;
  if (op == "|") return 6;
  if (op == "^") return 7;
  if (op == "&") return 8;
  if (op == "==" || op == "!=") return 9;
  if (op == "<" || op == ">" || op == "<=" || op == ">=") return 10;
  if (op == "<<" || op == ">>") return 11;
  if (op == "+" || op == "-") return 12;
  if (op == "*" || op == "/" || op == "%") return 13;
  return -1;
}

SourceSpan join(const SourceSpan& a, const SourceSpan& b) {
  return {a.line, a.col, b.end_line, b.end_col};
}

class Parser {
 public:
  Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  TranslationUnit parse_unit() {
    TranslationUnit unit;
    while (!at(Tok::End)) {
      const Token& t = cur();
      if (t.kind == Tok::Include) {
        TopItem item;
        item.kind = TopItem::Kind::Include;
        item.raw = t.text;
        unit.items.push_back(std::move(item));
        ++pos_;
        continue;
      }
      if (t.kind == Tok::Pragma) {
        Token p = t;
        ++pos_;
        OmpDirective d = directive_from(p);
        if (d.kind != OmpKind::Threadprivate)
          fail(Errc::SyntaxError, p.span,
               std::string("'#pragma omp ") + omp_kind_name(d.kind) + "' outside a function");
        check_threadprivate(d, p.span, /*file_scope=*/true);
        TopItem item;
        item.kind = TopItem::Kind::Directive;
        item.stmt = make_directive_stmt(std::move(d));
        item.stmt.span = p.span;
        unit.items.push_back(std::move(item));
        continue;
      }
      unit.items.push_back(external_declaration());
    }
    return unit;
  }

  Expr parse_expression_only() {
    Expr e = expression();
    if (!at(Tok::End)) fail(Errc::SyntaxError, cur().span, "trailing tokens after expression");
    return e;
  }

  OmpDirective parse_directive_only() {
    OmpDirective d = directive_body();
    if (!at(Tok::End)) fail(Errc::SyntaxError, cur().span, "trailing tokens in directive");
    return d;
  }

 private:
  // -- token helpers --------------------------------------------------------

  const Token& cur() const { return toks_[pos_]; }
  const Token& look(std::size_t n) const {
    return toks_[std::min(pos_ + n, toks_.size() - 1)];
  }
  bool at(Tok k) const { return cur().kind == k; }
  bool at_punct(const char* p) const { return cur().punct(p); }
  bool at_ident(const char* p) const { return cur().ident(p); }

  const Token& take() { return toks_[pos_ == toks_.size() - 1 ? pos_ : pos_++]; }

  bool accept(const char* p) {
    if (at_punct(p)) {
      ++pos_;
      return true;
    }
    return false;
  }

  const Token& expect(const char* p) {
    if (!at_punct(p)) fail(Errc::SyntaxError, cur().span, std::string("expected '") + p + "'" + found());
    return take();
  }

  std::string expect_ident(const char* what) {
    if (!at(Tok::Ident)) fail(Errc::SyntaxError, cur().span, std::string("expected ") + what + found());
    return take().text;
  }

  std::string found() const {
    if (at(Tok::End)) return " before end of input";
    return " before '" + cur().text + "'";
  }

  [[noreturn]] void fail(Errc code, SourceSpan span, const std::string& msg) const {
    throw SourceError(code, span, msg);
  }

  [[noreturn]] void unsupported(const Token& t, const std::string& construct) const {
    throw SourceError(Errc::UnsupportedConstruct, t.span, "unsupported construct: " + construct,
                      construct);
  }

  void reject_keyword() const {
    if (at(Tok::Ident) && kRejectedWords.count(cur().text)) unsupported(cur(), cur().text);
  }

  bool at_type_start() const {
    if (!at(Tok::Ident)) return false;
    reject_keyword();
    return kTypeWords.count(cur().text) || kStorageWords.count(cur().text);
  }

  // -- declarations ---------------------------------------------------------

  std::pair<StorageClass, std::string> specifiers() {
    StorageClass storage = StorageClass::None;
    std::string type;
    while (at(Tok::Ident)) {
      reject_keyword();
      const std::string& w = cur().text;
      if (w == "static") {
        storage = StorageClass::Static;
      } else if (w == "extern") {
        storage = StorageClass::Extern;
      } else if (kTypeWords.count(w)) {
        if (!type.empty()) type += ' ';
        type += w;
      } else {
        break;
      }
      ++pos_;
    }
    if (type.empty()) fail(Errc::SyntaxError, cur().span, "expected a type" + found());
    return {storage, type};
  }

  Declarator declarator(bool allow_abstract = false) {
    Declarator d;
    SourceSpan start = cur().span;
    while (accept("*")) {
      ++d.pointer_depth;
      while (at_ident("const") || at_ident("restrict")) {
        if (at_ident("restrict")) unsupported(cur(), "restrict");
        ++pos_;
      }
    }
    if (at(Tok::Ident) && !kTypeWords.count(cur().text)) {
      reject_keyword();
      d.name = take().text;
    } else if (!allow_abstract) {
      fail(Errc::SyntaxError, cur().span, "expected a declarator name" + found());
    }
    while (accept("[")) {
      if (accept("]")) {
        d.dims.emplace_back(nullptr);
        continue;
      }
      d.dims.emplace_back(expression());
      expect("]");
    }
    d.span = join(start, toks_[pos_ - 1].span);
    return d;
  }

  void init_declarators(Declaration& decl) {
    for (;;) {
      Declarator d = declarator();
      if (accept("=")) {
        if (at_punct("{")) unsupported(cur(), "brace initializer");
        d.init = ExprBox(assignment());
      }
      decl.declarators.push_back(std::move(d));
      if (!accept(",")) break;
    }
  }

  TopItem external_declaration() {
    SourceSpan start = cur().span;
    if (!at_type_start()) fail(Errc::SyntaxError, cur().span, "expected a declaration" + found());
    auto [storage, type] = specifiers();
    Declarator first = declarator();
    if (at_punct("(")) {
      if (!first.dims.empty()) fail(Errc::SyntaxError, cur().span, "function returning array");
      TopItem item;
      item.kind = TopItem::Kind::Function;
      Function& fn = item.fn;
      fn.name = first.name;
      fn.return_type = type;
      fn.return_pointer_depth = first.pointer_depth;
      fn.storage = storage;
      parameters(fn);
      if (at_punct("{")) {
        scopes_.emplace_back();
        for (const auto& p : fn.params) declare(p.decl.name, false);
        fn.body = StmtBox(compound());
        scopes_.pop_back();
      } else {
        expect(";");
      }
      fn.span = join(start, toks_[pos_ - 1].span);
      return item;
    }
    TopItem item;
    item.kind = TopItem::Kind::Decl;
    Stmt& s = item.stmt;
    s.kind = StmtKind::Decl;
    s.decl.storage = storage;
    s.decl.type = type;
    if (accept("=")) {
      if (at_punct("{")) unsupported(cur(), "brace initializer");
      first.init = ExprBox(assignment());
    }
    s.decl.declarators.push_back(std::move(first));
    if (accept(",")) init_declarators(s.decl);
    expect(";");
    for (const auto& d : s.decl.declarators) globals_.insert(d.name);
    s.span = join(start, toks_[pos_ - 1].span);
    return item;
  }

  void parameters(Function& fn) {
    expect("(");
    if (accept(")")) return;
    if (at_ident("void") && look(1).punct(")")) {
      pos_ += 2;
      return;
    }
    for (;;) {
      if (accept("...")) {
        fn.variadic = true;
        break;
      }
      Param p;
      auto [storage, type] = specifiers();
      if (storage != StorageClass::None) fail(Errc::SyntaxError, cur().span, "storage class on parameter");
      p.type = type;
      p.decl = declarator(/*allow_abstract=*/true);
      fn.params.push_back(std::move(p));
      if (!accept(",")) break;
    }
    expect(")");
  }

  void declare(const std::string& name, bool is_static) {
    if (!scopes_.empty()) scopes_.back()[name] = is_static;
  }

  // -- statements -----------------------------------------------------------

  Stmt compound() {
    SourceSpan start = expect("{").span;
    scopes_.emplace_back();
    Stmt s;
    s.kind = StmtKind::Compound;
    while (!at_punct("}")) {
      if (at(Tok::End)) fail(Errc::SyntaxError, cur().span, "expected '}' before end of input");
      s.stmts.emplace_back(statement());
    }
    scopes_.pop_back();
    s.span = join(start, take().span);
    return s;
  }

  Stmt declaration_stmt() {
    SourceSpan start = cur().span;
    Stmt s;
    s.kind = StmtKind::Decl;
    auto [storage, type] = specifiers();
    s.decl.storage = storage;
    s.decl.type = type;
    init_declarators(s.decl);
    expect(";");
    for (const auto& d : s.decl.declarators) declare(d.name, storage == StorageClass::Static);
    s.span = join(start, toks_[pos_ - 1].span);
    return s;
  }

  Stmt statement() {
    const Token& t = cur();
    SourceSpan start = t.span;
    if (t.kind == Tok::Include) unsupported(t, "#include inside a function");
    if (t.kind == Tok::Pragma) return pragma_statement();
    if (t.punct("{")) return compound();
    if (t.punct(";")) {
      ++pos_;
      Stmt s;
      s.kind = StmtKind::Empty;
      s.span = start;
      return s;
    }
    if (t.kind == Tok::Ident) {
      reject_keyword();
      if (t.text == "for") return for_stmt();
      if (t.text == "if") return if_stmt();
      if (t.text == "return") {
        ++pos_;
        Stmt s;
        s.kind = StmtKind::Return;
        if (!at_punct(";")) s.expr = ExprBox(expression());
        expect(";");
        s.span = join(start, toks_[pos_ - 1].span);
        return s;
      }
      if (t.text == "else") fail(Errc::SyntaxError, t.span, "'else' without 'if'");
      if (at_type_start()) return declaration_stmt();
    }
    Stmt s;
    s.kind = StmtKind::Expr;
    s.expr = ExprBox(expression());
    expect(";");
    s.span = join(start, toks_[pos_ - 1].span);
    return s;
  }

  Stmt for_stmt() {
    SourceSpan start = take().span;
    expect("(");
    Stmt s;
    s.kind = StmtKind::For;
    scopes_.emplace_back();
    if (!accept(";")) {
      if (at_type_start()) {
        s.init = StmtBox(declaration_stmt());
      } else {
        SourceSpan is = cur().span;
        Stmt init;
        init.kind = StmtKind::Expr;
        init.expr = ExprBox(expression());
        expect(";");
        init.span = join(is, toks_[pos_ - 1].span);
        s.init = StmtBox(std::move(init));
      }
    }
    if (!at_punct(";")) s.cond = ExprBox(expression());
    expect(";");
    if (!at_punct(")")) s.step = ExprBox(expression());
    expect(")");
    s.body = StmtBox(statement());
    scopes_.pop_back();
    s.span = join(start, toks_[pos_ - 1].span);
    return s;
  }

  Stmt if_stmt() {
    SourceSpan start = take().span;
    expect("(");
    Stmt s;
    s.kind = StmtKind::If;
    s.cond = ExprBox(expression());
    expect(")");
    s.body = StmtBox(statement());
    if (at_ident("else")) {
      ++pos_;
      s.else_body = StmtBox(statement());
    }
    s.span = join(start, toks_[pos_ - 1].span);
    return s;
  }

  Stmt pragma_statement() {
    Token p = take();
    OmpDirective d = directive_from(p);
    if (d.kind == OmpKind::Threadprivate) check_threadprivate(d, p.span, /*file_scope=*/false);
    if (!d.needs_statement()) {
      Stmt s = make_directive_stmt(std::move(d));
      s.span = p.span;
      return s;
    }
    if (at(Tok::End) || at_punct("}"))
      fail(Errc::SyntaxError, p.span,
           std::string("'#pragma omp ") + omp_kind_name(d.kind) + "' must precede a statement");
    Stmt target = statement();
    switch (d.kind) {
      case OmpKind::For:
      case OmpKind::ParallelFor:
        if (target.kind != StmtKind::For || target.omp)
          fail(Errc::SyntaxError, p.span,
               std::string("'#pragma omp ") + omp_kind_name(d.kind) + "' must precede a for loop");
        break;
      case OmpKind::Atomic:
        if (target.kind != StmtKind::Expr || target.omp || !target.expr ||
            (target.expr->kind != ExprKind::Assign && target.expr->kind != ExprKind::Postfix &&
             !(target.expr->kind == ExprKind::Unary &&
               (target.expr->text == "++" || target.expr->text == "--"))))
          fail(Errc::SyntaxError, p.span, "'#pragma omp atomic' must precede an update statement");
        break;
      default:
        if (target.kind == StmtKind::Decl)
          fail(Errc::SyntaxError, p.span, "OpenMP directive cannot precede a declaration");
        break;
    }
    if (target.omp) {
      Stmt wrapper;
      wrapper.kind = StmtKind::Compound;
      wrapper.span = target.span;
      wrapper.stmts.emplace_back(std::move(target));
      target = std::move(wrapper);
    }
    target.omp = std::move(d);
    target.span = join(p.span, target.span);
    return target;
  }

  void check_threadprivate(const OmpDirective& d, SourceSpan span, bool file_scope) const {
    for (const auto& v : d.threadprivate_vars) {
      bool ok = false;
      if (file_scope) {
        ok = globals_.count(v) > 0;
      } else {
        for (auto it = scopes_.rbegin(); it != scopes_.rend(); ++it) {
          if (auto f = it->find(v); f != it->end()) {
            ok = f->second;
            break;
          }
        }
        if (!ok) ok = globals_.count(v) > 0;
      }
      if (!ok)
        fail(Errc::SyntaxError, span, "threadprivate variable '" + v + "' is not static or global");
    }
  }

  // -- OpenMP directives ----------------------------------------------------

  OmpDirective directive_from(const Token& p) {
    auto sub = detail::lex(p.text, p.span.line, p.span.col, /*directive_mode=*/true);
    Parser inner(std::move(sub));
    return inner.parse_directive_only();
  }

  std::vector<std::string> var_list() {
    expect("(");
    std::vector<std::string> vars;
    for (;;) {
      vars.push_back(expect_ident("a variable name"));
      if (!accept(",")) break;
    }
    expect(")");
    return vars;
  }

  OmpDirective directive_body() {
    SourceSpan start = cur().span;
    if (!at_ident("omp")) fail(Errc::SyntaxError, start, "expected 'omp'");
    ++pos_;
    OmpDirective d;
    if (!at(Tok::Ident)) fail(Errc::SyntaxError, cur().span, "expected a directive name" + found());
    Token name = take();
    if (name.text == "parallel") {
      d.kind = OmpKind::Parallel;
      if (at_ident("for")) {
        ++pos_;
        d.kind = OmpKind::ParallelFor;
      }
    } else if (name.text == "for") {
      d.kind = OmpKind::For;
    } else if (name.text == "single") {
      d.kind = OmpKind::Single;
    } else if (name.text == "critical") {
      d.kind = OmpKind::Critical;
      if (accept("(")) {
        d.critical_name = expect_ident("a critical section name");
        expect(")");
      }
    } else if (name.text == "atomic") {
      d.kind = OmpKind::Atomic;
      if (at_ident("update")) ++pos_;
    } else if (name.text == "barrier") {
      d.kind = OmpKind::Barrier;
    } else if (name.text == "threadprivate") {
      d.kind = OmpKind::Threadprivate;
      d.threadprivate_vars = var_list();
    } else {
      unsupported(name, "OpenMP directive '" + name.text + "'");
    }

    std::set<std::string> seen_vars;
    auto note_vars = [&](const std::vector<std::string>& vars, SourceSpan where) {
      for (const auto& v : vars) {
        if (!seen_vars.insert(v).second)
          fail(Errc::SyntaxError, where, "variable '" + v + "' appears in more than one data-sharing clause");
      }
    };

    while (!at(Tok::End)) {
      accept(",");
      if (at(Tok::End)) break;
      Token clause = take();
      if (clause.kind != Tok::Ident)
        fail(Errc::SyntaxError, clause.span, "expected a clause before '" + clause.text + "'");
      const std::string& c = clause.text;
      auto allow = [&](std::initializer_list<OmpKind> kinds) {
        if (std::find(kinds.begin(), kinds.end(), d.kind) == kinds.end())
          fail(Errc::SyntaxError, clause.span,
               "clause '" + c + "' not allowed on '" + omp_kind_name(d.kind) + "'");
      };
      if (c == "private" || c == "firstprivate" || c == "lastprivate" || c == "shared") {
        if (c == "lastprivate") {
          allow({OmpKind::For, OmpKind::ParallelFor});
        } else if (c == "shared") {
          allow({OmpKind::Parallel, OmpKind::ParallelFor});
        } else {
          allow({OmpKind::Parallel, OmpKind::ParallelFor, OmpKind::For, OmpKind::Single});
        }
        auto vars = var_list();
        note_vars(vars, clause.span);
        auto& target = c == "private"        ? d.private_vars
                       : c == "firstprivate" ? d.firstprivate_vars
                       : c == "lastprivate"  ? d.lastprivate_vars
                                             : d.shared_vars;
        target.insert(target.end(), vars.begin(), vars.end());
      } else if (c == "reduction") {
        allow({OmpKind::Parallel, OmpKind::ParallelFor, OmpKind::For});
        expect("(");
        ReductionClause r;
        if (accept("+")) {
          r.op = ReductionOp::Add;
        } else if (accept("*")) {
          r.op = ReductionOp::Mul;
        } else if (at_ident("min") || at_ident("max")) {
          r.op = take().text == "min" ? ReductionOp::Min : ReductionOp::Max;
        } else {
          fail(Errc::SyntaxError, cur().span, "unsupported reduction operator" + found());
        }
        expect(":");
        for (;;) {
          r.vars.push_back(expect_ident("a variable name"));
          if (!accept(",")) break;
        }
        expect(")");
        note_vars(r.vars, clause.span);
        d.reductions.push_back(std::move(r));
      } else if (c == "schedule") {
        allow({OmpKind::For, OmpKind::ParallelFor});
        if (d.schedule) fail(Errc::SyntaxError, clause.span, "duplicate schedule clause");
        expect("(");
        std::string kind = expect_ident("a schedule kind");
        ScheduleClause sc;
        if (kind == "static") {
          sc.kind = ScheduleKind::Static;
        } else if (kind == "dynamic") {
          sc.kind = ScheduleKind::Dynamic;
        } else if (kind == "guided") {
          sc.kind = ScheduleKind::Guided;
        } else {
          unsupported(clause, "schedule kind '" + kind + "'");
        }
        if (accept(",")) sc.chunk = ExprBox(assignment());
        expect(")");
        d.schedule = std::move(sc);
      } else if (c == "nowait") {
        allow({OmpKind::For, OmpKind::Single});
        d.nowait = true;
      } else if (c == "if") {
        allow({OmpKind::Parallel, OmpKind::ParallelFor});
        if (d.if_condition) fail(Errc::SyntaxError, clause.span, "duplicate if clause");
        expect("(");
        d.if_condition = ExprBox(expression());
        expect(")");
      } else if (c == "default") {
        allow({OmpKind::Parallel, OmpKind::ParallelFor});
        expect("(");
        std::string k = expect_ident("shared or none");
        if (k == "shared") {
          d.default_kind = DefaultKind::Shared;
        } else if (k == "none") {
          d.default_kind = DefaultKind::None;
        } else {
          fail(Errc::SyntaxError, clause.span, "default(" + k + ") is not supported");
        }
        expect(")");
      } else {
        unsupported(clause, "OpenMP clause '" + c + "'");
      }
    }
    return d;
  }

  // -- expressions ----------------------------------------------------------

 public:
  Expr expression() {
    Expr e = assignment();
    if (at_punct(",")) unsupported(cur(), "comma operator");
    return e;
  }

 private:
  Expr assignment() {
    Expr lhs = conditional();
    if (at(Tok::Punct) && is_assign_op(cur().text)) {
      std::string op = take().text;
      Expr rhs = assignment();
      SourceSpan span = join(lhs.span, rhs.span);
      Expr e = make_assign(op, std::move(lhs), std::move(rhs));
      e.span = span;
      return e;
    }
    return lhs;
  }

  Expr conditional() {
    Expr c = binary(4);
    if (accept("?")) {
      Expr a = expression();
      expect(":");
      Expr b = conditional();
      Expr e;
      e.kind = ExprKind::Conditional;
      e.span = join(c.span, b.span);
      e.args.emplace_back(std::move(c));
      e.args.emplace_back(std::move(a));
      e.args.emplace_back(std::move(b));
      return e;
    }
    return c;
  }

  Expr binary(int min_prec) {
    Expr lhs = unary();
    for (;;) {
      if (!at(Tok::Punct)) break;
      int prec = binary_precedence(cur().text);
      if (prec < min_prec) break;
      std::string op = take().text;
      Expr rhs = binary(prec + 1);
      SourceSpan span = join(lhs.span, rhs.span);
      lhs = make_binary(op, std::move(lhs), std::move(rhs));
      lhs.span = span;
    }
    return lhs;
  }

  bool at_cast() const {
    if (!at_punct("(")) return false;
    const Token& n = look(1);
    return n.kind == Tok::Ident && (kTypeWords.count(n.text) > 0);
  }

  std::string type_name() {
    std::string type;
    while (at(Tok::Ident) && kTypeWords.count(cur().text)) {
      if (!type.empty()) type += ' ';
      type += take().text;
    }
    while (accept("*")) type += type.back() == '*' ? "*" : " *";
    return type;
  }

  Expr unary() {
    const Token& t = cur();
    SourceSpan start = t.span;
    if (t.kind == Tok::Punct &&
        (t.text == "-" || t.text == "+" || t.text == "!" || t.text == "~" || t.text == "++" ||
         t.text == "--" || t.text == "*" || t.text == "&")) {
      std::string op = take().text;
      Expr operand = unary();
      SourceSpan span = join(start, operand.span);
      Expr e = make_unary(op, std::move(operand));
      e.span = span;
      return e;
    }
    if (t.ident("sizeof")) {
      ++pos_;
      if (at_cast()) {
        expect("(");
        std::string type = type_name();
        SourceSpan end = expect(")").span;
        Expr e = make_sizeof(type);
        e.span = join(start, end);
        return e;
      }
      unsupported(t, "sizeof applied to an expression");
    }
    if (at_cast()) {
      expect("(");
      std::string type = type_name();
      expect(")");
      Expr operand = unary();
      SourceSpan span = join(start, operand.span);
      Expr e = make_cast(type, std::move(operand));
      e.span = span;
      return e;
    }
    return postfix();
  }

  Expr postfix() {
    Expr e = primary();
    for (;;) {
      if (at_punct("[")) {
        ++pos_;
        Expr sub = expression();
        SourceSpan end = expect("]").span;
        SourceSpan span = join(e.span, end);
        e = make_index(std::move(e), std::move(sub));
        e.span = span;
      } else if (at_punct("(")) {
        if (e.kind != ExprKind::Ident) unsupported(cur(), "call through a function pointer");
        ++pos_;
        Expr call;
        call.kind = ExprKind::Call;
        call.text = e.text;
        if (!at_punct(")")) {
          for (;;) {
            call.args.emplace_back(assignment_in_list());
            if (!accept(",")) break;
          }
        }
        call.span = join(e.span, expect(")").span);
        e = std::move(call);
      } else if (at_punct("++") || at_punct("--")) {
        Expr p;
        p.kind = ExprKind::Postfix;
        p.text = cur().text;
        p.span = join(e.span, take().span);
        p.args.emplace_back(std::move(e));
        e = std::move(p);
      } else if (at_punct(".") || at_punct("->")) {
        unsupported(cur(), "member access");
      } else {
        break;
      }
    }
    return e;
  }

  Expr assignment_in_list() { return assignment(); }

  Expr primary() {
    const Token& t = cur();
    Expr e;
    e.span = t.span;
    switch (t.kind) {
      case Tok::Int: e.kind = ExprKind::IntLit; break;
      case Tok::Float: e.kind = ExprKind::FloatLit; break;
      case Tok::String: e.kind = ExprKind::StringLit; break;
      case Tok::Char: e.kind = ExprKind::CharLit; break;
      case Tok::Ident:
        reject_keyword();
        if (kTypeWords.count(t.text) || kStorageWords.count(t.text) || t.text == "for" ||
            t.text == "if" || t.text == "else" || t.text == "return")
          fail(Errc::SyntaxError, t.span, "expected an expression before '" + t.text + "'");
        e.kind = ExprKind::Ident;
        break;
      case Tok::Punct:
        if (t.text == "(") {
          ++pos_;
          Expr inner = expression();
          expect(")");
          return inner;
        }
        fail(Errc::SyntaxError, t.span, "expected an expression" + found());
      default:
        fail(Errc::SyntaxError, t.span, "expected an expression" + found());
    }
    e.text = take().text;
    if (e.kind == ExprKind::StringLit) {
      // Adjacent string literals concatenate.
      while (at(Tok::String)) {
        e.text.pop_back();
        e.text += take().text.substr(1);
      }
    }
    return e;
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::vector<std::map<std::string, bool>> scopes_;  // name -> is static
  std::set<std::string> globals_;
};

}  // namespace

TranslationUnit parse(const SourceUnit& unit) {
  if (unit.text.find_first_not_of(" \t\r\n") == std::string::npos)
    throw SourceError(Errc::SyntaxError, {1, 1, 1, 1}, "empty source unit");
  Parser p(detail::lex(unit.text));
  TranslationUnit tu = p.parse_unit();
  tu.path = unit.path;
  tu.origin = unit.origin;
  return tu;
}

TranslationUnit parse_text(const std::string& text, const std::string& path, Origin origin) {
  return parse(SourceUnit{path, text, origin});
}

Expr parse_expression(const std::string& text) {
  Parser p(detail::lex(text));
  return p.parse_expression_only();
}

OmpDirective parse_directive(const std::string& text, SourceSpan where) {
  std::string body = text;
  auto first = body.find_first_not_of(" \t");
  if (first != std::string::npos && body.compare(first, 7, "#pragma") == 0) body = body.substr(first + 7);
  Parser p(detail::lex(body, where.valid() ? where.line : 1, where.valid() ? where.col : 1, true));
  return p.parse_directive_only();
}

SourceUnit read_source(const std::string& path, Origin origin) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::IoError, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return SourceUnit{path, ss.str(), origin};
}

}  // namespace ompdiff::frontend
