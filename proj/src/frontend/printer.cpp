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

#include <sstream>

#include "ompdiff/frontend.hpp"

namespace ompdiff::frontend {

namespace {

int precedence(const Expr& e) {
  switch (e.kind) {
    case ExprKind::Assign: return 2;
    case ExprKind::Conditional: return 3;
    case ExprKind::Binary: {
      const std::string& op = e.text;
      if (op == "||") return 4;
      if (op == "&&") return 5;
      if (op == "|") return 6;
      if (op == "^") return 7;
      if (op == "&") return 8;
      if (op == "==" || op == "!=") return 9;
      if (op == "<" || op == ">" || op == "<=" || op == ">=") return 10;
      if (op == "<<" || op == ">>") return 11;
      if (op == "+" || op == "-") return 12;
      return 13;
    }
    case ExprKind::Unary:
    case ExprKind::Cast: return 14;
    case ExprKind::Postfix:
    case ExprKind::Index:
    case ExprKind::Call: return 15;
    default: return 16;
  }
}

std::string render(const Expr& e, int min_prec);

std::string render_raw(const Expr& e) {
  switch (e.kind) {
    case ExprKind::IntLit:
    case ExprKind::FloatLit:
    case ExprKind::StringLit:
    case ExprKind::CharLit:
    case ExprKind::Ident: return e.text;
    case ExprKind::SizeofType: return "sizeof(" + e.text + ")";
    case ExprKind::Unary: {
      const Expr& op = e.arg(0);
      std::string inner = render(op, 14);
      // Keep "- -x" and "&&x"-like sequences from fusing into other tokens.
      if (op.kind == ExprKind::Unary && !inner.empty() && inner[0] != '(' &&
          (inner[0] == e.text.back()))
        inner = "(" + inner + ")";
      return e.text + inner;
    }
    case ExprKind::Postfix: return render(e.arg(0), 15) + e.text;
    case ExprKind::Binary: {
      int p = precedence(e);
      return render(e.arg(0), p) + " " + e.text + " " + render(e.arg(1), p + 1);
    }
    case ExprKind::Assign: return render(e.arg(0), 14) + " " + e.text + " " + render(e.arg(1), 2);
    case ExprKind::Conditional:
      return render(e.arg(0), 4) + " ? " + render(e.arg(1), 2) + " : " + render(e.arg(2), 3);
    case ExprKind::Call: {
      std::string s = e.text + "(";
      for (std::size_t i = 0; i < e.args.size(); ++i) {
        if (i) s += ", ";
        s += render(*e.args[i], 2);
      }
      return s + ")";
    }
    case ExprKind::Index: return render(e.arg(0), 15) + "[" + render(e.arg(1), 0) + "]";
    case ExprKind::Cast: return "(" + e.text + ")" + render(e.arg(0), 14);
  }
  return {};
}

std::string render(const Expr& e, int min_prec) {
  std::string s = render_raw(e);
  if (precedence(e) < min_prec) return "(" + s + ")";
  return s;
}

std::string join_vars(const std::vector<std::string>& vars) {
  std::string s;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (i) s += ", ";
    s += vars[i];
  }
  return s;
}

const char* storage_prefix(StorageClass s) {
  switch (s) {
    case StorageClass::Static: return "static ";
    case StorageClass::Extern: return "extern ";
    case StorageClass::None: break;
  }
  return "";
}

std::string render_declarator(const Declarator& d) {
  std::string s(d.pointer_depth, '*');
  s += d.name;
  for (const auto& dim : d.dims) s += dim ? "[" + render(*dim, 0) + "]" : "[]";
  if (d.init) s += " = " + render(*d.init, 2);
  return s;
}

std::string render_decl(const Declaration& decl) {
  std::string s = storage_prefix(decl.storage) + decl.type + " ";
  for (std::size_t i = 0; i < decl.declarators.size(); ++i) {
    if (i) s += ", ";
    s += render_declarator(decl.declarators[i]);
  }
  return s;
}

class StmtPrinter {
 public:
  explicit StmtPrinter(std::ostringstream& out) : out_(out) {}

  void stmt(const Stmt& s, int indent) {
    if (s.omp) line(indent, "#pragma " + print_directive(*s.omp));
    switch (s.kind) {
      case StmtKind::Compound:
        line(indent, "{");
        for (const auto& c : s.stmts) stmt(*c, indent + 1);
        line(indent, "}");
        break;
      case StmtKind::For: {
        std::string head = "for (";
        if (s.init) {
          head += s.init->kind == StmtKind::Decl ? render_decl(s.init->decl)
                                                 : render(*s.init->expr, 0);
        }
        head += ";";
        if (s.cond) head += " " + render(*s.cond, 0);
        head += ";";
        if (s.step) head += " " + render(*s.step, 0);
        head += ")";
        body(head, *s.body, indent);
        break;
      }
      case StmtKind::If: {
        std::string head = "if (" + render(*s.cond, 0) + ")";
        if (!s.else_body) {
          body(head, *s.body, indent);
          break;
        }
        bool closed = body(head, *s.body, indent, /*keep_open=*/true);
        const Stmt& e = *s.else_body;
        // A braced then-branch closes on the else line.
        std::string else_head = closed ? "} else" : "else";
        if (e.kind == StmtKind::If && !e.omp) {
          pending_prefix_ = else_head + " ";
          stmt(e, indent);
        } else {
          body(else_head, e, indent);
        }
        break;
      }
      case StmtKind::Expr: line(indent, render(*s.expr, 0) + ";"); break;
      case StmtKind::Decl: line(indent, render_decl(s.decl) + ";"); break;
      case StmtKind::Return:
        line(indent, s.expr ? "return " + render(*s.expr, 0) + ";" : "return;");
        break;
      case StmtKind::Directive: break;
      case StmtKind::Empty: line(indent, ";"); break;
    }
  }

  void function(const Function& fn) {
    std::string head = storage_prefix(fn.storage) + fn.return_type + " " +
                       std::string(fn.return_pointer_depth, '*') + fn.name + "(";
    if (fn.params.empty() && !fn.variadic) head += "void";
    for (std::size_t i = 0; i < fn.params.size(); ++i) {
      if (i) head += ", ";
      head += fn.params[i].type;
      std::string d = render_declarator(fn.params[i].decl);
      if (!d.empty()) head += " " + d;
    }
    if (fn.variadic) head += fn.params.empty() ? "..." : ", ...";
    head += ")";
    if (!fn.body) {
      line(0, head + ";");
      return;
    }
    line(0, head);
    stmt(*fn.body, 0);
  }

 private:
  // Prints `head` followed by a statement body. Compound bodies without a
  // directive open on the head line. With keep_open the closing brace is left
  // to the caller; returns true when that happened.
  bool body(const std::string& head, const Stmt& b, int indent, bool keep_open = false) {
    if (b.kind == StmtKind::Compound && !b.omp) {
      line(indent, head + " {");
      for (const auto& c : b.stmts) stmt(*c, indent + 1);
      if (keep_open) return true;
      line(indent, "}");
      return false;
    }
    line(indent, head);
    stmt(b, indent + 1);
    return false;
  }

  void line(int indent, const std::string& text) {
    out_ << std::string(indent * 2, ' ') << pending_prefix_ << text << "\n";
    pending_prefix_.clear();
  }

  std::ostringstream& out_;
  std::string pending_prefix_;
};

}  // namespace

std::string print_expr(const Expr& expr) { return render(expr, 0); }

std::string print_directive(const OmpDirective& d) {
  std::string s = "omp ";
  s += omp_kind_name(d.kind);
  if (d.kind == OmpKind::Critical && !d.critical_name.empty()) s += "(" + d.critical_name + ")";
  if (d.kind == OmpKind::Threadprivate) s += "(" + join_vars(d.threadprivate_vars) + ")";
  if (d.if_condition) s += " if(" + render(*d.if_condition, 0) + ")";
  if (d.default_kind) s += *d.default_kind == DefaultKind::None ? " default(none)" : " default(shared)";
  if (!d.private_vars.empty()) s += " private(" + join_vars(d.private_vars) + ")";
  if (!d.firstprivate_vars.empty()) s += " firstprivate(" + join_vars(d.firstprivate_vars) + ")";
  if (!d.lastprivate_vars.empty()) s += " lastprivate(" + join_vars(d.lastprivate_vars) + ")";
  if (!d.shared_vars.empty()) s += " shared(" + join_vars(d.shared_vars) + ")";
  for (const auto& r : d.reductions)
    s += std::string(" reduction(") + reduction_op_spelling(r.op) + ":" + join_vars(r.vars) + ")";
  if (d.schedule) {
    s += std::string(" schedule(") + schedule_kind_name(d.schedule->kind);
    if (d.schedule->chunk) s += ", " + render(*d.schedule->chunk, 2);
    s += ")";
  }
  if (d.nowait) s += " nowait";
  return s;
}

std::string print_stmt(const Stmt& stmt, int indent) {
  std::ostringstream out;
  StmtPrinter(out).stmt(stmt, indent);
  return out.str();
}

std::string print_text(const TranslationUnit& unit) {
  std::ostringstream out;
  StmtPrinter p(out);
  TopItem::Kind prev = TopItem::Kind::Include;
  bool first = true;
  for (const auto& item : unit.items) {
    bool gap = !first && (item.kind == TopItem::Kind::Function ||
                          (prev == TopItem::Kind::Function) ||
                          (prev == TopItem::Kind::Include && item.kind != TopItem::Kind::Include));
    if (gap && !(item.kind == TopItem::Kind::Function && !item.fn.body &&
                 prev == TopItem::Kind::Function))
      out << "\n";
    switch (item.kind) {
      case TopItem::Kind::Include: out << item.raw << "\n"; break;
      case TopItem::Kind::Decl:
        out << render_decl(item.stmt.decl) << ";\n";
        break;
      case TopItem::Kind::Directive:
        out << "#pragma " << print_directive(*item.stmt.omp) << "\n";
        break;
      case TopItem::Kind::Function: p.function(item.fn); break;
    }
    prev = item.kind;
    first = false;
  }
  return out.str();
}

SourceUnit print(const TranslationUnit& unit) {
  return SourceUnit{unit.path, print_text(unit), unit.origin};
}

}  // namespace ompdiff::frontend
