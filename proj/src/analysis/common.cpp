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
#include <sstream>

#include "analysis/internal.hpp"
#include "ompdiff/frontend.hpp"

namespace ompdiff::analysis {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

Config Config::parse(const std::string& text) {
  Config cfg;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    if (trim(line.substr(0, eq)) != "pure_functions") continue;
    std::istringstream items(line.substr(eq + 1));
    std::string item;
    while (std::getline(items, item, ',')) {
      item = trim(item);
      if (!item.empty()) cfg.pure_functions.insert(item);
    }
  }
  return cfg;
}

Config Config::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::IoError, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

const std::set<std::string>& default_pure_functions() {
  static const std::set<std::string> names = {
      "sqrt", "sqrtf", "cbrt", "pow", "powf", "exp", "expf", "exp2", "log", "logf", "log10",
      "log2", "sin", "sinf", "cos", "cosf", "tan", "asin", "acos", "atan", "atan2", "sinh",
      "cosh", "tanh", "fabs", "fabsf", "abs", "labs", "floor", "ceil", "round", "trunc",
      "fmod", "fmin", "fmax", "hypot", "erf", "erfc"};
  return names;
}

const std::set<std::string>& io_functions() {
  static const std::set<std::string> names = {
      "printf", "fprintf", "sprintf", "snprintf", "puts", "fputs", "putchar", "fputc", "putc",
      "scanf", "fscanf", "sscanf", "getchar", "fgetc", "getc", "fgets", "gets", "fopen",
      "fclose", "fread", "fwrite", "fflush", "fseek", "ftell", "rewind", "perror", "remove",
      "rename", "exit", "abort", "system", "time", "clock", "rand", "srand"};
  return names;
}

const char* opaque_reason_name(OpaqueReason r) {
  switch (r) {
    case OpaqueReason::Indirect: return "indirect";
    case OpaqueReason::Nonaffine: return "nonaffine";
    case OpaqueReason::VariantScalar: return "variant_scalar";
    case OpaqueReason::CallEffect: return "call_effect";
  }
  return "?";
}

const char* dep_kind_name(DepKind k) {
  switch (k) {
    case DepKind::Flow: return "flow";
    case DepKind::Anti: return "anti";
    case DepKind::Output: return "output";
  }
  return "?";
}

const char* effect_class_name(EffectClass c) {
  switch (c) {
    case EffectClass::Pure: return "pure";
    case EffectClass::WritesParams: return "writes_params";
    case EffectClass::WritesGlobals: return "writes_globals";
    case EffectClass::Io: return "io";
    case EffectClass::Unknown: return "unknown";
  }
  return "?";
}

const char* var_class_name(VarClass c) {
  switch (c) {
    case VarClass::Private: return "private";
    case VarClass::Firstprivate: return "firstprivate";
    case VarClass::Lastprivate: return "lastprivate";
    case VarClass::Shared: return "shared";
    case VarClass::ThreadprivateCandidate: return "threadprivate_candidate";
  }
  return "?";
}

std::string AffineForm::str() const {
  Poly p = constant;
  for (const auto& [idx, c] : coeffs) p += Poly::constant(c) * Poly::atom(idx);
  return p.str();
}

bool AccessDescriptor::has_opaque() const {
  for (const auto& s : subscripts)
    if (!s.affine) return true;
  return false;
}

std::string AccessDescriptor::str() const {
  std::string s = mode == AccessMode::Read ? "read " : "write ";
  s += base;
  for (const auto& sub : subscripts)
    s += "[" + (sub.affine ? sub.form.str() : std::string("opaque:") + opaque_reason_name(sub.reason)) + "]";
  return s;
}

LoopRef locate(const TranslationUnit& unit, const Stmt* loop) {
  LoopRef ref{&unit, nullptr, loop};
  for (const Function* fn : unit.functions()) {
    if (!fn->body) continue;
    bool found = false;
    visit_stmts(*fn->body, [&](const Stmt& s) {
      if (&s == loop) found = true;
    });
    if (found) {
      ref.function = fn;
      break;
    }
  }
  return ref;
}

std::set<std::string> threadprivate_vars(const TranslationUnit& unit) {
  std::set<std::string> out;
  auto note = [&](const Stmt& s) {
    if (s.omp && s.omp->kind == OmpKind::Threadprivate)
      out.insert(s.omp->threadprivate_vars.begin(), s.omp->threadprivate_vars.end());
  };
  for (const auto& item : unit.items) {
    if (item.kind == TopItem::Kind::Directive) note(item.stmt);
    if (item.kind == TopItem::Kind::Function && item.fn.body) visit_stmts(*item.fn.body, note);
  }
  return out;
}

std::optional<VarInfo> lookup_var(const TranslationUnit& unit, const Function* fn,
                                  const std::string& name) {
  if (fn) {
    std::optional<VarInfo> local;
    if (fn->body) {
      visit_stmts(*fn->body, [&](const Stmt& s) {
        if (local || s.kind != StmtKind::Decl) return;
        for (const auto& d : s.decl.declarators) {
          if (d.name == name) {
            local = VarInfo{name, s.decl.type, &d, s.decl.storage, false, false};
            return;
          }
        }
      });
    }
    if (local) return local;
    for (const auto& p : fn->params)
      if (p.decl.name == name) return VarInfo{name, p.type, &p.decl, StorageClass::None, false, true};
  }
  for (const auto& item : unit.items) {
    if (item.kind != TopItem::Kind::Decl) continue;
    for (const auto& d : item.stmt.decl.declarators)
      if (d.name == name) return VarInfo{name, item.stmt.decl.type, &d, item.stmt.decl.storage, true, false};
  }
  return std::nullopt;
}

namespace {

template <typename F>
void for_each_touch(const Stmt& s, F&& fn) {
  visit_stmts(s, [&](const Stmt& st) {
    auto cb = [&](const detail::Touch& t) { fn(t); };
    if (st.cond) detail::walk_touches(*st.cond, cb);
    if (st.step) detail::walk_touches(*st.step, cb);
    if (st.expr) detail::walk_touches(*st.expr, cb);
    for (const auto& d : st.decl.declarators) {
      for (const auto& dim : d.dims)
        if (dim) detail::walk_touches(*dim, cb);
      if (d.init) {
        detail::walk_touches(*d.init, cb);
        fn(detail::Touch{d.name, AccessMode::Write, nullptr, false, true, false});
      }
    }
  });
}

}  // namespace

std::set<std::string> names_read(const Stmt& s) {
  std::set<std::string> out;
  for_each_touch(s, [&](const detail::Touch& t) {
    if (t.mode == AccessMode::Read) out.insert(t.name);
  });
  return out;
}

std::set<std::string> names_written(const Stmt& s) {
  std::set<std::string> out;
  for_each_touch(s, [&](const detail::Touch& t) {
    if (t.mode == AccessMode::Write) out.insert(t.name);
  });
  return out;
}

std::set<std::string> names_declared(const Stmt& s) {
  std::set<std::string> out;
  visit_stmts(s, [&](const Stmt& st) {
    if (st.kind == StmtKind::Decl)
      for (const auto& d : st.decl.declarators) out.insert(d.name);
  });
  return out;
}

std::set<std::string> called_functions(const Stmt& s) {
  std::set<std::string> out;
  visit_exprs(s, [&](const Expr& e) {
    if (e.kind == ExprKind::Call) out.insert(e.text);
  });
  return out;
}

bool contains_call(const Stmt& s) { return !called_functions(s).empty(); }

namespace detail {

namespace {

struct TouchWalker {
  const std::function<void(const Touch&)>& fn;
  const CallHook* hook;

  void emit(std::string name, AccessMode mode, const Expr* e, bool element, bool must,
            bool addr = false) {
    fn(Touch{std::move(name), mode, e, element, must, addr});
  }

  void store(const Expr& lv, bool compound, bool cond, bool addr = false) {
    if (lv.kind == ExprKind::Ident) {
      if (compound) emit(lv.text, AccessMode::Read, &lv, false, true, addr);
      emit(lv.text, AccessMode::Write, &lv, false, !cond && !addr, addr);
      return;
    }
    if (lv.kind == ExprKind::Index) {
      std::vector<const Expr*> subs;
      const Expr& base = index_base(lv, &subs);
      for (const Expr* s : subs) walk(*s, cond);
      if (base.kind == ExprKind::Ident) {
        if (compound) emit(base.text, AccessMode::Read, &lv, true, true, addr);
        emit(base.text, AccessMode::Write, &lv, true, !cond && !addr, addr);
      } else {
        walk(base, cond);
      }
      return;
    }
    if (lv.kind == ExprKind::Unary && lv.text == "*") {
      const Expr& p = lv.arg(0);
      if (p.kind == ExprKind::Ident) {
        if (compound) emit(p.text, AccessMode::Read, &lv, true, true, addr);
        emit(p.text, AccessMode::Write, &lv, true, !cond && !addr, addr);
      } else {
        walk(p, cond);
      }
      return;
    }
    walk(lv, cond);
  }

  void walk(const Expr& e, bool cond) {
    switch (e.kind) {
      case ExprKind::Ident: emit(e.text, AccessMode::Read, &e, false, true); break;
      case ExprKind::Index: {
        std::vector<const Expr*> subs;
        const Expr& base = index_base(e, &subs);
        for (const Expr* s : subs) walk(*s, cond);
        if (base.kind == ExprKind::Ident) {
          emit(base.text, AccessMode::Read, &e, true, true);
        } else {
          walk(base, cond);
        }
        break;
      }
      case ExprKind::Unary:
        if (e.text == "*") {
          const Expr& p = e.arg(0);
          if (p.kind == ExprKind::Ident) {
            emit(p.text, AccessMode::Read, &e, true, true);
          } else {
            walk(p, cond);
          }
        } else if (e.text == "&") {
          // The address escapes into a call: the callee may read and write.
          store(e.arg(0), /*compound=*/true, cond, /*addr=*/true);
        } else if (e.text == "++" || e.text == "--") {
          store(e.arg(0), true, cond);
        } else {
          walk(e.arg(0), cond);
        }
        break;
      case ExprKind::Postfix: store(e.arg(0), true, cond); break;
      case ExprKind::Assign:
        walk(e.arg(1), cond);
        store(e.arg(0), e.text != "=", cond);
        break;
      case ExprKind::Conditional:
        walk(e.arg(0), cond);
        walk(e.arg(1), true);
        walk(e.arg(2), true);
        break;
      case ExprKind::Binary:
        walk(e.arg(0), cond);
        walk(e.arg(1), cond || e.text == "&&" || e.text == "||");
        break;
      case ExprKind::Call:
        for (const auto& a : e.args) walk(*a, cond);
        if (hook && *hook) (*hook)(e, fn);
        break;
      case ExprKind::Cast: walk(e.arg(0), cond); break;
      default: break;
    }
  }
};

}  // namespace

void walk_touches(const Expr& e, const std::function<void(const Touch&)>& fn, bool conditional) {
  TouchWalker w{fn, nullptr};
  w.walk(e, conditional);
}

void walk_touches_with_calls(const Expr& e, const std::function<void(const Touch&)>& fn,
                             const CallHook& hook, bool conditional) {
  TouchWalker w{fn, &hook};
  w.walk(e, conditional);
}

Subscript analyze_subscript(const Expr& sub, const std::set<std::string>& indices,
                            const std::set<std::string>& variant) {
  Subscript s;
  s.expr = &sub;
  bool indirect = false, call = false, variant_ref = false;
  visit_expr(sub, [&](const Expr& x) {
    if (x.kind == ExprKind::Index || (x.kind == ExprKind::Unary && x.text == "*")) indirect = true;
    if (x.kind == ExprKind::Call || x.kind == ExprKind::Assign || x.kind == ExprKind::Postfix ||
        (x.kind == ExprKind::Unary && (x.text == "++" || x.text == "--")))
      call = true;
    if (x.kind == ExprKind::Ident && variant.count(x.text) && !indices.count(x.text))
      variant_ref = true;
  });
  auto opaque = [&](OpaqueReason r) {
    s.affine = false;
    s.reason = r;
    return s;
  };
  if (indirect) return opaque(OpaqueReason::Indirect);
  if (call) return opaque(OpaqueReason::Nonaffine);
  if (variant_ref) return opaque(OpaqueReason::VariantScalar);
  auto poly = symbolic::to_poly(sub);
  if (!poly) return opaque(OpaqueReason::Nonaffine);
  for (const auto& [mono, c] : poly->terms()) {
    int idx_atoms = 0;
    for (const auto& a : mono)
      if (indices.count(a)) ++idx_atoms;
    if (idx_atoms == 0) {
      Poly term = Poly::constant(c);
      for (const auto& a : mono) term *= Poly::atom(a);
      s.form.constant += term;
    } else if (idx_atoms == 1 && mono.size() == 1) {
      s.form.coeffs[mono[0]] += c;
    } else {
      return opaque(OpaqueReason::Nonaffine);
    }
  }
  return s;
}

std::vector<std::string> nest_indices(const Stmt& loop) {
  std::vector<std::string> out;
  visit_stmts(loop, [&](const Stmt& s) {
    if (s.kind != StmtKind::For) return;
    LoopHeader h = loop_header(s);
    if (h.canonical && std::find(out.begin(), out.end(), h.index) == out.end())
      out.push_back(h.index);
  });
  return out;
}

std::optional<std::vector<std::int64_t>> constant_dims(const Declarator& d) {
  if (d.pointer_depth > 0 || d.dims.empty()) return std::nullopt;
  std::vector<std::int64_t> out;
  for (const auto& dim : d.dims) {
    if (!dim) return std::nullopt;
    auto p = symbolic::to_poly(*dim);
    if (!p || !p->constant_value() || *p->constant_value() <= 0) return std::nullopt;
    out.push_back(*p->constant_value());
  }
  return out;
}

std::vector<const Stmt*> path_to(const Stmt& root, const Stmt* target) {
  std::vector<const Stmt*> path;
  std::function<bool(const Stmt&)> rec = [&](const Stmt& s) {
    path.push_back(&s);
    if (&s == target) return true;
    for (const auto& c : s.stmts)
      if (rec(*c)) return true;
    if (s.init && rec(*s.init)) return true;
    if (s.body && rec(*s.body)) return true;
    if (s.else_body && rec(*s.else_body)) return true;
    path.pop_back();
    return false;
  };
  rec(root);
  return path;
}

int count_refs(const Expr& e, const std::string& name) {
  int n = 0;
  visit_expr(e, [&](const Expr& x) {
    if (x.kind == ExprKind::Ident && x.text == name) ++n;
  });
  return n;
}

int count_refs(const Stmt& s, const std::string& name) {
  int n = 0;
  visit_exprs(s, [&](const Expr& x) {
    if (x.kind == ExprKind::Ident && x.text == name) ++n;
  });
  return n;
}

bool is_float_type(const std::string& type) {
  return type.find("double") != std::string::npos || type.find("float") != std::string::npos;
}

}  // namespace detail

}  // namespace ompdiff::analysis
