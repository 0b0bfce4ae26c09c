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

class Collector {
 public:
  Collector(const LoopRef& ref, detail::EffectOracle* oracle) : ref_(ref), oracle_(oracle) {
    indices_ = detail::nest_indices(*ref.loop);
    index_set_.insert(indices_.begin(), indices_.end());
    // Scalars written anywhere in the body vary between iterations.
    auto note = [&](const detail::Touch& t) {
      if (t.mode == AccessMode::Write && !t.element) variant_.insert(t.name);
    };
    visit_stmts(*ref.loop->body, [&](const Stmt& st) {
      for (const Expr* e : {st.cond.get(), st.step.get(), st.expr.get()})
        if (e) touches(*e, note);
      for (const auto& d : st.decl.declarators)
        if (d.init) variant_.insert(d.name);
    });
  }

  std::vector<AccessDescriptor> run() {
    stmt(*ref_.loop->body);
    return std::move(out_);
  }

 private:
  void touches(const Expr& e, const std::function<void(const detail::Touch&)>& fn) {
    if (oracle_) {
      detail::walk_touches_with_calls(e, fn, oracle_->hook());
    } else {
      detail::walk_touches(e, fn);
    }
  }

  bool array_like(const std::string& name) {
    if (!ref_.unit) return false;
    auto it = array_cache_.find(name);
    if (it != array_cache_.end()) return it->second;
    auto info = lookup_var(*ref_.unit, ref_.function, name);
    bool a = info && info->decl && info->decl->is_array_like();
    array_cache_[name] = a;
    return a;
  }

  void expr(const Expr& e, const Stmt& owner) {
    touches(e, [&](const detail::Touch& t) { add(t, owner); });
  }

  void add(const detail::Touch& t, const Stmt& owner) {
    AccessDescriptor a;
    a.base = t.name;
    a.mode = t.mode;
    a.expr = t.expr;
    a.stmt = &owner;
    a.seq = seq_++;
    a.loops = indices_;
    a.site = t.expr ? t.expr->span : owner.span;
    auto opaque = [](OpaqueReason r) {
      Subscript s;
      s.affine = false;
      s.reason = r;
      return s;
    };
    if (!t.expr) {
      if (t.element) a.subscripts.push_back(opaque(OpaqueReason::CallEffect));
    } else if (t.expr->kind == ExprKind::Index) {
      std::vector<const Expr*> subs;
      index_base(*t.expr, &subs);
      for (const Expr* s : subs)
        a.subscripts.push_back(t.via_address ? opaque(OpaqueReason::CallEffect)
                                             : detail::analyze_subscript(*s, index_set_, variant_));
    } else if (t.expr->kind == ExprKind::Unary && t.expr->text == "*") {
      Subscript zero;
      a.subscripts.push_back(zero);
    } else if (t.expr->kind == ExprKind::Ident && array_like(t.name)) {
      // The whole array escapes (typically into a call).
      a.subscripts.push_back(opaque(OpaqueReason::CallEffect));
    }
    out_.push_back(std::move(a));
  }

  void stmt(const Stmt& s) {
    switch (s.kind) {
      case StmtKind::Compound:
        for (const auto& c : s.stmts) stmt(*c);
        break;
      case StmtKind::For:
        if (s.init) stmt(*s.init);
        if (s.cond) expr(*s.cond, s);
        stmt(*s.body);
        if (s.step) expr(*s.step, s);
        break;
      case StmtKind::If:
        expr(*s.cond, s);
        stmt(*s.body);
        if (s.else_body) stmt(*s.else_body);
        break;
      case StmtKind::Expr:
      case StmtKind::Return:
        if (s.expr) expr(*s.expr, s);
        break;
      case StmtKind::Decl:
        for (const auto& d : s.decl.declarators) {
          if (!d.init) continue;
          expr(*d.init, s);
          detail::Touch w{d.name, AccessMode::Write, nullptr, false, true, false};
          add(w, s);
        }
        break;
      case StmtKind::Directive:
      case StmtKind::Empty: break;
    }
  }

  const LoopRef& ref_;
  detail::EffectOracle* oracle_;
  std::vector<std::string> indices_;
  std::set<std::string> index_set_;
  std::set<std::string> variant_;
  std::map<std::string, bool> array_cache_;
  std::vector<AccessDescriptor> out_;
  int seq_ = 0;
};

}  // namespace

std::vector<AccessDescriptor> collect_accesses(const LoopRef& loop, const Config& config) {
  if (!loop.loop || loop.loop->kind != StmtKind::For) return {};
  if (loop.unit) {
    detail::EffectOracle oracle(loop.unit, config);
    return Collector(loop, &oracle).run();
  }
  return Collector(loop, nullptr).run();
}

std::vector<AccessDescriptor> collect_accesses(const Stmt& loop) {
  return collect_accesses(LoopRef{nullptr, nullptr, &loop});
}

}  // namespace ompdiff::analysis
