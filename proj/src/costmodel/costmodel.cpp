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

#include "ompdiff/costmodel.hpp"

#include <vector>

namespace ompdiff::costmodel {

namespace {

using analysis::LoopHeader;

struct Bound {
  std::string index;
  Poly limit;
};

Poly trips(const Stmt& loop, const std::vector<Bound>& outer) {
  LoopHeader h = analysis::loop_header(loop);
  if (!h.canonical) return Poly::constant(1);
  Poly t = h.trip_count();
  for (auto it = outer.rbegin(); it != outer.rend(); ++it) t = t.substitute(it->index, it->limit);
  return t;
}

Poly work(const Stmt& s, std::vector<Bound>& outer) {
  switch (s.kind) {
    case StmtKind::Compound: {
      Poly sum;
      for (const auto& c : s.stmts) sum += work(*c, outer);
      return sum;
    }
    case StmtKind::Expr:
    case StmtKind::Return: return Poly::constant(1);
    case StmtKind::Decl: {
      std::int64_t n = 0;
      for (const auto& d : s.decl.declarators)
        if (d.init) ++n;
      return Poly::constant(n);
    }
    case StmtKind::If: {
      Poly p = Poly::constant(1) + work(*s.body, outer);
      if (s.else_body) p += work(*s.else_body, outer);
      return p;
    }
    case StmtKind::For: {
      Poly t = trips(s, outer);
      LoopHeader h = analysis::loop_header(s);
      bool pushed = false;
      if (h.canonical) {
        auto limit = symbolic::to_poly(h.ascending ? *h.upper : *h.lower, true);
        if (limit) {
          for (auto it = outer.rbegin(); it != outer.rend(); ++it)
            *limit = limit->substitute(it->index, it->limit);
          outer.push_back({h.index, *limit});
          pushed = true;
        }
      }
      Poly body = work(*s.body, outer);
      if (pushed) outer.pop_back();
      return t * body;
    }
    case StmtKind::Directive:
    case StmtKind::Empty: return Poly{};
  }
  return Poly{};
}

}  // namespace

Poly statement_work(const Stmt& s) {
  std::vector<Bound> outer;
  return work(s, outer);
}

WorkloadEstimate workload(const Stmt& nest) {
  WorkloadEstimate est;
  est.expr = statement_work(nest);
  if (auto v = est.expr.constant_value()) {
    est.evaluable = true;
    est.value = *v < 0 ? 0 : *v;
    if (*v < 0) est.expr = Poly{};
  } else {
    est.evaluable = false;
    std::set<std::string> local = analysis::names_declared(nest);
    for (const auto& n : analysis::names_written(nest)) local.insert(n);
    for (const auto& a : est.expr.atoms())
      if (local.count(a)) est.expressible = false;
  }
  return est;
}

const char* decision_name(Decision d) {
  switch (d) {
    case Decision::Serial: return "serial";
    case Decision::Parallel: return "parallel";
    case Decision::Conditional: return "conditional";
  }
  return "?";
}

Profitability is_profitable(const WorkloadEstimate& estimate, std::int64_t threshold) {
  Profitability p;
  if (estimate.evaluable) {
    p.decision = estimate.value < threshold ? Decision::Serial : Decision::Parallel;
    return p;
  }
  if (!estimate.expressible) return p;
  p.decision = Decision::Conditional;
  p.condition = ExprBox(make_binary(">", estimate.expr.to_expr(), make_int(threshold)));
  return p;
}

const char* imbalance_reason_name(ImbalanceReason r) {
  switch (r) {
    case ImbalanceReason::TriangularInner: return "triangular_inner";
    case ImbalanceReason::ConditionalBody: return "conditional_body";
    case ImbalanceReason::IterationDependentCall: return "iteration_dependent_call";
  }
  return "?";
}

std::string ImbalanceSignal::str() const {
  std::string s;
  for (auto r : reasons) {
    if (!s.empty()) s += ",";
    s += imbalance_reason_name(r);
  }
  return s;
}

namespace {

bool mentions(const Expr* e, const std::set<std::string>& names) {
  if (!e) return false;
  bool hit = false;
  visit_expr(*e, [&](const Expr& x) {
    if (x.kind == ExprKind::Ident && names.count(x.text)) hit = true;
  });
  return hit;
}

// Reads data that changes from one iteration to the next.
bool reads_varying(const Expr& cond, const std::set<std::string>& indices,
                   const std::set<std::string>& written_scalars,
                   const std::set<std::string>& written_arrays) {
  bool hit = false;
  visit_expr(cond, [&](const Expr& x) {
    if (x.kind == ExprKind::Ident && written_scalars.count(x.text)) hit = true;
    if (x.kind == ExprKind::Index || (x.kind == ExprKind::Unary && x.text == "*")) {
      std::string base = lvalue_name(x);
      if (written_arrays.count(base) || mentions(&x, indices) || mentions(&x, written_scalars))
        hit = true;
    }
  });
  return hit;
}

bool callee_workload_unknown(const std::string& name, const TranslationUnit* unit,
                             const analysis::Config& config) {
  if (analysis::default_pure_functions().count(name) || config.pure_functions.count(name))
    return false;
  const Function* fn = unit ? unit->find_function(name) : nullptr;
  if (!fn || !fn->body) return true;
  std::set<std::string> params;
  for (const auto& p : fn->params) params.insert(p.decl.name);
  bool varies = false;
  visit_stmts(*fn->body, [&](const Stmt& s) {
    if (s.kind == StmtKind::For && (mentions(s.cond.get(), params) || !analysis::loop_header(s).canonical))
      varies = true;
    if (s.kind == StmtKind::If && mentions(s.cond.get(), params)) varies = true;
  });
  return varies;
}

}  // namespace

ImbalanceSignal imbalance_score(const Stmt& nest, const TranslationUnit* unit,
                                const analysis::Config& config) {
  ImbalanceSignal sig;
  if (nest.kind != StmtKind::For || !nest.body) return sig;
  LoopHeader h = analysis::loop_header(nest);
  std::set<std::string> self{h.index};

  std::set<std::string> indices;
  std::set<std::string> written_scalars, written_arrays;
  visit_stmts(nest, [&](const Stmt& s) {
    if (s.kind != StmtKind::For) return;
    LoopHeader ih = analysis::loop_header(s);
    if (ih.canonical) indices.insert(ih.index);
  });
  visit_stmts(*nest.body, [&](const Stmt& s) {
    auto note = [&](const Expr& e) {
      visit_expr(e, [&](const Expr& x) {
        if (x.kind != ExprKind::Assign && x.kind != ExprKind::Postfix &&
            !(x.kind == ExprKind::Unary && (x.text == "++" || x.text == "--")))
          return;
        const Expr& lv = x.arg(0);
        std::string n = lvalue_name(lv);
        if (n.empty()) return;
        (lv.kind == ExprKind::Ident ? written_scalars : written_arrays).insert(n);
      });
    };
    for (const Expr* e : {s.expr.get(), s.step.get()})
      if (e) note(*e);
    for (const auto& d : s.decl.declarators)
      if (d.init) written_scalars.insert(d.name);
  });
  for (const auto& i : indices) written_scalars.erase(i);

  visit_stmts(*nest.body, [&](const Stmt& s) {
    if (s.kind == StmtKind::For) {
      LoopHeader ih = analysis::loop_header(s);
      const Expr* lo = ih.canonical ? ih.lower.get() : s.init ? s.init->expr.get() : nullptr;
      const Expr* hi = ih.canonical ? ih.upper.get() : s.cond.get();
      if (mentions(lo, self) || mentions(hi, self))
        sig.reasons.insert(ImbalanceReason::TriangularInner);
      if (ih.canonical && s.init && s.init->kind == StmtKind::Decl)
        for (const auto& d : s.init->decl.declarators)
          if (mentions(d.init.get(), self)) sig.reasons.insert(ImbalanceReason::TriangularInner);
    }
    if (s.kind == StmtKind::If && reads_varying(*s.cond, indices, written_scalars, written_arrays))
      sig.reasons.insert(ImbalanceReason::ConditionalBody);
  });

  std::set<std::string> varying = indices;
  varying.insert(written_scalars.begin(), written_scalars.end());
  visit_exprs(*nest.body, [&](const Expr& e) {
    if (e.kind != ExprKind::Call) return;
    bool dep = false;
    for (const auto& a : e.args) dep |= mentions(a.get(), varying);
    if (dep && callee_workload_unknown(e.text, unit, config))
      sig.reasons.insert(ImbalanceReason::IterationDependentCall);
  });
  return sig;
}

}  // namespace ompdiff::costmodel
