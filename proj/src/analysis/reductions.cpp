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

struct Match {
  const Expr* target = nullptr;  // Ident or Index lvalue
  ReductionOp op = ReductionOp::Add;
  std::vector<const Expr*> operands;  // the contributions; must not mention the target
};

// Flattens a left-leaning chain of `+`/`-` (or `*`) into signed terms.
void flatten(const Expr& e, bool additive, bool negated,
             std::vector<std::pair<const Expr*, bool>>& out) {
  if (e.kind == ExprKind::Binary &&
      (additive ? (e.text == "+" || e.text == "-") : e.text == "*")) {
    flatten(e.arg(0), additive, negated, out);
    flatten(e.arg(1), additive, additive && e.text == "-" ? !negated : negated, out);
    return;
  }
  out.emplace_back(&e, negated);
}

std::optional<Match> match_update(const Expr& e) {
  Match m;
  if ((e.kind == ExprKind::Postfix || e.kind == ExprKind::Unary) &&
      (e.text == "++" || e.text == "--")) {
    m.target = &e.arg(0);
    return m;
  }
  if (e.kind != ExprKind::Assign) return std::nullopt;
  m.target = &e.arg(0);
  const Expr& rhs = e.arg(1);
  if (e.text == "+=" || e.text == "-=") {
    m.operands.push_back(&rhs);
    return m;
  }
  if (e.text == "*=") {
    m.op = ReductionOp::Mul;
    m.operands.push_back(&rhs);
    return m;
  }
  if (e.text != "=") return std::nullopt;
  if (rhs.kind == ExprKind::Call && rhs.args.size() == 2 &&
      (rhs.text == "fmax" || rhs.text == "fmin")) {
    m.op = rhs.text == "fmax" ? ReductionOp::Max : ReductionOp::Min;
    if (same_expr(rhs.arg(0), *m.target)) {
      m.operands.push_back(&rhs.arg(1));
    } else if (same_expr(rhs.arg(1), *m.target)) {
      m.operands.push_back(&rhs.arg(0));
    } else {
      return std::nullopt;
    }
    return m;
  }
  for (bool additive : {true, false}) {
    std::vector<std::pair<const Expr*, bool>> terms;
    flatten(rhs, additive, false, terms);
    if (terms.size() < 2) continue;
    int hits = 0;
    for (const auto& [t, neg] : terms) {
      if (same_expr(*t, *m.target)) {
        if (neg) return std::nullopt;
        ++hits;
      } else {
        m.operands.push_back(t);
      }
    }
    if (hits != 1) return std::nullopt;
    m.op = additive ? ReductionOp::Add : ReductionOp::Mul;
    return m;
  }
  return std::nullopt;
}

const Stmt* single_stmt(const Stmt& s) {
  if (s.kind == StmtKind::Compound) return s.stmts.size() == 1 ? single_stmt(*s.stmts[0]) : nullptr;
  return &s;
}

// `if (e > v) v = e;` and its mirror images.
std::optional<Match> match_minmax(const Stmt& s) {
  if (s.kind != StmtKind::If || s.else_body) return std::nullopt;
  const Stmt* inner = single_stmt(*s.body);
  if (!inner || inner->kind != StmtKind::Expr || inner->omp) return std::nullopt;
  const Expr& a = *inner->expr;
  if (a.kind != ExprKind::Assign || a.text != "=") return std::nullopt;
  const Expr& c = *s.cond;
  if (c.kind != ExprKind::Binary) return std::nullopt;
  bool greater = c.text == ">" || c.text == ">=";
  bool less = c.text == "<" || c.text == "<=";
  if (!greater && !less) return std::nullopt;
  const Expr& v = a.arg(0);
  const Expr& e = a.arg(1);
  Match m;
  m.target = &v;
  m.operands.push_back(&e);
  if (same_expr(c.arg(0), e) && same_expr(c.arg(1), v)) {
    m.op = greater ? ReductionOp::Max : ReductionOp::Min;
  } else if (same_expr(c.arg(0), v) && same_expr(c.arg(1), e)) {
    m.op = greater ? ReductionOp::Min : ReductionOp::Max;
  } else {
    return std::nullopt;
  }
  return m;
}

struct Group {
  ReductionOp op;
  bool consistent = true;
  bool array = false;
  std::vector<const Stmt*> stmts;
  std::vector<const Expr*> targets;
};

std::vector<ReductionCandidate> recognize(const Stmt& loop, const LoopRef* ref) {
  std::vector<ReductionCandidate> out;
  if (loop.kind != StmtKind::For) return out;
  LoopHeader header = loop_header(loop);
  if (!header.canonical) return out;

  std::map<std::string, Group> groups;
  std::vector<std::string> order;
  std::set<const Stmt*> inside_minmax;
  visit_stmts(*loop.body, [&](const Stmt& s) {
    std::optional<Match> m;
    if (s.kind == StmtKind::If) {
      m = match_minmax(s);
      if (m) inside_minmax.insert(single_stmt(*s.body));
    } else if (s.kind == StmtKind::Expr && !inside_minmax.count(&s)) {
      m = match_update(*s.expr);
    }
    if (!m) return;
    std::string name = lvalue_name(*m->target);
    if (name.empty()) return;
    if (m->target->kind != ExprKind::Ident && m->target->kind != ExprKind::Index) return;
    for (const Expr* op : m->operands)
      if (detail::count_refs(*op, name) > 0) return;
    Group fresh_group;
    fresh_group.op = m->op;
    auto [it, fresh] = groups.try_emplace(name, std::move(fresh_group));
    if (fresh) order.push_back(name);
    Group& g = it->second;
    if (g.op != m->op) g.consistent = false;
    bool arr = m->target->kind == ExprKind::Index;
    if (!g.stmts.empty() && g.array != arr) g.consistent = false;
    g.array = arr;
    g.stmts.push_back(&s);
    g.targets.push_back(m->target);
  });

  std::vector<std::string> indices = detail::nest_indices(loop);
  std::set<std::string> index_set(indices.begin(), indices.end());
  std::set<std::string> variant;
  visit_stmts(*loop.body, [&](const Stmt& st) {
    auto note = [&](const detail::Touch& t) {
      if (t.mode == AccessMode::Write && !t.element) variant.insert(t.name);
    };
    for (const Expr* e : {st.cond.get(), st.step.get(), st.expr.get()})
      if (e) detail::walk_touches(*e, note);
    for (const auto& d : st.decl.declarators)
      if (d.init) variant.insert(d.name);
  });
  std::set<std::string> declared = names_declared(*loop.body);

  std::set<std::string> call_touched;
  if (ref && ref->unit) {
    detail::EffectOracle oracle(ref->unit, Config{});
    visit_exprs(loop, [&](const Expr& e) {
      if (e.kind != ExprKind::Call) return;
      oracle.call_touches(e, [&](const detail::Touch& t) { call_touched.insert(t.name); });
    });
  }

  for (const auto& name : order) {
    const Group& g = groups[name];
    if (!g.consistent) continue;
    if (index_set.count(name) || declared.count(name) || call_touched.count(name)) continue;
    int inside = 0;
    for (const Stmt* s : g.stmts) inside += detail::count_refs(*s, name);
    if (inside != detail::count_refs(loop, name)) continue;
    if (ref && ref->unit) {
      auto info = lookup_var(*ref->unit, ref->function, name);
      if (info && info->decl && !g.array && info->decl->is_array_like()) continue;
    }

    ReductionCandidate c;
    c.variable = name;
    c.op = g.op;
    c.statements = g.stmts;
    for (const Stmt* s : g.stmts) c.spans.push_back(s->span);
    if (g.array) {
      bool ok = true;
      std::vector<AffineForm> pattern;
      for (std::size_t k = 0; k < g.targets.size() && ok; ++k) {
        std::vector<const Expr*> subs;
        const Expr& base = index_base(*g.targets[k], &subs);
        if (base.kind != ExprKind::Ident) ok = false;
        for (const Expr* sub : subs) {
          Subscript s = detail::analyze_subscript(*sub, index_set, variant);
          if (!s.affine || s.form.coeff(header.index) != 0) {
            ok = false;
            break;
          }
          if (k == 0) pattern.push_back(s.form);
        }
      }
      if (!ok) continue;
      c.element_pattern = std::move(pattern);
    }
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace

std::vector<ReductionCandidate> recognize_reductions(const LoopRef& loop) {
  if (!loop.loop) return {};
  return recognize(*loop.loop, &loop);
}

std::vector<ReductionCandidate> recognize_reductions(const Stmt& loop) {
  return recognize(loop, nullptr);
}

}  // namespace ompdiff::analysis
