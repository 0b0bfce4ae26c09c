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
#include "ompdiff/frontend.hpp"

namespace ompdiff::analysis {

namespace {

std::optional<std::int64_t> constant_of(const Expr& e) {
  auto p = symbolic::to_poly(e);
  if (!p) return std::nullopt;
  return p->constant_value();
}

bool is_index(const Expr& e, const std::string& index) {
  return e.kind == ExprKind::Ident && e.text == index;
}

// Stride of a step expression on `index`, or nullopt.
std::optional<std::int64_t> step_stride(const Expr& e, const std::string& index) {
  if ((e.kind == ExprKind::Postfix || e.kind == ExprKind::Unary) &&
      (e.text == "++" || e.text == "--") && is_index(e.arg(0), index))
    return e.text == "++" ? 1 : -1;
  if (e.kind != ExprKind::Assign || !is_index(e.arg(0), index)) return std::nullopt;
  const Expr& rhs = e.arg(1);
  if (e.text == "+=" || e.text == "-=") {
    auto c = constant_of(rhs);
    if (!c) return std::nullopt;
    return e.text == "+=" ? *c : -*c;
  }
  if (e.text == "=" && rhs.kind == ExprKind::Binary && (rhs.text == "+" || rhs.text == "-")) {
    if (is_index(rhs.arg(0), index)) {
      auto c = constant_of(rhs.arg(1));
      if (!c) return std::nullopt;
      return rhs.text == "+" ? *c : -*c;
    }
    if (rhs.text == "+" && is_index(rhs.arg(1), index)) return constant_of(rhs.arg(0));
  }
  return std::nullopt;
}

}  // namespace

Poly LoopHeader::trip_count() const {
  if (!lower || !upper) return Poly::atom("(unknown)");
  Poly lb = *symbolic::to_poly(*lower, true);
  Poly ub = *symbolic::to_poly(*upper, true);
  Poly diff = ascending ? ub - lb : lb - ub;
  if (inclusive) diff += Poly::constant(1);
  std::int64_t s = stride < 0 ? -stride : stride;
  if (s <= 1) {
    if (auto c = diff.constant_value(); c && *c < 0) return Poly::constant(0);
    return diff;
  }
  if (auto c = diff.constant_value()) return Poly::constant(*c <= 0 ? 0 : (*c + s - 1) / s);
  if (auto q = diff.divide(s)) return *q;
  Expr e = make_binary("/", make_binary("+", diff.to_expr(), make_int(s - 1)), make_int(s));
  return Poly::atom("(" + frontend::print_expr(e) + ")");
}

std::optional<std::int64_t> LoopHeader::constant_trip_count() const {
  return trip_count().constant_value();
}

LoopHeader loop_header(const Stmt& loop) {
  LoopHeader h;
  auto fail = [&](std::string why) {
    h.canonical = false;
    h.reason = std::move(why);
    return h;
  };
  if (loop.kind != StmtKind::For) return fail("not a for loop");

  if (loop.init && loop.init->kind == StmtKind::Expr && loop.init->expr &&
      loop.init->expr->kind == ExprKind::Assign && loop.init->expr->text == "=" &&
      loop.init->expr->arg(0).kind == ExprKind::Ident) {
    h.index = loop.init->expr->arg(0).text;
    h.lower = ExprBox(loop.init->expr->arg(1));
  } else if (loop.init && loop.init->kind == StmtKind::Decl &&
             loop.init->decl.declarators.size() == 1 && loop.init->decl.declarators[0].init &&
             !loop.init->decl.declarators[0].is_array_like()) {
    h.index = loop.init->decl.declarators[0].name;
    h.lower = loop.init->decl.declarators[0].init;
  } else {
    return fail("initialization is not `index = expr`");
  }

  if (!loop.cond || loop.cond->kind != ExprKind::Binary) return fail("missing loop condition");
  std::string op = loop.cond->text;
  const Expr* bound = nullptr;
  if (is_index(loop.cond->arg(0), h.index)) {
    bound = &loop.cond->arg(1);
  } else if (is_index(loop.cond->arg(1), h.index)) {
    bound = &loop.cond->arg(0);
    if (op == "<") op = ">";
    else if (op == ">") op = "<";
    else if (op == "<=") op = ">=";
    else if (op == ">=") op = "<=";
  } else {
    return fail("condition does not compare the index");
  }
  if (op != "<" && op != "<=" && op != ">" && op != ">=")
    return fail("condition operator '" + op + "' is not a relational bound");
  h.upper = ExprBox(*bound);
  h.inclusive = op == "<=" || op == ">=";

  if (!loop.step) return fail("missing step");
  auto stride = step_stride(*loop.step, h.index);
  if (!stride || *stride == 0) return fail("step is not a constant increment of the index");
  h.stride = *stride;
  h.ascending = h.stride > 0;
  if (h.ascending != (op == "<" || op == "<=")) return fail("step direction contradicts the bound");

  std::set<std::string> written = names_written(*loop.body);
  if (written.count(h.index)) return fail("index written in the body");
  for (const Expr* b : {h.lower.get(), h.upper.get()}) {
    bool bad = false;
    visit_expr(*b, [&](const Expr& x) {
      if (x.kind == ExprKind::Call || x.kind == ExprKind::Assign || x.kind == ExprKind::Postfix) bad = true;
      if (x.kind == ExprKind::Ident && (written.count(x.text) || x.text == h.index)) bad = true;
    });
    if (bad) return fail("loop bound is not loop-invariant");
  }
  h.canonical = true;
  return h;
}

}  // namespace ompdiff::analysis
