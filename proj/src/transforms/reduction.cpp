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

#include "analysis/internal.hpp"
#include "ompdiff/error.hpp"
#include "transforms/internal.hpp"

namespace ompdiff::transforms {

namespace {

Expr identity(ReductionOp op, bool floating) {
  switch (op) {
    case ReductionOp::Add: return floating ? make_float("0.0") : make_int(0);
    case ReductionOp::Mul: return floating ? make_float("1.0") : make_int(1);
    case ReductionOp::Max:
      return floating ? make_unary("-", make_float("1.0e308"))
                      : make_binary("-", make_unary("-", make_int(2147483647)), make_int(1));
    case ReductionOp::Min: return floating ? make_float("1.0e308") : make_int(2147483647);
  }
  return make_int(0);
}

Expr element(const std::string& base, const std::vector<std::string>& idx) {
  Expr e = make_ident(base);
  for (const auto& k : idx) e = make_index(std::move(e), make_ident(k));
  return e;
}

// ((s0) * d1 + s1) * d2 + s2
Expr linear(const std::vector<Expr>& subs, const std::vector<std::int64_t>& dims) {
  Expr e = subs[0];
  for (std::size_t d = 1; d < subs.size(); ++d)
    e = make_binary("+", make_binary("*", std::move(e), make_int(dims[d])), subs[d]);
  return e;
}

Stmt nest(const std::vector<std::string>& idx, const std::vector<std::int64_t>& dims, Stmt body) {
  for (std::size_t d = idx.size(); d-- > 0;) body = detail::counted_loop(idx[d], dims[d], std::move(body));
  return body;
}

// target op= source, in a form the chosen construct accepts.
Stmt combine(ReductionOp op, Expr target, Expr source) {
  switch (op) {
    case ReductionOp::Add: return make_expr_stmt(make_assign("+=", std::move(target), std::move(source)));
    case ReductionOp::Mul: return make_expr_stmt(make_assign("*=", std::move(target), std::move(source)));
    case ReductionOp::Min:
    case ReductionOp::Max: {
      Stmt s;
      s.kind = StmtKind::If;
      s.cond = ExprBox(make_binary(op == ReductionOp::Max ? ">" : "<", source, target));
      s.body = StmtBox(make_expr_stmt(make_assign("=", std::move(target), std::move(source))));
      return s;
    }
  }
  return Stmt{};
}

void rewrite_refs(Expr& e, const std::string& var, const std::string& buffer, std::size_t rank,
                  const std::vector<std::int64_t>& dims) {
  if (e.kind == ExprKind::Index) {
    std::vector<const Expr*> subs;
    const Expr& base = index_base(e, &subs);
    if (base.kind == ExprKind::Ident && base.text == var) {
      if (subs.size() != rank)
        throw Error(Errc::NotAnArrayReduction, "'" + var + "' is not accessed element-wise");
      std::vector<Expr> copies;
      for (const Expr* s : subs) copies.push_back(*s);
      for (auto& c : copies) rewrite_refs(c, var, buffer, rank, dims);
      e = make_index(make_ident(buffer), linear(copies, dims));
      return;
    }
  }
  if (e.kind == ExprKind::Ident && e.text == var)
    throw Error(Errc::NotAnArrayReduction, "'" + var + "' is used as a whole array");
  for (auto& a : e.args) rewrite_refs(*a, var, buffer, rank, dims);
}

void ensure_include(TranslationUnit& unit, const std::string& header) {
  for (const auto& item : unit.items)
    if (item.kind == TopItem::Kind::Include && item.raw.find(header) != std::string::npos) return;
  TopItem inc;
  inc.kind = TopItem::Kind::Include;
  inc.raw = "#include <" + header + ">";
  auto pos = std::find_if(unit.items.begin(), unit.items.end(),
                          [](const TopItem& i) { return i.kind != TopItem::Kind::Include; });
  unit.items.insert(pos, std::move(inc));
}

}  // namespace

void lower_array_reduction(TranslationUnit& unit, Stmt& loop,
                           const analysis::ReductionCandidate& candidate, ReductionStrategy strategy) {
  const std::string& var = candidate.variable;
  if (!candidate.is_array())
    throw Error(Errc::NotAnArrayReduction, "'" + var + "' is not an array reduction");
  if (loop.kind != StmtKind::For || !loop.omp || !loop.omp->is_worksharing_loop())
    throw Error(Errc::NotAnArrayReduction, "loop carries no worksharing directive");
  Function* fn = detail::function_of(unit, &loop);
  if (!fn) throw Error(Errc::NotAnArrayReduction, "loop is not inside a function");
  auto info = analysis::lookup_var(unit, fn, var);
  if (!info || !info->decl || info->decl->pointer_depth > 0)
    throw Error(Errc::NotAnArrayReduction, "'" + var + "' is not a declared array");
  auto dims = analysis::detail::constant_dims(*info->decl);
  if (!dims || dims->empty())
    throw Error(Errc::NotAnArrayReduction, "'" + var + "' has no constant extent");
  std::string type = info->type;
  bool floating = analysis::detail::is_float_type(type);
  std::size_t rank = dims->size();

  std::set<std::string> taken = detail::identifiers(unit);
  std::string buffer =
      detail::fresh_name(taken, var + (strategy == ReductionStrategy::Atomic ? "_local" : "_reduce"));
  std::vector<std::string> idx;
  for (std::size_t d = 0; d < rank; ++d) idx.push_back(detail::fresh_name(taken, var + "_k" + std::to_string(d)));

  // Work on a copy so a failed rewrite leaves the loop untouched.
  Stmt body = loop;
  body.omp.reset();
  if (strategy == ReductionStrategy::Atomic) {
    detail::for_each_expr_mut(body, [&](Expr& e) {
      if (e.kind == ExprKind::Ident && e.text == var) e.text = buffer;
    });
  } else {
    visit_stmts_mut(body, [&](Stmt& st) {
      for (ExprBox* e : {&st.cond, &st.step, &st.expr})
        if (*e) rewrite_refs(**e, var, buffer, rank, *dims);
      for (auto& d : st.decl.declarators) {
        for (auto& dim : d.dims)
          if (dim) rewrite_refs(*dim, var, buffer, rank, *dims);
        if (d.init) rewrite_refs(*d.init, var, buffer, rank, *dims);
      }
    });
  }

  std::vector<Stmt> out;
  std::vector<Expr> idx_exprs;
  for (const auto& k : idx) idx_exprs.push_back(make_ident(k));
  Expr local_elem = strategy == ReductionStrategy::Atomic
                        ? element(buffer, idx)
                        : make_index(make_ident(buffer), linear(idx_exprs, *dims));
  if (strategy == ReductionStrategy::Atomic) {
    Declarator d;
    d.name = buffer;
    for (auto n : *dims) d.dims.emplace_back(make_int(n));
    out.push_back(make_decl_stmt(type, {std::move(d)}));
  } else {
    std::int64_t total = 1;
    for (auto n : *dims) total *= n;
    Declarator d;
    d.name = buffer;
    d.pointer_depth = 1;
    d.init = ExprBox(make_cast(type + " *",
                               make_call("malloc", {make_binary("*", make_int(total),
                                                                make_sizeof(type))})));
    out.push_back(make_decl_stmt(type, {std::move(d)}));
  }
  std::vector<Declarator> index_decls;
  for (const auto& k : idx) {
    Declarator d;
    d.name = k;
    index_decls.push_back(std::move(d));
  }
  out.push_back(make_decl_stmt("int", std::move(index_decls)));
  out.push_back(nest(idx, *dims,
                     make_expr_stmt(make_assign("=", local_elem, identity(candidate.op, floating)))));

  OmpDirective original = *loop.omp;
  OmpDirective ws = original;
  ws.forget(var);
  ws.kind = OmpKind::For;
  ws.nowait = true;
  std::optional<OmpDirective> region;
  if (original.kind == OmpKind::ParallelFor) {
    OmpDirective r;
    r.kind = OmpKind::Parallel;
    r.default_kind = ws.default_kind;
    r.if_condition = ws.if_condition;
    r.shared_vars = ws.shared_vars;
    ws.default_kind.reset();
    ws.if_condition = ExprBox();
    ws.shared_vars.clear();
    region = std::move(r);
  }
  body.omp = std::move(ws);
  out.push_back(std::move(body));

  Stmt merge = combine(candidate.op, element(var, idx), local_elem);
  OmpDirective guard;
  if (strategy == ReductionStrategy::Atomic &&
      (candidate.op == ReductionOp::Add || candidate.op == ReductionOp::Mul)) {
    guard.kind = OmpKind::Atomic;
    merge.omp = guard;
    out.push_back(nest(idx, *dims, std::move(merge)));
  } else {
    guard.kind = OmpKind::Critical;
    Stmt all = nest(idx, *dims, std::move(merge));
    all.omp = guard;
    out.push_back(std::move(all));
  }
  if (strategy == ReductionStrategy::Critical)
    out.push_back(make_expr_stmt(make_call("free", {make_ident(buffer)})));

  if (!region && !original.nowait) {
    auto path = detail::path_in(*fn, &loop);
    bool last_in_region = path.size() >= 2 && path[path.size() - 2]->omp &&
                          path[path.size() - 2]->omp->kind == OmpKind::Parallel &&
                          path[path.size() - 2]->stmts.back().get() == &loop;
    if (!last_in_region) {
      OmpDirective b;
      b.kind = OmpKind::Barrier;
      out.push_back(make_directive_stmt(std::move(b)));
    }
  }

  Stmt replacement = make_compound(std::move(out));
  if (region) replacement.omp = std::move(region);
  replacement.span = loop.span;
  loop = std::move(replacement);
  if (strategy == ReductionStrategy::Critical) ensure_include(unit, "stdlib.h");
}

}  // namespace ompdiff::transforms
