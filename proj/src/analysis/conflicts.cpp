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

bool static_unchunked(const Stmt& loop) {
  if (!loop.omp || !loop.omp->schedule) return true;
  return loop.omp->schedule->kind == ScheduleKind::Static && !loop.omp->schedule->chunk;
}

bool same_space(const LoopHeader& a, const LoopHeader& b) {
  if (!a.canonical || !b.canonical) return false;
  if (a.inclusive != b.inclusive || a.stride != b.stride || a.ascending != b.ascending) return false;
  auto la = symbolic::to_poly(*a.lower), lb = symbolic::to_poly(*b.lower);
  auto ua = symbolic::to_poly(*a.upper), ub = symbolic::to_poly(*b.upper);
  return la && lb && ua && ub && *la == *lb && *ua == *ub;
}

std::set<std::string> header_names(const LoopHeader& h) {
  std::set<std::string> out;
  for (const Expr* e : {h.lower.get(), h.upper.get()}) {
    if (!e) continue;
    visit_expr(*e, [&](const Expr& x) {
      if (x.kind == ExprKind::Ident) out.insert(x.text);
    });
  }
  return out;
}

// Variables each thread owns a copy of while running `loop`.
std::set<std::string> owned(const Stmt& loop, const OmpDirective* region,
                            const std::set<std::string>& tp) {
  std::set<std::string> out = names_declared(*loop.body);
  out.insert(tp.begin(), tp.end());
  auto add = [&](const OmpDirective& d) {
    for (const auto* list : {&d.private_vars, &d.firstprivate_vars})
      out.insert(list->begin(), list->end());
  };
  if (loop.omp) add(*loop.omp);
  if (region) add(*region);
  return out;
}

// Variables finalized at the end of the loop (lastprivate, reduction).
std::set<std::string> finalized(const Stmt& loop) {
  std::set<std::string> out;
  if (!loop.omp) return out;
  out.insert(loop.omp->lastprivate_vars.begin(), loop.omp->lastprivate_vars.end());
  for (const auto& r : loop.omp->reductions) out.insert(r.vars.begin(), r.vars.end());
  return out;
}

AffineForm renamed(const AffineForm& f, const std::string& from, const std::string& to) {
  AffineForm out = f;
  if (auto it = out.coeffs.find(from); it != out.coeffs.end() && from != to) {
    std::int64_t c = it->second;
    out.coeffs.erase(it);
    out.coeffs[to] += c;
  }
  return out;
}

}  // namespace

ConflictReport cross_loop_conflicts(const Stmt& first, const Stmt& second,
                                    const OmpDirective* region, const TranslationUnit* unit,
                                    const Config& config) {
  ConflictReport report;
  if (first.kind != StmtKind::For || second.kind != StmtKind::For) {
    report.reason = "not a loop";
    return report;
  }
  if (!static_unchunked(first) || !static_unchunked(second)) {
    report.reason = "schedule is not static without chunk";
    return report;
  }
  LoopHeader h1 = loop_header(first), h2 = loop_header(second);
  if (!same_space(h1, h2)) {
    report.reason = "iteration spaces differ";
    return report;
  }

  for (const Stmt* l : {&first, &second}) {
    for (const auto& f : called_functions(*l)) {
      SideEffectSummary fx = unit ? side_effects(*unit, f, config) : SideEffectSummary{};
      if (!unit && !default_pure_functions().count(f) && !config.pure_functions.count(f))
        fx.classification = EffectClass::Unknown;
      if (fx.classification != EffectClass::Pure) {
        report.reason = "call to " + f + " is not pure";
        return report;
      }
    }
  }

  std::set<std::string> tp = unit ? threadprivate_vars(*unit) : std::set<std::string>{};
  std::set<std::string> own1 = owned(first, region, tp), own2 = owned(second, region, tp);
  std::set<std::string> fin1 = finalized(first), fin2 = finalized(second);
  std::set<std::string> w1 = names_written(*first.body), w2 = names_written(*second.body);
  std::set<std::string> hn1 = header_names(h1), hn2 = header_names(h2);
  for (const auto& n : hn2)
    if (w1.count(n) && !own1.count(n)) {
      report.reason = "first loop writes bound '" + n + "'";
      return report;
    }
  for (const auto& n : hn1)
    if (w2.count(n) && !own2.count(n)) {
      report.reason = "second loop writes bound '" + n + "'";
      return report;
    }

  LoopRef r1{unit, nullptr, &first}, r2{unit, nullptr, &second};
  if (unit) {
    r1 = locate(*unit, &first);
    r2 = locate(*unit, &second);
  }
  auto a1 = collect_accesses(r1, config);
  auto a2 = collect_accesses(r2, config);
  std::map<std::string, std::vector<const AccessDescriptor*>> by1, by2;
  for (const auto& a : a1)
    if (a.base != h1.index && !own1.count(a.base)) by1[a.base].push_back(&a);
  for (const auto& a : a2)
    if (a.base != h2.index && !own2.count(a.base)) by2[a.base].push_back(&a);

  for (const auto& [base, list1] : by1) {
    auto it = by2.find(base);
    if (it == by2.end()) continue;
    const auto& list2 = it->second;
    if (fin1.count(base) || fin2.count(base)) {
      report.reason = "'" + base + "' is finalized at the end of a loop";
      report.witnesses.emplace_back(*list1.front(), *list2.front());
      return report;
    }
    bool writes = false;
    for (const auto* a : list1) writes |= a->mode == AccessMode::Write;
    for (const auto* a : list2) writes |= a->mode == AccessMode::Write;
    if (!writes) continue;

    std::vector<AffineForm> ref;
    const AccessDescriptor* ref_acc = list1.front();
    auto forms = [&](const AccessDescriptor& a, const std::string& index,
                     std::vector<AffineForm>& out) {
      out.clear();
      if (a.is_scalar() || a.has_opaque()) return false;
      for (const auto& s : a.subscripts) out.push_back(renamed(s.form, index, h1.index));
      return true;
    };
    auto fail = [&](const AccessDescriptor& x, const AccessDescriptor& y, const std::string& why) {
      report.reason = why;
      report.witnesses.emplace_back(x, y);
      return report;
    };
    if (!forms(*ref_acc, h1.index, ref))
      return fail(*ref_acc, *list2.front(), "'" + base + "' is not accessed through an affine subscript");
    bool owner_dim = false;
    for (const auto& f : ref)
      if (f.coeffs.size() == 1 && f.coeff(h1.index) != 0) owner_dim = true;
    if (!owner_dim)
      return fail(*ref_acc, *list2.front(), "'" + base + "' is shared by different iterations");
    std::vector<AffineForm> cur;
    for (const auto* a : list1)
      if (!forms(*a, h1.index, cur) || cur != ref)
        return fail(*ref_acc, *a, "'" + base + "' accessed at different elements");
    for (const auto* a : list2)
      if (!forms(*a, h2.index, cur) || cur != ref)
        return fail(*ref_acc, *a, "'" + base + "' accessed at different elements");
  }
  report.conflicting = false;
  report.reason = "every shared element is handled by the same thread in both loops";
  return report;
}

}  // namespace ompdiff::analysis
