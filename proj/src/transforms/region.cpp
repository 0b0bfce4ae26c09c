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

bool is_parallel_for(const Stmt& s) {
  return s.kind == StmtKind::For && s.omp && s.omp->kind == OmpKind::ParallelFor;
}

bool same_region_clauses(const OmpDirective& a, const OmpDirective& b) {
  if (a.default_kind != b.default_kind) return false;
  if (static_cast<bool>(a.if_condition) != static_cast<bool>(b.if_condition)) return false;
  return !a.if_condition || same_expr(*a.if_condition, *b.if_condition);
}

// Names a statement reads and writes that are shared among the team.
struct Footprint {
  std::set<std::string> reads;
  std::set<std::string> writes;
  bool opaque = false;  // calls whose effects cannot be pinned to names
  bool impure = false;
};

Footprint footprint(const TranslationUnit& unit, const Stmt& s, const OmpDirective* region,
                    const std::set<std::string>& tp, const analysis::Config& config) {
  Footprint f;
  f.reads = analysis::names_read(s);
  f.writes = analysis::names_written(s);
  for (const auto& c : analysis::called_functions(s)) {
    analysis::SideEffectSummary fx = analysis::side_effects(unit, c, config);
    if (fx.classification != analysis::EffectClass::Pure) f.impure = true;
    f.reads.insert(fx.read_globals.begin(), fx.read_globals.end());
    f.writes.insert(fx.written_globals.begin(), fx.written_globals.end());
    if (fx.classification == analysis::EffectClass::WritesParams ||
        fx.classification == analysis::EffectClass::Io ||
        fx.classification == analysis::EffectClass::Unknown)
      f.opaque = true;
  }
  std::set<std::string> own = analysis::names_declared(s);
  own.insert(tp.begin(), tp.end());
  if (s.kind == StmtKind::For) {
    for (const auto& i : analysis::detail::nest_indices(s)) own.insert(i);
  }
  auto drop_private = [&](const OmpDirective& d) {
    own.insert(d.private_vars.begin(), d.private_vars.end());
    own.insert(d.firstprivate_vars.begin(), d.firstprivate_vars.end());
  };
  if (s.omp) drop_private(*s.omp);
  if (region) drop_private(*region);
  for (const auto& n : own) {
    f.reads.erase(n);
    f.writes.erase(n);
  }
  return f;
}

bool overlaps(const Footprint& a, const Footprint& b) {
  if (a.opaque || b.opaque) return true;
  for (const auto& w : a.writes)
    if (b.reads.count(w) || b.writes.count(w)) return true;
  for (const auto& w : b.writes)
    if (a.reads.count(w)) return true;
  return false;
}

}  // namespace

void form_parallel_region(Stmt& block, std::size_t first, std::size_t count) {
  if (count < 2) throw Error(Errc::FewerThanTwo, "a region needs at least two loops");
  if (block.kind != StmtKind::Compound || first + count > block.stmts.size())
    throw Error(Errc::NotAdjacent, "loops are not adjacent statements of one block");
  for (std::size_t k = first; k < first + count; ++k) {
    if (!is_parallel_for(*block.stmts[k]))
      throw Error(Errc::NotAdjacent, "statement " + std::to_string(k) + " is not a parallel for",
                  "statement " + std::to_string(k));
    if (!same_region_clauses(*block.stmts[first]->omp, *block.stmts[k]->omp))
      throw Error(Errc::NotAdjacent, "loops disagree on if/default clauses",
                  "statement " + std::to_string(k));
  }

  OmpDirective region;
  region.kind = OmpKind::Parallel;
  const OmpDirective& lead = *block.stmts[first]->omp;
  region.default_kind = lead.default_kind;
  if (lead.if_condition) region.if_condition = lead.if_condition;
  std::vector<std::string> common = lead.private_vars;
  for (std::size_t k = first + 1; k < first + count; ++k) {
    const auto& pv = block.stmts[k]->omp->private_vars;
    common.erase(std::remove_if(common.begin(), common.end(),
                                [&](const std::string& v) {
                                  return std::find(pv.begin(), pv.end(), v) == pv.end();
                                }),
                 common.end());
  }
  region.private_vars = common;

  std::vector<Stmt> loops;
  for (std::size_t k = first; k < first + count; ++k) {
    Stmt loop = std::move(*block.stmts[k]);
    OmpDirective& d = *loop.omp;
    for (const auto& v : d.shared_vars) detail::add_unique(region.shared_vars, v);
    d.kind = OmpKind::For;
    d.default_kind.reset();
    d.if_condition = ExprBox();
    d.shared_vars.clear();
    for (const auto& v : common)
      d.private_vars.erase(std::find(d.private_vars.begin(), d.private_vars.end(), v));
    loops.push_back(std::move(loop));
  }
  Stmt merged = make_compound(std::move(loops));
  merged.omp = std::move(region);
  block.stmts.erase(block.stmts.begin() + static_cast<std::ptrdiff_t>(first),
                    block.stmts.begin() + static_cast<std::ptrdiff_t>(first + count));
  block.stmts.insert(block.stmts.begin() + static_cast<std::ptrdiff_t>(first),
                     StmtBox(std::move(merged)));
}

namespace detail {

int nowait_scan(TranslationUnit& unit, Stmt& region, const analysis::Config& config,
                std::vector<std::pair<Stmt*, std::string>>* refused) {
  if (region.kind != StmtKind::Compound || !region.omp || region.omp->kind != OmpKind::Parallel)
    return 0;
  const OmpDirective* rd = &*region.omp;
  std::set<std::string> tp = analysis::threadprivate_vars(unit);
  auto& kids = region.stmts;
  int added = 0;
  for (std::size_t i = kids.size(); i-- > 0;) {
    Stmt& loop = *kids[i];
    if (loop.kind != StmtKind::For || !loop.omp || loop.omp->kind != OmpKind::For ||
        loop.omp->nowait)
      continue;
    Footprint mine = footprint(unit, loop, rd, tp, config);
    // Lastprivate and reduction results are only complete after the barrier.
    for (const auto& v : loop.omp->lastprivate_vars) mine.writes.insert(v);
    for (const auto& r : loop.omp->reductions) mine.writes.insert(r.vars.begin(), r.vars.end());
    std::string why;
    for (std::size_t j = i + 1; j < kids.size() && why.empty(); ++j) {
      Stmt& next = *kids[j];
      if (next.kind == StmtKind::Directive && next.omp && next.omp->kind == OmpKind::Barrier) break;
      Footprint theirs = footprint(unit, next, rd, tp, config);
      bool ws = next.kind == StmtKind::For && next.omp && next.omp->kind == OmpKind::For;
      if (ws) {
        if (overlaps(mine, theirs)) {
          analysis::ConflictReport rep =
              analysis::cross_loop_conflicts(loop, next, rd, &unit, config);
          if (rep.conflicting) why = "conflicts with loop at statement " + std::to_string(j) +
                                     ": " + rep.reason;
        }
        if (!next.omp->nowait) break;
        continue;
      }
      if (next.omp && next.omp->kind == OmpKind::Single) {
        if (overlaps(mine, theirs)) why = "single construct at statement " + std::to_string(j) +
                                          " touches data the loop writes";
        if (!next.omp->nowait) break;
        continue;
      }
      if (overlaps(mine, theirs)) {
        why = "statement " + std::to_string(j) + " touches data the loop writes";
      } else if (theirs.impure) {
        why = "statement " + std::to_string(j) + " calls a function with side effects";
      }
    }
    if (why.empty()) {
      loop.omp->nowait = true;
      ++added;
    } else if (refused) {
      refused->emplace_back(&loop, why);
    }
  }
  return added;
}

}  // namespace detail

int insert_nowait(TranslationUnit& unit, Stmt& region, const analysis::Config& config) {
  return detail::nowait_scan(unit, region, config, nullptr);
}

}  // namespace ompdiff::transforms
