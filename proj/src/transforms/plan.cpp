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
#include <functional>
#include <map>
#include <sstream>

#include "analysis/internal.hpp"
#include "ompdiff/error.hpp"
#include "transforms/internal.hpp"

namespace ompdiff::transforms {

const char* pass_name(Pass p) {
  switch (p) {
    case Pass::Inline: return "inline";
    case Pass::Parallelize: return "parallelize";
    case Pass::Region: return "region";
    case Pass::Reduction: return "reduction";
    case Pass::Schedule: return "schedule";
    case Pass::Condpar: return "condpar";
    case Pass::Nowait: return "nowait";
    case Pass::Threadprivate: return "threadprivate";
  }
  return "?";
}

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

}  // namespace

TransformPlan TransformPlan::parse(const std::string& passes) {
  static const std::map<std::string, Pass> names = {
      {"inline", Pass::Inline},     {"parallelize", Pass::Parallelize},
      {"region", Pass::Region},     {"reduction", Pass::Reduction},
      {"schedule", Pass::Schedule}, {"condpar", Pass::Condpar},
      {"nowait", Pass::Nowait},     {"threadprivate", Pass::Threadprivate},
  };
  TransformPlan plan;
  std::stringstream in(passes);
  std::string item;
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    std::string key = item, value;
    if (auto eq = item.find('='); eq != std::string::npos) {
      key = trim(item.substr(0, eq));
      value = trim(item.substr(eq + 1));
    }
    auto it = names.find(key);
    if (it == names.end()) throw Error(Errc::ConfigError, "unknown pass '" + key + "'", key);
    Pass p = it->second;
    if (!value.empty()) {
      if (p == Pass::Reduction && (value == "atomic" || value == "critical")) {
        plan.reduction = value == "atomic" ? ReductionStrategy::Atomic : ReductionStrategy::Critical;
      } else if (p == Pass::Threadprivate &&
                 (value == "to_loop_private" || value == "to_threadprivate")) {
        plan.tp_direction =
            value == "to_loop_private" ? TpDirection::ToLoopPrivate : TpDirection::ToThreadprivate;
      } else if (p == Pass::Schedule && (value == "dynamic" || value == "guided")) {
        plan.guided = value == "guided";
      } else {
        throw Error(Errc::ConfigError, "bad option '" + value + "' for pass '" + key + "'", item);
      }
    }
    plan.passes.insert(p);
  }
  return plan;
}

std::string LogEntry::str() const { return pass + "\t" + section + "\t" + action + "\t" + reason; }

std::string section_of(const TranslationUnit& unit, const Stmt* stmt) {
  for (const Function* fn : unit.functions()) {
    if (!fn->body) continue;
    auto path = analysis::detail::path_to(*fn->body, stmt);
    if (path.empty()) continue;
    auto loops = frontend::top_level_loops(*fn);
    for (std::size_t k = 0; k < loops.size(); ++k)
      if (std::find(path.begin(), path.end(), loops[k]) != path.end())
        return frontend::SectionId{fn->name, static_cast<int>(k), static_cast<int>(k)}.render();
    int lo = -1, hi = -1;
    for (std::size_t k = 0; k < loops.size(); ++k) {
      if (analysis::detail::path_to(*stmt, loops[k]).empty()) continue;
      if (lo < 0) lo = static_cast<int>(k);
      hi = static_cast<int>(k);
    }
    if (lo >= 0) return frontend::SectionId{fn->name, lo, hi}.render();
    return fn->name;
  }
  return "?";
}

namespace {

class Driver {
 public:
  Driver(const TransformPlan& plan, RewriteResult& out) : plan_(plan), out_(out) {}

  void run() {
    if (plan_.has(Pass::Inline)) inline_pass();
    if (plan_.has(Pass::Parallelize)) parallelize_pass();
    if (plan_.has(Pass::Region)) region_pass();
    if (plan_.has(Pass::Reduction)) reduction_pass();
    if (plan_.has(Pass::Schedule)) schedule_pass();
    if (plan_.has(Pass::Condpar)) condpar_pass();
    if (plan_.has(Pass::Nowait)) nowait_pass();
    if (plan_.has(Pass::Threadprivate)) threadprivate_pass();
  }

 private:
  TranslationUnit& unit() { return out_.ast; }

  void log(Pass p, const Stmt* s, std::string action, std::string reason = {}) {
    out_.log.push_back({pass_name(p), s ? section_of(unit(), s) : "", std::move(action), std::move(reason)});
  }
  void refuse(Pass p, const std::string& section, std::string action, std::string reason) {
    out_.refusals.push_back({pass_name(p), section, std::move(action), std::move(reason)});
  }
  void refuse(Pass p, const Stmt* s, std::string action, std::string reason) {
    refuse(p, s ? section_of(unit(), s) : "", std::move(action), std::move(reason));
  }

  // Statements carrying a worksharing-loop directive, outermost first.
  std::vector<Stmt*> ws_loops() {
    std::vector<Stmt*> out;
    for (Function* fn : unit().functions()) {
      if (!fn->body) continue;
      visit_stmts_mut(*fn->body, [&](Stmt& s) {
        if (s.kind == StmtKind::For && s.omp && s.omp->is_worksharing_loop()) out.push_back(&s);
      });
    }
    return out;
  }

  void inline_pass() {
    std::set<std::string> refused;
    for (int round = 0; round < 256; ++round) {
      bool changed = false;
      for (const auto& site : analysis::find_call_sites(unit())) {
        const Function* callee = unit().find_function(site.callee);
        if (!callee || !callee->is_definition()) continue;
        std::string key = site.caller + ":" + std::to_string(site.span.line) + ":" +
                          std::to_string(site.span.col) + ":" + site.callee;
        if (refused.count(key) || !in_loop(site)) continue;
        try {
          unit() = analysis::inline_expand(unit(), site, plan_.config);
          out_.log.push_back({"inline", site.caller, "inlined call to " + site.callee,
                              "line " + std::to_string(site.span.line)});
          changed = true;
          break;
        } catch (const Error& e) {
          if (e.code() != Errc::InlineRefused) throw;
          refused.insert(key);
          refuse(Pass::Inline, site.caller, "kept call to " + site.callee, e.detail());
        }
      }
      if (!changed) return;
    }
  }

  bool in_loop(const analysis::CallSite& site) {
    const Function* fn = unit().find_function(site.caller);
    if (!fn || !fn->body) return false;
    std::set<const Expr*> looped;
    visit_stmts(*fn->body, [&](const Stmt& s) {
      if (s.kind != StmtKind::For || !s.body) return;
      visit_exprs(*s.body, [&](const Expr& e) {
        if (e.kind == ExprKind::Call) looped.insert(&e);
      });
      for (const ExprBox* h : {&s.cond, &s.step})
        if (*h) visit_expr(**h, [&](const Expr& e) {
          if (e.kind == ExprKind::Call) looped.insert(&e);
        });
    });
    int ordinal = 0;
    bool hit = false;
    visit_exprs(*fn->body, [&](const Expr& e) {
      if (e.kind != ExprKind::Call) return;
      if (ordinal++ == site.ordinal) hit = looped.count(&e) > 0;
    });
    return hit;
  }

  void parallelize_pass() {
    for (Function* fn : unit().functions()) {
      if (!fn->body) continue;
      for (Stmt* nest : frontend::top_level_loops(*fn)) {
        std::string section = section_of(unit(), nest);
        if (detail::has_directive(*nest) || detail::inside_parallel(*fn, nest)) {
          refuse(Pass::Parallelize, section, "left as is", "nest already carries directives");
          continue;
        }
        try {
          for (const auto& p : parallelize_loop(unit(), *nest, plan_.config)) {
            std::string reason;
            for (const auto& r : p.reasons) reason += (reason.empty() ? "" : "; ") + r;
            log(Pass::Parallelize, p.loop,
                "parallel for at level " + std::to_string(p.level) + " (" +
                    frontend::print_directive(*p.loop->omp) + ")",
                reason);
          }
        } catch (const Error& e) {
          if (e.code() != Errc::NoParallelLoop) throw;
          refuse(Pass::Parallelize, section, "kept serial", e.detail());
        }
      }
    }
  }

  void region_pass() {
    for (Function* fn : unit().functions()) {
      if (!fn->body) continue;
      std::function<void(Stmt&)> rec = [&](Stmt& s) {
        if (s.omp && s.omp->spawns_team()) return;
        if (s.kind == StmtKind::Compound) merge_runs(s);
        for (auto& c : s.stmts) rec(*c);
        if (s.init) rec(*s.init);
        if (s.body) rec(*s.body);
        if (s.else_body) rec(*s.else_body);
      };
      rec(*fn->body);
    }
  }

  void merge_runs(Stmt& block) {
    auto pf = [](const Stmt& s) {
      return s.kind == StmtKind::For && s.omp && s.omp->kind == OmpKind::ParallelFor;
    };
    std::vector<std::pair<std::size_t, std::size_t>> runs;
    std::size_t k = 0;
    std::optional<std::size_t> last_pf;
    while (k < block.stmts.size()) {
      if (!pf(*block.stmts[k])) {
        ++k;
        continue;
      }
      if (last_pf && *last_pf + 1 < k)
        refuse(Pass::Region, block.stmts[k].get(), "not merged with previous parallel for",
               "separated by " + std::to_string(k - *last_pf - 1) + " statement(s)");
      std::size_t start = k;
      while (k < block.stmts.size() && pf(*block.stmts[k])) ++k;
      last_pf = k - 1;
      runs.emplace_back(start, k - start);
    }
    for (auto it = runs.rbegin(); it != runs.rend(); ++it) {
      auto [start, count] = *it;
      // Split runs where clauses disagree.
      std::size_t end = start + count;
      std::size_t s = end;
      while (s > start) {
        std::size_t b = s - 1;
        while (b > start) {
          Stmt probe = make_compound();
          probe.stmts.push_back(block.stmts[b - 1]);
          probe.stmts.push_back(block.stmts[b]);
          try {
            form_parallel_region(probe, 0, 2);
          } catch (const Error&) {
            break;
          }
          --b;
        }
        if (s - b >= 2) {
          form_parallel_region(block, b, s - b);
          log(Pass::Region, block.stmts[b].get(), "merged " + std::to_string(s - b) + " loops");
        }
        s = b;
      }
    }
  }

  void reduction_pass() {
    std::set<std::pair<const Stmt*, std::string>> refused;
    for (int guard = 0; guard < 1024; ++guard) {
      bool done = true;
      for (Stmt* loop : ws_loops()) {
        std::set<std::string> listed;
        for (const auto& r : loop->omp->reductions) listed.insert(r.vars.begin(), r.vars.end());
        if (listed.empty()) continue;
        auto cands = analysis::recognize_reductions(analysis::locate(unit(), loop));
        const analysis::ReductionCandidate* pick = nullptr;
        for (const auto& c : cands)
          if (c.is_array() && listed.count(c.variable) && !refused.count({loop, c.variable})) {
            pick = &c;
            break;
          }
        if (!pick) continue;
        std::string section = section_of(unit(), loop);
        std::string var = pick->variable;
        try {
          lower_array_reduction(unit(), *loop, *pick, plan_.reduction);
          out_.log.push_back({"reduction", section,
                              "lowered array reduction on " + var + " with " +
                                  (plan_.reduction == ReductionStrategy::Atomic ? "atomic" : "critical"),
                              ""});
        } catch (const Error& e) {
          if (e.code() != Errc::NotAnArrayReduction) throw;
          refused.insert({loop, var});
          refuse(Pass::Reduction, section, "kept reduction clause on " + var, e.what());
        }
        done = false;
        break;
      }
      if (done) return;
    }
  }

  void schedule_pass() {
    for (Stmt* loop : ws_loops()) {
      costmodel::ImbalanceSignal sig = costmodel::imbalance_score(*loop, &unit(), plan_.config);
      if (apply_schedule(*loop, sig, plan_.guided))
        log(Pass::Schedule, loop, std::string("schedule(") + (plan_.guided ? "guided" : "dynamic") + ")",
            sig.str());
    }
  }

  void condpar_pass() {
    for (Function* fn : unit().functions()) {
      if (!fn->body) continue;
      std::function<void(Stmt&)> rec = [&](Stmt& s) {
        for (std::size_t k = 0; k < s.stmts.size(); ++k) {
          Stmt& c = *s.stmts[k];
          if (!(c.omp && c.omp->spawns_team() && c.kind != StmtKind::Directive)) {
            rec(c);
            continue;
          }
          std::string section = section_of(unit(), &c);
          costmodel::WorkloadEstimate est = costmodel::workload(c);
          CondparOutcome o = conditional_parallelize(c, est, plan_.threshold);
          switch (o) {
            case CondparOutcome::Removed:
              out_.log.push_back({"condpar", section, "removed directive", "workload " + est.str()});
              if (c.kind == StmtKind::Compound && splice_ok(*fn, c)) {
                std::vector<StmtBox> inner = std::move(c.stmts);
                s.stmts.erase(s.stmts.begin() + static_cast<std::ptrdiff_t>(k));
                s.stmts.insert(s.stmts.begin() + static_cast<std::ptrdiff_t>(k),
                               std::make_move_iterator(inner.begin()),
                               std::make_move_iterator(inner.end()));
                k += inner.size();
                --k;
              }
              break;
            case CondparOutcome::IfClause:
              out_.log.push_back({"condpar", section, "added if clause",
                                  "if(" + frontend::print_expr(*c.omp->if_condition) + ")"});
              break;
            case CondparOutcome::Unconditional:
              out_.log.push_back({"condpar", section, "kept unconditional", "workload " + est.str()});
              break;
            case CondparOutcome::Skipped:
              break;
          }
        }
        if (s.kind != StmtKind::Compound) {
          if (s.init) rec(*s.init);
          if (s.body) rec(*s.body);
          if (s.else_body) rec(*s.else_body);
        }
      };
      Stmt& body = *fn->body;
      rec(body);
    }
  }

  // A stripped region can be dissolved into its enclosing block when none of
  // its declarations would clash with names used elsewhere in the function.
  bool splice_ok(Function& fn, const Stmt& region) {
    for (const auto& c : region.stmts) {
      if (c->kind != StmtKind::Decl) continue;
      for (const auto& d : c->decl.declarators) {
        int decls = 0;
        visit_stmts(*fn.body, [&](const Stmt& st) {
          for (const auto& other : st.decl.declarators)
            if (other.name == d.name) ++decls;
        });
        for (const auto& p : fn.params)
          if (p.decl.name == d.name) ++decls;
        if (decls > 1) return false;
        if (analysis::detail::count_refs(region, d.name) !=
            analysis::detail::count_refs(*fn.body, d.name))
          return false;
      }
    }
    return true;
  }

  void nowait_pass() {
    for (Function* fn : unit().functions()) {
      if (!fn->body) continue;
      std::vector<Stmt*> regs;
      visit_stmts_mut(*fn->body, [&](Stmt& s) {
        if (s.kind == StmtKind::Compound && s.omp && s.omp->kind == OmpKind::Parallel) regs.push_back(&s);
      });
      for (Stmt* r : regs) {
        std::vector<std::pair<Stmt*, std::string>> why;
        int n = detail::nowait_scan(unit(), *r, plan_.config, &why);
        if (n > 0) log(Pass::Nowait, r, "added " + std::to_string(n) + " nowait clause(s)");
        for (const auto& [loop, reason] : why) refuse(Pass::Nowait, loop, "kept barrier", reason);
      }
    }
  }

  void threadprivate_pass() {
    std::vector<std::string> vars = plan_.tp_vars;
    if (vars.empty()) vars = detail::threadprivate_candidates(unit(), plan_.tp_direction);
    const char* dir = plan_.tp_direction == TpDirection::ToLoopPrivate ? "to_loop_private"
                                                                       : "to_threadprivate";
    for (const auto& v : vars) {
      TranslationUnit work = unit();
      try {
        detail::convert_one(work, v, plan_.tp_direction, plan_.config);
        unit() = std::move(work);
        out_.log.push_back({"threadprivate", v, std::string("converted ") + dir, ""});
      } catch (const Error& e) {
        if (e.code() != Errc::PersistsAcrossRegions && e.code() != Errc::NotStaticOrGlobal &&
            e.code() != Errc::UnsupportedConstruct)
          throw;
        refuse(Pass::Threadprivate, v, std::string("kept ") + v, e.what());
      }
    }
  }

  const TransformPlan& plan_;
  RewriteResult& out_;
};

}  // namespace

RewriteResult apply(const TranslationUnit& unit, const TransformPlan& plan) {
  RewriteResult out;
  out.ast = unit;
  Driver(plan, out).run();
  return out;
}

}  // namespace ompdiff::transforms
