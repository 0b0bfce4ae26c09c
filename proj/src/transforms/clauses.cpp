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

#include "transforms/internal.hpp"

namespace ompdiff::transforms {

bool apply_schedule(Stmt& loop, const costmodel::ImbalanceSignal& signal, bool guided) {
  if (loop.kind != StmtKind::For || !loop.omp || !loop.omp->is_worksharing_loop()) return false;
  if (signal.empty() || loop.omp->schedule) return false;
  ScheduleClause s;
  s.kind = guided ? ScheduleKind::Guided : ScheduleKind::Dynamic;
  loop.omp->schedule = std::move(s);
  return true;
}

CondparOutcome conditional_parallelize(Stmt& stmt, const costmodel::WorkloadEstimate& estimate,
                                       std::int64_t threshold) {
  if (!stmt.omp || !stmt.omp->spawns_team() || stmt.omp->if_condition) return CondparOutcome::Skipped;
  costmodel::Profitability p = costmodel::is_profitable(estimate, threshold);
  switch (p.decision) {
    case costmodel::Decision::Parallel:
      return CondparOutcome::Unconditional;
    case costmodel::Decision::Conditional:
      stmt.omp->if_condition = std::move(p.condition);
      return CondparOutcome::IfClause;
    case costmodel::Decision::Serial:
      break;
  }
  if (stmt.omp->kind == OmpKind::ParallelFor) stmt.omp.reset();
  else detail::strip_all(stmt);
  return CondparOutcome::Removed;
}

}  // namespace ompdiff::transforms
