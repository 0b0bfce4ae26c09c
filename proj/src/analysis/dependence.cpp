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

DepKind kind_of(AccessMode first, AccessMode second) {
  if (first == AccessMode::Write && second == AccessMode::Read) return DepKind::Flow;
  if (first == AccessMode::Read && second == AccessMode::Write) return DepKind::Anti;
  return DepKind::Output;
}

class Tester {
 public:
  explicit Tester(const Stmt& loop) : header_(loop_header(loop)) {
    trip_ = header_.canonical ? header_.constant_trip_count() : std::nullopt;
  }

  void pair(const AccessDescriptor& a, const AccessDescriptor& b, bool same) {
    const AccessDescriptor& first = a.seq <= b.seq ? a : b;
    const AccessDescriptor& second = a.seq <= b.seq ? b : a;
    bool may_carry = !trip_ || *trip_ > 1;

    if (!header_.canonical) {
      carried(first, second, DepStatus::Assumed, std::nullopt, "loop is not canonical: " + header_.reason);
      return;
    }
    if (a.subscripts.size() != b.subscripts.size()) {
      if (may_carry) carried(first, second, DepStatus::Assumed, std::nullopt, "accesses differ in rank");
      return;
    }
    if (a.is_scalar()) {
      if (may_carry) carried(first, second, DepStatus::Proven, std::nullopt, "scalar written in the loop");
      if (!same) independent_edge(first, second, DepStatus::Proven, "same iteration");
      return;
    }
    for (const auto* acc : {&a, &b}) {
      for (const auto& s : acc->subscripts) {
        if (!s.affine) {
          if (may_carry)
            carried(first, second, DepStatus::Assumed, std::nullopt,
                    std::string("opaque subscript (") + opaque_reason_name(s.reason) + ")");
          return;
        }
      }
    }

    const std::string& idx = header_.index;
    bool exact = true;
    std::optional<std::int64_t> constraint;  // t_a - t_b
    for (std::size_t k = 0; k < a.subscripts.size(); ++k) {
      const AffineForm& fa = a.subscripts[k].form;
      const AffineForm& fb = b.subscripts[k].form;
      if (fa.coeffs.empty() && fb.coeffs.empty()) {
        auto diff = (fa.constant - fb.constant).constant_value();
        if (!diff) {
          exact = false;
        } else if (*diff != 0) {
          return;  // ZIV: never the same element
        }
        continue;
      }
      std::int64_t ca = fa.coeff(idx), cb = fb.coeff(idx);
      bool only_index = fa.coeffs.size() == (ca ? 1u : 0u) && fb.coeffs.size() == (cb ? 1u : 0u);
      if (only_index && ca == cb && ca != 0) {
        // Strong SIV: ca*i_a + ka == ca*i_b + kb.
        auto diff = (fb.constant - fa.constant).constant_value();
        if (!diff) {
          exact = false;
          continue;
        }
        if (*diff % ca != 0) return;
        std::int64_t delta = *diff / ca;  // i_a - i_b
        if (delta % header_.stride != 0) return;
        std::int64_t t = delta / header_.stride;  // iteration distance
        if (trip_ && (t >= *trip_ || -t >= *trip_)) return;
        if (constraint && *constraint != t) return;
        constraint = t;
        continue;
      }
      if (ca == 0 && cb == 0 && fa == fb) continue;  // same inner element, any outer pair
      exact = false;
    }

    DepStatus status = exact ? DepStatus::Proven : DepStatus::Assumed;
    if (constraint) {
      std::int64_t t = *constraint;
      if (t == 0) {
        if (!same) independent_edge(first, second, status, "same iteration");
      } else if (t > 0) {
        // a runs t iterations after b.
        carried(b, a, status, t, "strong SIV");
      } else {
        carried(a, b, status, -t, "strong SIV");
      }
      return;
    }
    if (may_carry)
      carried(first, second, status, std::nullopt,
              exact ? "same element in every iteration" : "test inapplicable");
  }

  std::vector<DependenceEdge> edges;

 private:
  void carried(const AccessDescriptor& src, const AccessDescriptor& dst, DepStatus status,
               std::optional<std::int64_t> distance, std::string reason) {
    DependenceEdge e;
    e.src = src;
    e.dst = dst;
    e.kind = kind_of(src.mode, dst.mode);
    e.carrier = 0;
    e.status = status;
    e.distance = distance;
    e.reason = std::move(reason);
    edges.push_back(std::move(e));
  }

  void independent_edge(const AccessDescriptor& src, const AccessDescriptor& dst, DepStatus status,
                        std::string reason) {
    DependenceEdge e;
    e.src = src;
    e.dst = dst;
    e.kind = kind_of(src.mode, dst.mode);
    e.carrier = -1;
    e.status = status;
    e.distance = 0;
    e.reason = std::move(reason);
    edges.push_back(std::move(e));
  }

  LoopHeader header_;
  std::optional<std::int64_t> trip_;
};

}  // namespace

std::vector<DependenceEdge> dependence_test(const Stmt& loop,
                                            const std::vector<AccessDescriptor>& accesses) {
  Tester t(loop);
  for (std::size_t i = 0; i < accesses.size(); ++i) {
    for (std::size_t j = i; j < accesses.size(); ++j) {
      const auto& a = accesses[i];
      const auto& b = accesses[j];
      if (a.base != b.base) continue;
      if (a.mode == AccessMode::Read && b.mode == AccessMode::Read) continue;
      t.pair(a, b, i == j);
    }
  }
  return std::move(t.edges);
}

bool carries_dependence(const std::vector<DependenceEdge>& edges, const std::string& base) {
  for (const auto& e : edges)
    if (e.carried() && (base.empty() || e.src.base == base)) return true;
  return false;
}

}  // namespace ompdiff::analysis
