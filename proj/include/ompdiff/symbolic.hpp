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

// Integer polynomials over named atoms. Used for trip counts, workload
// estimates and the loop-invariant part of affine subscripts. Two polynomials
// compare equal exactly when their constant-folded, term-sorted forms agree.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ompdiff/ast.hpp"

namespace ompdiff::symbolic {

class Poly {
 public:
  /// Sorted atom names; repetition encodes powers. Empty = constant term.
  using Monomial = std::vector<std::string>;

  Poly() = default;
  static Poly constant(std::int64_t value);
  /// An identifier, or any other expression spelled in parentheses.
  static Poly atom(std::string name);

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  std::optional<std::int64_t> constant_value() const;
  std::int64_t constant_term() const;
  std::set<std::string> atoms() const;
  const std::map<Monomial, std::int64_t>& terms() const { return terms_; }

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly operator-() const;
  Poly& operator+=(const Poly& o) { return *this = *this + o; }
  Poly& operator-=(const Poly& o) { return *this = *this - o; }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  /// Exact division by a nonzero integer; nullopt when a coefficient would
  /// become fractional.
  std::optional<Poly> divide(std::int64_t d) const;

  /// Replaces `name` by `value` everywhere.
  Poly substitute(const std::string& name, const Poly& value) const;

  friend bool operator==(const Poly&, const Poly&) = default;

  /// "3 * m * n + 2"; atoms print as stored.
  std::string str() const;
  Expr to_expr() const;

 private:
  void add_term(const Monomial& m, std::int64_t c);
  std::map<Monomial, std::int64_t> terms_;
};

/// Converts integer-valued arithmetic (literals, identifiers, + - *, unary
/// minus, division by a constant that divides exactly) into a polynomial.
/// With `opaque_atoms`, any other subexpression becomes an atom spelled as
/// its parenthesized text; otherwise nullopt is returned for it.
std::optional<Poly> to_poly(const Expr& e, bool opaque_atoms = false);

}  // namespace ompdiff::symbolic
