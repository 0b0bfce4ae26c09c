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

#include "ompdiff/symbolic.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>

#include "ompdiff/frontend.hpp"

namespace ompdiff::symbolic {

namespace {

bool is_identifier(const std::string& s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(),
                     [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

std::optional<std::int64_t> int_literal(const std::string& text) {
  std::string digits;
  for (char c : text) {
    if (c == 'u' || c == 'U' || c == 'l' || c == 'L') break;
    digits += c;
  }
  char* end = nullptr;
  long long v = std::strtoll(digits.c_str(), &end, 0);
  if (!end || *end != '\0') return std::nullopt;
  return v;
}

}  // namespace

Poly Poly::constant(std::int64_t value) {
  Poly p;
  p.add_term({}, value);
  return p;
}

Poly Poly::atom(std::string name) {
  Poly p;
  p.add_term({std::move(name)}, 1);
  return p;
}

void Poly::add_term(const Monomial& m, std::int64_t c) {
  if (c == 0) return;
  auto& slot = terms_[m];
  slot += c;
  if (slot == 0) terms_.erase(m);
}

bool Poly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
}

std::optional<std::int64_t> Poly::constant_value() const {
  if (!is_constant()) return std::nullopt;
  return constant_term();
}

std::int64_t Poly::constant_term() const {
  auto it = terms_.find({});
  return it == terms_.end() ? 0 : it->second;
}

std::set<std::string> Poly::atoms() const {
  std::set<std::string> out;
  for (const auto& [m, c] : terms_) out.insert(m.begin(), m.end());
  return out;
}

Poly Poly::operator+(const Poly& o) const {
  Poly r = *this;
  for (const auto& [m, c] : o.terms_) r.add_term(m, c);
  return r;
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator-() const {
  Poly r;
  for (const auto& [m, c] : terms_) r.add_term(m, -c);
  return r;
}

Poly Poly::operator*(const Poly& o) const {
  Poly r;
  for (const auto& [ma, ca] : terms_) {
    for (const auto& [mb, cb] : o.terms_) {
      Monomial m = ma;
      m.insert(m.end(), mb.begin(), mb.end());
      std::sort(m.begin(), m.end());
      r.add_term(m, ca * cb);
    }
  }
  return r;
}

std::optional<Poly> Poly::divide(std::int64_t d) const {
  if (d == 0) return std::nullopt;
  Poly r;
  for (const auto& [m, c] : terms_) {
    if (c % d != 0) return std::nullopt;
    r.add_term(m, c / d);
  }
  return r;
}

Poly Poly::substitute(const std::string& name, const Poly& value) const {
  Poly r;
  for (const auto& [m, c] : terms_) {
    Poly term = constant(c);
    for (const auto& a : m) term = term * (a == name ? value : atom(a));
    r += term;
  }
  return r;
}

std::string Poly::str() const { return frontend::print_expr(to_expr()); }

Expr Poly::to_expr() const {
  if (terms_.empty()) return make_int(0);
  // Highest-degree terms first, constant last.
  std::vector<std::pair<Monomial, std::int64_t>> ordered(terms_.begin(), terms_.end());
  std::stable_sort(ordered.begin(), ordered.end(),
                   [](const auto& a, const auto& b) { return a.first.size() > b.first.size(); });
  auto atom_expr = [](const std::string& a) {
    return is_identifier(a) ? make_ident(a) : frontend::parse_expression(a);
  };
  std::optional<Expr> sum;
  for (const auto& [m, c] : ordered) {
    std::int64_t mag = c < 0 ? -c : c;
    std::optional<Expr> term;
    if (m.empty() || mag != 1) term = make_int(mag);
    for (const auto& a : m) term = term ? make_binary("*", std::move(*term), atom_expr(a)) : atom_expr(a);
    if (!sum) {
      sum = c < 0 ? make_unary("-", std::move(*term)) : std::move(*term);
    } else {
      sum = make_binary(c < 0 ? "-" : "+", std::move(*sum), std::move(*term));
    }
  }
  return std::move(*sum);
}

std::optional<Poly> to_poly(const Expr& e, bool opaque_atoms) {
  auto opaque = [&]() -> std::optional<Poly> {
    if (!opaque_atoms) return std::nullopt;
    return Poly::atom("(" + frontend::print_expr(e) + ")");
  };
  switch (e.kind) {
    case ExprKind::IntLit: {
      auto v = int_literal(e.text);
      if (!v) return opaque();
      return Poly::constant(*v);
    }
    case ExprKind::Ident: return Poly::atom(e.text);
    case ExprKind::Unary: {
      if (e.text != "-" && e.text != "+") return opaque();
      auto p = to_poly(e.arg(0), opaque_atoms);
      if (!p) return std::nullopt;
      return e.text == "-" ? -*p : *p;
    }
    case ExprKind::Cast: {
      if (e.text.find('*') != std::string::npos || e.text.find("float") != std::string::npos ||
          e.text.find("double") != std::string::npos)
        return opaque();
      return to_poly(e.arg(0), opaque_atoms);
    }
    case ExprKind::Binary: {
      const std::string& op = e.text;
      if (op == "+" || op == "-" || op == "*") {
        auto a = to_poly(e.arg(0), opaque_atoms);
        auto b = to_poly(e.arg(1), opaque_atoms);
        if (!a || !b) return std::nullopt;
        if (op == "+") return *a + *b;
        if (op == "-") return *a - *b;
        return *a * *b;
      }
      if (op == "/") {
        auto a = to_poly(e.arg(0), false);
        auto b = to_poly(e.arg(1), false);
        if (a && b && b->constant_value() && *b->constant_value() != 0) {
          // C truncates, so only exact or fully constant quotients fold.
          if (auto q = a->divide(*b->constant_value())) return q;
          if (a->constant_value())
            return Poly::constant(*a->constant_value() / *b->constant_value());
        }
        return opaque();
      }
      return opaque();
    }
    default: return opaque();
  }
}

}  // namespace ompdiff::symbolic
