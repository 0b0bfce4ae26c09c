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

#include <cctype>

#include "ompdiff/frontend.hpp"

namespace ompdiff::frontend {

namespace {

template <typename S, typename Out>
void collect_loops(S& s, Out& out) {
  if (s.kind == StmtKind::For) {
    out.push_back(&s);
    return;
  }
  for (auto& c : s.stmts) collect_loops(*c, out);
  if (s.kind == StmtKind::If) {
    collect_loops(*s.body, out);
    if (s.else_body) collect_loops(*s.else_body, out);
  }
}

std::optional<int> parse_ordinal(const std::string& s) {
  if (s.empty() || s.size() > 9) return std::nullopt;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
  return std::stoi(s);
}

}  // namespace

std::string SectionId::render() const {
  std::string s = function + "#" + std::to_string(first);
  if (last != first) s += "-#" + std::to_string(last);
  return s;
}

std::optional<SectionId> SectionId::parse(const std::string& text) {
  auto hash = text.find('#');
  if (hash == std::string::npos || hash == 0) return std::nullopt;
  SectionId id;
  id.function = text.substr(0, hash);
  std::string rest = text.substr(hash + 1);
  auto dash = rest.find("-#");
  auto a = parse_ordinal(rest.substr(0, dash));
  if (!a) return std::nullopt;
  id.first = id.last = *a;
  if (dash != std::string::npos) {
    auto b = parse_ordinal(rest.substr(dash + 2));
    if (!b || *b < *a) return std::nullopt;
    id.last = *b;
  }
  return id;
}

std::vector<const Stmt*> top_level_loops(const Function& fn) {
  std::vector<const Stmt*> out;
  if (fn.body) collect_loops(*fn.body, out);
  return out;
}

std::vector<Stmt*> top_level_loops(Function& fn) {
  std::vector<Stmt*> out;
  if (fn.body) collect_loops(*fn.body, out);
  return out;
}

std::vector<SectionId> enumerate_sections(const TranslationUnit& unit) {
  std::vector<SectionId> out;
  for (const Function* fn : unit.functions()) {
    if (!fn->is_definition()) continue;
    auto loops = top_level_loops(*fn);
    for (int i = 0; i < static_cast<int>(loops.size()); ++i) out.push_back({fn->name, i, i});
  }
  return out;
}

}  // namespace ompdiff::frontend
