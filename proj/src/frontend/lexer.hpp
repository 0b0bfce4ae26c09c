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

#pragma once

#include <string>
#include <vector>

#include "ompdiff/error.hpp"

namespace ompdiff::frontend::detail {

enum class Tok { Ident, Int, Float, String, Char, Punct, Pragma, Include, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  SourceSpan span;

  bool is(Tok k, const char* t) const { return kind == k && text == t; }
  bool punct(const char* t) const { return is(Tok::Punct, t); }
  bool ident(const char* t) const { return is(Tok::Ident, t); }
};

/// Splits `text` into tokens. Comments vanish; `#pragma omp` lines become a
/// single Pragma token holding the text after `#pragma`; `#include` lines
/// become Include tokens. `line`/`col` offset the reported positions, which
/// lets directive text be re-lexed in place.
std::vector<Token> lex(const std::string& text, int line = 1, int col = 1,
                       bool directive_mode = false);

}  // namespace ompdiff::frontend::detail
