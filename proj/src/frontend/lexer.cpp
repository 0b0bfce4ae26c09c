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

#include "frontend/lexer.hpp"

#include <array>
#include <cctype>
#include <cstring>

namespace ompdiff::frontend::detail {

namespace {

constexpr std::array<const char*, 24> kPuncts = {
    "<<=", ">>=", "...", "->", "++", "--", "<<", ">>", "<=", ">=", "==", "!=",
    "&&",  "||",  "+=",  "-=", "*=", "/=", "%=", "&=", "|=", "^=", "##", "::"};

class Lexer {
 public:
  Lexer(const std::string& text, int line, int col, bool directive_mode)
      : src_(text), line_(line), col_(col), directive_mode_(directive_mode) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space_and_comments();
      if (at_end()) break;
      char c = peek();
      if (c == '#' && !directive_mode_ && at_line_start_) {
        out.push_back(preprocessor_line());
        continue;
      }
      at_line_start_ = false;
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        out.push_back(identifier());
      } else if (std::isdigit(static_cast<unsigned char>(c)) ||
                 (c == '.' && std::isdigit(static_cast<unsigned char>(peek(1))))) {
        out.push_back(number());
      } else if (c == '"') {
        out.push_back(quoted('"', Tok::String));
      } else if (c == '\'') {
        out.push_back(quoted('\'', Tok::Char));
      } else {
        out.push_back(punct());
      }
    }
    Token end;
    end.kind = Tok::End;
    end.span = {line_, col_, line_, col_};
    out.push_back(end);
    return out;
  }

 private:
  bool at_end() const { return pos_ >= src_.size(); }
  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
  }

  char advance() {
    char c = src_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
      at_line_start_ = true;
    } else {
      ++col_;
    }
    return c;
  }

  [[noreturn]] void fail(Errc code, SourceSpan span, const std::string& msg) const {
    throw SourceError(code, span, msg);
  }

  void skip_space_and_comments() {
    while (!at_end()) {
      char c = peek();
      if (c == '\\' && peek(1) == '\n') {
        advance();
        advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else if (c == '/' && peek(1) == '/') {
        while (!at_end() && peek() != '\n') advance();
      } else if (c == '/' && peek(1) == '*') {
        SourceSpan start{line_, col_, line_, col_};
        advance();
        advance();
        while (!at_end() && !(peek() == '*' && peek(1) == '/')) advance();
        if (at_end()) fail(Errc::SyntaxError, start, "unterminated comment");
        advance();
        advance();
      } else {
        break;
      }
    }
  }

  Token make(Tok kind, std::string text, int line, int col) const {
    Token t;
    t.kind = kind;
    t.text = std::move(text);
    t.span = {line, col, line_, col_};
    return t;
  }

  Token preprocessor_line() {
    int line = line_, col = col_;
    std::string logical;
    while (!at_end() && peek() != '\n') {
      if (peek() == '\\' && peek(1) == '\n') {
        advance();
        advance();
        logical += ' ';
        continue;
      }
      logical += advance();
    }
    // Strip trailing comments on the directive line.
    if (auto pos = logical.find("//"); pos != std::string::npos) logical.erase(pos);
    while (!logical.empty() && std::isspace(static_cast<unsigned char>(logical.back())))
      logical.pop_back();

    std::size_t i = 1;
    while (i < logical.size() && std::isspace(static_cast<unsigned char>(logical[i]))) ++i;
    std::size_t word_end = i;
    while (word_end < logical.size() && std::isalpha(static_cast<unsigned char>(logical[word_end])))
      ++word_end;
    std::string word = logical.substr(i, word_end - i);
    SourceSpan span{line, col, line_, col_};
    if (word == "include") return make(Tok::Include, logical, line, col);
    if (word == "pragma") {
      std::size_t rest = word_end;
      while (rest < logical.size() && std::isspace(static_cast<unsigned char>(logical[rest])))
        ++rest;
      std::string body = logical.substr(rest);
      if (body.rfind("omp", 0) == 0 &&
          (body.size() == 3 || std::isspace(static_cast<unsigned char>(body[3])))) {
        Token t = make(Tok::Pragma, body, line, col + static_cast<int>(rest));
        t.span.col = col;
        return t;
      }
      fail(Errc::UnsupportedConstruct, span, "unsupported construct: non-OpenMP pragma");
    }
    fail(Errc::UnsupportedConstruct, span,
         "unsupported construct: preprocessor directive '#" + word + "'");
  }

  Token identifier() {
    int line = line_, col = col_;
    std::string s;
    while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_'))
      s += advance();
    return make(Tok::Ident, s, line, col);
  }

  Token number() {
    int line = line_, col = col_;
    std::string s;
    bool is_float = false;
    if (peek() == '0' && (peek(1) == 'x' || peek(1) == 'X')) {
      s += advance();
      s += advance();
      while (std::isxdigit(static_cast<unsigned char>(peek()))) s += advance();
    } else {
      while (std::isdigit(static_cast<unsigned char>(peek()))) s += advance();
      if (peek() == '.') {
        is_float = true;
        s += advance();
        while (std::isdigit(static_cast<unsigned char>(peek()))) s += advance();
      }
      if (peek() == 'e' || peek() == 'E') {
        is_float = true;
        s += advance();
        if (peek() == '+' || peek() == '-') s += advance();
        if (!std::isdigit(static_cast<unsigned char>(peek())))
          fail(Errc::SyntaxError, {line, col, line_, col_}, "malformed floating literal");
        while (std::isdigit(static_cast<unsigned char>(peek()))) s += advance();
      }
    }
    while (std::strchr("uUlLfF", peek()) && peek() != '\0') {
      if (peek() == 'f' || peek() == 'F') is_float = true;
      s += advance();
    }
    if (std::isalpha(static_cast<unsigned char>(peek())) || peek() == '_')
      fail(Errc::SyntaxError, {line, col, line_, col_}, "malformed numeric literal");
    return make(is_float ? Tok::Float : Tok::Int, s, line, col);
  }

  Token quoted(char delim, Tok kind) {
    int line = line_, col = col_;
    std::string s;
    s += advance();
    while (!at_end() && peek() != delim) {
      if (peek() == '\n')
        fail(Errc::SyntaxError, {line, col, line_, col_}, "unterminated literal");
      if (peek() == '\\') s += advance();
      s += advance();
    }
    if (at_end()) fail(Errc::SyntaxError, {line, col, line_, col_}, "unterminated literal");
    s += advance();
    return make(kind, s, line, col);
  }

  Token punct() {
    int line = line_, col = col_;
    for (const char* p : kPuncts) {
      std::size_t n = std::strlen(p);
      if (src_.compare(pos_, n, p) == 0) {
        for (std::size_t k = 0; k < n; ++k) advance();
        return make(Tok::Punct, p, line, col);
      }
    }
    char c = advance();
    if (!std::strchr("+-*/%<>=!&|^~?:;,.()[]{}", c)) {
      fail(Errc::SyntaxError, {line, col, line_, col_},
           std::string("unexpected character '") + c + "'");
    }
    return make(Tok::Punct, std::string(1, c), line, col);
  }

  const std::string& src_;
  std::size_t pos_ = 0;
  int line_;
  int col_;
  bool directive_mode_;
  bool at_line_start_ = true;
};

}  // namespace

std::vector<Token> lex(const std::string& text, int line, int col, bool directive_mode) {
  return Lexer(text, line, col, directive_mode).run();
}

}  // namespace ompdiff::frontend::detail
