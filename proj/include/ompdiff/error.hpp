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

#include <stdexcept>
#include <string>

namespace ompdiff {

/// Half-open region of source text, 1-based lines and columns.
struct SourceSpan {
  int line = 0;
  int col = 0;
  int end_line = 0;
  int end_col = 0;

  bool valid() const { return line > 0; }
};

/// Every failure the library reports carries one of these codes. The CLI maps
/// them onto process exit codes.
enum class Errc {
  SyntaxError,
  UnsupportedConstruct,
  UnknownSection,
  MismatchedPrograms,
  InlineRefused,
  NoParallelLoop,
  NotAdjacent,
  FewerThanTwo,
  NotAnArrayReduction,
  PersistsAcrossRegions,
  NotStaticOrGlobal,
  CompileError,
  RunError,
  IoError,
  ConfigError,
};

const char* errc_name(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message, std::string detail = {})
      : std::runtime_error(message), code_(code), detail_(std::move(detail)) {}

  Errc code() const { return code_; }
  /// Machine-readable payload, e.g. the refusal reason of InlineRefused or the
  /// captured compiler log of CompileError.
  const std::string& detail() const { return detail_; }

 private:
  Errc code_;
  std::string detail_;
};

/// An error tied to a location in a source unit.
class SourceError : public Error {
 public:
  SourceError(Errc code, SourceSpan span, const std::string& message,
              std::string detail = {})
      : Error(code, message, std::move(detail)), span_(span) {}

  const SourceSpan& span() const { return span_; }

  /// Renders `file:line:col: message`.
  std::string format(const std::string& file) const;

 private:
  SourceSpan span_;
};

}  // namespace ompdiff
