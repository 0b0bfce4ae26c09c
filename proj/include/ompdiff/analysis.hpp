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

// Program analyses over the AST: loop headers, access collection, dependence
// testing (ZIV and strong SIV), privatization, reduction recognition,
// side-effect summaries, inline expansion, cross-loop conflicts for NOWAIT and
// liveness of static/global variables across parallel regions.
//
// Every analysis is a pure function of its inputs. Loops are identified by
// `const Stmt*` pointing into a TranslationUnit; the unit must outlive the
// call and must not be mutated meanwhile.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ompdiff/ast.hpp"
#include "ompdiff/symbolic.hpp"

namespace ompdiff::analysis {

using symbolic::Poly;

// ---------------------------------------------------------------------------
// Configuration

struct Config {
  /// Extra functions known to be side-effect free, on top of the defaults.
  std::set<std::string> pure_functions;

  /// Reads `pure_functions = a, b, c` lines; other keys are ignored here.
  static Config parse(const std::string& text);
  static Config load(const std::string& path);
};

/// Math routines treated as pure unless a definition in the unit says otherwise.
const std::set<std::string>& default_pure_functions();
/// Library routines that perform input/output.
const std::set<std::string>& io_functions();

/// Where a loop lives; analyses that need liveness or call summaries take
/// this instead of a bare statement.
struct LoopRef {
  const TranslationUnit* unit = nullptr;
  const Function* function = nullptr;
  const Stmt* loop = nullptr;
};

/// Locates `loop` inside `unit`; the function pointer is null when the loop
/// is not part of any function body.
LoopRef locate(const TranslationUnit& unit, const Stmt* loop);

// ---------------------------------------------------------------------------
// Loop headers

struct LoopHeader {
  std::string index;
  ExprBox lower;
  ExprBox upper;          // bound as written in the condition
  bool inclusive = false; // `<=` / `>=`
  std::int64_t stride = 1;
  bool ascending = true;
  bool canonical = false;
  std::string reason;     // why the loop is not canonical

  /// Number of iterations; symbolic parts of the bounds stay atoms and
  /// non-polynomial bounds become parenthesized atoms.
  Poly trip_count() const;
  /// Constant trip count when both bounds fold, clamped at zero.
  std::optional<std::int64_t> constant_trip_count() const;
};

/// Recognizes `for (i = lb; i < ub; i += s)` and its variants. The body is
/// consulted for canonicality (index and bounds not written inside).
LoopHeader loop_header(const Stmt& loop);

// ---------------------------------------------------------------------------
// Accesses

enum class AccessMode { Read, Write };
enum class OpaqueReason { Indirect, Nonaffine, VariantScalar, CallEffect };

const char* opaque_reason_name(OpaqueReason r);

struct AffineForm {
  std::map<std::string, std::int64_t> coeffs;  // loop index -> coefficient (nonzero)
  Poly constant;

  std::int64_t coeff(const std::string& index) const {
    auto it = coeffs.find(index);
    return it == coeffs.end() ? 0 : it->second;
  }
  friend bool operator==(const AffineForm&, const AffineForm&) = default;
  std::string str() const;
};

struct Subscript {
  bool affine = true;
  AffineForm form;
  OpaqueReason reason = OpaqueReason::Nonaffine;
  const Expr* expr = nullptr;
};

struct AccessDescriptor {
  std::string base;
  std::vector<Subscript> subscripts;  // empty for scalars
  AccessMode mode = AccessMode::Read;
  SourceSpan site;
  const Expr* expr = nullptr;  // the access expression (null for call effects)
  const Stmt* stmt = nullptr;  // innermost enclosing statement
  int seq = 0;                 // execution order within one iteration
  std::vector<std::string> loops;  // analyzed loop index first, then inner ones

  bool is_scalar() const { return subscripts.empty(); }
  bool has_opaque() const;
  std::string str() const;
};

/// One descriptor per syntactic access in the loop body, plus accesses the
/// loop bounds of inner loops perform. Calls to functions that write
/// parameters or globals add opaque write descriptors for the affected
/// variables. The analyzed loop's own index update is not included.
std::vector<AccessDescriptor> collect_accesses(const LoopRef& loop, const Config& config = {});
std::vector<AccessDescriptor> collect_accesses(const Stmt& loop);

// ---------------------------------------------------------------------------
// Dependences

enum class DepKind { Flow, Anti, Output };
enum class DepStatus { Proven, Assumed };

const char* dep_kind_name(DepKind k);

struct DependenceEdge {
  AccessDescriptor src;
  AccessDescriptor dst;
  DepKind kind = DepKind::Flow;
  int carrier = -1;  // 0: carried by the analyzed loop; -1: loop-independent
  DepStatus status = DepStatus::Proven;
  std::optional<std::int64_t> distance;  // in iterations, when known
  std::string reason;

  bool carried() const { return carrier >= 0; }
};

/// ZIV and strong SIV per dimension. Pairs whose test is inapplicable come
/// back as assumed carried edges; a pair is never declared independent when
/// either access has an opaque subscript.
std::vector<DependenceEdge> dependence_test(const Stmt& loop,
                                            const std::vector<AccessDescriptor>& accesses);

/// Convenience: true if no edge on `base` (or any base, if empty) is carried.
bool carries_dependence(const std::vector<DependenceEdge>& edges, const std::string& base = {});

// ---------------------------------------------------------------------------
// Side effects

enum class EffectClass { Pure, WritesParams, WritesGlobals, Io, Unknown };

const char* effect_class_name(EffectClass c);

struct SideEffectSummary {
  std::string function;
  EffectClass classification = EffectClass::Pure;
  std::set<int> written_params;        // indices of array/pointer params written
  std::set<std::string> written_globals;
  std::set<std::string> read_globals;
  std::string reason;

  bool parallel_safe() const {
    return classification != EffectClass::Io && classification != EffectClass::Unknown;
  }
};

/// Transitive classification. External functions are pure if allowlisted,
/// io if known output/input routines, unknown otherwise; recursion yields
/// unknown. Precedence: io > unknown > writes_globals > writes_params > pure.
SideEffectSummary side_effects(const TranslationUnit& unit, const std::string& function,
                               const Config& config = {});

/// Names of functions `function` calls, directly or transitively.
std::set<std::string> callees(const TranslationUnit& unit, const std::string& function,
                              bool transitive);

// ---------------------------------------------------------------------------
// Privatization

enum class VarClass { Private, Firstprivate, Lastprivate, Shared, ThreadprivateCandidate };

const char* var_class_name(VarClass c);

struct PrivatizationResult {
  std::map<std::string, VarClass> classes;

  VarClass of(const std::string& var) const {
    auto it = classes.find(var);
    return it == classes.end() ? VarClass::Shared : it->second;
  }
  bool privatizable(const std::string& var) const {
    VarClass c = of(var);
    return c == VarClass::Private || c == VarClass::Lastprivate ||
           c == VarClass::ThreadprivateCandidate;
  }
};

/// Classifies every variable the loop references except its own index,
/// variables declared inside the body and variables declared threadprivate.
PrivatizationResult find_private(const LoopRef& loop, const Config& config = {});

// ---------------------------------------------------------------------------
// Reductions

struct ReductionCandidate {
  std::string variable;
  ReductionOp op = ReductionOp::Add;
  /// Present for array reductions: the element subscripts (affine, not
  /// depending on the analyzed loop's index).
  std::optional<std::vector<AffineForm>> element_pattern;
  std::vector<const Stmt*> statements;
  std::vector<SourceSpan> spans;

  bool is_array() const { return element_pattern.has_value(); }
};

std::vector<ReductionCandidate> recognize_reductions(const LoopRef& loop);
std::vector<ReductionCandidate> recognize_reductions(const Stmt& loop);

// ---------------------------------------------------------------------------
// Inline expansion

struct CallSite {
  std::string caller;
  int ordinal = 0;  // pre-order position among the caller's call expressions
  std::string callee;
  SourceSpan span;
};

/// Every call expression in defined functions, in source order.
std::vector<CallSite> find_call_sites(const TranslationUnit& unit);

/// Replaces the call by the callee body with fresh names. Throws
/// Error(Errc::InlineRefused) whose detail is one of recursive, variadic, io,
/// undefined, unsupported.
TranslationUnit inline_expand(const TranslationUnit& unit, const CallSite& site,
                              const Config& config = {});

// ---------------------------------------------------------------------------
// Cross-loop conflicts

struct ConflictReport {
  bool conflicting = true;
  std::vector<std::pair<AccessDescriptor, AccessDescriptor>> witnesses;
  std::string reason;
};

/// Both statements are worksharing loops (directive For or ParallelFor) of
/// the same region. `region` (may be null) supplies region-level clauses.
ConflictReport cross_loop_conflicts(const Stmt& first, const Stmt& second,
                                    const OmpDirective* region = nullptr,
                                    const TranslationUnit* unit = nullptr,
                                    const Config& config = {});

// ---------------------------------------------------------------------------
// Liveness across parallel regions

/// True iff some parallel region may read `var`'s per-thread value before
/// writing it while another region (or the same region on a later trip of an
/// enclosing loop) writes it.
bool live_across_regions(const TranslationUnit& unit, const std::string& var);

// ---------------------------------------------------------------------------
// Shared helpers used by the other modules

/// Variables declared threadprivate anywhere in the unit.
std::set<std::string> threadprivate_vars(const TranslationUnit& unit);

/// Declaration of `name` visible from `fn` (locals first, then params, then
/// file scope). Null when not found.
struct VarInfo {
  std::string name;
  std::string type;
  const Declarator* decl = nullptr;
  StorageClass storage = StorageClass::None;
  bool is_global = false;
  bool is_param = false;
};
std::optional<VarInfo> lookup_var(const TranslationUnit& unit, const Function* fn,
                                  const std::string& name);

/// Names read / written anywhere inside `s` (array bases and scalars).
std::set<std::string> names_read(const Stmt& s);
std::set<std::string> names_written(const Stmt& s);
std::set<std::string> names_declared(const Stmt& s);
bool contains_call(const Stmt& s);
std::set<std::string> called_functions(const Stmt& s);

}  // namespace ompdiff::analysis
