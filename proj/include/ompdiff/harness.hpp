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

// Compiling and timing program variants, speedup/overhead metrics and report
// files. Benchmark subprocesses run one at a time.

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ompdiff/patterns.hpp"

namespace ompdiff::harness {

struct Variant {
  std::string label;
  std::string path;
};

/// Line-oriented `key = value` file:
///
///   variant = serial:ep_serial.c      (repeatable; paths relative to the file)
///   threads = 1,4
///   runs = 3
///   compiler = cc {flags} {input} -o {output} -lm
///   flags = -fopenmp -O3
///   self_timed = false
///   time_marker = Time in seconds =
///   baseline = serial
///   work_dir = /tmp/ompdiff-bench
struct BenchConfig {
  std::vector<Variant> variants;
  std::vector<int> thread_counts{1};
  int runs = 3;
  std::string compiler_command = "cc {flags} {input} -o {output} -lm";
  std::string flags = "-fopenmp -O3";
  bool self_timed = false;
  std::string time_marker = "Time in seconds =";
  std::string baseline;  // variant label overhead is measured against
  std::string work_dir;  // empty: a fresh directory under the system temp dir

  /// Throws Error(ConfigError).
  void validate() const;
  static BenchConfig parse(const std::string& text, const std::string& base_dir = {});
  static BenchConfig load(const std::string& path);
};

struct TimingRecord {
  std::string variant;
  int threads = 1;
  int run = 0;
  double seconds = 0;
};

struct ProcessResult {
  int status = 0;  // exit code, or 128 + signal
  std::string output;
  double seconds = 0;  // wall clock
};

/// Runs `command` through /bin/sh, stdout and stderr merged.
ProcessResult run_shell(const std::string& command);

/// Runs `program` with OMP_NUM_THREADS set; stdout and stderr merged.
ProcessResult run_program(const std::string& program, int threads);

/// Expands {input}, {output} and {flags}.
std::string expand_command(const std::string& tmpl, const std::string& input,
                           const std::string& output, const std::string& flags);

/// Throws Error(CompileError) with the compiler log as detail.
void compile(const BenchConfig& cfg, const std::string& input, const std::string& output);

/// Seconds printed after `marker` in `output`, if any.
std::optional<double> self_reported_time(const std::string& output, const std::string& marker);

/// Every (variant, thread count) pair run `runs` times, in config order.
/// Throws Error(CompileError) or Error(RunError).
std::vector<TimingRecord> run_bench(const BenchConfig& cfg);

// ---------------------------------------------------------------------------
// Metrics

/// t_1core / t_ncore. Throws Error(ConfigError) unless both are positive.
double speedup(double t_1core, double t_ncore);
/// 100 * (t_par1 - t_serial) / t_serial. Same precondition.
double overhead(double t_serial, double t_par1);

/// Presentation rounding: one decimal for speedups, whole percent for overhead.
double round_speedup(double s);
long round_overhead(double percent);

struct MeanRow {
  std::string variant;
  int threads = 1;
  double mean = 0;
  int runs = 0;
};

struct SpeedupCell {
  std::string variant;
  int base_threads = 1;
  int threads = 1;
  double value = 0;  // unrounded
};

struct OverheadCell {
  std::string variant;
  std::string baseline;
  double percent = 0;  // unrounded
};

struct ReportTable {
  std::vector<MeanRow> means;          // variant order, then thread order
  std::vector<SpeedupCell> speedups;   // smallest vs largest thread count, per variant
  std::vector<OverheadCell> overheads; // smallest thread count against the baseline
};

/// Means, speedups and (when `baseline` names a variant) overheads.
ReportTable summarize(const std::vector<TimingRecord>& records, const std::string& baseline = {});

std::string timings_csv(const std::vector<TimingRecord>& records);
std::string summary_csv(const ReportTable& table);
/// One row per variant: mean time per thread count, speedup, overhead.
std::string summary_markdown(const ReportTable& table);

/// Writes `<stem>.csv` and `<stem>.md` under `dir` from the section rows,
/// plus the delta listing when `diff` is given and the per-variant timing
/// summary (and `<stem>_timings.csv`) when `timings` is non-empty. Returns
/// the written paths. Throws Error(IoError).
std::vector<std::string> emit_report(const std::string& dir, const std::string& stem,
                                     const std::vector<patterns::TableRow>& rows,
                                     const patterns::DiffReport* diff,
                                     const std::vector<TimingRecord>& timings,
                                     const std::string& baseline = {});

/// Writes `content` to `path`; throws Error(IoError).
void write_file(const std::string& path, const std::string& content);

}  // namespace ompdiff::harness
