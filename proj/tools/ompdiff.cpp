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

// Command-line driver: analyze, transform, compare, bench.
//
// Exit codes: 0 success, 1 usage or configuration, 2 parse or analysis
// error, 3 external compiler or program failure.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "ompdiff/analysis.hpp"
#include "ompdiff/costmodel.hpp"
#include "ompdiff/error.hpp"
#include "ompdiff/frontend.hpp"
#include "ompdiff/harness.hpp"
#include "ompdiff/patterns.hpp"
#include "ompdiff/transforms.hpp"

using namespace ompdiff;
using nlohmann::json;

namespace {

int exit_code(Errc code) {
  switch (code) {
    case Errc::ConfigError:
      return 1;
    case Errc::CompileError:
    case Errc::RunError:
      return 3;
    default:
      return 2;
  }
}

void emit(const std::string& out, const std::string& content) {
  if (out.empty() || out == "-") std::cout << content;
  else harness::write_file(out, content);
}

std::string app_name(const std::string& path) {
  return std::filesystem::path(path).stem().string();
}

patterns::Annotations annotations_from(const std::string& path) {
  return path.empty() ? patterns::Annotations{} : patterns::Annotations::load(path);
}

json loop_report(const TranslationUnit& unit, const analysis::Config& config) {
  json out = json::array();
  for (const Function* fn : unit.functions()) {
    auto loops = frontend::top_level_loops(*fn);
    for (std::size_t k = 0; k < loops.size(); ++k) {
      const Stmt* loop = loops[k];
      analysis::LoopRef ref = analysis::locate(unit, loop);
      analysis::LoopHeader h = analysis::loop_header(*loop);
      json j;
      j["section"] = frontend::SectionId{fn->name, static_cast<int>(k), static_cast<int>(k)}.render();
      j["line"] = loop->span.line;
      j["index"] = h.index;
      j["canonical"] = h.canonical;
      if (!h.canonical) j["reason"] = h.reason;
      json deps = json::array();
      for (const auto& e : analysis::dependence_test(*loop, analysis::collect_accesses(ref, config))) {
        if (!e.carried()) continue;
        deps.push_back({{"kind", analysis::dep_kind_name(e.kind)},
                        {"src", e.src.str()},
                        {"dst", e.dst.str()},
                        {"status", e.status == analysis::DepStatus::Proven ? "proven" : "assumed"},
                        {"reason", e.reason}});
      }
      j["carried"] = deps;
      json priv = json::object();
      for (const auto& [v, c] : analysis::find_private(ref, config).classes)
        priv[v] = analysis::var_class_name(c);
      j["variables"] = priv;
      json reds = json::array();
      for (const auto& r : analysis::recognize_reductions(ref))
        reds.push_back({{"variable", r.variable},
                        {"op", reduction_op_spelling(r.op)},
                        {"array", r.is_array()}});
      j["reductions"] = reds;
      costmodel::WorkloadEstimate w = costmodel::workload(*loop);
      j["workload"] = w.str();
      j["imbalance"] = costmodel::imbalance_score(*loop, &unit, config).str();
      out.push_back(std::move(j));
    }
  }
  return out;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Compare, rewrite and benchmark OpenMP parallelizations of C programs"};
  app.require_subcommand(1);

  // analyze
  std::string a_file, a_ann, a_out, a_app, a_format = "csv", a_loops, a_config;
  auto* analyze = app.add_subcommand("analyze", "Per-section P1..P9 profile of one program");
  analyze->add_option("file", a_file, "C source")->required();
  analyze->add_option("--annotations", a_ann, "Sidecar with `section p9=0|1` lines");
  analyze->add_option("--out", a_out, "Output file (default stdout)");
  analyze->add_option("--app", a_app, "Application name for the App column");
  analyze->add_option("--format", a_format, "csv or md")->check(CLI::IsMember({"csv", "md"}));
  analyze->add_option("--loops", a_loops, "Also write per-loop analysis results as JSON");
  analyze->add_option("--config", a_config, "Analysis config (pure_functions = ...)");

  // transform
  std::string t_file, t_passes, t_out, t_log, t_config, t_tp_vars;
  std::int64_t t_threshold = costmodel::kDefaultThreshold;
  auto* transform = app.add_subcommand("transform", "Apply rewrite passes");
  transform->add_option("file", t_file, "C source")->required();
  transform->add_option("--passes", t_passes, "Comma-separated pass list")->required();
  transform->add_option("--threshold", t_threshold, "Workload threshold for condpar")
      ->check(CLI::PositiveNumber);
  transform->add_option("--out", t_out, "Rewritten source (default stdout)");
  transform->add_option("--log", t_log, "Change log (default stderr)");
  transform->add_option("--config", t_config, "Analysis config (pure_functions = ...)");
  transform->add_option("--tp-vars", t_tp_vars, "Variables for the threadprivate pass");

  // compare
  std::string c_auto, c_manual, c_ann, c_report = "md", c_out, c_app;
  auto* compare = app.add_subcommand("compare", "Section differences between two versions");
  compare->add_option("auto", c_auto, "Automatically parallelized version")->required();
  compare->add_option("manual", c_manual, "Hand-parallelized version")->required();
  compare->add_option("--annotations", c_ann, "Sidecar with `section p9=0|1` lines");
  compare->add_option("--report", c_report, "md or csv")->check(CLI::IsMember({"md", "csv"}));
  compare->add_option("--out", c_out, "Output file (default stdout)");
  compare->add_option("--app", c_app, "Application name for the App column");

  // bench
  std::string b_config, b_threads, b_out, b_summary;
  int b_runs = 0;
  bool b_self_timed = false;
  auto* bench = app.add_subcommand("bench", "Compile and time program variants");
  bench->add_option("--config", b_config, "Bench config file")->required();
  bench->add_option("--runs", b_runs, "Runs per variant and thread count")->check(CLI::PositiveNumber);
  bench->add_option("--threads", b_threads, "Thread counts, e.g. 1,4");
  bench->add_option("--out", b_out, "Timing records CSV (default stdout)");
  bench->add_option("--summary", b_summary, "Markdown summary with means and speedups");
  bench->add_flag("--self-timed", b_self_timed, "Prefer the program's own reported time");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  std::string current;  // file being parsed, for diagnostics
  try {
    if (*analyze) {
      current = a_file;
      analysis::Config config = a_config.empty() ? analysis::Config{} : analysis::Config::load(a_config);
      TranslationUnit unit = frontend::parse(frontend::read_source(a_file));
      patterns::Annotations ann = annotations_from(a_ann);
      auto rows = patterns::profile_rows(a_app.empty() ? app_name(a_file) : a_app, unit, ann);
      emit(a_out, a_format == "csv" ? patterns::to_csv(rows) : patterns::to_markdown(rows));
      if (!a_loops.empty()) harness::write_file(a_loops, loop_report(unit, config).dump(2) + "\n");
    } else if (*transform) {
      transforms::TransformPlan plan = transforms::TransformPlan::parse(t_passes);
      plan.threshold = t_threshold;
      if (!t_config.empty()) plan.config = analysis::Config::load(t_config);
      plan.tp_vars = split_list(t_tp_vars);
      current = t_file;
      TranslationUnit unit = frontend::parse(frontend::read_source(t_file));
      transforms::RewriteResult r = transforms::apply(unit, plan);
      std::string log;
      for (const auto& e : r.log) log += e.str() + "\n";
      for (const auto& e : r.refusals) log += e.pass + "\t" + e.section + "\trefused: " + e.action + "\t" + e.reason + "\n";
      emit(t_out, frontend::print_text(r.ast));
      if (t_log.empty()) std::cerr << log;
      else harness::write_file(t_log, log);
    } else if (*compare) {
      current = c_auto;
      TranslationUnit au = frontend::parse(frontend::read_source(c_auto, Origin::AutoParallelized));
      current = c_manual;
      TranslationUnit mu = frontend::parse(frontend::read_source(c_manual, Origin::Manual));
      patterns::Annotations ann = annotations_from(c_ann);
      patterns::DiffReport report = patterns::compare_versions(au, mu, ann);
      auto rows = patterns::diff_rows(c_app.empty() ? app_name(c_manual) : c_app, report);
      if (c_report == "csv") emit(c_out, patterns::to_csv(rows));
      else emit(c_out, patterns::to_markdown(rows) + "\n" + patterns::delta_markdown(report));
    } else if (*bench) {
      harness::BenchConfig cfg = harness::BenchConfig::load(b_config);
      if (b_runs > 0) cfg.runs = b_runs;
      if (!b_threads.empty()) {
        cfg.thread_counts.clear();
        for (const auto& t : split_list(b_threads)) {
          try {
            cfg.thread_counts.push_back(std::stoi(t));
          } catch (const std::exception&) {
            throw Error(Errc::ConfigError, "bad thread count '" + t + "'");
          }
        }
      }
      if (b_self_timed) cfg.self_timed = true;
      auto records = harness::run_bench(cfg);
      emit(b_out, harness::timings_csv(records));
      if (!b_summary.empty())
        harness::write_file(b_summary, harness::summary_markdown(harness::summarize(records, cfg.baseline)));
    }
  } catch (const SourceError& e) {
    std::cerr << "ompdiff: " << e.format(current) << "\n";
    return exit_code(e.code());
  } catch (const Error& e) {
    std::cerr << "ompdiff: " << errc_name(e.code()) << ": " << e.what() << "\n";
    if (!e.detail().empty() && (e.code() == Errc::CompileError || e.code() == Errc::RunError))
      std::cerr << e.detail();
    return exit_code(e.code());
  }
  return 0;
}
