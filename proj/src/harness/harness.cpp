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

#include "ompdiff/harness.hpp"

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cerrno>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

#include "ompdiff/error.hpp"

namespace ompdiff::harness {

namespace fs = std::filesystem;

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

int parse_positive(const std::string& text, const std::string& key) {
  try {
    std::size_t used = 0;
    int v = std::stoi(text, &used);
    if (used == text.size() && v > 0) return v;
  } catch (const std::exception&) {
  }
  throw Error(Errc::ConfigError, "'" + key + "' needs a positive integer, got '" + text + "'", key);
}

bool parse_bool(const std::string& text, const std::string& key) {
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  throw Error(Errc::ConfigError, "'" + key + "' needs true or false, got '" + text + "'", key);
}

std::string fixed(double v, int digits) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(digits) << v;
  return out.str();
}

// Shortest round-trippable-enough spelling for timings.
std::string number(double v) {
  std::ostringstream out;
  out << std::setprecision(6) << v;
  return out.str();
}

ProcessResult wait_for(pid_t pid, int read_fd, std::chrono::steady_clock::time_point start) {
  ProcessResult r;
  char buf[4096];
  for (;;) {
    ssize_t n = ::read(read_fd, buf, sizeof buf);
    if (n > 0) {
      r.output.append(buf, static_cast<std::size_t>(n));
      continue;
    }
    if (n < 0 && errno == EINTR) continue;
    break;
  }
  ::close(read_fd);
  int status = 0;
  while (::waitpid(pid, &status, 0) < 0 && errno == EINTR) {
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (WIFEXITED(status)) r.status = WEXITSTATUS(status);
  else if (WIFSIGNALED(status)) r.status = 128 + WTERMSIG(status);
  else r.status = -1;
  return r;
}

ProcessResult spawn(const std::vector<std::string>& argv, const std::optional<int>& threads) {
  int fds[2];
  if (::pipe(fds) != 0) throw Error(Errc::RunError, "cannot create a pipe");
  auto start = std::chrono::steady_clock::now();
  pid_t pid = ::fork();
  if (pid < 0) {
    ::close(fds[0]);
    ::close(fds[1]);
    throw Error(Errc::RunError, "cannot fork");
  }
  if (pid == 0) {
    ::dup2(fds[1], STDOUT_FILENO);
    ::dup2(fds[1], STDERR_FILENO);
    ::close(fds[0]);
    ::close(fds[1]);
    if (threads) ::setenv("OMP_NUM_THREADS", std::to_string(*threads).c_str(), 1);
    std::vector<char*> args;
    for (const auto& a : argv) args.push_back(const_cast<char*>(a.c_str()));
    args.push_back(nullptr);
    ::execvp(args[0], args.data());
    std::fprintf(stderr, "cannot execute %s\n", args[0]);
    ::_exit(127);
  }
  ::close(fds[1]);
  return wait_for(pid, fds[0], start);
}

}  // namespace

void BenchConfig::validate() const {
  if (runs < 1) throw Error(Errc::ConfigError, "runs must be at least 1");
  if (thread_counts.empty()) throw Error(Errc::ConfigError, "no thread counts given");
  for (int t : thread_counts)
    if (t < 1) throw Error(Errc::ConfigError, "thread counts must be positive");
  if (variants.empty()) throw Error(Errc::ConfigError, "no variants given");
  std::set<std::string> labels;
  for (const auto& v : variants)
    if (!labels.insert(v.label).second)
      throw Error(Errc::ConfigError, "variant label '" + v.label + "' used twice");
  if (!baseline.empty() && !labels.count(baseline))
    throw Error(Errc::ConfigError, "baseline '" + baseline + "' is not a variant");
  if (compiler_command.find("{input}") == std::string::npos ||
      compiler_command.find("{output}") == std::string::npos)
    throw Error(Errc::ConfigError, "compiler command needs {input} and {output}");
}

BenchConfig BenchConfig::parse(const std::string& text, const std::string& base_dir) {
  BenchConfig cfg;
  bool threads_seen = false;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    auto eq = t.find('=');
    if (eq == std::string::npos)
      throw Error(Errc::ConfigError, "line " + std::to_string(lineno) + ": expected key = value", t);
    std::string key = trim(t.substr(0, eq)), value = trim(t.substr(eq + 1));
    if (key == "variant") {
      auto colon = value.find(':');
      if (colon == std::string::npos || colon == 0 || colon + 1 == value.size())
        throw Error(Errc::ConfigError, "variant needs label:path, got '" + value + "'", value);
      Variant v{trim(value.substr(0, colon)), trim(value.substr(colon + 1))};
      if (!base_dir.empty() && fs::path(v.path).is_relative()) v.path = (fs::path(base_dir) / v.path).string();
      cfg.variants.push_back(std::move(v));
    } else if (key == "threads") {
      if (!threads_seen) cfg.thread_counts.clear();
      threads_seen = true;
      std::stringstream list(value);
      std::string item;
      while (std::getline(list, item, ',')) cfg.thread_counts.push_back(parse_positive(trim(item), key));
    } else if (key == "runs") {
      cfg.runs = parse_positive(value, key);
    } else if (key == "compiler") {
      cfg.compiler_command = value;
    } else if (key == "flags") {
      cfg.flags = value;
    } else if (key == "self_timed") {
      cfg.self_timed = parse_bool(value, key);
    } else if (key == "time_marker") {
      cfg.time_marker = value;
    } else if (key == "baseline") {
      cfg.baseline = value;
    } else if (key == "work_dir") {
      cfg.work_dir = value;
    } else {
      throw Error(Errc::ConfigError, "line " + std::to_string(lineno) + ": unknown key '" + key + "'", key);
    }
  }
  return cfg;
}

BenchConfig BenchConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::IoError, "cannot open " + path, path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse(buf.str(), fs::path(path).parent_path().string());
}

ProcessResult run_shell(const std::string& command) {
  return spawn({"/bin/sh", "-c", command}, std::nullopt);
}

ProcessResult run_program(const std::string& program, int threads) {
  return spawn({program}, threads);
}

std::string expand_command(const std::string& tmpl, const std::string& input,
                           const std::string& output, const std::string& flags) {
  std::string out;
  for (std::size_t k = 0; k < tmpl.size();) {
    auto try_key = [&](const std::string& key, const std::string& value) {
      if (tmpl.compare(k, key.size(), key) != 0) return false;
      out += value;
      k += key.size();
      return true;
    };
    if (try_key("{input}", input) || try_key("{output}", output) || try_key("{flags}", flags)) continue;
    out += tmpl[k++];
  }
  return out;
}

void compile(const BenchConfig& cfg, const std::string& input, const std::string& output) {
  if (!fs::exists(input)) throw Error(Errc::IoError, "cannot open " + input, input);
  std::string cmd = expand_command(cfg.compiler_command, input, output, cfg.flags);
  ProcessResult r = run_shell(cmd);
  if (r.status != 0)
    throw Error(Errc::CompileError, "compiling " + input + " failed (exit " + std::to_string(r.status) + ")",
                r.output);
}

std::optional<double> self_reported_time(const std::string& output, const std::string& marker) {
  auto pos = output.rfind(marker);
  if (pos == std::string::npos) return std::nullopt;
  std::istringstream in(output.substr(pos + marker.size()));
  double v = 0;
  if (!(in >> v) || v <= 0) return std::nullopt;
  return v;
}

std::vector<TimingRecord> run_bench(const BenchConfig& cfg) {
  cfg.validate();
  fs::path dir = cfg.work_dir.empty() ? fs::temp_directory_path() / ("ompdiff-bench-" + std::to_string(::getpid()))
                                      : fs::path(cfg.work_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(Errc::IoError, "cannot create " + dir.string(), ec.message());

  std::vector<std::string> binaries;
  for (std::size_t k = 0; k < cfg.variants.size(); ++k) {
    std::string exe = (dir / ("variant" + std::to_string(k) + "_" + cfg.variants[k].label)).string();
    compile(cfg, cfg.variants[k].path, exe);
    binaries.push_back(exe);
  }
  std::vector<TimingRecord> out;
  for (std::size_t k = 0; k < cfg.variants.size(); ++k) {
    for (int threads : cfg.thread_counts) {
      for (int run = 0; run < cfg.runs; ++run) {
        ProcessResult r = run_program(binaries[k], threads);
        if (r.status != 0)
          throw Error(Errc::RunError,
                      cfg.variants[k].label + " exited with status " + std::to_string(r.status), r.output);
        double secs = r.seconds;
        if (cfg.self_timed) {
          if (auto t = self_reported_time(r.output, cfg.time_marker)) secs = *t;
        }
        // Wall clock never reads exactly zero in practice; keep records positive.
        secs = std::max(secs, 1e-9);
        out.push_back({cfg.variants[k].label, threads, run, secs});
      }
    }
  }
  return out;
}

double speedup(double t_1core, double t_ncore) {
  if (!(t_1core > 0) || !(t_ncore > 0)) throw Error(Errc::ConfigError, "times must be positive");
  return t_1core / t_ncore;
}

double overhead(double t_serial, double t_par1) {
  if (!(t_serial > 0) || !(t_par1 > 0)) throw Error(Errc::ConfigError, "times must be positive");
  return 100.0 * (t_par1 - t_serial) / t_serial;
}

double round_speedup(double s) { return std::round(s * 10.0) / 10.0; }

long round_overhead(double percent) { return std::lround(percent); }

ReportTable summarize(const std::vector<TimingRecord>& records, const std::string& baseline) {
  ReportTable t;
  std::vector<std::string> order;
  std::map<std::string, std::map<int, std::pair<double, int>>> acc;
  for (const auto& r : records) {
    if (!acc.count(r.variant)) order.push_back(r.variant);
    auto& cell = acc[r.variant][r.threads];
    cell.first += r.seconds;
    cell.second += 1;
  }
  std::map<std::string, std::map<int, double>> mean;
  for (const auto& v : order) {
    for (const auto& [threads, cell] : acc[v]) {
      double m = cell.first / cell.second;
      mean[v][threads] = m;
      t.means.push_back({v, threads, m, cell.second});
    }
    const auto& byt = mean[v];
    if (byt.size() >= 2)
      t.speedups.push_back({v, byt.begin()->first, byt.rbegin()->first,
                            speedup(byt.begin()->second, byt.rbegin()->second)});
  }
  if (!baseline.empty() && mean.count(baseline)) {
    double base = mean[baseline].begin()->second;
    for (const auto& v : order) {
      if (v == baseline) continue;
      t.overheads.push_back({v, baseline, overhead(base, mean[v].begin()->second)});
    }
  }
  return t;
}

std::string timings_csv(const std::vector<TimingRecord>& records) {
  std::string out = "Variant,Threads,Run,Seconds\n";
  for (const auto& r : records)
    out += r.variant + "," + std::to_string(r.threads) + "," + std::to_string(r.run) + "," +
           number(r.seconds) + "\n";
  return out;
}

std::string summary_csv(const ReportTable& table) {
  std::string out = "Kind,Variant,Threads,Value,Rounded,Runs\n";
  for (const auto& m : table.means)
    out += "mean," + m.variant + "," + std::to_string(m.threads) + "," + number(m.mean) + "," +
           fixed(m.mean, 2) + "," + std::to_string(m.runs) + "\n";
  for (const auto& s : table.speedups)
    out += "speedup," + s.variant + "," + std::to_string(s.base_threads) + "/" +
           std::to_string(s.threads) + "," + number(s.value) + "," + fixed(round_speedup(s.value), 1) +
           ",\n";
  for (const auto& o : table.overheads)
    out += "overhead," + o.variant + ",vs " + o.baseline + "," + number(o.percent) + "," +
           std::to_string(round_overhead(o.percent)) + ",\n";
  return out;
}

std::string summary_markdown(const ReportTable& table) {
  std::vector<std::string> variants;
  std::set<int> threads;
  for (const auto& m : table.means) {
    if (std::find(variants.begin(), variants.end(), m.variant) == variants.end())
      variants.push_back(m.variant);
    threads.insert(m.threads);
  }
  std::string out = "| Variant |";
  std::string rule = "|---|";
  for (int t : threads) {
    out += " " + std::to_string(t) + (t == 1 ? " thread" : " threads") + " |";
    rule += "---:|";
  }
  out += " Speedup | Overhead |\n";
  rule += "---:|---:|\n";
  out += rule;
  for (const auto& v : variants) {
    out += "| " + v + " |";
    for (int t : threads) {
      auto it = std::find_if(table.means.begin(), table.means.end(),
                             [&](const MeanRow& m) { return m.variant == v && m.threads == t; });
      out += " " + (it == table.means.end() ? std::string("-") : fixed(it->mean, 3)) + " |";
    }
    auto s = std::find_if(table.speedups.begin(), table.speedups.end(),
                          [&](const SpeedupCell& c) { return c.variant == v; });
    out += " " + (s == table.speedups.end() ? std::string("-") : fixed(round_speedup(s->value), 1)) + " |";
    auto o = std::find_if(table.overheads.begin(), table.overheads.end(),
                          [&](const OverheadCell& c) { return c.variant == v; });
    out += " " + (o == table.overheads.end() ? std::string("-")
                                             : std::to_string(round_overhead(o->percent)) + "%") +
           " |\n";
  }
  return out;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::IoError, "cannot write " + path, path);
  out << content;
  if (!out) throw Error(Errc::IoError, "cannot write " + path, path);
}

std::vector<std::string> emit_report(const std::string& dir, const std::string& stem,
                                     const std::vector<patterns::TableRow>& rows,
                                     const patterns::DiffReport* diff,
                                     const std::vector<TimingRecord>& timings,
                                     const std::string& baseline) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(Errc::IoError, "cannot create " + dir, ec.message());
  std::vector<std::string> written;
  auto put = [&](const std::string& name, const std::string& content) {
    std::string path = (fs::path(dir) / name).string();
    write_file(path, content);
    written.push_back(path);
  };
  put(stem + ".csv", patterns::to_csv(rows));
  std::string md = patterns::to_markdown(rows);
  if (diff) md += "\n" + patterns::delta_markdown(*diff);
  if (!timings.empty()) {
    md += "\n" + summary_markdown(summarize(timings, baseline));
    put(stem + "_timings.csv", timings_csv(timings));
  }
  put(stem + ".md", md);
  return written;
}

}  // namespace ompdiff::harness
