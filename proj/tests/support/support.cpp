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

#include "support.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "ompdiff/harness.hpp"

namespace ompdiff::testing {

namespace fs = std::filesystem;

std::string fixture_dir() { return OMPDIFF_FIXTURE_DIR; }

const std::vector<FixtureApp>& fixture_apps() {
  static const std::vector<FixtureApp> apps = [] {
    std::vector<FixtureApp> out;
    for (const char* n : {"bt", "cg", "ep", "is", "mg"}) {
      std::string d = fixture_dir() + "/" + n + "/" + n;
      FixtureApp a{n, d + "_serial.c", d + "_manual.c", d + ".ann", false};
      a.reorders = a.name == "cg" || a.name == "ep" || a.name == "bt";
      out.push_back(a);
    }
    return out;
  }();
  return apps;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string make_temp_dir(const std::string& prefix) {
  std::string tmpl = (fs::temp_directory_path() / (prefix + "-XXXXXX")).string();
  if (!mkdtemp(tmpl.data())) throw std::runtime_error("mkdtemp failed");
  return tmpl;
}

Build build_c(const std::string& source, const std::string& dir, const std::string& name,
              bool openmp) {
  Build b;
  std::string src = dir + "/" + name + ".c";
  b.exe = dir + "/" + name;
  harness::write_file(src, source);
  std::string cmd = "cc -O1 -w " + std::string(openmp ? "-fopenmp " : "") + "'" + src + "' -o '" +
                    b.exe + "' -lm";
  harness::ProcessResult r = harness::run_shell(cmd);
  b.ok = r.status == 0;
  b.log = r.output;
  return b;
}

std::string run_exe(const std::string& exe, int threads, bool* ok) {
  harness::ProcessResult r = harness::run_program(exe, threads);
  if (ok) *ok = r.status == 0;
  return r.output;
}

namespace {

std::vector<std::string> tokens(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string t;
  while (in >> t) out.push_back(t);
  return out;
}

bool as_number(const std::string& t, double& v) {
  char* end = nullptr;
  v = std::strtod(t.c_str(), &end);
  return end && *end == '\0' && end != t.c_str();
}

}  // namespace

bool outputs_match(const std::string& expected, const std::string& actual, double tol,
                   std::string* why) {
  auto a = tokens(expected), b = tokens(actual);
  if (a.size() != b.size()) {
    if (why) *why = "token count " + std::to_string(a.size()) + " vs " + std::to_string(b.size());
    return false;
  }
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == b[i]) continue;
    double x, y;
    if (as_number(a[i], x) && as_number(b[i], y)) {
      double scale = std::max(std::fabs(x), std::fabs(y));
      if (std::fabs(x - y) <= tol * scale || scale < 1e-300) continue;
    }
    if (why) *why = "token " + std::to_string(i) + ": '" + a[i] + "' vs '" + b[i] + "'";
    return false;
  }
  return true;
}

}  // namespace ompdiff::testing
