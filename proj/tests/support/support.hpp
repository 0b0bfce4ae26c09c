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

// Helpers shared by the unit and acceptance tests: fixture lookup, compiling
// C text with the system compiler and comparing program outputs.

#pragma once

#include <string>
#include <vector>

namespace ompdiff::testing {

struct FixtureApp {
  std::string name;  // "bt"
  std::string serial;
  std::string manual;
  std::string annotations;
  bool reorders = false;  // floating sums may be reassociated
};

std::string fixture_dir();
const std::vector<FixtureApp>& fixture_apps();

std::string read_file(const std::string& path);
/// Fresh directory under the system temp dir.
std::string make_temp_dir(const std::string& prefix);

struct Build {
  bool ok = false;
  std::string exe;
  std::string log;
};

/// Writes `source` to dir/name.c and compiles it with cc -O1 -lm, adding
/// -fopenmp when requested.
Build build_c(const std::string& source, const std::string& dir, const std::string& name,
              bool openmp);

/// Stdout+stderr of `exe` with OMP_NUM_THREADS=threads. `ok`, when given,
/// receives whether the exit status was zero.
std::string run_exe(const std::string& exe, int threads, bool* ok = nullptr);

/// Token-wise comparison; numeric tokens agree within relative `tol`
/// (absolute for magnitudes below 1e-300). `why` names the first mismatch.
bool outputs_match(const std::string& expected, const std::string& actual, double tol,
                   std::string* why = nullptr);

}  // namespace ompdiff::testing
