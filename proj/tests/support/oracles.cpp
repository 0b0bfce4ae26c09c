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

#include "oracles.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <sstream>

namespace ompdiff::testing {

namespace {

int uniform(std::mt19937& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

std::string affine_text(int coeff, int offset) {
  std::ostringstream os;
  if (coeff == 0) {
    os << offset;
    return os.str();
  }
  if (coeff == 1) os << "i";
  else if (coeff == -1) os << "-i";
  else os << coeff << " * i";
  if (offset > 0) os << " + " << offset;
  if (offset < 0) os << " - " << -offset;
  return os.str();
}

std::string sub_text(const Sub& s) {
  if (s.indirect) return "idx[" + affine_text(s.coeff, s.offset) + "]";
  return affine_text(s.coeff, s.offset);
}

int sub_value(const Sub& s, int i) {
  int v = s.coeff * i + s.offset;
  return s.indirect ? idx_value(v) : v;
}

std::string ref_text(const Ref& r) {
  std::string s = r.base;
  for (const auto& sub : r.subs) s += "[" + sub_text(sub) + "]";
  return s;
}

std::vector<int> element(const Ref& r, int i) {
  std::vector<int> e;
  for (const auto& s : r.subs) e.push_back(sub_value(s, i));
  return e;
}

Ref random_ref(std::mt19937& rng, bool write) {
  Ref r;
  r.write = write;
  int pick = uniform(rng, 0, 9);
  if (pick == 0) {
    r.base = "t";
    return r;
  }
  r.base = pick <= 3 ? "a" : pick <= 6 ? "b" : "c";
  Sub first;
  if (uniform(rng, 0, 9) == 0) {
    first.indirect = true;
    first.coeff = 1;
    first.offset = uniform(rng, 0, 5);
  } else {
    first.coeff = uniform(rng, -2, 2);
    first.offset = 60 + uniform(rng, -4, 4);
  }
  r.subs.push_back(first);
  if (r.base != "c") {
    Sub second;
    second.coeff = 0;
    second.offset = uniform(rng, 0, 2);
    r.subs.push_back(second);
  }
  return r;
}

}  // namespace

int idx_value(int k) { return 60 + k % 3; }

std::vector<int> GenLoop::iterations() const {
  std::vector<int> out;
  if (descending)
    for (int i = upper - 1; i >= lower; i -= stride) out.push_back(i);
  else
    for (int i = lower; i < upper; i += stride) out.push_back(i);
  return out;
}

std::string GenLoop::c_text() const {
  std::ostringstream os;
  os << "double a[200][3];\ndouble b[200][3];\ndouble c[200];\nint idx[200];\ndouble t;\n\n"
     << "void kernel(void)\n{\n  int i;\n";
  if (descending)
    os << "  for (i = " << upper - 1 << "; i >= " << lower << "; i" << (stride == 1 ? "--" : " -= 2")
       << ") {\n";
  else
    os << "  for (i = " << lower << "; i < " << upper << "; i" << (stride == 1 ? "++" : " += 2")
       << ") {\n";
  for (const auto& st : stmts) {
    os << "    " << ref_text(st[0]) << " = ";
    for (std::size_t k = 1; k < st.size(); ++k) {
      if (k > 1) os << " + ";
      os << ref_text(st[k]);
    }
    if (st.size() == 2) os << " * 2.0 + 1.0";
    os << ";\n";
  }
  os << "  }\n}\n";
  return os.str();
}

GenLoop random_loop(std::mt19937& rng) {
  GenLoop g;
  g.lower = uniform(rng, 0, 4);
  g.upper = g.lower + uniform(rng, 1, 16);
  g.stride = uniform(rng, 0, 3) == 0 ? 2 : 1;
  g.descending = uniform(rng, 0, 3) == 0;
  int n = uniform(rng, 1, 3);
  for (int k = 0; k < n; ++k) {
    std::vector<Ref> st{random_ref(rng, true)};
    int reads = uniform(rng, 1, 2);
    for (int r = 0; r < reads; ++r) st.push_back(random_ref(rng, false));
    g.stmts.push_back(std::move(st));
  }
  return g;
}

std::set<std::string> conflicting_bases(const GenLoop& loop) {
  std::set<std::string> out;
  std::vector<int> its = loop.iterations();
  std::vector<const Ref*> refs;
  for (const auto& st : loop.stmts)
    for (const auto& r : st) refs.push_back(&r);
  for (std::size_t p = 0; p < its.size(); ++p)
    for (std::size_t q = p + 1; q < its.size(); ++q)
      for (const Ref* x : refs)
        for (const Ref* y : refs) {
          if (x->base != y->base || !(x->write || y->write)) continue;
          if (element(*x, its[p]) == element(*y, its[q])) out.insert(x->base);
        }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

std::string pair_loop_text(const PairLoop& l, bool first) {
  std::ostringstream os;
  os << "#pragma omp for\n    for (i = " << l.lower << "; i < " << l.upper << "; i++) {\n"
     << "      " << l.write_base << "[" << affine_text(l.write.coeff, l.write.offset) << "] = ";
  for (std::size_t k = 0; k < l.reads.size(); ++k) {
    if (k) os << " + ";
    os << l.reads[k].first << "[" << affine_text(l.reads[k].second.coeff, l.reads[k].second.offset)
       << "]";
  }
  os << (first ? " + 1.0" : " * 0.5") << ";\n    }\n";
  return os.str();
}

PairLoop random_pair_loop(std::mt19937& rng) {
  static const char* names[] = {"x", "y", "z"};
  PairLoop l;
  l.lower = uniform(rng, 0, 3);
  l.upper = l.lower + uniform(rng, 1, 16);
  auto sub = [&] {
    Sub s;
    s.coeff = uniform(rng, 0, 4) == 0 ? 2 : 1;
    s.offset = 20 + uniform(rng, -3, 3);
    return s;
  };
  l.write_base = names[uniform(rng, 0, 2)];
  l.write = sub();
  int reads = uniform(rng, 1, 2);
  for (int k = 0; k < reads; ++k) l.reads.emplace_back(names[uniform(rng, 0, 2)], sub());
  return l;
}

}  // namespace

std::string GenPair::c_text() const {
  std::ostringstream os;
  os << "double x[64];\ndouble y[64];\ndouble z[64];\n\nvoid kernel(void)\n{\n  int i;\n"
     << "#pragma omp parallel private(i)\n  {\n    " << pair_loop_text(first, true) << "    "
     << pair_loop_text(second, false) << "  }\n}\n";
  return os.str();
}

GenPair random_pair(std::mt19937& rng) {
  GenPair g;
  g.first = random_pair_loop(rng);
  g.second = random_pair_loop(rng);
  // Bias toward loops that touch the same arrays.
  if (uniform(rng, 0, 1) == 0) g.second.reads[0].first = g.first.write_base;
  // And toward identical iteration spaces and subscripts, where nowait can be legal.
  if (uniform(rng, 0, 1) == 0) {
    g.second.lower = g.first.lower;
    g.second.upper = g.first.upper;
    if (uniform(rng, 0, 1) == 0) g.second.reads[0].second = g.first.write;
  }
  return g;
}

int static_owner(int position, int count, int threads) {
  int q = count / threads, r = count % threads;
  int big = r * (q + 1);
  if (position < big) return position / (q + 1);
  return r + (position - big) / q;
}

bool cross_thread_conflict(const GenPair& pair, int threads) {
  struct Touch {
    int thread;
    bool write;
  };
  auto touches = [&](const PairLoop& l) {
    std::map<std::pair<std::string, int>, std::vector<Touch>> m;
    int n = l.upper - l.lower;
    for (int i = l.lower; i < l.upper; ++i) {
      int th = static_owner(i - l.lower, n, threads);
      m[{l.write_base, l.write.coeff * i + l.write.offset}].push_back({th, true});
      for (const auto& [b, s] : l.reads) m[{b, s.coeff * i + s.offset}].push_back({th, false});
    }
    return m;
  };
  auto one = touches(pair.first), two = touches(pair.second);
  for (const auto& [elem, xs] : one) {
    auto it = two.find(elem);
    if (it == two.end()) continue;
    for (const auto& x : xs)
      for (const auto& y : it->second)
        if (x.thread != y.thread && (x.write || y.write)) return true;
  }
  return false;
}

// ---------------------------------------------------------------------------

namespace {

double a_value(int i) { return 0.13 * ((i * 7) % 11); }

struct PrivState {
  std::vector<double> b, c;
  double t = 1.5, u = 2.5;
};

// One statement of iteration `i` against the given scalar slots.
void exec(const PrivStmt& s, int i, double& t, double& u, PrivState& st) {
  switch (s.kind) {
    case PrivStmt::SetFromA: t = a_value(i) * s.k; break;
    case PrivStmt::AccumA: t = t + a_value(i); break;
    case PrivStmt::CopyTU: u = t * s.k; break;
    case PrivStmt::StoreB: st.b[i] = t + u; break;
    case PrivStmt::CondSet:
      if (a_value(i) > 0.5) t = a_value(i);
      break;
    case PrivStmt::StoreC: st.c[i] = u * s.k; break;
  }
}

std::vector<double> final_state(const GenPrivLoop& loop, const PrivState& st) {
  std::vector<double> out = st.b;
  out.insert(out.end(), st.c.begin(), st.c.end());
  if (loop.t_live_after) out.push_back(st.t);
  if (loop.u_live_after) out.push_back(st.u);
  return out;
}

}  // namespace

std::string GenPrivLoop::c_text() const {
  std::ostringstream os;
  os.precision(17);
  os << "double a[16];\ndouble b[16];\ndouble c[16];\ndouble out_t;\ndouble out_u;\n\n"
     << "void kernel(void)\n{\n  int i;\n  double t = 1.5;\n  double u = 2.5;\n"
     << "  for (i = 0; i < " << n << "; i++) {\n";
  for (const auto& s : stmts) {
    os << "    ";
    switch (s.kind) {
      case PrivStmt::SetFromA: os << "t = a[i] * " << s.k << ";"; break;
      case PrivStmt::AccumA: os << "t = t + a[i];"; break;
      case PrivStmt::CopyTU: os << "u = t * " << s.k << ";"; break;
      case PrivStmt::StoreB: os << "b[i] = t + u;"; break;
      case PrivStmt::CondSet: os << "if (a[i] > 0.5)\n      t = a[i];"; break;
      case PrivStmt::StoreC: os << "c[i] = u * " << s.k << ";"; break;
    }
    os << "\n";
  }
  os << "  }\n";
  if (t_live_after) os << "  out_t = t;\n";
  if (u_live_after) os << "  out_u = u;\n";
  os << "}\n";
  return os.str();
}

GenPrivLoop random_priv_loop(std::mt19937& rng) {
  GenPrivLoop g;
  g.n = uniform(rng, 2, 8);
  int count = uniform(rng, 1, 4);
  for (int k = 0; k < count; ++k) {
    PrivStmt s;
    s.kind = static_cast<PrivStmt::Kind>(uniform(rng, 0, 5));
    s.k = 0.5 * uniform(rng, 1, 4);
    g.stmts.push_back(s);
  }
  g.t_live_after = uniform(rng, 0, 2) == 0;
  g.u_live_after = uniform(rng, 0, 2) == 0;
  return g;
}

std::vector<double> run_serial(const GenPrivLoop& loop) {
  PrivState st;
  st.b.assign(loop.n, 0);
  st.c.assign(loop.n, 0);
  for (int i = 0; i < loop.n; ++i)
    for (const auto& s : loop.stmts) exec(s, i, st.t, st.u, st);
  return final_state(loop, st);
}

std::vector<double> run_two_threads(const GenPrivLoop& loop, const std::string& t_class,
                                    const std::string& u_class, int order) {
  const double poison = std::numeric_limits<double>::quiet_NaN();
  PrivState st;
  st.b.assign(loop.n, 0);
  st.c.assign(loop.n, 0);
  auto copy_of = [&](const std::string& cls, double original) {
    return cls == "firstprivate" ? original : poison;
  };
  double tcopy[2] = {copy_of(t_class, st.t), copy_of(t_class, st.t)};
  double ucopy[2] = {copy_of(u_class, st.u), copy_of(u_class, st.u)};
  auto t_slot = [&](int th) -> double& { return t_class == "shared" ? st.t : tcopy[th]; };
  auto u_slot = [&](int th) -> double& { return u_class == "shared" ? st.u : ucopy[th]; };

  int half = (loop.n + 1) / 2;
  int begin[2] = {0, half}, end[2] = {half, loop.n};
  // Per-thread program counters as (iteration, statement).
  int it[2] = {begin[0], begin[1]};
  std::size_t pc[2] = {0, 0};
  auto step = [&](int th) {
    if (it[th] >= end[th]) return false;
    exec(loop.stmts[pc[th]], it[th], t_slot(th), u_slot(th), st);
    if (++pc[th] == loop.stmts.size()) {
      pc[th] = 0;
      ++it[th];
    }
    return true;
  };
  if (order == 0) {
    while (step(0)) {}
    while (step(1)) {}
  } else if (order == 1) {
    while (step(1)) {}
    while (step(0)) {}
  } else {
    bool more = true;
    while (more) {
      bool x = step(0);
      bool y = step(1);
      more = x || y;
    }
  }
  if (t_class == "lastprivate") st.t = tcopy[1];
  if (u_class == "lastprivate") st.u = ucopy[1];
  return final_state(loop, st);
}

}  // namespace ompdiff::testing
