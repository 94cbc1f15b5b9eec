#pragma once

/**
 * @file deduce.hpp
 * @brief Constraint solving for the local class of M(K), the inductive
 * pipeline over iterated satellites, and the phi-matrix check.
 */

#include <cstdint>
#include <cstdlib>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "floerlocal/complex.hpp"
#include "floerlocal/error.hpp"
#include "floerlocal/localequiv.hpp"
#include "floerlocal/mazur.hpp"
#include "floerlocal/obstructions.hpp"
#include "floerlocal/parallel.hpp"
#include "floerlocal/standard.hpp"

namespace floerlocal {

struct DeductionInput {
  ConstraintSet cs;
  int tau = 0;
  int epsilon = 0;
  int max_len = 8;
  int max_abs = 4;
};

/// V-arrows of a standard complex with their endpoint classes.
inline std::vector<ArrowClass> standard_v_arrows(const StandardComplex& sc) {
  std::vector<ArrowClass> out;
  for (std::size_t i = 2; i <= sc.params.size(); i += 2) {
    const auto a = detail::standard_arrow(sc.params, i);
    const auto& s = sc.complex.generator(a.from).grading;
    const auto& t = sc.complex.generator(a.to).grading;
    out.push_back({s.alexander(), s.maslov(), t.alexander(), t.maslov(), a.m.v});
  }
  return out;
}

/// Full membership test for one parameter sequence.
inline bool passes_filter(const StandardParams& p, const DeductionInput& inp) {
  if (!p.symmetric() || static_cast<int>(p.size()) > inp.max_len) return false;
  for (int b : p.entries())
    if (std::abs(b) > inp.max_abs) return false;
  if (tau_epsilon_of(p) != TauEpsilon{inp.tau, inp.epsilon}) return false;
  if (not_realizable(p.entries())) return false;
  return check_arrows(standard_v_arrows(build_standard(p)), inp.cs, CountMode::AtMost).empty();
}

namespace detail {

// Depth-first search over the first half of symmetric sequences of a fixed
// length. Gradings of x_0..x_i follow from A(x_0) = tau and M(x_0) = 0; the
// second half mirrors the first under (A, M) -> (-A, M - 2A), so each
// first-half U-arrow also fixes a second-half V-arrow that can be audited early.
class CandidateSearch {
 public:
  CandidateSearch(const DeductionInput& inp, int length) : inp_(inp), len_(length) {}

  void run(std::vector<int> start, std::vector<StandardParams>& out) {
    std::vector<int> b;
    a_ = {inp_.tau};
    m_ = {0};
    arrows_.clear();
    for (int v : start) {
      if (!push(b, v)) return;
    }
    dfs(b, out);
  }

  std::uint64_t nodes() const { return nodes_; }

 private:
  bool push(std::vector<int>& b, int v) {
    ++nodes_;
    const std::size_t i = b.size() + 1;
    if (i == 1 && (v > 0 ? 1 : -1) != inp_.epsilon) return false;
    b.push_back(v);
    const int k = std::abs(v);
    const int a0 = a_.back(), m0 = m_.back();
    int a1 = 0, m1 = 0;
    if (i % 2 == 1) {
      a1 = a0 - v;
      m1 = v < 0 ? m0 + 2 * k - 1 : m0 - (2 * k - 1);
    } else {
      a1 = a0 + v;
      m1 = v < 0 ? m0 - 1 : m0 + 1;
    }
    a_.push_back(a1);
    m_.push_back(m1);
    const std::size_t saved = arrows_.size();
    if (i % 2 == 0) {
      if (v < 0) arrows_.push_back({a0, m0, a1, m1, k});
      else arrows_.push_back({a1, m1, a0, m0, k});
    } else {
      const auto [ia0, im0] = mirror_grading(a0, m0);
      const auto [ia1, im1] = mirror_grading(a1, m1);
      if (v > 0) arrows_.push_back({ia1, im1, ia0, im0, k});
      else arrows_.push_back({ia0, im0, ia1, im1, k});
    }
    if (not_realizable(b) || !check_arrows(arrows_, inp_.cs, CountMode::AtMost).empty()) {
      arrows_.resize(saved);
      pop(b);
      return false;
    }
    return true;
  }

  void pop(std::vector<int>& b) {
    b.pop_back();
    a_.pop_back();
    m_.pop_back();
  }

  void dfs(std::vector<int>& b, std::vector<StandardParams>& out) {
    if (static_cast<int>(b.size()) * 2 == len_) {
      std::vector<int> full = b;
      for (auto it = b.rbegin(); it != b.rend(); ++it) full.push_back(-*it);
      StandardParams p(std::move(full));
      if (passes_filter(p, inp_)) out.push_back(std::move(p));
      return;
    }
    for (int k = 1; k <= inp_.max_abs; ++k)
      for (int v : {k, -k}) {
        const std::size_t saved = arrows_.size();
        if (!push(b, v)) continue;
        dfs(b, out);
        arrows_.resize(saved);
        pop(b);
      }
  }

  const DeductionInput& inp_;
  int len_;
  std::vector<int> a_, m_;
  std::vector<ArrowClass> arrows_;
  std::uint64_t nodes_ = 0;
};

}  // namespace detail

/// Symmetric sequences within the bounds that satisfy the tau/epsilon values,
/// the arrow constraints and the realizability patterns. Sorted.
inline std::vector<StandardParams> candidates(const DeductionInput& inp, int jobs = 1) {
  if (inp.max_len < 0 || inp.max_abs < 0) throw std::invalid_argument("candidates: negative bounds");
  if (inp.epsilon < -1 || inp.epsilon > 1) throw std::invalid_argument("candidates: epsilon must be -1, 0 or 1");
  std::vector<StandardParams> out;
  if (passes_filter(StandardParams(), inp)) out.emplace_back();
  // One task per (length, first entry, second entry) branch.
  struct Task {
    int length;
    std::vector<int> start;
  };
  std::vector<Task> tasks;
  for (int len = 2; len <= inp.max_len; len += 2)
    for (int k1 = 1; k1 <= inp.max_abs; ++k1)
      for (int v1 : {k1, -k1}) {
        if (len == 2) {
          tasks.push_back({len, {v1}});
          continue;
        }
        for (int k2 = 1; k2 <= inp.max_abs; ++k2)
          for (int v2 : {k2, -k2}) tasks.push_back({len, {v1, v2}});
      }
  std::vector<std::vector<StandardParams>> found(tasks.size());
  parallel_for(tasks.size(), jobs, [&](std::size_t t) {
    detail::CandidateSearch search(inp, tasks[t].length);
    search.run(tasks[t].start, found[t]);
  });
  for (auto& f : found) out.insert(out.end(), f.begin(), f.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Pipeline

struct PipelineOptions {
  int base_max_len = 6;
  int base_max_abs = 2;
  int max_len = 8;
  int extra_abs = 2;  // max_abs = n + extra_abs at the step with parameter n
  int jobs = 1;
};

struct PipelineStep {
  int index = 0;        // 0 for the base case
  int n = 0;            // constraint parameter (0 for the base case)
  int tau = 0;
  int epsilon = 0;
  int max_len = 0;
  int max_abs = 0;
  std::vector<StandardParams> survivors;
};

struct PipelineResult {
  std::vector<StandardParams> classes;  // class of M^k(D_2), k = 0..N
  std::vector<PipelineStep> steps;
};

inline std::string format_params_list(const std::vector<StandardParams>& ps) {
  std::string s = "{";
  for (std::size_t i = 0; i < ps.size(); ++i) s += (i ? "," : "") + to_display(ps[i]);
  return s + "}";
}

inline std::string format_step(const PipelineStep& s) {
  std::ostringstream os;
  os << "step n=" << s.index << " survivors=" << format_params_list(s.survivors) << " tau=" << s.tau
     << " epsilon=" << s.epsilon;
  return os.str();
}

/// C(1,-k,k,-1).
inline StandardParams satellite_class(int k) { return StandardParams({1, -k, k, -1}); }

/// Base case computed from D_2 = D # D with CFK_R(D) ~ C(1,-1), then one
/// constrained deduction per satellite. Throws AssertionFailure with the
/// trace so far when a step does not have exactly the expected survivor.
inline PipelineResult pipeline(int N, const PipelineOptions& opt = {}) {
  if (N < 0) throw std::invalid_argument("pipeline: N must be non-negative");
  PipelineResult res;
  auto fail = [&](const std::string& why) {
    std::string trace;
    for (const auto& s : res.steps) trace += "\n" + format_step(s);
    throw AssertionFailure("pipeline: " + why + trace);
  };

  const auto d = build_standard(StandardParams({1, -1})).complex;
  const auto d2 = reduce(tensor(d, d));
  const auto base = standard_representative(d2, opt.base_max_len, opt.base_max_abs);
  PipelineStep s0;
  s0.max_len = opt.base_max_len;
  s0.max_abs = opt.base_max_abs;
  if (base) {
    s0.survivors.push_back(*base);
    const auto te = tau_epsilon_of(*base);
    s0.tau = te.tau;
    s0.epsilon = te.epsilon;
  }
  res.steps.push_back(s0);
  if (!base || *base != satellite_class(1)) fail("base case is not (1,-1,1,-1)");
  res.classes.push_back(*base);

  for (int k = 1; k <= N; ++k) {
    const int n = k + 1;
    if (res.classes.back() != satellite_class(n - 1)) fail("hypothesis for n=" + std::to_string(n) + " not established");
    DeductionInput inp{satellite_arrow_constraints(n), n + 1, 1, opt.max_len, n + opt.extra_abs};
    PipelineStep st{k, n, inp.tau, inp.epsilon, inp.max_len, inp.max_abs, candidates(inp, opt.jobs)};
    res.steps.push_back(st);
    if (st.survivors.size() != 1) fail("step " + std::to_string(k) + " has " + std::to_string(st.survivors.size()) + " survivors");
    if (st.survivors.front() != satellite_class(n)) fail("step " + std::to_string(k) + " survivor is not C(1,-n,n,-1)");
    res.classes.push_back(st.survivors.front());
  }
  return res;
}

// ---------------------------------------------------------------------------
// phi-matrix

/// Rank of an integer matrix by fraction-free elimination.
inline int integer_rank(std::vector<std::vector<std::int64_t>> m) {
  const std::size_t rows = m.size();
  const std::size_t cols = rows ? m[0].size() : 0;
  std::size_t r = 0;
  std::int64_t prev = 1;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && m[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(m[piv], m[r]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) m[i][j] = (m[r][c] * m[i][j] - m[i][c] * m[r][j]) / prev;
      m[i][c] = 0;
    }
    prev = m[r][c];
    ++r;
  }
  return static_cast<int>(r);
}

struct PhiMatrix {
  std::vector<std::vector<int>> rows;  // rows n = 1..N, columns j = 2..N+1
  int rank = 0;
};

inline PhiMatrix phi_matrix_of(const std::vector<StandardParams>& classes) {
  PhiMatrix pm;
  const int N = static_cast<int>(classes.size());
  std::vector<std::vector<std::int64_t>> wide;
  for (const auto& p : classes) {
    std::vector<int> row;
    for (int j = 2; j <= N + 1; ++j) row.push_back(phi(p, j));
    wide.emplace_back(row.begin(), row.end());
    pm.rows.push_back(std::move(row));
  }
  pm.rank = integer_rank(wide);
  return pm;
}

/// phi_j of the pipeline classes; asserts the identity matrix.
inline PhiMatrix phi_matrix(int N, const PipelineOptions& opt = {}) {
  if (N < 1) throw std::invalid_argument("phi_matrix: N must be at least 1");
  const auto res = pipeline(N, opt);
  const std::vector<StandardParams> classes(res.classes.begin() + 1, res.classes.end());
  auto pm = phi_matrix_of(classes);
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j)
      if (pm.rows[i][j] != (i == j ? 1 : 0))
        throw AssertionFailure("phi_matrix: entry (" + std::to_string(i + 1) + "," + std::to_string(j + 2) +
                               ") is " + std::to_string(pm.rows[i][j]));
  if (pm.rank != N) throw AssertionFailure("phi_matrix: rank " + std::to_string(pm.rank));
  return pm;
}

inline std::string format_phi_matrix(const PhiMatrix& pm) {
  std::ostringstream os;
  for (const auto& row : pm.rows) {
    for (std::size_t j = 0; j < row.size(); ++j) os << (j ? " " : "") << row[j];
    os << "\n";
  }
  os << "rank=" << pm.rank << "\n";
  return os.str();
}

}  // namespace floerlocal
