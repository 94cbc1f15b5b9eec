#pragma once

/**
 * @file obstructions.hpp
 * @brief Prefix patterns of standard complexes that no knot realizes, and a
 * bounded search for F2[U,V] complexes lifting a given prefix.
 *
 * The lifting search places the prefix generators x_0..x_k with their
 * standard arrows, allows every other arrow touching them only with
 * UV-divisible coefficients, adds up to `extra_gens` auxiliary generators and
 * asks for d^2 = 0. Entries are single monomials fixed by the gradings, so the
 * unknowns are bits and d^2 = 0 is a system of quadratic equations over F2.
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
#include "floerlocal/parallel.hpp"
#include "floerlocal/standard.hpp"

namespace floerlocal {

struct ObstructionRule {
  std::string pattern;  // e.g. "(1,-n,-1,-l,...)"
  int min_length = 0;   // entries the pattern inspects
};

/// The first obstruction pattern matching the start of `prefix`, if any.
inline std::optional<ObstructionRule> matching_obstruction(const std::vector<int>& p) {
  for (int b : p)
    if (b == 0) throw std::invalid_argument("not_realizable: entries must be nonzero");
  auto at = [&](std::size_t i) { return p[i - 1]; };
  const std::size_t k = p.size();
  if (k < 2 || at(1) != 1) return std::nullopt;
  if (at(2) > 0) return ObstructionRule{"(1,positive,...)", 2};
  if (k >= 3 && at(2) == -1 && at(3) == -1) return ObstructionRule{"(1,-1,-1,...)", 3};
  if (k >= 4 && at(2) == -1 && at(3) == 1 && at(4) == 1) return ObstructionRule{"(1,-1,1,1,...)", 4};
  if (k >= 4 && at(3) == -1 && at(4) < 0) return ObstructionRule{"(1,-n,-1,-l,...)", 4};
  if (k >= 5 && at(3) == -1 && at(4) == 1 && at(5) == 1) return ObstructionRule{"(1,-n,-1,1,1,...)", 5};
  if (k >= 4 && at(3) == 1 && at(4) == 1) return ObstructionRule{"(1,-n,1,1,...)", 4};
  if (k >= 5 && at(3) == 1 && at(4) == -1 && at(5) == -1) return ObstructionRule{"(1,-n,1,-1,-1,...)", 5};
  return std::nullopt;
}

inline bool not_realizable(const std::vector<int>& prefix) { return matching_obstruction(prefix).has_value(); }

// ---------------------------------------------------------------------------
// Lifting search

enum class LiftVerdict { Exists, Refuted };

inline std::string_view to_string(LiftVerdict v) { return v == LiftVerdict::Exists ? "exists" : "refuted"; }

struct LiftResult {
  LiftVerdict verdict = LiftVerdict::Refuted;
  bool refuted_by_core = false;      // the prefix-only subsystem is already inconsistent
  std::size_t configurations = 0;    // auxiliary grading configurations examined
  std::uint64_t nodes = 0;           // search nodes over all configurations
  std::optional<BigradedComplex> witness;
};

struct LiftOptions {
  int extra_gens = 2;
  int exp_bound = 4;
  bool use_core = true;  // try the prefix-only subsystem before the full search
  int jobs = 1;
};

namespace detail {

inline std::vector<Bigrading> prefix_gradings(const std::vector<int>& prefix) {
  std::vector<Bigrading> gr(prefix.size() + 1);
  for (std::size_t i = 1; i <= prefix.size(); ++i) {
    const int b = prefix[i - 1];
    const int k = std::abs(b);
    const Bigrading step = (i % 2 == 1) ? Bigrading{2 * k - 1, -1} : Bigrading{-1, 2 * k - 1};
    gr[i] = b < 0 ? gr[i - 1] + step : gr[i - 1] - step;
  }
  return gr;
}

// Quadratic F2 system: each equation says the parity of its terms is 0. A
// term is a product of at most two variables; variable -1 stands for 1.
struct QuadSystem {
  struct Term {
    int a = -1;
    int b = -1;
  };
  int variables = 0;
  std::vector<std::vector<Term>> equations;
};

class QuadSolver {
 public:
  explicit QuadSolver(const QuadSystem& sys) : sys_(sys), value_(static_cast<std::size_t>(sys.variables), 0) {
    closing_.resize(static_cast<std::size_t>(sys.variables) + 1);
    for (std::size_t e = 0; e < sys.equations.size(); ++e) {
      int last = -1;
      for (const auto& t : sys.equations[e]) last = std::max({last, t.a, t.b});
      closing_[static_cast<std::size_t>(last + 1)].push_back(e);
    }
  }

  std::optional<std::vector<char>> solve() {
    if (!consistent(0)) return std::nullopt;
    if (dfs(0)) return value_;
    return std::nullopt;
  }
  std::uint64_t nodes() const { return nodes_; }

 private:
  bool lit(int v) const { return v < 0 || value_[static_cast<std::size_t>(v)]; }
  // Equations whose last variable is `slot - 1` (slot 0: constant equations).
  bool consistent(std::size_t slot) const {
    for (auto e : closing_[slot]) {
      bool parity = false;
      for (const auto& t : sys_.equations[e])
        if (lit(t.a) && lit(t.b)) parity = !parity;
      if (parity) return false;
    }
    return true;
  }
  bool dfs(int v) {
    if (v == sys_.variables) return true;
    for (char bit : {0, 1}) {
      ++nodes_;
      value_[static_cast<std::size_t>(v)] = bit;
      if (consistent(static_cast<std::size_t>(v) + 1) && dfs(v + 1)) return true;
    }
    value_[static_cast<std::size_t>(v)] = 0;
    return false;
  }

  const QuadSystem& sys_;
  std::vector<char> value_;
  std::vector<std::vector<std::size_t>> closing_;
  std::uint64_t nodes_ = 0;
};

struct LiftLayout {
  std::vector<Bigrading> gradings;  // prefix generators first
  std::size_t prefix_count = 0;
  std::vector<std::pair<std::size_t, std::size_t>> prescribed;
  int exp_bound = 0;
};

// Admissible monomial for an arrow p -> q that is not prescribed.
inline std::optional<Monomial> free_arrow(const LiftLayout& lay, std::size_t p, std::size_t q) {
  if (p == q) return std::nullopt;
  auto m = arrow_monomial(lay.gradings[p], lay.gradings[q]);
  if (!m || m->u > lay.exp_bound || m->v > lay.exp_bound) return std::nullopt;
  const bool touches_prefix = p < lay.prefix_count || q < lay.prefix_count;
  if (touches_prefix && (m->u < 1 || m->v < 1)) return std::nullopt;
  return m;
}

struct LiftProblem {
  QuadSystem system;
  std::vector<std::pair<std::size_t, std::size_t>> variable_arrows;
};

// `core`: only prefix generators, and only the equations that auxiliary
// generators cannot reach (path monomial U^aV^b with a < 2 or b < 2).
inline LiftProblem build_lift_problem(const LiftLayout& lay, bool core) {
  const std::size_t n = core ? lay.prefix_count : lay.gradings.size();
  std::vector<std::vector<int>> arrow(n, std::vector<int>(n, -2));  // -2 absent, -1 fixed, else variable
  for (const auto& [p, q] : lay.prescribed) arrow[p][q] = -1;
  LiftProblem prob;
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q < n; ++q) {
      if (arrow[p][q] == -1 || !free_arrow(lay, p, q)) continue;
      arrow[p][q] = prob.system.variables++;
      prob.variable_arrows.push_back({p, q});
    }
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t z = 0; z < n; ++z) {
      const Bigrading d = lay.gradings[z] - lay.gradings[x];
      if (d.gr_u % 2 != 0 || d.gr_v % 2 != 0 || d.gr_u < -2 || d.gr_v < -2) continue;
      if (core && d.gr_u >= 2 && d.gr_v >= 2) continue;
      std::vector<QuadSystem::Term> terms;
      for (std::size_t w = 0; w < n; ++w)
        if (arrow[x][w] != -2 && arrow[w][z] != -2) terms.push_back({arrow[x][w], arrow[w][z]});
      if (!terms.empty()) prob.system.equations.push_back(std::move(terms));
    }
  return prob;
}

inline BigradedComplex lift_witness(const LiftLayout& lay, const LiftProblem& prob, const std::vector<char>& values) {
  std::vector<Generator> gens;
  for (std::size_t i = 0; i < lay.gradings.size(); ++i) {
    const std::string name = i < lay.prefix_count ? "x" + std::to_string(i) : "w" + std::to_string(i - lay.prefix_count + 1);
    gens.push_back({name, lay.gradings[i]});
  }
  BigradedComplex c(RingTag::UV, std::move(gens));
  for (const auto& [p, q] : lay.prescribed) c.add_arrow(p, q, *arrow_monomial(lay.gradings[p], lay.gradings[q]));
  for (std::size_t k = 0; k < prob.variable_arrows.size(); ++k) {
    if (!values[k]) continue;
    const auto [p, q] = prob.variable_arrows[k];
    c.add_arrow(p, q, *arrow_monomial(lay.gradings[p], lay.gradings[q]));
  }
  return c;
}

// Gradings g admitting an arrow to or from `from` under the bounds.
inline std::set<Bigrading> neighbour_gradings(Bigrading from, int lo, int hi) {
  std::set<Bigrading> out;
  for (int a = lo; a <= hi; ++a)
    for (int b = lo; b <= hi; ++b) {
      const Bigrading step{2 * a - 1, 2 * b - 1};
      out.insert(from + step);
      out.insert(from - step);
    }
  return out;
}

// Every auxiliary generator needs a possible incoming and outgoing arrow,
// otherwise deleting it leaves a smaller solution.
inline bool aux_useful(const LiftLayout& lay) {
  for (std::size_t w = lay.prefix_count; w < lay.gradings.size(); ++w) {
    bool in = false, out = false;
    for (std::size_t p = 0; p < lay.gradings.size(); ++p) {
      if (free_arrow(lay, p, w)) in = true;
      if (free_arrow(lay, w, p)) out = true;
    }
    if (!in || !out) return false;
  }
  return true;
}

}  // namespace detail

/// Searches for a lift of `prefix` (see file comment). Deterministic for any
/// job count: configurations are scanned in a fixed order and the first
/// success by index wins.
inline LiftResult lifting_oracle(const std::vector<int>& prefix, const LiftOptions& opt = {}) {
  for (int b : prefix)
    if (b == 0) throw std::invalid_argument("lifting_oracle: entries must be nonzero");
  if (opt.extra_gens < 0 || opt.extra_gens > 2) throw std::invalid_argument("lifting_oracle: extra_gens must be 0, 1 or 2");
  if (opt.exp_bound < 1) throw std::invalid_argument("lifting_oracle: exp_bound must be positive");

  detail::LiftLayout base;
  base.gradings = detail::prefix_gradings(prefix);
  base.prefix_count = base.gradings.size();
  base.exp_bound = opt.exp_bound;
  for (std::size_t i = 1; i <= prefix.size(); ++i)
    base.prescribed.push_back(prefix[i - 1] < 0 ? std::pair{i - 1, i} : std::pair{i, i - 1});

  LiftResult res;
  if (opt.use_core) {
    auto core = detail::build_lift_problem(base, true);
    detail::QuadSolver solver(core.system);
    const bool sat = solver.solve().has_value();
    res.nodes += solver.nodes();
    if (!sat) {
      res.refuted_by_core = true;
      res.verdict = LiftVerdict::Refuted;
      return res;
    }
  }

  // Candidate auxiliary gradings.
  std::set<Bigrading> near_prefix;
  for (const auto& g : base.gradings) {
    auto s = detail::neighbour_gradings(g, 1, opt.exp_bound);
    near_prefix.insert(s.begin(), s.end());
  }
  std::vector<std::vector<Bigrading>> configs;
  configs.push_back({});
  if (opt.extra_gens >= 1)
    for (const auto& g : near_prefix) configs.push_back({g});
  if (opt.extra_gens >= 2)
    for (const auto& g1 : near_prefix) {
      for (const auto& g2 : near_prefix)
        if (!(g2 < g1)) configs.push_back({g1, g2});
      for (const auto& g2 : detail::neighbour_gradings(g1, 0, opt.exp_bound))
        if (!near_prefix.count(g2)) configs.push_back({g1, g2});
    }

  std::vector<std::uint64_t> nodes(configs.size(), 0);
  std::vector<char> examined(configs.size(), 0);
  auto layout_of = [&](std::size_t i) {
    auto lay = base;
    for (const auto& g : configs[i]) lay.gradings.push_back(g);
    return lay;
  };
  auto hit = parallel_find_first(configs.size(), opt.jobs, [&](std::size_t i) {
    const auto lay = layout_of(i);
    if (!detail::aux_useful(lay)) return false;
    examined[i] = 1;
    auto prob = detail::build_lift_problem(lay, false);
    detail::QuadSolver solver(prob.system);
    const bool sat = solver.solve().has_value();
    nodes[i] = solver.nodes();
    return sat;
  });
  const std::size_t limit = hit ? *hit + 1 : configs.size();
  for (std::size_t i = 0; i < limit; ++i) {
    res.configurations += examined[i];
    res.nodes += nodes[i];
  }
  if (hit) {
    const auto lay = layout_of(*hit);
    auto prob = detail::build_lift_problem(lay, false);
    detail::QuadSolver solver(prob.system);
    res.verdict = LiftVerdict::Exists;
    res.witness = detail::lift_witness(lay, prob, *solver.solve());
  } else {
    res.verdict = LiftVerdict::Refuted;
  }
  return res;
}

inline std::string format_obstruction_line(const std::vector<int>& prefix, const LiftOptions& opt,
                                           const LiftResult& r) {
  std::ostringstream os;
  os << "obstruction (";
  for (std::size_t i = 0; i < prefix.size(); ++i) os << (i ? "," : "") << prefix[i];
  os << ") predicate=" << (not_realizable(prefix) ? "true" : "false") << " oracle=" << to_string(r.verdict)
     << " bounds=" << opt.extra_gens << "," << opt.exp_bound;
  return os.str();
}

}  // namespace floerlocal
