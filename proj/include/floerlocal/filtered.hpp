#pragma once

/**
 * @file filtered.hpp
 * @brief Z-graded, Z-filtered complexes over F2, vertically simplified bases
 * and characteristic multi-sets.
 *
 * A generator carries a Maslov grading M and a filtration level A. Arrows
 * lower M by exactly one and never raise A; the length of an arrow is its
 * A-drop.
 */

#include <algorithm>
#include <compare>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "floerlocal/complex.hpp"
#include "floerlocal/error.hpp"
#include "floerlocal/gf2.hpp"

namespace floerlocal {

struct FilteredGenerator {
  std::string name;
  int maslov = 0;
  int alexander = 0;
  friend bool operator==(const FilteredGenerator&, const FilteredGenerator&) = default;
};

class FilteredComplex {
 public:
  FilteredComplex() = default;
  explicit FilteredComplex(std::vector<FilteredGenerator> gens) : gens_(std::move(gens)) {
    d_.assign(gens_.size(), gf2::BitVec(gens_.size()));
  }

  std::size_t size() const { return gens_.size(); }
  const std::vector<FilteredGenerator>& generators() const { return gens_; }
  const FilteredGenerator& generator(std::size_t i) const { return gens_.at(i); }
  const gf2::BitVec& boundary(std::size_t i) const { return d_.at(i); }
  const std::vector<gf2::BitVec>& differential() const { return d_; }

  std::optional<std::size_t> index_of(std::string_view name) const {
    for (std::size_t i = 0; i < gens_.size(); ++i)
      if (gens_[i].name == name) return i;
    return std::nullopt;
  }

  std::size_t add_generator(std::string name, int maslov, int alexander) {
    gens_.push_back({std::move(name), maslov, alexander});
    const std::size_t n = gens_.size();
    std::vector<gf2::BitVec> grown(n, gf2::BitVec(n));
    for (std::size_t i = 0; i + 1 < n; ++i)
      for (auto j : d_[i].ones()) grown[i].set(j);
    d_ = std::move(grown);
    return n - 1;
  }

  bool has_arrow(std::size_t from, std::size_t to) const { return d_[from].get(to); }
  void toggle_arrow(std::size_t from, std::size_t to) { d_[from].flip(to); }
  void set_arrow(std::size_t from, std::size_t to, bool on = true) { d_[from].set(to, on); }

  std::size_t arrow_count() const {
    std::size_t k = 0;
    for (const auto& r : d_) k += r.count();
    return k;
  }

  friend bool operator==(const FilteredComplex&, const FilteredComplex&) = default;

 private:
  std::vector<FilteredGenerator> gens_;
  std::vector<gf2::BitVec> d_;
};

inline FilteredComplex direct_sum(const FilteredComplex& a, const FilteredComplex& b) {
  std::vector<FilteredGenerator> gens = a.generators();
  for (const auto& g : b.generators()) {
    if (a.index_of(g.name)) throw std::invalid_argument("direct_sum: generator name '" + g.name + "' clashes");
    gens.push_back(g);
  }
  FilteredComplex out(std::move(gens));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (auto j : a.boundary(i).ones()) out.set_arrow(i, j);
  for (std::size_t i = 0; i < b.size(); ++i)
    for (auto j : b.boundary(i).ones()) out.set_arrow(a.size() + i, a.size() + j);
  return out;
}

/// Problems that make a FilteredComplex unusable: wrong Maslov drop, an arrow
/// raising the filtration, or d^2 != 0. Empty means valid.
inline std::vector<std::string> filtered_problems(const FilteredComplex& f) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < f.size(); ++i) {
    for (auto j : f.boundary(i).ones()) {
      const auto& s = f.generator(i);
      const auto& t = f.generator(j);
      if (t.maslov != s.maslov - 1)
        out.push_back("arrow " + s.name + " -> " + t.name + " changes M by " + std::to_string(t.maslov - s.maslov) +
                      " (must be -1)");
      if (t.alexander > s.alexander)
        out.push_back("arrow " + s.name + " -> " + t.name + " raises the filtration level");
    }
  }
  for (std::size_t i = 0; i < f.size(); ++i) {
    gf2::BitVec sq(f.size());
    for (auto j : f.boundary(i).ones()) sq ^= f.boundary(j);
    if (sq.any()) out.push_back("d^2 != 0 on " + f.generator(i).name);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Vertically simplified bases

struct VerticalArrow {
  std::string source;  // label of the basis element (its leading generator)
  std::string target;
  int source_alexander = 0;
  int source_maslov = 0;
  int target_alexander = 0;
  int target_maslov = 0;
  int length = 0;
  gf2::BitVec source_vector;  // expansion in the original generators
  gf2::BitVec target_vector;
};

struct VerticalBasis {
  std::vector<VerticalArrow> arrows;
  std::vector<std::string> cycles;         // labels of unpaired basis elements
  std::vector<gf2::BitVec> cycle_vectors;  // their expansions
  std::vector<std::pair<int, int>> cycle_gradings;  // (A, M) of each cycle
};

/// Filtered Gaussian elimination. Repeatedly takes the shortest remaining
/// arrow x -> y (ties: target name, then source name), replaces every other
/// source w of y by w + x and y by y + z for every other target z of x, and
/// splits off the pair. Shortest-first keeps every change filtered. Each basis
/// element keeps the label and the (A, M) of the generator it started from.
inline VerticalBasis vertically_simplify(const FilteredComplex& f) {
  for (const auto& p : filtered_problems(f)) throw std::invalid_argument("vertically_simplify: " + p);
  const std::size_t n = f.size();
  std::vector<gf2::BitVec> d = f.differential();
  std::vector<gf2::BitVec> basis(n, gf2::BitVec(n));
  for (std::size_t i = 0; i < n; ++i) basis[i].set(i);
  std::vector<bool> alive(n, true);
  const auto& gens = f.generators();
  auto level = [&](std::size_t i) { return gens[i].alexander; };

  VerticalBasis out;
  for (;;) {
    bool found = false;
    std::size_t x = 0, y = 0;
    auto before = [&](std::size_t s, std::size_t t) {
      const int ls = level(s) - level(t), lb = level(x) - level(y);
      if (ls != lb) return ls < lb;
      if (gens[t].name != gens[y].name) return gens[t].name < gens[y].name;
      return gens[s].name < gens[x].name;
    };
    for (std::size_t s = 0; s < n; ++s) {
      if (!alive[s]) continue;
      for (auto t : d[s].ones()) {
        if (!alive[t]) continue;
        if (!found || before(s, t)) {
          x = s;
          y = t;
          found = true;
        }
      }
    }
    if (!found) break;

    // Clear column y except x: w -> w + x.
    for (std::size_t w = 0; w < n; ++w) {
      if (w == x || !alive[w] || !d[w].get(y)) continue;
      d[w] ^= d[x];
      for (std::size_t u = 0; u < n; ++u)
        if (d[u].get(w)) d[u].flip(x);
      basis[w] ^= basis[x];
    }
    // Clear row x except y: y -> y + z.
    for (auto z : d[x].ones()) {
      if (z == y) continue;
      d[y] ^= d[z];
      for (std::size_t u = 0; u < n; ++u)
        if (d[u].get(y)) d[u].flip(z);
      basis[y] ^= basis[z];
    }
    if (d[x].count() != 1 || d[y].any())
      throw AssertionFailure("vertically_simplify: pair did not split off");
    for (std::size_t u = 0; u < n; ++u)
      if (alive[u] && (u != x) && (d[u].get(y) || d[u].get(x)))
        throw AssertionFailure("vertically_simplify: pair did not split off");

    out.arrows.push_back({gens[x].name, gens[y].name, gens[x].alexander, gens[x].maslov, gens[y].alexander,
                          gens[y].maslov, level(x) - level(y), basis[x], basis[y]});
    alive[x] = alive[y] = false;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!alive[i]) continue;
    out.cycles.push_back(gens[i].name);
    out.cycle_vectors.push_back(basis[i]);
    out.cycle_gradings.push_back({gens[i].alexander, gens[i].maslov});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Characteristic multi-sets

struct ChTriple {
  int a = 0;
  int m = 0;
  int l = 0;
  friend auto operator<=>(const ChTriple&, const ChTriple&) = default;
};

class CharMultiset {
 public:
  void add(ChTriple t, int k = 1) {
    if (k == 0) return;
    if (k < 0) throw std::invalid_argument("CharMultiset::add: negative multiplicity");
    counts_[t] += k;
  }
  int count(ChTriple t) const {
    auto it = counts_.find(t);
    return it == counts_.end() ? 0 : it->second;
  }
  std::size_t total() const {
    std::size_t s = 0;
    for (const auto& [t, k] : counts_) s += static_cast<std::size_t>(k);
    return s;
  }
  bool empty() const { return counts_.empty(); }
  const std::map<ChTriple, int>& entries() const { return counts_; }

  /// Multiset containment: every triple occurs here at least as often as in `sub`.
  bool contains(const CharMultiset& sub) const {
    for (const auto& [t, k] : sub.counts_)
      if (count(t) < k) return false;
    return true;
  }
  friend CharMultiset operator+(CharMultiset a, const CharMultiset& b) {
    for (const auto& [t, k] : b.counts_) a.add(t, k);
    return a;
  }
  friend bool operator==(const CharMultiset&, const CharMultiset&) = default;

 private:
  std::map<ChTriple, int> counts_;
};

/// Report lines `ch <a> <m> <l> <multiplicity>`, sorted.
inline std::string format_ch(const CharMultiset& ch) {
  std::ostringstream os;
  for (const auto& [t, k] : ch.entries()) os << "ch " << t.a << " " << t.m << " " << t.l << " " << k << "\n";
  return os.str();
}

inline CharMultiset ch_from_arrows(const std::vector<VerticalArrow>& arrows) {
  CharMultiset ch;
  for (const auto& a : arrows)
    if (a.length >= 1) ch.add({a.target_alexander, a.target_maslov, a.length});
  return ch;
}

/// Ch read off a vertically simplified basis. Requires H_*(f) of rank one.
inline CharMultiset ch_from_basis(const FilteredComplex& f) {
  const auto vb = vertically_simplify(f);
  if (vb.cycles.size() != 1)
    throw std::invalid_argument("ch_from_basis: total homology has rank " + std::to_string(vb.cycles.size()) +
                                ", expected 1");
  return ch_from_arrows(vb.arrows);
}

namespace detail {

// dim ker of H_m(F_a/F_{a-1}) -> H_m(F_{a+l}/F_{a-1}).
inline std::size_t inclusion_kernel_dim(const FilteredComplex& f, int a, int m, int l) {
  const auto& gens = f.generators();
  std::vector<std::size_t> deg_m;      // degree m generators of the subquotient
  std::vector<std::size_t> deg_m1;     // degree m+1 generators of the subquotient
  std::unordered_map<std::size_t, std::size_t> pos;  // generator -> coordinate among deg_m
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const int A = gens[i].alexander;
    if (A < a || A > a + l) continue;
    if (gens[i].maslov == m) {
      pos[i] = deg_m.size();
      deg_m.push_back(i);
    } else if (gens[i].maslov == m + 1) {
      deg_m1.push_back(i);
    }
  }
  const std::size_t dim = deg_m.size();
  if (dim == 0) return 0;

  // Boundaries into degree m, projected away from F_{a-1}.
  auto project = [&](std::size_t src) {
    gf2::BitVec v(dim);
    for (auto t : f.boundary(src).ones()) {
      auto it = pos.find(t);
      if (it != pos.end()) v.set(it->second);
    }
    return v;
  };
  std::vector<gf2::BitVec> b_l, b_0;
  for (auto s : deg_m1) {
    b_l.push_back(project(s));
    if (gens[s].alexander == a) {
      gf2::BitVec v = project(s);
      for (std::size_t k = 0; k < dim; ++k)
        if (gens[deg_m[k]].alexander != a) v.set(k, false);
      b_0.push_back(std::move(v));
    }
  }

  // Cycles of F_a/F_{a-1} in degree m: kernel of d restricted to level a.
  std::vector<std::size_t> bottom;
  for (std::size_t k = 0; k < dim; ++k)
    if (gens[deg_m[k]].alexander == a) bottom.push_back(k);
  std::vector<std::size_t> targets;  // degree m-1 generators at level a
  std::unordered_map<std::size_t, std::size_t> tpos;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (gens[i].alexander == a && gens[i].maslov == m - 1) {
      tpos[i] = targets.size();
      targets.push_back(i);
    }
  }
  // Rows = target coordinates, columns = bottom generators.
  std::vector<gf2::BitVec> rows(targets.size(), gf2::BitVec(bottom.size()));
  for (std::size_t c = 0; c < bottom.size(); ++c) {
    for (auto t : f.boundary(deg_m[bottom[c]]).ones()) {
      auto it = tpos.find(t);
      if (it != tpos.end()) rows[it->second].set(c);
    }
  }
  std::vector<gf2::BitVec> z0;
  for (const auto& kv : gf2::nullspace(rows, bottom.size())) {
    gf2::BitVec v(dim);
    for (auto c : kv.ones()) v.set(bottom[c]);
    z0.push_back(std::move(v));
  }

  const std::size_t dz = z0.size();
  const std::size_t dbl = gf2::rank(b_l, dim);
  std::vector<gf2::BitVec> both = z0;
  both.insert(both.end(), b_l.begin(), b_l.end());
  const std::size_t dsum = gf2::rank(both, dim);
  const std::size_t intersection = dz + dbl - dsum;
  const std::size_t db0 = gf2::rank(b_0, dim);
  if (intersection < db0) throw AssertionFailure("inclusion_kernel_dim: boundaries not contained in cycles");
  return intersection - db0;
}

}  // namespace detail

/// Ch straight from the definition: multiplicity of (a, m, l) is
/// dim ker iota(a,m,l) - dim ker iota(a,m,l-1), with iota(a,m,0) injective.
inline CharMultiset ch_from_definition(const FilteredComplex& f) {
  CharMultiset ch;
  if (f.size() == 0) return ch;
  std::set<std::pair<int, int>> occupied;
  int max_a = f.generator(0).alexander;
  for (const auto& g : f.generators()) {
    occupied.insert({g.alexander, g.maslov});
    max_a = std::max(max_a, g.alexander);
  }
  for (const auto& [a, m] : occupied) {
    std::size_t prev = 0;
    for (int l = 1; a + l <= max_a; ++l) {
      const std::size_t k = detail::inclusion_kernel_dim(f, a, m, l);
      if (k < prev) throw AssertionFailure("ch_from_definition: kernel dimension decreased");
      ch.add({a, m, l}, static_cast<int>(k - prev));
      prev = k;
    }
  }
  return ch;
}

/// dim H_M of the underlying F2 complex, filtration ignored. Zero entries omitted.
inline std::map<int, int> total_homology(const FilteredComplex& f) {
  std::map<int, std::vector<std::size_t>> by_m;
  for (std::size_t i = 0; i < f.size(); ++i) by_m[f.generator(i).maslov].push_back(i);
  // rank of d restricted to sources in degree m
  auto rank_from = [&](int m) -> std::size_t {
    auto it = by_m.find(m);
    if (it == by_m.end()) return 0;
    std::vector<gf2::BitVec> rows;
    for (auto s : it->second) rows.push_back(f.boundary(s));
    return gf2::rank(rows, f.size());
  };
  std::map<int, int> out;
  for (const auto& [m, gens] : by_m) {
    const auto h = static_cast<long>(gens.size()) - static_cast<long>(rank_from(m)) - static_cast<long>(rank_from(m + 1));
    if (h != 0) out[m] = static_cast<int>(h);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Text format: `fgen <name> <M> <A>` and `farr <from> <to>`, `#` comments.

inline std::string format_filtered(const FilteredComplex& f) {
  std::ostringstream os;
  for (const auto& g : f.generators()) os << "fgen " << g.name << " " << g.maslov << " " << g.alexander << "\n";
  for (std::size_t i = 0; i < f.size(); ++i)
    for (auto j : f.boundary(i).ones()) os << "farr " << f.generator(i).name << " " << f.generator(j).name << "\n";
  return os.str();
}

inline FilteredComplex parse_filtered(std::istream& in) {
  FilteredComplex f;
  std::vector<std::tuple<std::string, std::string, int>> arrows;
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    const auto hash = raw.find('#');
    const auto toks = detail::split_ws(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (toks.empty()) continue;
    if (toks[0] == "fgen") {
      if (toks.size() != 4) throw ParseError("expected 'fgen <name> <M> <A>'", lineno);
      if (f.index_of(toks[1])) throw ParseError("duplicate generator '" + toks[1] + "'", lineno);
      f.add_generator(toks[1], detail::parse_int(toks[2], lineno), detail::parse_int(toks[3], lineno));
    } else if (toks[0] == "farr") {
      if (toks.size() != 3) throw ParseError("expected 'farr <from> <to>'", lineno);
      arrows.emplace_back(toks[1], toks[2], lineno);
    } else {
      throw ParseError("unknown directive '" + toks[0] + "'", lineno);
    }
  }
  for (const auto& [from, to, line] : arrows) {
    const auto s = f.index_of(from);
    const auto t = f.index_of(to);
    if (!s) throw ParseError("unknown generator '" + from + "'", line);
    if (!t) throw ParseError("unknown generator '" + to + "'", line);
    if (f.has_arrow(*s, *t)) throw ParseError("duplicate farr " + from + " -> " + to, line);
    f.set_arrow(*s, *t);
  }
  return f;
}

inline FilteredComplex parse_filtered(const std::string& text) {
  std::istringstream is(text);
  return parse_filtered(is);
}

}  // namespace floerlocal
