#pragma once

// Shared fixtures for the test binaries: seeded randomness, generators of
// random complexes with known answers, and small brute-force oracles.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <map>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "floerlocal/floerlocal.hpp"

namespace fltest {

using namespace floerlocal;

inline std::uint64_t seed() {
  static const std::uint64_t s = [] {
    if (const char* env = std::getenv("FLOERLOCAL_SEED")) return static_cast<std::uint64_t>(std::strtoull(env, nullptr, 10));
    return static_cast<std::uint64_t>(20240611);
  }();
  return s;
}

/// Fresh generator per test so results do not depend on test order.
inline std::mt19937_64 make_rng(std::uint64_t salt) { return std::mt19937_64(seed() * 0x9e3779b97f4a7c15ULL + salt); }

inline int uniform(std::mt19937_64& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

inline StandardParams P(std::vector<int> v) { return StandardParams(std::move(v)); }
inline BigradedComplex S(std::vector<int> v) { return build_standard(StandardParams(std::move(v))).complex; }

// ---------------------------------------------------------------------------
// Ring oracle: multiply by expanding into a coefficient table.

inline RingElem oracle_mul(const RingElem& a, const RingElem& b) {
  std::map<std::pair<int, int>, int> coeff;
  for (const auto& x : a.terms())
    for (const auto& y : b.terms()) ++coeff[{x.u + y.u, x.v + y.v}];
  RingElem out(a.tag());
  for (const auto& [uv, k] : coeff) {
    if (k % 2 == 0) continue;
    if (a.tag() == RingTag::R && uv.first > 0 && uv.second > 0) continue;
    out += RingElem::monomial(a.tag(), {uv.first, uv.second});
  }
  return out;
}

inline RingElem random_elem(std::mt19937_64& rng, RingTag tag, int max_terms = 3, int max_exp = 3) {
  RingElem e(tag);
  const int k = uniform(rng, 0, max_terms);
  for (int i = 0; i < k; ++i) {
    Monomial m{uniform(rng, 0, max_exp), uniform(rng, 0, max_exp)};
    if (tag == RingTag::R && uniform(rng, 0, 1)) (uniform(rng, 0, 1) ? m.u : m.v) = 0;
    e += RingElem::monomial(tag, m);
  }
  return e;
}

// ---------------------------------------------------------------------------
// Filtered complexes with a planted vertically simplified basis. The planted
// arrows determine Ch directly; random filtered basis changes hide them.

struct PlantedFiltered {
  FilteredComplex complex;
  CharMultiset expected_ch;
  std::map<int, int> expected_homology;  // by Maslov grading
};

inline FilteredComplex filtered_basis_change(const FilteredComplex& f, std::mt19937_64& rng, int steps) {
  // Row-vector differential d; replace e_i by e_i + e_j (same M, A(e_j) <= A(e_i)).
  const std::size_t n = f.size();
  std::vector<gf2::BitVec> d = f.differential();
  for (int s = 0; s < steps && n >= 2; ++s) {
    const auto i = static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(n) - 1));
    const auto j = static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(n) - 1));
    if (i == j) continue;
    const auto& gi = f.generator(i);
    const auto& gj = f.generator(j);
    if (gi.maslov != gj.maslov || gj.alexander > gi.alexander) continue;
    d[i] ^= d[j];
    for (std::size_t u = 0; u < n; ++u)
      if (d[u].get(i)) d[u].flip(j);
  }
  FilteredComplex out(f.generators());
  for (std::size_t u = 0; u < n; ++u)
    for (auto v : d[u].ones()) out.set_arrow(u, v);
  return out;
}

inline PlantedFiltered planted_filtered(std::mt19937_64& rng, int max_gens, bool single_cycle = true) {
  PlantedFiltered p;
  std::vector<FilteredGenerator> gens;
  const int pairs = uniform(rng, 0, (max_gens - 1) / 2);
  const int cycles = single_cycle ? 1 : uniform(rng, 0, 2);
  std::vector<std::pair<std::size_t, std::size_t>> arrows;
  for (int k = 0; k < cycles; ++k) {
    const int m = uniform(rng, -2, 2);
    gens.push_back({"z" + std::to_string(k), m, uniform(rng, -3, 3)});
    ++p.expected_homology[m];
  }
  for (int k = 0; k < pairs; ++k) {
    const int m = uniform(rng, -3, 3);
    const int a = uniform(rng, -3, 3);
    const int len = uniform(rng, 1, 3);
    gens.push_back({"s" + std::to_string(k), m, a});
    gens.push_back({"t" + std::to_string(k), m - 1, a - len});
    arrows.push_back({gens.size() - 2, gens.size() - 1});
    p.expected_ch.add({a - len, m - 1, len});
  }
  std::shuffle(gens.begin(), gens.end(), rng);
  FilteredComplex f(gens);
  for (int k = 0; k < pairs; ++k)
    f.set_arrow(*f.index_of("s" + std::to_string(k)), *f.index_of("t" + std::to_string(k)));
  p.complex = filtered_basis_change(f, rng, 6 * static_cast<int>(gens.size()));
  return p;
}

// ---------------------------------------------------------------------------
// Random knot-like R-complexes: standard complexes and their tensor products,
// plus acyclic summands, hidden by random homogeneous basis changes.

/// A box: d x = U y + V z, d y = V w, d z = U w. Hat homology vanishes and
/// both towers are torsion.
inline BigradedComplex box(const std::string& prefix, Bigrading top) {
  BigradedComplex c(RingTag::R, {{prefix + "x", top},
                                 {prefix + "y", top + Bigrading{1, -1}},
                                 {prefix + "z", top + Bigrading{-1, 1}},
                                 {prefix + "w", top}});
  c.add_arrow(0, 1, {1, 0});
  c.add_arrow(0, 2, {0, 1});
  c.add_arrow(1, 3, {0, 1});
  c.add_arrow(2, 3, {1, 0});
  return c;
}

/// A cancelling pair d a = b.
inline BigradedComplex unit_pair(const std::string& prefix, Bigrading top) {
  BigradedComplex c(RingTag::R, {{prefix + "a", top}, {prefix + "b", top + Bigrading{-1, -1}}});
  c.add_arrow(0, 1, {0, 0});
  return c;
}

inline Bigrading random_even_grading(std::mt19937_64& rng) {
  const int a = uniform(rng, -3, 3);
  const int m = uniform(rng, -4, 2);
  return {m, m - 2 * a};
}

inline BigradedComplex scramble(BigradedComplex c, std::mt19937_64& rng, int steps) {
  const int n = static_cast<int>(c.size());
  for (int s = 0; s < steps && n >= 2; ++s) {
    const auto g = static_cast<std::size_t>(uniform(rng, 0, n - 1));
    const auto h = static_cast<std::size_t>(uniform(rng, 0, n - 1));
    if (g == h) continue;
    auto m = map_monomial(c.generator(g).grading, c.generator(h).grading);
    if (!m || m->is_mixed()) continue;
    c = elementary_basis_change(c, g, h, *m);
  }
  return c;
}

inline StandardParams random_params(std::mt19937_64& rng, int max_half, int max_abs, bool symmetric) {
  const int half = uniform(rng, 0, max_half);
  std::vector<int> e;
  for (int i = 0; i < (symmetric ? half : 2 * half); ++i) {
    int v = uniform(rng, 1, max_abs);
    e.push_back(uniform(rng, 0, 1) ? v : -v);
  }
  if (symmetric)
    for (int i = half - 1; i >= 0; --i) e.push_back(-e[static_cast<std::size_t>(i)]);
  return StandardParams(e);
}

struct RandomKnotLike {
  BigradedComplex complex;
  BigradedComplex core;  // the standard or tensor part before summands were added
  int boxes = 0;
  int pairs = 0;
};

inline RandomKnotLike random_knotlike(std::mt19937_64& rng, int max_gens, bool allow_unit_pairs) {
  RandomKnotLike r;
  if (uniform(rng, 0, 2) == 0) {
    const auto p = random_params(rng, 1, 2, false);
    const auto q = random_params(rng, 1, 2, false);
    r.core = reduce(tensor(build_standard(p).complex, build_standard(q).complex));
  } else {
    const int max_half = std::max(0, std::min(3, (max_gens - 1) / 2));
    r.core = build_standard(random_params(rng, max_half, 3, uniform(rng, 0, 1) == 0)).complex;
  }
  r.complex = r.core;
  int k = 0;
  while (true) {
    const int room = max_gens - static_cast<int>(r.complex.size());
    const int choice = uniform(rng, 0, 3);
    if (choice == 0 && room >= 4) {
      r.complex = direct_sum(r.complex, box("b" + std::to_string(k++) + "_", random_even_grading(rng)));
      ++r.boxes;
    } else if (choice == 1 && allow_unit_pairs && room >= 2) {
      r.complex = direct_sum(r.complex, unit_pair("p" + std::to_string(k++) + "_", random_even_grading(rng)));
      ++r.pairs;
    } else {
      break;
    }
  }
  r.complex = scramble(r.complex, rng, 4 * static_cast<int>(r.complex.size()));
  return r;
}

// ---------------------------------------------------------------------------
// Local maps by exhaustive enumeration (tiny complexes only).

inline bool brute_force_local_map_exists(const BigradedComplex& a, const BigradedComplex& b, int max_unknowns = 22) {
  std::vector<std::pair<std::size_t, std::size_t>> slots;
  std::vector<Monomial> mons;
  for (std::size_t x = 0; x < a.size(); ++x)
    for (std::size_t y = 0; y < b.size(); ++y) {
      auto m = map_monomial(a.generator(x).grading, b.generator(y).grading);
      if (!m || m->is_mixed()) continue;
      slots.push_back({x, y});
      mons.push_back(*m);
    }
  if (static_cast<int>(slots.size()) > max_unknowns) throw std::runtime_error("brute force too large");
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << slots.size()); ++mask) {
    ChainMap f(a.size(), b.size());
    for (std::size_t k = 0; k < slots.size(); ++k)
      if (mask >> k & 1) f.set_entry(slots[k].first, slots[k].second, RingElem::monomial(RingTag::R, mons[k]));
    if (is_local_map(a, b, f)) return true;
  }
  return false;
}

}  // namespace fltest
