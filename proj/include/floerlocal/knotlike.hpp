#pragma once

/**
 * @file knotlike.hpp
 * @brief Module structure of H_*(C/U) over F2[V] and of H_*(C/V) over F2[U].
 *
 * For complexes whose entries are monomials, Smith normal form over the
 * graded PID F2[t] is filtered Gaussian elimination: pivoting on the
 * smallest remaining power always divides the rest of its row and column.
 * Each split-off pair x -> t^k y is a summand F2[t]/t^k (acyclic when k = 0)
 * and every unpaired basis element is a free summand.
 */

#include <stdexcept>
#include <string>
#include <vector>

#include "floerlocal/complex.hpp"
#include "floerlocal/filtered.hpp"
#include "floerlocal/hat.hpp"

namespace floerlocal {

struct Tower {
  std::vector<int> free_degrees;    // preserved grading of each free generator
  std::vector<int> torsion_orders;  // k for each F2[t]/t^k, k >= 1
  // Meaningful when free_degrees.size() == 1:
  int degree = 0;
  int level = 0;      // filtration value of the generator (twice its Alexander grading, up to sign)
  gf2::BitVec cycle;  // generator, as a combination of the complex's generators

  std::size_t free_rank() const { return free_degrees.size(); }
};

inline Tower tower_of(const FilteredComplex& q) {
  const auto vb = vertically_simplify(q);
  Tower t;
  for (const auto& a : vb.arrows)
    if (a.length > 0) t.torsion_orders.push_back(a.length / 2);
  for (std::size_t k = 0; k < vb.cycles.size(); ++k) t.free_degrees.push_back(vb.cycle_gradings[k].second);
  if (vb.cycles.size() == 1) {
    t.degree = vb.cycle_gradings[0].second;
    t.level = vb.cycle_gradings[0].first;
    t.cycle = vb.cycle_vectors[0];
  }
  return t;
}

/// H_*(C/U) over F2[V].
inline Tower u_tower(const BigradedComplex& c) { return tower_of(u_quotient(c)); }
/// H_*(C/V) over F2[U].
inline Tower v_tower(const BigradedComplex& c) { return tower_of(v_quotient(c)); }

struct KnotLikeReport {
  bool knot_like = false;
  Tower u;
  Tower v;
  std::string reason;
};

inline KnotLikeReport knot_like_report(const BigradedComplex& c) {
  if (c.tag() != RingTag::R) throw std::invalid_argument("is_knot_like: complex is not over R");
  KnotLikeReport r;
  r.u = u_tower(c);
  r.v = v_tower(c);
  if (r.u.free_rank() != 1) {
    r.reason = "H(C/U)/V-torsion has rank " + std::to_string(r.u.free_rank());
  } else if (r.u.degree != 0) {
    r.reason = "H(C/U)/V-torsion is supported in gr_U = " + std::to_string(r.u.degree);
  } else if (r.v.free_rank() != 1) {
    r.reason = "H(C/V)/U-torsion has rank " + std::to_string(r.v.free_rank());
  } else if (r.v.degree != 0) {
    r.reason = "H(C/V)/U-torsion is supported in gr_V = " + std::to_string(r.v.degree);
  } else {
    r.knot_like = true;
  }
  return r;
}

inline bool is_knot_like(const BigradedComplex& c) { return knot_like_report(c).knot_like; }

}  // namespace floerlocal
