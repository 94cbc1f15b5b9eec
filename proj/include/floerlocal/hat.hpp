#pragma once

/**
 * @file hat.hpp
 * @brief From bigraded R-complexes to filtered F2 complexes: the hat flavor
 * and the two quotient towers used by the knot-like test.
 */

#include <stdexcept>
#include <string>

#include "floerlocal/complex.hpp"
#include "floerlocal/filtered.hpp"

namespace floerlocal {

namespace detail {

enum class Kill { U, V };

// Sets the killed variable to 0 and the other to 1. Generators keep the
// preserved grading as M; `level` supplies the filtration value.
template <typename LevelFn, typename DegreeFn>
FilteredComplex specialize(const BigradedComplex& c, Kill kill, DegreeFn degree, LevelFn level) {
  std::vector<FilteredGenerator> gens;
  gens.reserve(c.size());
  for (const auto& g : c.generators()) gens.push_back({g.name, degree(g.grading), level(g.grading)});
  FilteredComplex f(std::move(gens));
  for (std::size_t i = 0; i < c.size(); ++i) {
    for (std::size_t j = 0; j < c.size(); ++j) {
      bool bit = false;
      for (const auto& m : c.entry(i, j).terms()) {
        if (kill == Kill::U ? m.u == 0 : m.v == 0) bit = !bit;
      }
      if (bit) f.set_arrow(i, j);
    }
  }
  return f;
}

}  // namespace detail

/// The hat complex of an R-complex (U = 0, V = 1), M = gr_U and A = (gr_U - gr_V)/2.
/// With `allow_unreduced`, unit entries survive as length-0 arrows.
inline FilteredComplex hat_of(const BigradedComplex& c, bool allow_unreduced = false) {
  if (!allow_unreduced && !c.is_reduced()) throw std::invalid_argument("hat_of: complex is not reduced (reduce first)");
  for (const auto& g : c.generators())
    if (!g.grading.alexander_integral())
      throw std::invalid_argument("hat_of: generator '" + g.name + "' has odd gr_U - gr_V");
  return detail::specialize(
      c, detail::Kill::U, [](Bigrading g) { return g.gr_u; }, [](Bigrading g) { return g.alexander(); });
}

/// C/U with V inverted, as a filtered complex graded by gr_U. The filtration
/// value is gr_U - gr_V (twice the Alexander grading), so it needs no parity.
inline FilteredComplex u_quotient(const BigradedComplex& c) {
  return detail::specialize(
      c, detail::Kill::U, [](Bigrading g) { return g.gr_u; }, [](Bigrading g) { return g.gr_u - g.gr_v; });
}

/// C/V with U inverted, graded by gr_V, filtered by gr_V - gr_U.
inline FilteredComplex v_quotient(const BigradedComplex& c) {
  return detail::specialize(
      c, detail::Kill::V, [](Bigrading g) { return g.gr_v; }, [](Bigrading g) { return g.gr_v - g.gr_u; });
}

}  // namespace floerlocal
