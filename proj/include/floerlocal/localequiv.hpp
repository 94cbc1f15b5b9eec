#pragma once

/**
 * @file localequiv.hpp
 * @brief Local maps between knot-like R-complexes and standard representatives.
 *
 * A local map is a grading-preserving chain map inducing isomorphisms on the
 * free parts of H(C/U) and H(C/V). With the coefficients of every admissible
 * map entry as unknowns over F2, the chain-map condition is a linear system;
 * each tower condition is one more linear equation once the tower levels of
 * source and target agree.
 */

#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "floerlocal/complex.hpp"
#include "floerlocal/gf2.hpp"
#include "floerlocal/knotlike.hpp"
#include "floerlocal/standard.hpp"

namespace floerlocal {

/// f(x) = sum_y entry(x, y) y.
class ChainMap {
 public:
  ChainMap(std::size_t source_size, std::size_t target_size)
      : rows_(source_size), cols_(target_size), m_(source_size * target_size, RingElem(RingTag::R)) {}

  std::size_t source_size() const { return rows_; }
  std::size_t target_size() const { return cols_; }
  const RingElem& entry(std::size_t x, std::size_t y) const { return m_[x * cols_ + y]; }
  void set_entry(std::size_t x, std::size_t y, RingElem e) { m_[x * cols_ + y] = std::move(e); }

  friend bool operator==(const ChainMap&, const ChainMap&) = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<RingElem> m_;
};

inline ChainMap identity_map(const BigradedComplex& c) {
  ChainMap f(c.size(), c.size());
  for (std::size_t i = 0; i < c.size(); ++i) f.set_entry(i, i, RingElem::one(RingTag::R));
  return f;
}

/// g after f.
inline ChainMap compose(const ChainMap& f, const ChainMap& g) {
  if (f.target_size() != g.source_size()) throw std::invalid_argument("compose: size mismatch");
  ChainMap out(f.source_size(), g.target_size());
  for (std::size_t x = 0; x < f.source_size(); ++x)
    for (std::size_t z = 0; z < g.target_size(); ++z) {
      RingElem e(RingTag::R);
      for (std::size_t y = 0; y < f.target_size(); ++y)
        if (!f.entry(x, y).is_zero() && !g.entry(y, z).is_zero()) e += f.entry(x, y) * g.entry(y, z);
      out.set_entry(x, z, std::move(e));
    }
  return out;
}

inline std::string format_map(const ChainMap& f, const BigradedComplex& a, const BigradedComplex& b) {
  std::ostringstream os;
  for (std::size_t x = 0; x < f.source_size(); ++x)
    for (std::size_t y = 0; y < f.target_size(); ++y)
      if (!f.entry(x, y).is_zero())
        os << "map " << a.generator(x).name << " " << b.generator(y).name << " " << to_string(f.entry(x, y)) << "\n";
  return os.str();
}

namespace detail {

// Precomputed tower data of a knot-like complex.
struct TowerData {
  const BigradedComplex* complex = nullptr;
  KnotLikeReport report;
  gf2::BitVec cocycle_u;  // evaluates to 1 on the C/U tower class, 0 on boundaries
  gf2::BitVec cocycle_v;
};

inline gf2::BitVec tower_cocycle(const FilteredComplex& q, const gf2::BitVec& cycle) {
  std::vector<gf2::BitVec> rows;
  std::vector<bool> rhs;
  for (std::size_t w = 0; w < q.size(); ++w) {
    rows.push_back(q.boundary(w));
    rhs.push_back(false);
  }
  rows.push_back(cycle);
  rhs.push_back(true);
  auto phi = gf2::solve(rows, rhs, q.size());
  if (!phi) throw AssertionFailure("tower cycle is a boundary");
  return *phi;
}

inline TowerData tower_data(const BigradedComplex& c) {
  TowerData t;
  t.complex = &c;
  t.report = knot_like_report(c);
  if (!t.report.knot_like) throw std::invalid_argument("complex is not knot-like: " + t.report.reason);
  t.cocycle_u = tower_cocycle(u_quotient(c), t.report.u.cycle);
  t.cocycle_v = tower_cocycle(v_quotient(c), t.report.v.cycle);
  return t;
}

inline bool towers_compatible(const TowerData& a, const TowerData& b) {
  return a.report.u.level == b.report.u.level && a.report.v.level == b.report.v.level;
}

inline std::optional<ChainMap> find_local_map(const TowerData& ta, const TowerData& tb) {
  if (!towers_compatible(ta, tb)) return std::nullopt;
  const BigradedComplex& a = *ta.complex;
  const BigradedComplex& b = *tb.complex;

  struct Unknown {
    std::size_t x, y;
    Monomial m;
  };
  std::vector<Unknown> unknowns;
  std::vector<std::vector<long>> index(a.size(), std::vector<long>(b.size(), -1));
  for (std::size_t x = 0; x < a.size(); ++x)
    for (std::size_t y = 0; y < b.size(); ++y) {
      auto m = map_monomial(a.generator(x).grading, b.generator(y).grading);
      if (!m || m->is_mixed()) continue;
      index[x][y] = static_cast<long>(unknowns.size());
      unknowns.push_back({x, y, *m});
    }
  const std::size_t nu = unknowns.size();

  // Coefficient of monomial m on z in (d_a f + f d_b)(x).
  std::map<std::tuple<std::size_t, std::size_t, Monomial>, gf2::BitVec> eqs;
  auto touch = [&](std::size_t x, std::size_t z, Monomial m, std::size_t k) {
    if (m.is_mixed()) return;
    auto [it, fresh] = eqs.try_emplace({x, z, m}, gf2::BitVec(nu));
    it->second.flip(k);
  };
  for (std::size_t k = 0; k < nu; ++k) {
    const auto& uk = unknowns[k];
    // f d_b: x -> m y -> m t z.
    for (std::size_t z = 0; z < b.size(); ++z)
      for (const auto& t : b.entry(uk.y, z).terms()) touch(uk.x, z, uk.m * t, k);
    // d_a f: w -> t x -> t m y, for every w with x in its boundary.
    for (std::size_t w = 0; w < a.size(); ++w)
      for (const auto& t : a.entry(w, uk.x).terms()) touch(w, uk.y, t * uk.m, k);
  }
  std::vector<gf2::BitVec> rows;
  std::vector<bool> rhs;
  for (auto& [key, row] : eqs)
    if (row.any()) {
      rows.push_back(std::move(row));
      rhs.push_back(false);
    }
  gf2::BitVec lu(nu), lv(nu);
  for (std::size_t k = 0; k < nu; ++k) {
    const auto& uk = unknowns[k];
    if (uk.m.u == 0 && ta.report.u.cycle.get(uk.x) && tb.cocycle_u.get(uk.y)) lu.set(k);
    if (uk.m.v == 0 && ta.report.v.cycle.get(uk.x) && tb.cocycle_v.get(uk.y)) lv.set(k);
  }
  rows.push_back(lu);
  rhs.push_back(true);
  rows.push_back(lv);
  rhs.push_back(true);
  auto sol = gf2::solve(rows, rhs, nu);
  if (!sol) return std::nullopt;
  ChainMap f(a.size(), b.size());
  for (auto k : sol->ones()) f.set_entry(unknowns[k].x, unknowns[k].y, RingElem::monomial(RingTag::R, unknowns[k].m));
  return f;
}

}  // namespace detail

/// A local map a -> b, if one exists.
inline std::optional<ChainMap> find_local_map(const BigradedComplex& a, const BigradedComplex& b) {
  const auto ta = detail::tower_data(a);
  const auto tb = detail::tower_data(b);
  return detail::find_local_map(ta, tb);
}

/// Checks a candidate map directly: gradings, d f = f d over R, and that the
/// localized tower classes map to nonzero classes at matching levels.
inline bool is_local_map(const BigradedComplex& a, const BigradedComplex& b, const ChainMap& f) {
  if (f.source_size() != a.size() || f.target_size() != b.size()) return false;
  for (std::size_t x = 0; x < a.size(); ++x)
    for (std::size_t y = 0; y < b.size(); ++y) {
      const auto& e = f.entry(x, y);
      if (e.is_zero()) continue;
      auto m = map_monomial(a.generator(x).grading, b.generator(y).grading);
      if (!m || e.terms().size() != 1 || e.terms().front() != *m) return false;
    }
  for (std::size_t x = 0; x < a.size(); ++x)
    for (std::size_t z = 0; z < b.size(); ++z) {
      RingElem lhs(RingTag::R), rhs(RingTag::R);
      for (std::size_t y = 0; y < b.size(); ++y) lhs += f.entry(x, y) * b.entry(y, z);
      for (std::size_t w = 0; w < a.size(); ++w) rhs += a.entry(x, w) * f.entry(w, z);
      if (lhs != rhs) return false;
    }
  const auto ra = knot_like_report(a);
  const auto rb = knot_like_report(b);
  if (!ra.knot_like || !rb.knot_like) return false;
  if (ra.u.level != rb.u.level || ra.v.level != rb.v.level) return false;

  auto tower_nonzero = [&](const FilteredComplex& qb, const gf2::BitVec& cycle, bool kill_u) {
    gf2::BitVec image(b.size());
    for (auto x : cycle.ones())
      for (std::size_t y = 0; y < b.size(); ++y)
        for (const auto& t : f.entry(x, y).terms())
          if (kill_u ? t.u == 0 : t.v == 0) image.flip(y);
    gf2::EchelonBasis boundaries(b.size());
    for (std::size_t w = 0; w < b.size(); ++w) boundaries.insert(qb.boundary(w));
    return image.any() && !boundaries.contains(image);
  };
  return tower_nonzero(u_quotient(b), ra.u.cycle, true) && tower_nonzero(v_quotient(b), ra.v.cycle, false);
}

inline bool is_locally_equivalent(const BigradedComplex& a, const BigradedComplex& b) {
  const auto ta = detail::tower_data(a);
  const auto tb = detail::tower_data(b);
  return detail::find_local_map(ta, tb).has_value() && detail::find_local_map(tb, ta).has_value();
}

/// Calls `visit` on every parameter sequence of even length <= max_len with
/// entries in [-max_abs, max_abs] \ {0}: all symmetric sequences by length
/// first, then the remaining ones by length. Stops when `visit` returns true.
inline void for_each_params(int max_len, int max_abs, const std::function<bool(const StandardParams&)>& visit) {
  std::vector<int> values;
  for (int k = 1; k <= max_abs; ++k) {
    values.push_back(k);
    values.push_back(-k);
  }
  // Odometer over `half` digits; `expand` turns a digit vector into params.
  auto run = [&](int digits, const std::function<std::optional<std::vector<int>>(const std::vector<int>&)>& expand) {
    if (digits > 0 && values.empty()) return false;
    std::vector<std::size_t> idx(static_cast<std::size_t>(digits), 0);
    for (;;) {
      std::vector<int> d;
      for (auto i : idx) d.push_back(values[i]);
      if (auto e = expand(d)) {
        if (visit(StandardParams(std::move(*e)))) return true;
      }
      int pos = digits - 1;
      while (pos >= 0 && ++idx[static_cast<std::size_t>(pos)] == values.size()) idx[static_cast<std::size_t>(pos--)] = 0;
      if (pos < 0) return false;
    }
  };
  for (int len = 0; len <= max_len; len += 2) {
    bool stop = run(len / 2, [](const std::vector<int>& d) -> std::optional<std::vector<int>> {
      std::vector<int> e = d;
      for (auto it = d.rbegin(); it != d.rend(); ++it) e.push_back(-*it);
      return e;
    });
    if (stop) return;
  }
  if (values.empty()) return;
  for (int len = 2; len <= max_len; len += 2) {
    bool stop = run(len, [](const std::vector<int>& d) -> std::optional<std::vector<int>> {
      if (StandardParams(d).symmetric()) return std::nullopt;
      return d;
    });
    if (stop) return;
  }
}

/// First standard complex (in for_each_params order) locally equivalent to c.
/// c is reduced first. Standard classes are unique, so any hit is the answer.
inline std::optional<StandardParams> standard_representative(const BigradedComplex& c, int max_len, int max_abs) {
  if (max_len < 0 || max_abs < 0) throw std::invalid_argument("standard_representative: negative bounds");
  const BigradedComplex rc = reduce(c);
  const auto tc = detail::tower_data(rc);
  std::optional<StandardParams> hit;
  for_each_params(max_len, max_abs, [&](const StandardParams& p) {
    const auto sc = build_standard(p);
    const auto ts = detail::tower_data(sc.complex);
    if (!detail::towers_compatible(tc, ts)) return false;
    if (detail::find_local_map(tc, ts) && detail::find_local_map(ts, tc)) {
      hit = p;
      return true;
    }
    return false;
  });
  return hit;
}

}  // namespace floerlocal
