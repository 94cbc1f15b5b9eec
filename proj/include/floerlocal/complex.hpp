#pragma once

/**
 * @file complex.hpp
 * @brief Free, finitely generated, bigraded chain complexes over R or F2[U,V].
 *
 * Conventions: the differential has bidegree (-1,-1). An entry U^a V^b from x
 * to y therefore requires gr(y) = gr(x) + (2a-1, 2b-1). The differential is
 * stored densely, row = source generator, column = target generator.
 */

#include <algorithm>
#include <istream>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "floerlocal/error.hpp"
#include "floerlocal/ring.hpp"

namespace floerlocal {

struct Generator {
  std::string name;
  Bigrading grading;
  friend bool operator==(const Generator&, const Generator&) = default;
};

/// The unique monomial an arrow from `from` to `to` may carry, if any.
inline std::optional<Monomial> arrow_monomial(Bigrading from, Bigrading to) {
  const Bigrading d = to - from;
  if ((d.gr_u + 1) % 2 != 0 || (d.gr_v + 1) % 2 != 0) return std::nullopt;
  const Monomial m{(d.gr_u + 1) / 2, (d.gr_v + 1) / 2};
  if (m.u < 0 || m.v < 0) return std::nullopt;
  return m;
}

/// The unique monomial a grading-preserving map may carry from `from` to `to`.
inline std::optional<Monomial> map_monomial(Bigrading from, Bigrading to) {
  const Bigrading d = to - from;
  if (d.gr_u % 2 != 0 || d.gr_v % 2 != 0) return std::nullopt;
  const Monomial m{d.gr_u / 2, d.gr_v / 2};
  if (m.u < 0 || m.v < 0) return std::nullopt;
  return m;
}

class BigradedComplex {
 public:
  explicit BigradedComplex(RingTag tag = RingTag::R) : tag_(tag) {}
  BigradedComplex(RingTag tag, std::vector<Generator> gens)
      : tag_(tag), gens_(std::move(gens)), d_(gens_.size() * gens_.size(), RingElem(tag)) {}

  RingTag tag() const { return tag_; }
  std::size_t size() const { return gens_.size(); }
  const std::vector<Generator>& generators() const { return gens_; }
  const Generator& generator(std::size_t i) const { return gens_.at(i); }

  std::optional<std::size_t> index_of(std::string_view name) const {
    for (std::size_t i = 0; i < gens_.size(); ++i)
      if (gens_[i].name == name) return i;
    return std::nullopt;
  }

  std::size_t add_generator(std::string name, Bigrading grading) {
    const std::size_t n = gens_.size();
    std::vector<RingElem> grown((n + 1) * (n + 1), RingElem(tag_));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) grown[i * (n + 1) + j] = std::move(d_[i * n + j]);
    d_ = std::move(grown);
    gens_.push_back({std::move(name), grading});
    return n;
  }

  const RingElem& entry(std::size_t from, std::size_t to) const { return d_[from * size() + to]; }
  void set_entry(std::size_t from, std::size_t to, RingElem e) {
    if (e.tag() != tag_) throw std::invalid_argument("entry ring tag differs from complex ring tag");
    d_[from * size() + to] = std::move(e);
  }
  void add_to_entry(std::size_t from, std::size_t to, const RingElem& e) { d_[from * size() + to] += e; }

  /// Convenience for building complexes: adds monomial m to the entry from -> to.
  void add_arrow(std::size_t from, std::size_t to, Monomial m) {
    add_to_entry(from, to, RingElem::monomial(tag_, m));
  }

  bool is_reduced() const {
    return std::none_of(d_.begin(), d_.end(), [](const RingElem& e) { return e.contains_one(); });
  }

  friend bool operator==(const BigradedComplex&, const BigradedComplex&) = default;

 private:
  RingTag tag_;
  std::vector<Generator> gens_;
  std::vector<RingElem> d_;
};

// ---------------------------------------------------------------------------
// Validation

struct Violation {
  enum class Kind { DuplicateName, Homogeneity, DSquared, AlexanderParity };
  Kind kind;
  std::string from;
  std::string to;
  std::string detail;
};

inline std::string_view to_string(Violation::Kind k) {
  switch (k) {
    case Violation::Kind::DuplicateName: return "duplicate-name";
    case Violation::Kind::Homogeneity: return "homogeneity";
    case Violation::Kind::DSquared: return "d-squared";
    case Violation::Kind::AlexanderParity: return "alexander-parity";
  }
  return "?";
}

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

/// Checks name uniqueness, homogeneity of every monomial of every entry, and
/// d^2 = 0. Alexander parity is reported only when `require_integral_alexander`.
inline ValidationReport validate(const BigradedComplex& c, bool require_integral_alexander = false) {
  ValidationReport rep;
  const std::size_t n = c.size();
  std::set<std::string> seen;
  for (const auto& g : c.generators()) {
    if (!seen.insert(g.name).second)
      rep.violations.push_back({Violation::Kind::DuplicateName, g.name, g.name, "generator name repeated"});
    if (require_integral_alexander && !g.grading.alexander_integral())
      rep.violations.push_back({Violation::Kind::AlexanderParity, g.name, g.name, "gr_U - gr_V is odd"});
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const RingElem& e = c.entry(i, j);
      for (const auto& m : e.terms()) {
        const Bigrading lhs = c.generator(i).grading + Bigrading{-1, -1};
        const Bigrading rhs = c.generator(j).grading + grading_shift(m);
        if (!(lhs == rhs)) {
          rep.violations.push_back({Violation::Kind::Homogeneity, c.generator(i).name, c.generator(j).name,
                                    "term " + to_string(m) + " does not match the bidegree (-1,-1)"});
        }
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      RingElem acc(c.tag());
      for (std::size_t j = 0; j < n; ++j) {
        const RingElem& a = c.entry(i, j);
        if (a.is_zero()) continue;
        const RingElem& b = c.entry(j, k);
        if (b.is_zero()) continue;
        acc += a * b;
      }
      if (!acc.is_zero()) {
        rep.violations.push_back({Violation::Kind::DSquared, c.generator(i).name, c.generator(k).name,
                                  "d^2 has coefficient " + to_string(acc)});
      }
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Constructions

/// Keeps the generators in `keep` (in the given order) and the induced entries.
inline BigradedComplex restrict_to(const BigradedComplex& c, const std::vector<std::size_t>& keep) {
  std::vector<Generator> gens;
  gens.reserve(keep.size());
  for (auto k : keep) gens.push_back(c.generator(k));
  BigradedComplex out(c.tag(), std::move(gens));
  for (std::size_t a = 0; a < keep.size(); ++a)
    for (std::size_t b = 0; b < keep.size(); ++b) out.set_entry(a, b, c.entry(keep[a], keep[b]));
  return out;
}

/// Cancels every unit entry. At each round the unit entry with the
/// lexicographically smallest (from-name, to-name) pair is removed and the
/// zig-zag term d(w,y) d(x,z) is added to every entry d(w,z).
inline BigradedComplex reduce(const BigradedComplex& c) {
  const std::size_t n = c.size();
  std::vector<RingElem> d(n * n, RingElem(c.tag()));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) d[i * n + j] = c.entry(i, j);
  std::vector<bool> alive(n, true);

  std::vector<std::size_t> by_name(n);
  std::iota(by_name.begin(), by_name.end(), 0);
  std::sort(by_name.begin(), by_name.end(), [&](std::size_t a, std::size_t b) {
    return c.generator(a).name < c.generator(b).name;
  });

  for (;;) {
    std::optional<std::pair<std::size_t, std::size_t>> unit;
    for (auto x : by_name) {
      if (!alive[x]) continue;
      for (auto y : by_name) {
        if (alive[y] && d[x * n + y].is_one()) {
          unit = {x, y};
          break;
        }
      }
      if (unit) break;
    }
    if (!unit) break;
    const auto [x, y] = *unit;
    for (std::size_t w = 0; w < n; ++w) {
      if (!alive[w] || w == x || d[w * n + y].is_zero()) continue;
      for (std::size_t z = 0; z < n; ++z) {
        if (!alive[z] || z == y || d[x * n + z].is_zero()) continue;
        d[w * n + z] += d[w * n + y] * d[x * n + z];
      }
    }
    alive[x] = alive[y] = false;
  }

  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < n; ++i)
    if (alive[i]) keep.push_back(i);
  std::vector<Generator> gens;
  for (auto k : keep) gens.push_back(c.generator(k));
  BigradedComplex out(c.tag(), std::move(gens));
  for (std::size_t a = 0; a < keep.size(); ++a)
    for (std::size_t b = 0; b < keep.size(); ++b) out.set_entry(a, b, d[keep[a] * n + keep[b]]);
  return out;
}

/// Tensor product over the common ground ring. Generator (a, b) is named
/// "a.b" and ordered a-major.
inline BigradedComplex tensor(const BigradedComplex& c1, const BigradedComplex& c2) {
  if (c1.tag() != c2.tag()) throw std::invalid_argument("tensor: ring tags differ");
  const std::size_t n1 = c1.size(), n2 = c2.size();
  std::vector<Generator> gens;
  gens.reserve(n1 * n2);
  for (const auto& a : c1.generators())
    for (const auto& b : c2.generators()) gens.push_back({a.name + "." + b.name, a.grading + b.grading});
  BigradedComplex out(c1.tag(), std::move(gens));
  for (std::size_t i = 0; i < n1; ++i) {
    for (std::size_t j = 0; j < n2; ++j) {
      const std::size_t src = i * n2 + j;
      for (std::size_t k = 0; k < n1; ++k)
        if (!c1.entry(i, k).is_zero()) out.add_to_entry(src, k * n2 + j, c1.entry(i, k));
      for (std::size_t k = 0; k < n2; ++k)
        if (!c2.entry(j, k).is_zero()) out.add_to_entry(src, i * n2 + k, c2.entry(j, k));
    }
  }
  return out;
}

inline BigradedComplex direct_sum(const BigradedComplex& a, const BigradedComplex& b) {
  if (a.tag() != b.tag()) throw std::invalid_argument("direct_sum: ring tags differ");
  std::vector<Generator> gens = a.generators();
  for (const auto& g : b.generators()) {
    if (a.index_of(g.name)) throw std::invalid_argument("direct_sum: generator name '" + g.name + "' clashes");
    gens.push_back(g);
  }
  BigradedComplex out(a.tag(), std::move(gens));
  const std::size_t na = a.size();
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < na; ++j) out.set_entry(i, j, a.entry(i, j));
  for (std::size_t i = 0; i < b.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out.set_entry(na + i, na + j, b.entry(i, j));
  return out;
}

inline BigradedComplex shifted(const BigradedComplex& c, Bigrading by) {
  std::vector<Generator> gens = c.generators();
  for (auto& g : gens) g.grading = g.grading + by;
  BigradedComplex out(c.tag(), std::move(gens));
  for (std::size_t i = 0; i < c.size(); ++i)
    for (std::size_t j = 0; j < c.size(); ++j) out.set_entry(i, j, c.entry(i, j));
  return out;
}

inline BigradedComplex renamed(const BigradedComplex& c, const std::string& prefix) {
  std::vector<Generator> gens = c.generators();
  for (auto& g : gens) g.name = prefix + g.name;
  BigradedComplex out(c.tag(), std::move(gens));
  for (std::size_t i = 0; i < c.size(); ++i)
    for (std::size_t j = 0; j < c.size(); ++j) out.set_entry(i, j, c.entry(i, j));
  return out;
}

/// Change of basis g -> g + m h, where m is the grading-compatible monomial.
/// Conjugates the differential by the elementary matrix E = I + m e_{gh}.
inline BigradedComplex elementary_basis_change(const BigradedComplex& c, std::size_t g, std::size_t h,
                                               Monomial m) {
  if (g == h) throw std::invalid_argument("elementary_basis_change: g == h");
  const std::size_t n = c.size();
  const RingElem mm = RingElem::monomial(c.tag(), m);
  // Row convention: d' = E d E^{-1} with E^{-1} = E in characteristic two.
  std::vector<RingElem> d(n * n, RingElem(c.tag()));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) d[i * n + j] = c.entry(i, j);
  for (std::size_t j = 0; j < n; ++j) d[g * n + j] += mm * d[h * n + j];  // E d
  for (std::size_t i = 0; i < n; ++i) d[i * n + h] += d[i * n + g] * mm;  // (E d) E
  BigradedComplex out(c.tag(), c.generators());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out.set_entry(i, j, d[i * n + j]);
  return out;
}

// ---------------------------------------------------------------------------
// Text format
//
//   # comment
//   ring R            (or: ring UV)
//   gen <name> <gr_u> <gr_v>
//   dif <from> <to> <ring element>
//
// `ring` must precede every gen/dif line. Generators may be declared after
// the dif lines that use them. The printer emits the canonical form: ring,
// then gens in order, then nonzero entries in (source, target) order.

inline std::string format_complex(const BigradedComplex& c) {
  std::ostringstream os;
  os << "ring " << to_string(c.tag()) << "\n";
  for (const auto& g : c.generators()) os << "gen " << g.name << " " << g.grading.gr_u << " " << g.grading.gr_v << "\n";
  for (std::size_t i = 0; i < c.size(); ++i)
    for (std::size_t j = 0; j < c.size(); ++j)
      if (!c.entry(i, j).is_zero())
        os << "dif " << c.generator(i).name << " " << c.generator(j).name << " " << to_string(c.entry(i, j)) << "\n";
  return os.str();
}

namespace detail {

inline std::vector<std::string> split_ws(const std::string& line) {
  std::istringstream is(line);
  std::vector<std::string> out;
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

inline int parse_int(const std::string& tok, int line) {
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(tok, &used);
  } catch (const std::exception&) {
    throw ParseError("expected integer, got '" + tok + "'", line);
  }
  if (used != tok.size()) throw ParseError("expected integer, got '" + tok + "'", line);
  return v;
}

}  // namespace detail

inline BigradedComplex parse_complex(std::istream& in) {
  std::optional<RingTag> tag;
  std::vector<Generator> gens;
  std::unordered_map<std::string, std::size_t> index;
  struct Dif {
    std::string from, to, elem;
    int line;
  };
  std::vector<Dif> difs;
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    const auto hash = raw.find('#');
    const std::string line = hash == std::string::npos ? raw : raw.substr(0, hash);
    const auto toks = detail::split_ws(line);
    if (toks.empty()) continue;
    const std::string& kw = toks[0];
    if (kw == "ring") {
      if (tag) throw ParseError("duplicate ring line", lineno);
      if (!gens.empty() || !difs.empty()) throw ParseError("ring line must come first", lineno);
      if (toks.size() != 2) throw ParseError("expected 'ring R' or 'ring UV'", lineno);
      if (toks[1] == "R") tag = RingTag::R;
      else if (toks[1] == "UV") tag = RingTag::UV;
      else throw ParseError("unknown ring '" + toks[1] + "'", lineno);
    } else if (kw == "gen") {
      if (!tag) throw ParseError("gen before ring line", lineno);
      if (toks.size() != 4) throw ParseError("expected 'gen <name> <gr_u> <gr_v>'", lineno);
      if (index.count(toks[1])) throw ParseError("duplicate generator '" + toks[1] + "'", lineno);
      index[toks[1]] = gens.size();
      gens.push_back({toks[1], {detail::parse_int(toks[2], lineno), detail::parse_int(toks[3], lineno)}});
    } else if (kw == "dif") {
      if (!tag) throw ParseError("dif before ring line", lineno);
      if (toks.size() < 4) throw ParseError("expected 'dif <from> <to> <ring element>'", lineno);
      std::string elem;
      for (std::size_t k = 3; k < toks.size(); ++k) elem += toks[k];
      difs.push_back({toks[1], toks[2], elem, lineno});
    } else {
      throw ParseError("unknown directive '" + kw + "'", lineno);
    }
  }
  if (!tag) throw ParseError("missing ring line");
  BigradedComplex c(*tag, std::move(gens));
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (const auto& d : difs) {
    const auto f = index.find(d.from);
    const auto t = index.find(d.to);
    if (f == index.end()) throw ParseError("unknown generator '" + d.from + "'", d.line);
    if (t == index.end()) throw ParseError("unknown generator '" + d.to + "'", d.line);
    if (!seen.insert({f->second, t->second}).second)
      throw ParseError("duplicate dif " + d.from + " -> " + d.to, d.line);
    try {
      c.set_entry(f->second, t->second, parse_ring_elem(d.elem, *tag));
    } catch (const ParseError& e) {
      throw ParseError(e.what(), d.line);
    }
  }
  return c;
}

inline BigradedComplex parse_complex(const std::string& text) {
  std::istringstream is(text);
  return parse_complex(is);
}

}  // namespace floerlocal
