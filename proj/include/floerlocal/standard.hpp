#pragma once

/**
 * @file standard.hpp
 * @brief Standard complexes C(b_1, ..., b_n) and the invariants read off them.
 *
 * Generators x_0..x_n. Odd positions give U-power arrows and even positions
 * V-power arrows between x_{i-1} and x_i: a negative entry points from
 * x_{i-1} to x_i, a positive one from x_i to x_{i-1}, with exponent |b_i|.
 */

#include <cstdlib>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "floerlocal/complex.hpp"
#include "floerlocal/filtered.hpp"
#include "floerlocal/hat.hpp"

namespace floerlocal {

class StandardParams {
 public:
  StandardParams() = default;
  explicit StandardParams(std::vector<int> entries) : entries_(std::move(entries)) {
    if (entries_.size() % 2 != 0) throw std::invalid_argument("standard params must have even length");
    for (int b : entries_)
      if (b == 0) throw std::invalid_argument("standard params must be nonzero");
  }

  const std::vector<int>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  /// 1-based, matching the b_i indexing.
  int at(std::size_t i) const { return entries_.at(i - 1); }

  bool symmetric() const {
    const std::size_t n = entries_.size();
    for (std::size_t i = 0; i < n; ++i)
      if (entries_[i] != -entries_[n - 1 - i]) return false;
    return true;
  }

  friend bool operator==(const StandardParams&, const StandardParams&) = default;
  friend auto operator<=>(const StandardParams&, const StandardParams&) = default;

 private:
  std::vector<int> entries_;
};

/// `1,-2,2,-1`; the empty sequence prints as the empty string.
inline std::string to_string(const StandardParams& p) {
  std::string s;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(p.entries()[i]);
  }
  return s;
}

/// `(1,-2,2,-1)`, `()` for the empty sequence.
inline std::string to_display(const StandardParams& p) { return "(" + to_string(p) + ")"; }

/// Comma-separated signed integers. Accepts optional surrounding parentheses;
/// "", "()" and "empty" denote the empty sequence. Odd length is allowed here
/// (obstruction prefixes); StandardParams itself validates parity.
inline std::vector<int> parse_int_list(std::string_view text) {
  std::string s;
  for (char ch : text)
    if (ch != ' ' && ch != '\t') s += ch;
  if (!s.empty() && s.front() == '(' && s.back() == ')') s = s.substr(1, s.size() - 2);
  std::vector<int> out;
  if (s.empty() || s == "empty") return out;
  std::istringstream is(s);
  std::string tok;
  while (std::getline(is, tok, ',')) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(tok, &used);
    } catch (const std::exception&) {
      throw ParseError("bad integer '" + tok + "' in list '" + std::string(text) + "'");
    }
    if (used != tok.size()) throw ParseError("bad integer '" + tok + "' in list '" + std::string(text) + "'");
    out.push_back(v);
  }
  if (!s.empty() && s.back() == ',') throw ParseError("trailing comma in '" + std::string(text) + "'");
  return out;
}

inline StandardParams parse_params(std::string_view text) {
  auto v = parse_int_list(text);
  try {
    return StandardParams(std::move(v));
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

struct StandardComplex {
  StandardParams params;
  BigradedComplex complex;
};

namespace detail {

struct StandardArrow {
  std::size_t from;
  std::size_t to;
  Monomial m;
};

inline StandardArrow standard_arrow(const StandardParams& p, std::size_t i) {
  const int b = p.at(i);
  const int k = std::abs(b);
  const Monomial m = (i % 2 == 1) ? Monomial{k, 0} : Monomial{0, k};
  if (b < 0) return {i - 1, i, m};
  return {i, i - 1, m};
}

}  // namespace detail

/// Builds C(p) with gr(x_0) = (0, s): gradings propagate along the path using
/// the (-1,-1) differential, then s is fixed by gr_V(x_n) = 0.
inline StandardComplex build_standard(const StandardParams& p) {
  const std::size_t n = p.size();
  std::vector<Bigrading> gr(n + 1);
  for (std::size_t i = 1; i <= n; ++i) {
    const auto a = detail::standard_arrow(p, i);
    const Bigrading step{2 * a.m.u - 1, 2 * a.m.v - 1};  // gr(to) - gr(from)
    gr[i] = a.to == i ? gr[i - 1] + step : gr[i - 1] - step;
  }
  const int s = -gr[n].gr_v;
  std::vector<Generator> gens;
  for (std::size_t i = 0; i <= n; ++i) {
    gens.push_back({"x" + std::to_string(i), {gr[i].gr_u, gr[i].gr_v + s}});
    if (!gens.back().grading.alexander_integral())
      throw AssertionFailure("build_standard: non-integral Alexander grading");
  }
  if (gens.front().grading.gr_u != 0 || gens.back().grading.gr_v != 0)
    throw AssertionFailure("build_standard: grading normalization failed");
  BigradedComplex c(RingTag::R, std::move(gens));
  for (std::size_t i = 1; i <= n; ++i) {
    const auto a = detail::standard_arrow(p, i);
    c.add_arrow(a.from, a.to, a.m);
  }
  return {p, std::move(c)};
}

/// Count of odd positions equal to j minus count equal to -j.
inline int phi(const StandardParams& p, int j) {
  if (j < 1) throw std::invalid_argument("phi: j must be positive");
  int out = 0;
  for (std::size_t i = 1; i <= p.size(); i += 2) {
    if (p.at(i) == j) ++out;
    if (p.at(i) == -j) --out;
  }
  return out;
}

struct TauEpsilon {
  int tau = 0;
  int epsilon = 0;
  friend bool operator==(const TauEpsilon&, const TauEpsilon&) = default;
};

inline TauEpsilon tau_epsilon_of(const StandardParams& p) {
  const auto sc = build_standard(p);
  const int eps = p.empty() ? 0 : (p.at(1) > 0 ? 1 : -1);
  return {sc.complex.generator(0).grading.alexander(), eps};
}

/// One triple per even position: the V-arrow's target gradings and its length.
inline CharMultiset ch_closed_form(const StandardParams& p) {
  const auto sc = build_standard(p);
  CharMultiset ch;
  for (std::size_t i = 2; i <= p.size(); i += 2) {
    const int b = p.at(i);
    const auto& target = sc.complex.generator(b < 0 ? i : i - 1).grading;
    ch.add({target.alexander(), target.maslov(), std::abs(b)});
  }
  return ch;
}

}  // namespace floerlocal
