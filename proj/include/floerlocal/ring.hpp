#pragma once

/**
 * @file ring.hpp
 * @brief Exact arithmetic in F2[U,V] and in R = F2[U,V]/(UV).
 *
 * Elements are finite sets of monomials (coefficients are implicitly 1) kept
 * sorted and duplicate-free, so equality is structural. In the quotient ring R
 * every monomial divisible by UV is zero and never stored.
 */

#include <algorithm>
#include <cctype>
#include <compare>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "floerlocal/error.hpp"

namespace floerlocal {

enum class RingTag { R, UV };

inline std::string_view to_string(RingTag tag) { return tag == RingTag::R ? "R" : "UV"; }

struct Monomial {
  int u = 0;
  int v = 0;

  bool is_one() const { return u == 0 && v == 0; }
  bool is_mixed() const { return u > 0 && v > 0; }
  bool divides(const Monomial& other) const { return u <= other.u && v <= other.v; }

  friend Monomial operator*(Monomial a, Monomial b) { return {a.u + b.u, a.v + b.v}; }
  friend bool operator==(const Monomial&, const Monomial&) = default;
  // Canonical order: 1, then pure U powers, then pure V powers, then mixed.
  friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) {
    auto bucket = [](const Monomial& m) {
      if (m.is_one()) return 0;
      if (m.v == 0) return 1;
      if (m.u == 0) return 2;
      return 3;
    };
    return std::tuple(bucket(a), a.u, a.v) <=> std::tuple(bucket(b), b.u, b.v);
  }
};

struct Bigrading {
  int gr_u = 0;
  int gr_v = 0;

  bool alexander_integral() const { return ((gr_u - gr_v) % 2) == 0; }
  int maslov() const { return gr_u; }
  // Requires alexander_integral().
  int alexander() const { return (gr_u - gr_v) / 2; }

  friend Bigrading operator+(Bigrading a, Bigrading b) { return {a.gr_u + b.gr_u, a.gr_v + b.gr_v}; }
  friend Bigrading operator-(Bigrading a, Bigrading b) { return {a.gr_u - b.gr_u, a.gr_v - b.gr_v}; }
  friend bool operator==(const Bigrading&, const Bigrading&) = default;
  friend auto operator<=>(const Bigrading&, const Bigrading&) = default;
};

/// Multiplication by U is (-2,0) graded and by V is (0,-2) graded.
constexpr Bigrading grading_shift(Monomial m) { return {-2 * m.u, -2 * m.v}; }

class RingElem {
 public:
  explicit RingElem(RingTag tag = RingTag::R) : tag_(tag) {}

  static RingElem zero(RingTag tag) { return RingElem(tag); }
  static RingElem one(RingTag tag) { return monomial(tag, {}); }
  static RingElem monomial(RingTag tag, Monomial m) {
    RingElem e(tag);
    if (!(tag == RingTag::R && m.is_mixed())) e.terms_.push_back(m);
    return e;
  }

  RingTag tag() const { return tag_; }
  const std::vector<Monomial>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_one() const { return terms_.size() == 1 && terms_.front().is_one(); }
  bool contains_one() const { return !terms_.empty() && terms_.front().is_one(); }
  bool is_monomial() const { return terms_.size() == 1; }

  // F2 addition: symmetric difference of the term sets.
  RingElem& operator+=(const RingElem& other) {
    check_tag(other);
    std::vector<Monomial> out;
    out.reserve(terms_.size() + other.terms_.size());
    std::set_symmetric_difference(terms_.begin(), terms_.end(), other.terms_.begin(),
                                  other.terms_.end(), std::back_inserter(out));
    terms_ = std::move(out);
    return *this;
  }
  friend RingElem operator+(RingElem a, const RingElem& b) { return a += b; }

  friend RingElem operator*(const RingElem& a, const RingElem& b) {
    a.check_tag(b);
    RingElem out(a.tag_);
    if (a.is_zero() || b.is_zero()) return out;
    std::vector<Monomial> products;
    products.reserve(a.terms_.size() * b.terms_.size());
    for (const auto& x : a.terms_) {
      for (const auto& y : b.terms_) {
        Monomial p = x * y;
        if (a.tag_ == RingTag::R && p.is_mixed()) continue;
        products.push_back(p);
      }
    }
    std::sort(products.begin(), products.end());
    // Pairs of equal monomials cancel over F2.
    for (std::size_t i = 0; i < products.size();) {
      std::size_t j = i;
      while (j < products.size() && products[j] == products[i]) ++j;
      if ((j - i) % 2 == 1) out.terms_.push_back(products[i]);
      i = j;
    }
    return out;
  }
  RingElem& operator*=(const RingElem& other) { return *this = *this * other; }

  friend bool operator==(const RingElem&, const RingElem&) = default;

 private:
  void check_tag(const RingElem& other) const {
    if (other.tag_ != tag_) throw std::invalid_argument("ring tag mismatch between operands");
  }

  RingTag tag_;
  std::vector<Monomial> terms_;
};

inline RingElem mul(const RingElem& a, const RingElem& b) { return a * b; }

inline std::string to_string(const Monomial& m) {
  if (m.is_one()) return "1";
  std::string s;
  if (m.u > 0) s += m.u == 1 ? "U" : "U^" + std::to_string(m.u);
  if (m.v > 0) s += m.v == 1 ? "V" : "V^" + std::to_string(m.v);
  return s;
}

inline std::string to_string(const RingElem& e) {
  if (e.is_zero()) return "0";
  std::string s;
  for (const auto& m : e.terms()) {
    if (!s.empty()) s += "+";
    s += to_string(m);
  }
  return s;
}

inline std::ostream& operator<<(std::ostream& os, const RingElem& e) { return os << to_string(e); }

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

inline Monomial parse_monomial(std::string_view t) {
  if (t == "1") return {};
  Monomial m;
  std::size_t i = 0;
  auto read_power = [&](char var) -> int {
    if (i >= t.size() || t[i] != var) return 0;
    ++i;
    if (i < t.size() && t[i] == '^') {
      ++i;
      const std::size_t start = i;
      while (i < t.size() && std::isdigit(static_cast<unsigned char>(t[i]))) ++i;
      if (start == i) throw ParseError("missing exponent in monomial '" + std::string(t) + "'");
      const int k = std::stoi(std::string(t.substr(start, i - start)));
      if (k < 1) throw ParseError("exponent must be positive in monomial '" + std::string(t) + "'");
      return k;
    }
    return 1;
  };
  m.u = read_power('U');
  m.v = read_power('V');
  if (i != t.size() || (m.u == 0 && m.v == 0))
    throw ParseError("malformed monomial '" + std::string(t) + "'");
  return m;
}

}  // namespace detail

/// Parses `1`, `U^k`, `V^k`, `U^aV^b` and `+`-separated sums (`0` is zero).
/// Mixed monomials are rejected in R rather than silently dropped.
inline RingElem parse_ring_elem(std::string_view text, RingTag tag) {
  text = detail::trim(text);
  if (text.empty()) throw ParseError("empty ring element");
  RingElem out(tag);
  if (text == "0") return out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t plus = text.find('+', pos);
    const std::string_view term =
        detail::trim(text.substr(pos, plus == std::string_view::npos ? text.size() - pos : plus - pos));
    if (term.empty()) throw ParseError("empty term in '" + std::string(text) + "'");
    const Monomial m = detail::parse_monomial(term);
    if (tag == RingTag::R && m.is_mixed())
      throw ParseError("mixed monomial '" + std::string(term) + "' is zero in R; not allowed in R files");
    out += RingElem::monomial(tag, m);
    if (plus == std::string_view::npos) break;
    pos = plus + 1;
  }
  return out;
}

}  // namespace floerlocal
