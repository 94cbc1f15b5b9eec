#pragma once

/**
 * @file mazur.hpp
 * @brief Grading table of the Mazur-satellite hat complex and the vertical
 * arrow constraints it satisfies.
 *
 * Rows R_1..R_{n-1} carry a^i_1..a^i_16, the top row carries t_1..t_14 and c
 * sits in the middle. Points of the lower rows are obtained by the central
 * symmetry x -> x-bar with A(x-bar) = -A(x), M(x-bar) = M(x) - 2A(x).
 */

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "floerlocal/error.hpp"
#include "floerlocal/filtered.hpp"

namespace floerlocal {

struct IntersectionPoint {
  std::string label;
  int alexander = 0;
  int maslov = 0;
};

inline std::pair<int, int> mirror_grading(int a, int m) { return {-a, m - 2 * a}; }

/// a^i_j -> a^-i_-j, t_j -> t_-j, c -> c (and back).
inline std::string mirror_label(const std::string& label) {
  if (label == "c") return label;
  auto flip = [](const std::string& num) { return num.front() == '-' ? num.substr(1) : "-" + num; };
  if (label.rfind("t_", 0) == 0) return "t_" + flip(label.substr(2));
  if (label.rfind("a^", 0) == 0) {
    const auto us = label.find('_');
    return "a^" + flip(label.substr(2, us - 2)) + "_" + flip(label.substr(us + 1));
  }
  throw std::invalid_argument("mirror_label: unknown label '" + label + "'");
}

/// All 32n - 3 points: c, the upper rows, the top row, then their mirrors.
inline std::vector<IntersectionPoint> build_gradings(int n) {
  if (n < 2) throw std::invalid_argument("build_gradings: n must be at least 2");
  // (A, M) of a^i_j as (A - i, M - 2i) for the first eight, (A - i, M) after.
  static constexpr int a_shift[16][2] = {{-1, -3}, {-1, -4}, {-2, -5}, {-2, -4}, {-1, -3}, {-1, -4},
                                         {0, -3},  {0, -2},  {-1, -3}, {-1, -2}, {0, -1},  {0, -2},
                                         {1, -1},  {1, 0},   {0, -1},  {0, -2}};
  std::vector<IntersectionPoint> upper;
  for (int i = 1; i <= n - 1; ++i)
    for (int j = 1; j <= 16; ++j) {
      const int a = i + a_shift[j - 1][0];
      const int m = (j <= 8 ? 2 * i : 0) + a_shift[j - 1][1];
      upper.push_back({"a^" + std::to_string(i) + "_" + std::to_string(j), a, m});
    }
  const int t[14][2] = {{n - 1, 2 * n - 3}, {n - 2, 2 * n - 4}, {n - 2, -3},        {n - 1, -2},
                        {n - 1, 2 * n - 3}, {n, 2 * n - 2},     {n, -1},            {n - 1, -2},
                        {n - 1, -2 * n - 1}, {n, -2 * n},       {n, -1},            {n + 1, 0},
                        {n + 1, 1 - 2 * n}, {n, -2 * n}};
  for (int j = 1; j <= 14; ++j) upper.push_back({"t_" + std::to_string(j), t[j - 1][0], t[j - 1][1]});

  std::vector<IntersectionPoint> out;
  out.push_back({"c", 0, -2});
  out.insert(out.end(), upper.begin(), upper.end());
  for (const auto& p : upper) {
    const auto [a, m] = mirror_grading(p.alexander, p.maslov);
    out.push_back({mirror_label(p.label), a, m});
  }
  return out;
}

inline std::string format_table(const std::vector<IntersectionPoint>& pts) {
  std::ostringstream os;
  for (const auto& p : pts) os << "fgen " << p.label << " " << p.maslov << " " << p.alexander << "\n";
  return os.str();
}

// ---------------------------------------------------------------------------
// Constraint sets

enum class RuleKind { Target, Source, AbsentTarget, AbsentSource };

inline std::string_view to_string(RuleKind k) {
  switch (k) {
    case RuleKind::Target: return "target";
    case RuleKind::Source: return "source";
    case RuleKind::AbsentTarget: return "absent-target";
    case RuleKind::AbsentSource: return "absent-source";
  }
  return "?";
}

inline bool is_source_rule(RuleKind k) { return k == RuleKind::Source || k == RuleKind::AbsentSource; }
inline bool is_absence_rule(RuleKind k) { return k == RuleKind::AbsentTarget || k == RuleKind::AbsentSource; }

struct ExactCount {
  int length = 0;
  int count = 0;
  friend bool operator==(const ExactCount&, const ExactCount&) = default;
};

struct ArrowRule {
  RuleKind kind = RuleKind::Target;
  int alexander = 0;
  int maslov = 0;
  std::set<int> lengths;  // empty for absence rules
  std::optional<ExactCount> exactly;
  int clause = 0;  // numbering of the claim the rule encodes, 0 if none
  friend bool operator==(const ArrowRule&, const ArrowRule&) = default;
};

struct ConstraintSet {
  std::vector<ArrowRule> rules;
  friend bool operator==(const ConstraintSet&, const ConstraintSet&) = default;
};

/// The nine claims on vertical arrows of the reduced hat complex of M(K)
/// when K is locally equivalent to C(1,-(n-1),n-1,-1).
inline ConstraintSet satellite_arrow_constraints(int n) {
  if (n < 2) throw std::invalid_argument("satellite_arrow_constraints: n must be at least 2");
  using K = RuleKind;
  ConstraintSet cs;
  auto add = [&](int clause, K kind, int a, int m, std::set<int> lengths, std::optional<ExactCount> ex = {}) {
    cs.rules.push_back({kind, a, m, std::move(lengths), ex, clause});
  };
  add(1, K::Target, -n - 1, -2 * n - 2, {1});
  add(2, K::Source, n, -1, {1, n}, ExactCount{n, 1});
  add(3, K::Source, -n + 1, -2 * n, {1});
  add(3, K::Target, -n + 1, -2 * n, {1});
  add(4, K::AbsentSource, n - 2, -3, {});
  add(4, K::Target, n - 2, -3, {1});
  add(5, K::Target, 0, -2, {1, n});
  add(5, K::Source, 0, -2, {1});
  add(6, K::Target, 1, -1, {1});
  add(7, K::AbsentSource, -2, -4, {});
  add(7, K::Target, -2, -4, {1});
  add(8, K::Source, -1, -3, {1});
  add(8, K::Target, -1, -3, {1});
  add(9, K::AbsentTarget, 2, 0, {});
  add(9, K::Source, 2, 0, {1});
  return cs;
}

inline std::string format_rule(const ArrowRule& r) {
  std::ostringstream os;
  os << "rule " << to_string(r.kind) << " " << r.alexander << " " << r.maslov << " lengths={";
  bool first = true;
  for (int l : r.lengths) {
    os << (first ? "" : ",") << l;
    first = false;
  }
  os << "}";
  if (r.exactly) os << " exactly " << r.exactly->length << " " << r.exactly->count;
  return os.str();
}

inline std::string format_constraints(const ConstraintSet& cs) {
  std::ostringstream os;
  int clause = -1;
  for (const auto& r : cs.rules) {
    if (r.clause != clause && r.clause != 0) os << "# clause " << r.clause << "\n";
    clause = r.clause;
    os << format_rule(r) << "\n";
  }
  return os.str();
}

/// Inverse of format_constraints; `# clause k` comments set the clause number.
inline ConstraintSet parse_constraints(std::istream& in) {
  ConstraintSet cs;
  std::string raw;
  int line_no = 0;
  int clause = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::istringstream ls(raw);
    std::string head;
    if (!(ls >> head)) continue;
    if (head.front() == '#') {
      std::string word;
      int k = 0;
      if (ls >> word && word == "clause" && ls >> k) clause = k;
      continue;
    }
    if (head != "rule") throw ParseError("expected 'rule', got '" + head + "'", line_no);
    ArrowRule r;
    r.clause = clause;
    std::string kind, lengths;
    if (!(ls >> kind >> r.alexander >> r.maslov >> lengths)) throw ParseError("malformed rule", line_no);
    if (kind == "target") r.kind = RuleKind::Target;
    else if (kind == "source") r.kind = RuleKind::Source;
    else if (kind == "absent-target") r.kind = RuleKind::AbsentTarget;
    else if (kind == "absent-source") r.kind = RuleKind::AbsentSource;
    else throw ParseError("unknown rule kind '" + kind + "'", line_no);
    if (lengths.rfind("lengths={", 0) != 0 || lengths.back() != '}')
      throw ParseError("expected lengths={...}", line_no);
    std::istringstream ll(lengths.substr(9, lengths.size() - 10));
    std::string tok;
    while (std::getline(ll, tok, ',')) {
      try {
        r.lengths.insert(std::stoi(tok));
      } catch (const std::exception&) {
        throw ParseError("bad length '" + tok + "'", line_no);
      }
    }
    std::string word;
    if (ls >> word) {
      ExactCount ex;
      if (word != "exactly" || !(ls >> ex.length >> ex.count)) throw ParseError("expected 'exactly <len> <count>'", line_no);
      r.exactly = ex;
    }
    if (is_absence_rule(r.kind) && !r.lengths.empty()) throw ParseError("absence rules take lengths={}", line_no);
    cs.rules.push_back(std::move(r));
  }
  return cs;
}

inline ConstraintSet parse_constraints(const std::string& text) {
  std::istringstream is(text);
  return parse_constraints(is);
}

// ---------------------------------------------------------------------------
// Auditing arrows

struct ArrowClass {
  int source_alexander = 0;
  int source_maslov = 0;
  int target_alexander = 0;
  int target_maslov = 0;
  int length = 0;
};

struct ConstraintViolation {
  ArrowRule rule;
  std::string detail;
};

/// How `exactly <len> <count>` is read: as an exact count, or as an upper
/// bound (the reading that applies to a summand of the audited complex).
enum class CountMode { Exact, AtMost };

inline std::vector<ConstraintViolation> check_arrows(const std::vector<ArrowClass>& arrows, const ConstraintSet& cs,
                                                     CountMode mode) {
  std::vector<ConstraintViolation> out;
  for (const auto& r : cs.rules) {
    int counted = 0;
    for (const auto& a : arrows) {
      const bool src = is_source_rule(r.kind);
      const int ca = src ? a.source_alexander : a.target_alexander;
      const int cm = src ? a.source_maslov : a.target_maslov;
      if (ca != r.alexander || cm != r.maslov) continue;
      std::ostringstream what;
      what << "arrow (" << a.source_alexander << "," << a.source_maslov << ") -> (" << a.target_alexander << ","
           << a.target_maslov << ") of length " << a.length;
      if (is_absence_rule(r.kind)) {
        out.push_back({r, what.str() + " is forbidden"});
        continue;
      }
      if (!r.lengths.count(a.length)) out.push_back({r, what.str() + " has a disallowed length"});
      if (r.exactly && a.length == r.exactly->length) ++counted;
    }
    if (r.exactly) {
      const bool bad = mode == CountMode::Exact ? counted != r.exactly->count : counted > r.exactly->count;
      if (bad)
        out.push_back({r, std::to_string(counted) + " arrows of length " + std::to_string(r.exactly->length) +
                              (mode == CountMode::Exact ? ", expected exactly " : ", expected at most ") +
                              std::to_string(r.exactly->count)});
    }
  }
  return out;
}

inline std::vector<ArrowClass> arrow_classes(const VerticalBasis& vb) {
  std::vector<ArrowClass> out;
  for (const auto& a : vb.arrows)
    out.push_back({a.source_alexander, a.source_maslov, a.target_alexander, a.target_maslov, a.length});
  return out;
}

/// Audits the vertically simplified arrows of f against cs.
inline std::vector<ConstraintViolation> check_against(const FilteredComplex& f, const ConstraintSet& cs,
                                                      CountMode mode = CountMode::AtMost) {
  return check_arrows(arrow_classes(vertically_simplify(f)), cs, mode);
}

inline std::string format_violation(const ConstraintViolation& v) {
  std::string s = "violation";
  if (v.rule.clause) s += " clause=" + std::to_string(v.rule.clause);
  return s + " [" + format_rule(v.rule) + "] " + v.detail;
}

}  // namespace floerlocal
