#include <catch_amalgamated.hpp>

#include <set>

#include "support.hpp"

using namespace floerlocal;
using fltest::make_rng;
using fltest::P;
using fltest::S;

namespace {

/// (A, M) of x_0..x_n by walking the zig-zag: U-arrows move A by -b_i, V-arrows by +b_i.
std::vector<std::pair<int, int>> walk_gradings(const StandardParams& p) {
  std::vector<std::pair<int, int>> am{{0, 0}};
  for (std::size_t i = 1; i <= p.size(); ++i) {
    const int b = p.at(i);
    const int k = std::abs(b);
    auto [a, m] = am.back();
    if (i % 2 == 1) {
      a -= b;
      m += b < 0 ? 2 * k - 1 : -(2 * k - 1);
    } else {
      a += b;
      m += b < 0 ? -1 : 1;
    }
    am.push_back({a, m});
  }
  const auto [an, mn] = am.back();
  const int shift = mn / 2 - an;
  for (auto& [a, m] : am) a += shift;
  return am;
}

CharMultiset ch_of(std::initializer_list<ChTriple> ts) {
  CharMultiset ch;
  for (const auto& t : ts) ch.add(t);
  return ch;
}

}  // namespace

TEST_CASE("build_standard examples", "[standard]") {
  const auto c = S({1, -1});
  REQUIRE(c.size() == 3);
  CHECK(c.generator(0).grading == Bigrading{0, -2});
  CHECK(c.generator(1).grading == Bigrading{-1, -1});
  CHECK(c.generator(2).grading == Bigrading{-2, 0});
  CHECK(c.entry(1, 0) == RingElem::monomial(RingTag::R, {1, 0}));
  CHECK(c.entry(1, 2) == RingElem::monomial(RingTag::R, {0, 1}));

  const auto d = S({1, -1, 1, -1});
  REQUIRE(d.size() == 5);
  CHECK(d.generator(0).grading == Bigrading{0, -4});
  CHECK(d.generator(4).grading == Bigrading{-4, 0});
  CHECK(d.generator(0).grading.alexander() == 2);

  const auto e = S({});
  REQUIRE(e.size() == 1);
  CHECK(e.generator(0).grading == Bigrading{0, 0});
}

TEST_CASE("Arrow directions follow the parameter signs", "[standard]") {
  const auto c = S({-2, 3, 1, -4});
  CHECK(c.entry(0, 1) == RingElem::monomial(RingTag::R, {2, 0}));  // b1 < 0: x0 -> U^2 x1
  CHECK(c.entry(2, 1) == RingElem::monomial(RingTag::R, {0, 3}));  // b2 > 0: x2 -> V^3 x1
  CHECK(c.entry(3, 2) == RingElem::monomial(RingTag::R, {1, 0}));  // b3 > 0: x3 -> U x2
  CHECK(c.entry(3, 4) == RingElem::monomial(RingTag::R, {0, 4}));  // b4 < 0: x3 -> V^4 x4
}

TEST_CASE("StandardParams validation and syntax", "[standard]") {
  CHECK_THROWS_AS(P({1}), std::invalid_argument);
  CHECK_THROWS_AS(P({1, 0}), std::invalid_argument);
  CHECK(P({1, -2, 2, -1}).symmetric());
  CHECK_FALSE(P({1, -2}).symmetric());
  CHECK(P({}).symmetric());
  CHECK(parse_params("1,-2,2,-1") == P({1, -2, 2, -1}));
  CHECK(parse_params("(1, -2, 2, -1)") == P({1, -2, 2, -1}));
  CHECK(parse_params("()") == P({}));
  CHECK(parse_params("") == P({}));
  CHECK_THROWS_AS(parse_params("1,-2,2"), ParseError);
  CHECK_THROWS_AS(parse_params("1,x"), ParseError);
  CHECK_THROWS_AS(parse_params("1,-1,"), ParseError);
  CHECK(to_string(P({1, -2, 2, -1})) == "1,-2,2,-1");
  CHECK(to_display(P({})) == "()");
}

TEST_CASE("phi examples", "[standard]") {
  const auto p = P({1, -2, 2, -1});
  CHECK(phi(p, 1) == 1);
  CHECK(phi(p, 2) == 1);
  for (int j = 3; j <= 6; ++j) CHECK(phi(p, j) == 0);
  for (int j = 1; j <= 4; ++j) CHECK(phi(P({}), j) == 0);
  CHECK(phi(P({1, -1}), 1) == 1);
  CHECK(phi(P({-1, 1}), 1) == -1);
  CHECK(phi(P({1, -3, -1, 3}), 1) == 0);
  CHECK_THROWS_AS(phi(p, 0), std::invalid_argument);
}

TEST_CASE("tau and epsilon", "[standard]") {
  CHECK(tau_epsilon_of(P({1, -2, 2, -1})) == TauEpsilon{3, 1});
  CHECK(tau_epsilon_of(P({1, -1, 1, -1})) == TauEpsilon{2, 1});
  CHECK(tau_epsilon_of(P({})) == TauEpsilon{0, 0});
  CHECK(tau_epsilon_of(P({-1, 1})) == TauEpsilon{-1, -1});
  for (int n = 1; n <= 20; ++n) CHECK(tau_epsilon_of(P({1, -n, n, -1})) == TauEpsilon{n + 1, 1});
}

TEST_CASE("ch_closed_form examples", "[standard]") {
  for (int n = 1; n <= 8; ++n)
    CHECK(ch_closed_form(P({1, -n, n, -1})) == ch_of({{0, -2, n}, {-n - 1, -2 * n - 2, 1}}));
  CHECK(ch_closed_form(P({1, -1})) == ch_of({{-1, -2, 1}}));
  CHECK(ch_closed_form(P({})).empty());
}

TEST_CASE("Standard complexes: gradings, validity, Ch", "[standard][property]") {
  int count = 0;
  for_each_params(6, 3, [&](const StandardParams& p) {
    const auto sc = build_standard(p);
    const auto& c = sc.complex;
    CHECK(validate(c, true).ok());
    CHECK(is_knot_like(c));
    const auto am = walk_gradings(p);
    REQUIRE(am.size() == c.size());
    for (std::size_t i = 0; i < c.size(); ++i) {
      CHECK(c.generator(i).grading.alexander() == am[i].first);
      CHECK(c.generator(i).grading.maslov() == am[i].second);
    }
    const auto h = hat_of(c);
    CHECK(ch_closed_form(p) == ch_from_basis(h));
    CHECK(ch_closed_form(p) == ch_from_definition(h));
    ++count;
    return false;
  });
  CHECK(count == 1 + 36 + 1296 + 46656);
}

TEST_CASE("Symmetric parameters give centrally symmetric gradings", "[standard][property]") {
  for_each_params(8, 3, [](const StandardParams& p) {
    if (!p.symmetric()) return false;
    const auto c = build_standard(p).complex;
    const std::size_t n = p.size();
    std::multiset<std::pair<int, int>> am, mirrored;
    for (std::size_t j = 0; j <= n; ++j) {
      const auto& g = c.generator(j).grading;
      const auto& h = c.generator(n - j).grading;
      CHECK(h.alexander() == -g.alexander());
      CHECK(h.maslov() == g.maslov() - 2 * g.alexander());
      am.insert({g.alexander(), g.maslov()});
      mirrored.insert({-g.alexander(), g.maslov() - 2 * g.alexander()});
    }
    CHECK(am == mirrored);
    return false;
  });
}

TEST_CASE("phi is additive under tensor products", "[standard][property]") {
  const std::vector<StandardParams> small = {P({1, -1}), P({-1, 1}), P({2, -2}), P({1, -1, 1, -1}), P({-2, 2})};
  int found = 0;
  for (const auto& p : small) {
    for (const auto& q : small) {
      if (p.size() + q.size() > 6) continue;
      const auto t = tensor(build_standard(p).complex, build_standard(q).complex);
      const auto rep = standard_representative(t, static_cast<int>(p.size() + q.size()), 2);
      if (!rep) continue;
      ++found;
      for (int j = 1; j <= 3; ++j) CHECK(phi(*rep, j) == phi(p, j) + phi(q, j));
      CHECK(tau_epsilon_of(*rep).tau == tau_epsilon_of(p).tau + tau_epsilon_of(q).tau);
    }
  }
  CHECK(found >= 8);
}
