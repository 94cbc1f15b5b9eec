#include <catch_amalgamated.hpp>

#include <algorithm>

#include "support.hpp"

using namespace floerlocal;

namespace {

struct Family {
  std::string name;
  std::vector<std::vector<int>> members;
};

std::vector<Family> lemma_families() {
  std::vector<Family> out;
  out.push_back({"(1,-1,-1,...)", {{1, -1, -1}}});
  out.push_back({"(1,-1,1,1,...)", {{1, -1, 1, 1}}});
  Family f3{"(1,-n,-1,-l,...)", {}}, f4{"(1,-n,-1,1,1,...)", {}}, f5{"(1,-n,1,1,...)", {}},
      f6{"(1,-n,1,-1,-1,...)", {}};
  for (int n = 1; n <= 3; ++n) {
    for (int l = 1; l <= 3; ++l) f3.members.push_back({1, -n, -1, -l});
    f4.members.push_back({1, -n, -1, 1, 1});
    f5.members.push_back({1, -n, 1, 1});
    f6.members.push_back({1, -n, 1, -1, -1});
  }
  out.push_back(f3);
  out.push_back(f4);
  out.push_back(f5);
  out.push_back(f6);
  return out;
}

int exp_bound_for(const std::vector<int>& p) {
  int m = 0;
  for (int b : p) m = std::max(m, std::abs(b));
  return 2 * m + 2;
}

/// Every F2[U,V] complex on x_0..x_k alone: prescribed zig-zag arrows plus any
/// UV-divisible homogeneous entries with exponents <= e. True if one has d^2 = 0.
bool brute_force_prefix_lift(const std::vector<int>& prefix, int e) {
  const std::size_t n = prefix.size() + 1;
  std::vector<Bigrading> gr(n, Bigrading{0, 0});
  std::vector<std::pair<std::size_t, std::size_t>> fixed;
  for (std::size_t i = 1; i < n; ++i) {
    const int b = prefix[i - 1];
    const int k = std::abs(b);
    const Monomial m = i % 2 == 1 ? Monomial{k, 0} : Monomial{0, k};
    const Bigrading step{2 * m.u - 1, 2 * m.v - 1};
    gr[i] = b < 0 ? gr[i - 1] + step : gr[i - 1] - step;
    fixed.push_back(b < 0 ? std::pair{i - 1, i} : std::pair{i, i - 1});
  }
  std::vector<Generator> gens;
  for (std::size_t i = 0; i < n; ++i) gens.push_back({"x" + std::to_string(i), gr[i]});
  BigradedComplex base(RingTag::UV, gens);
  std::vector<std::tuple<std::size_t, std::size_t, Monomial>> free;
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q < n; ++q) {
      if (p == q) continue;
      const auto m = arrow_monomial(gr[p], gr[q]);
      if (!m) continue;
      if (std::find(fixed.begin(), fixed.end(), std::pair{p, q}) != fixed.end()) {
        base.add_arrow(p, q, *m);
      } else if (m->u >= 1 && m->v >= 1 && m->u <= e && m->v <= e) {
        free.emplace_back(p, q, *m);
      }
    }
  REQUIRE(free.size() <= 20);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << free.size()); ++mask) {
    auto c = base;
    for (std::size_t k = 0; k < free.size(); ++k)
      if (mask >> k & 1) c.add_arrow(std::get<0>(free[k]), std::get<1>(free[k]), std::get<2>(free[k]));
    if (validate(c).ok()) return true;
  }
  return false;
}

void check_witness(const std::vector<int>& prefix, const BigradedComplex& w) {
  REQUIRE(validate(w).ok());
  const std::size_t k = prefix.size() + 1;
  REQUIRE(w.size() >= k);
  for (std::size_t i = 0; i < k; ++i) REQUIRE(w.generator(i).name == "x" + std::to_string(i));
  for (std::size_t p = 0; p < w.size(); ++p)
    for (std::size_t q = 0; q < w.size(); ++q) {
      if (p >= k && q >= k) continue;
      const auto& e = w.entry(p, q);
      const bool prescribed = (p + 1 == q || q + 1 == p) && p < k && q < k &&
                              ((prefix[std::max(p, q) - 1] < 0) == (p < q));
      if (prescribed) {
        const int b = std::abs(prefix[std::max(p, q) - 1]);
        const Monomial m = std::max(p, q) % 2 == 1 ? Monomial{b, 0} : Monomial{0, b};
        CHECK(e == RingElem::monomial(RingTag::UV, m));
      } else {
        for (const auto& t : e.terms()) CHECK(t.is_mixed());
      }
    }
}

}  // namespace

TEST_CASE("not_realizable examples", "[obstructions]") {
  CHECK(not_realizable({1, -1, -1}));
  CHECK(not_realizable({1, -2, -1, -1}));
  CHECK_FALSE(not_realizable({1, -2, 2, -1}));
  CHECK(not_realizable({1, 2}));
  CHECK(not_realizable({1, 3, -3, -1}));
  CHECK_FALSE(not_realizable({1, -1}));
  CHECK_FALSE(not_realizable({1, -1, 1, -1}));
  CHECK_FALSE(not_realizable({-1, 1}));
  CHECK_FALSE(not_realizable({2, -1}));
  CHECK_FALSE(not_realizable({}));
  CHECK_THROWS_AS(not_realizable({1, 0}), std::invalid_argument);
}

TEST_CASE("Each family instance matches its own pattern", "[obstructions]") {
  for (const auto& fam : lemma_families())
    for (const auto& p : fam.members) {
      const auto rule = matching_obstruction(p);
      REQUIRE(rule);
      // With n = 1 the general families overlap the first two.
      if (p[1] != -1 || p.size() <= 4 && fam.name.find('n') == std::string::npos) {
        CHECK(rule->pattern == fam.name);
        CHECK(rule->min_length == static_cast<int>(p.size()));
      }
      CHECK(rule->min_length <= static_cast<int>(p.size()));
      // A pattern only looks at its leading entries.
      auto longer = p;
      longer.push_back(7);
      longer.push_back(-7);
      CHECK(not_realizable(longer));
    }
}

TEST_CASE("Survivors of the pipeline are never obstructed", "[obstructions]") {
  for (int n = 1; n <= 12; ++n) {
    const std::vector<int> p{1, -n, n, -1};
    for (std::size_t k = 0; k <= p.size(); ++k) CHECK_FALSE(not_realizable({p.begin(), p.begin() + k}));
  }
}

TEST_CASE("lifting_oracle examples", "[obstructions]") {
  const auto r = lifting_oracle({1, -2, -1, -1}, {2, 4});
  CHECK(r.verdict == LiftVerdict::Refuted);

  const auto t = lifting_oracle({1, -1}, {2, 4});
  REQUIRE(t.verdict == LiftVerdict::Exists);
  REQUIRE(t.witness);
  check_witness({1, -1}, *t.witness);

  CHECK(lifting_oracle({1, -1, -1}, {2, 4}).verdict == LiftVerdict::Refuted);
  CHECK_THROWS_AS(lifting_oracle({1, -1}, {3, 4}), std::invalid_argument);
  CHECK_THROWS_AS(lifting_oracle({1, 0}, {}), std::invalid_argument);
}

TEST_CASE("Predicate implies oracle refutation", "[obstructions][property]") {
  for (const auto& fam : lemma_families())
    for (const auto& p : fam.members) {
      REQUIRE(not_realizable(p));
      LiftOptions opt{2, exp_bound_for(p)};
      const auto r = lifting_oracle(p, opt);
      INFO(format_obstruction_line(p, opt, r));
      CHECK(r.verdict == LiftVerdict::Refuted);
    }
}

TEST_CASE("Realized prefixes lift", "[obstructions][property]") {
  for (const std::vector<int>& p : std::vector<std::vector<int>>{
           {1, -1}, {1, -1, 1, -1}, {1, -2, 2, -1}, {1, -3, 3, -1}, {}, {-1, 1}, {1, -1, 1}}) {
    LiftOptions opt{2, exp_bound_for(p)};
    const auto r = lifting_oracle(p, opt);
    INFO(format_obstruction_line(p, opt, r));
    REQUIRE(r.verdict == LiftVerdict::Exists);
    REQUIRE(r.witness);
    check_witness(p, *r.witness);
  }
}

TEST_CASE("Prefix-only search agrees with brute force", "[obstructions][property]") {
  std::vector<std::vector<int>> prefixes{{1, -1}, {1, -1, 1, -1}, {1, -2, 2, -1}, {-1, 1}, {1, -1, 1}};
  for (const auto& fam : lemma_families())
    for (const auto& p : fam.members) prefixes.push_back(p);
  for (const auto& p : prefixes) {
    for (int e : {2, 3}) {
      const auto r = lifting_oracle(p, {0, e, false});
      INFO(format_obstruction_line(p, {0, e}, r));
      CHECK((r.verdict == LiftVerdict::Exists) == brute_force_prefix_lift(p, e));
    }
  }
}

TEST_CASE("Core refutation is confirmed by the full search", "[obstructions][property]") {
  for (const auto& fam : lemma_families()) {
    const auto& p = fam.members.front();
    const auto with_core = lifting_oracle(p, {1, 2, true});
    const auto full = lifting_oracle(p, {1, 2, false});
    INFO(fam.name);
    CHECK(with_core.refuted_by_core);
    CHECK(full.verdict == LiftVerdict::Refuted);
    CHECK(full.configurations > 0);
  }
}

TEST_CASE("Oracle result does not depend on the job count", "[obstructions][property]") {
  for (const std::vector<int>& p : std::vector<std::vector<int>>{{1, -1, 1, -1}, {1, -2, -1, -1}, {1, -1, 1}}) {
    const auto a = lifting_oracle(p, {2, 3, false, 1});
    const auto b = lifting_oracle(p, {2, 3, false, 3});
    CHECK(a.verdict == b.verdict);
    CHECK(a.configurations == b.configurations);
    CHECK(a.nodes == b.nodes);
    CHECK(a.witness == b.witness);
  }
}

TEST_CASE("Obstruction report line", "[obstructions]") {
  LiftOptions opt{2, 6};
  const auto r = lifting_oracle({1, -2, -1, -1}, opt);
  CHECK(format_obstruction_line({1, -2, -1, -1}, opt, r) ==
        "obstruction (1,-2,-1,-1) predicate=true oracle=refuted bounds=2,6");
}
