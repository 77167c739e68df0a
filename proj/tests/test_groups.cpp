#include <algorithm>
#include <array>
#include <numeric>
#include <set>

#include "cmtop/group.hpp"
#include "doctest.h"

using namespace cmtop;

namespace {

// Exhaustive re-check of the group laws, written against the raw table.
bool satisfies_group_laws(const FiniteGroup& g) {
  const std::size_t n = g.order();
  auto t = g.table();
  auto at = [&](std::size_t a, std::size_t b) { return static_cast<std::size_t>(t[a * n + b]); };
  for (std::size_t x = 0; x < n; ++x) {
    if (at(0, x) != x || at(x, 0) != x) return false;
    if (at(x, g.inverses()[x]) != 0) return false;
    for (std::size_t y = 0; y < n; ++y) {
      if (at(x, y) >= n) return false;
      for (std::size_t z = 0; z < n; ++z)
        if (at(at(x, y), z) != at(x, at(y, z))) return false;
    }
  }
  return true;
}

std::size_t count_bijective_homs(const FiniteGroup& g) {
  std::vector<Element> p(g.order());
  std::iota(p.begin(), p.end(), 0);
  std::size_t count = 0;
  do {
    bool ok = true;
    for (Element a = 0; a < g.order() && ok; ++a)
      for (Element b = 0; b < g.order() && ok; ++b)
        ok = p[g.mul(a, b)] == g.mul(p[a], p[b]);
    count += ok;
  } while (std::next_permutation(p.begin(), p.end()));
  return count;
}

}  // namespace

TEST_CASE("compose on small groups") {
  auto z3 = build_cyclic(3);
  CHECK(z3->compose(1, 2) == 0);
  for (Element x = 0; x < 3; ++x) CHECK(z3->compose(z3->identity(), x) == x);
  CHECK_THROWS_AS(z3->compose(3, 0), std::out_of_range);
  CHECK_THROWS_AS(z3->inverse(7), std::out_of_range);
}

TEST_CASE("S3 product of two transpositions is the hand-computed 3-cycle") {
  auto s3 = build_symmetric(3);
  auto perms = symmetric_permutations(3);
  auto index_of = [&](std::array<Element, 3> p) {
    auto it = std::find(perms.begin(), perms.end(), std::vector<Element>(p.begin(), p.end()));
    REQUIRE(it != perms.end());
    return static_cast<Element>(it - perms.begin());
  };
  const std::array<Element, 3> s01{1, 0, 2}, s12{0, 2, 1};
  // (s01 o s12)(x) = s01(s12(x)): 0->0->1, 1->2->2, 2->1->0
  const std::array<Element, 3> expected{1, 2, 0};
  Element got = s3->compose(index_of(s01), index_of(s12));
  CHECK(got == index_of(expected));
  CHECK(got != s3->compose(index_of(s12), index_of(s01)));
}

TEST_CASE("build_cyclic") {
  CHECK(build_cyclic(1)->order() == 1);
  auto z2 = build_cyclic(2);
  CHECK(std::vector<Element>(z2->table().begin(), z2->table().end()) ==
        std::vector<Element>{0, 1, 1, 0});
  CHECK(build_cyclic(6)->inverse(2) == 4);
  CHECK_THROWS_AS(build_cyclic(0), std::invalid_argument);
}

TEST_CASE("constructed groups satisfy all laws") {
  for (const char* spec : {"1", "Z/2", "Z/3", "Z/6", "S3", "S4", "Z/2xZ/2", "Z/4xZ/2", "Aut(Z/2xZ/2)"}) {
    CAPTURE(spec);
    CHECK(satisfies_group_laws(*build_group_from_spec(spec)));
  }
}

TEST_CASE("invalid tables are rejected") {
  CHECK_THROWS_AS(FiniteGroup("x", 2, {0, 1, 1, 2}), std::invalid_argument);  // closure
  CHECK_THROWS_AS(FiniteGroup("x", 2, {1, 0, 0, 1}), std::invalid_argument);  // identity not 0
  CHECK_THROWS_AS(FiniteGroup("x", 2, {0, 1, 1, 1}), std::invalid_argument);  // no inverse
  CHECK_THROWS_AS(FiniteGroup("x", 2, {0, 1}), std::invalid_argument);        // shape
  // Latin square with identity 0 that is not associative (order 5 loop).
  std::vector<Element> loop = {0, 1, 2, 3, 4, 1, 0, 3, 4, 2, 2, 4, 0, 1, 3,
                               3, 2, 4, 0, 1, 4, 3, 1, 2, 0};
  CHECK_THROWS_AS(FiniteGroup("loop", 5, loop), std::invalid_argument);
}

TEST_CASE("automorphism groups") {
  CHECK(build_aut_group(*build_cyclic(2)).group->order() == 1);
  auto aut3 = build_aut_group(*build_cyclic(3));
  CHECK(aut3.group->order() == count_bijective_homs(*build_cyclic(3)));
  CHECK(aut3.group->order() == 2);
  auto v4 = build_group_from_spec("Z/2xZ/2");
  auto aut4 = build_aut_group(*v4);
  CHECK(aut4.group->order() == count_bijective_homs(*v4));
  CHECK(aut4.group->order() == 6);
  CHECK(std::is_sorted(aut4.bijections.begin(), aut4.bijections.end()));
  CHECK(satisfies_group_laws(*aut4.group));
  for (const auto& b : aut4.bijections)
    for (Element x = 0; x < 4; ++x)
      for (Element y = 0; y < 4; ++y) CHECK(b[v4->mul(x, y)] == v4->mul(b[x], b[y]));
  // Element i composes as the bijections do.
  for (Element i = 0; i < 6; ++i)
    for (Element j = 0; j < 6; ++j)
      for (Element x = 0; x < 4; ++x)
        CHECK(aut4.bijections[aut4.group->mul(i, j)][x] == aut4.bijections[i][aut4.bijections[j][x]]);
}

TEST_CASE("kernel") {
  auto z3 = build_cyclic(3);
  CHECK(kernel(GroupHom(z3, z3, {0, 1, 2})) == std::vector<Element>{0});
  auto z4 = build_cyclic(4), z2 = build_cyclic(2);
  GroupHom mod2 = GroupHom::checked(z4, z2, {0, 1, 0, 1});
  auto k = kernel(mod2);
  CHECK(k == std::vector<Element>{0, 2});
  std::set<Element> ks(k.begin(), k.end());
  for (Element a : k) {
    CHECK(ks.count(z4->inv(a)));
    for (Element b : k) CHECK(ks.count(z4->mul(a, b)));
  }
  auto s3 = build_symmetric(3);
  CHECK(kernel(GroupHom(s3, build_trivial(), std::vector<Element>(6, 0))).size() == 6);
  CHECK_THROWS_AS(GroupHom::checked(z4, z2, {0, 1, 1, 1}), std::invalid_argument);
}

TEST_CASE("group specs") {
  CHECK(build_group_from_spec("Z3")->order() == 3);
  CHECK(build_group_from_spec("S_3")->order() == 6);
  CHECK(build_group_from_spec("trivial")->order() == 1);
  CHECK(build_group_from_spec("Z/2 x Z/3")->order() == 6);
  CHECK(build_group_from_spec("Z/2 x Z/3")->is_abelian());
  CHECK_FALSE(build_group_from_spec("S3")->is_abelian());
  CHECK_THROWS_AS(build_group_from_spec("Q8"), std::invalid_argument);
  CHECK_THROWS_AS(build_group_from_spec(""), std::invalid_argument);
}
