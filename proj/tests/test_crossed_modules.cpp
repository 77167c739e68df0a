#include <random>

#include "cmtop/crossed_module.hpp"
#include "doctest.h"

using namespace cmtop;

namespace {

// Independent restatement of the axioms, straight from the tables.
bool axioms_hold(const CrossedModule& cm, bool peiffer) {
  const auto& G = cm.g();
  const auto& H = cm.h();
  const Element ng = G.order(), nh = H.order();
  auto d = [&](Element y) { return cm.boundary_table()[y]; };
  auto act = [&](Element x, Element y) { return cm.action_table()[x * nh + y]; };
  for (Element a = 0; a < nh; ++a)
    for (Element b = 0; b < nh; ++b)
      if (d(H.mul(a, b)) != G.mul(d(a), d(b))) return false;
  for (Element x = 0; x < ng; ++x) {
    std::vector<int> seen(nh, 0);
    for (Element y = 0; y < nh; ++y) {
      if (d(act(x, y)) != G.mul(G.mul(x, d(y)), G.inv(x))) return false;
      if (seen[act(x, y)]++) return false;
      for (Element z = 0; z < nh; ++z)
        if (act(x, H.mul(y, z)) != H.mul(act(x, y), act(x, z))) return false;
      for (Element x2 = 0; x2 < ng; ++x2)
        if (act(G.mul(x, x2), y) != act(x, act(x2, y))) return false;
    }
  }
  for (Element y = 0; y < nh; ++y) {
    if (act(0, y) != y) return false;
    if (peiffer)
      for (Element z = 0; z < nh; ++z)
        if (act(d(y), z) != H.mul(H.mul(y, z), H.inv(y))) return false;
  }
  return true;
}

std::vector<CrossedModule> shipped() {
  auto z2 = build_cyclic(2), z3 = build_cyclic(3), s3 = build_symmetric(3), z4 = build_cyclic(4);
  return {identity_cm(z2),
          identity_cm(z3),
          identity_cm(s3),
          conjugation_cm(*build_group_from_spec("Z/2xZ/2")),
          conjugation_cm(*z3),
          trivial_h_cm(z2),
          trivial_h_cm(z3),
          trivial_h_cm(s3),
          trivial_action_cm("z4_to_z2", z4, z2, {0, 1, 0, 1})};
}

}  // namespace

TEST_CASE("shipped crossed modules are valid under the strict check") {
  for (const auto& cm : shipped()) {
    CAPTURE(cm.name());
    CHECK(validate(cm, true).empty());
    CHECK(axioms_hold(cm, true));
  }
}

TEST_CASE("conjugation construction") {
  auto c2 = conjugation_cm(*build_cyclic(2));
  CHECK(c2.g().order() == 1);
  auto c3 = conjugation_cm(*build_cyclic(3));
  CHECK(c3.g().order() == 2);
  for (Element y = 0; y < 3; ++y) CHECK(c3.boundary(y) == 0);
  auto v4 = build_group_from_spec("Z/2xZ/2");
  auto cv = conjugation_cm(*v4);
  CHECK(cv.g().order() == 6);
  for (Element y = 0; y < 4; ++y) CHECK(cv.boundary(y) == 0);
  // The swap (a, b) -> (b, a) on indices 2a + b fixes 0 and 3, exchanges 1 and 2.
  auto aut = build_aut_group(*v4);
  const std::vector<Element> swap{0, 2, 1, 3};
  Element sigma = 0;
  for (Element i = 0; i < aut.bijections.size(); ++i)
    if (aut.bijections[i] == swap) sigma = i;
  REQUIRE(sigma != 0);
  for (Element y = 0; y < 4; ++y) CHECK(cv.act(sigma, y) == swap[y]);
}

TEST_CASE("identity crossed module acts by conjugation") {
  auto s3 = build_symmetric(3);
  auto cm = identity_cm(s3);
  for (Element x = 0; x < 6; ++x) {
    CHECK(cm.act(0, x) == x);
    for (Element y = 0; y < 6; ++y) CHECK(cm.act(x, y) == s3->mul(s3->mul(x, y), s3->inv(x)));
  }
  CHECK_THROWS_AS(cm.act_checked(6, 0), std::out_of_range);
}

TEST_CASE("a mutated action table is reported with a witness") {
  auto cm = identity_cm(build_cyclic(3));
  auto action = cm.action_table();
  // Conjugation in Z/3 is trivial, so 1 |> 2 is already 2; overwrite with 1.
  action[1 * 3 + 2] = 1;
  CrossedModule bad("bad", cm.h_ptr(), cm.g_ptr(), cm.boundary_table(), action);
  auto report = validate(bad, false);
  REQUIRE_FALSE(report.empty());
  bool cites_action = false;
  for (const auto& v : report) {
    CHECK_FALSE(v.witness.empty());
    CHECK_FALSE(v.message.empty());
    cites_action |= v.axiom == Axiom::ActionAutomorphism || v.axiom == Axiom::ActionCompatibility;
  }
  CHECK(cites_action);
}

TEST_CASE("shape errors throw") {
  auto z2 = build_cyclic(2), z3 = build_cyclic(3);
  CHECK_THROWS_AS(CrossedModule("x", z2, z3, {0}, std::vector<Element>(6, 0)),
                  std::invalid_argument);
  CHECK_THROWS_AS(CrossedModule("x", z2, z3, {0, 0}, std::vector<Element>(5, 0)),
                  std::invalid_argument);
  CHECK_THROWS_AS(CrossedModule("x", z2, z3, {0, 3}, std::vector<Element>(6, 0)),
                  std::invalid_argument);
  CHECK_THROWS_AS(CrossedModule("x", z2, z3, {0, 0}, std::vector<Element>(6, 2)),
                  std::invalid_argument);
}

TEST_CASE("single-entry mutations are detected or genuinely valid") {
  for (const auto& cm : shipped()) {
    CAPTURE(cm.name());
    const Element ng = cm.g().order(), nh = cm.h().order();
    for (std::size_t i = 0; i < nh; ++i)
      for (Element v = 0; v < ng; ++v) {
        if (v == cm.boundary_table()[i]) continue;
        auto b = cm.boundary_table();
        b[i] = v;
        CrossedModule m("m", cm.h_ptr(), cm.g_ptr(), b, cm.action_table());
        bool rejected = !validate(m, true).empty();
        CHECK(rejected == !axioms_hold(m, true));
      }
    for (std::size_t i = 0; i < cm.action_table().size(); ++i)
      for (Element v = 0; v < nh; ++v) {
        if (v == cm.action_table()[i]) continue;
        auto a = cm.action_table();
        a[i] = v;
        CrossedModule m("m", cm.h_ptr(), cm.g_ptr(), cm.boundary_table(), a);
        bool rejected = !validate(m, true).empty();
        CHECK(rejected == !axioms_hold(m, true));
      }
  }
}

TEST_CASE("a structure satisfying the basic axioms but not Peiffer") {
  // H = Z/2 x Z/2 (index 2a + b), G = Z/2 swapping the coordinates,
  // boundary(a, b) = a + b.
  auto h = build_group_from_spec("Z/2xZ/2");
  auto g = build_cyclic(2);
  std::vector<Element> action = {0, 1, 2, 3, 0, 2, 1, 3};
  CrossedModule cm("swap", h, g, {0, 1, 1, 0}, action);
  CHECK(validate(cm, false).empty());
  auto strict = validate(cm, true);
  REQUIRE(strict.size() == 1);
  CHECK(strict[0].axiom == Axiom::Peiffer);
  CHECK(axioms_hold(cm, false));
  CHECK_FALSE(axioms_hold(cm, true));
}
