#include <numeric>
#include <random>

#include "cmtop/fixtures.hpp"
#include "cmtop/knot_words.hpp"
#include "doctest.h"

using namespace cmtop;

namespace {

std::pair<long, long> exponent_sums(const GroupWord& w) {
  long p = 0, q = 0;
  for (Letter l : w.letters) {
    if (l == Letter::X) ++p;
    if (l == Letter::XInv) --p;
    if (l == Letter::Y) ++q;
    if (l == Letter::YInv) --q;
  }
  return {p, q};
}

long mod(long a, long n) { return ((a % n) + n) % n; }

std::vector<std::string> groups() { return {"Z/2", "Z/3", "Z/6", "S3"}; }

}  // namespace

TEST_CASE("word parsing") {
  CHECK(parse_word("X y x Y D").to_string() == "XyxYD");
  CHECK(parse_word("").letters.empty());
  CHECK(parse_word("XyD").has_da());
  CHECK(parse_word("XyD").without_da() == parse_word("Xy"));
  CHECK_THROWS_WITH_AS(parse_word("XZ"), doctest::Contains("position 2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_word("XDD"), std::invalid_argument);
  CHECK_THROWS_AS(builtin_word("trefoil"), std::invalid_argument);
}

TEST_CASE("builtin words") {
  CHECK(builtin_word("fig8").to_string() == "XyxYxyXYxYD");
  CHECK(builtin_word("T52").to_string() == "YXXXXYxD");
  CHECK(builtin_word("k52").to_string() == "XyxYXyxYxyXYxyD");
  CHECK(builtin_word("k52").without_da().letters.size() == 14);
}

TEST_CASE("word evaluation") {
  auto z2 = identity_cm(build_cyclic(2));
  CHECK(evaluate_word(GroupWord{}, z2, 1, 1, 1) == 0);
  CHECK(evaluate_word(builtin_word("fig8"), z2, 0, 0, 0) == 0);
  CHECK(evaluate_word(builtin_word("t52"), z2, 0, 1, 0) == 0);
  CHECK(evaluate_word(parse_word("D"), z2, 0, 0, 1) == 1);
}

TEST_CASE("word state sums and representation counts") {
  CHECK(word_state_sum(builtin_word("fig8"), fixture_cm("trivh_z2")).value == 1);
  CHECK(word_state_sum(builtin_word("t52"), fixture_cm("trivh_z2")).value == 1);
  auto trivial = trivial_h_cm(build_trivial());
  for (const auto& name : builtin_word_names()) CHECK(word_state_sum(builtin_word(name), trivial).value == 1);
  CHECK(count_reps(builtin_word("fig8").without_da(), *build_cyclic(3)) == 3);
  CHECK(count_reps(builtin_word("fig8").without_da(), *build_trivial()) == 1);
  CHECK(count_reps(builtin_word("t52").without_da(), *build_cyclic(2)) == 2);
  CHECK_THROWS_AS(count_reps(builtin_word("t52"), *build_cyclic(2)), std::invalid_argument);
}

TEST_CASE("trivial H: |G| times the state sum counts representations") {
  for (const auto& spec : groups()) {
    auto g = build_group_from_spec(spec);
    auto cm = trivial_h_cm(g);
    for (const auto& name : builtin_word_names()) {
      CAPTURE(spec);
      CAPTURE(name);
      auto w = builtin_word(name);
      CHECK(word_state_sum(w, cm).value * g->order() == count_reps(w.without_da(), *g));
    }
  }
}

TEST_CASE("abelian G with trivial H depends only on exponent sums") {
  std::mt19937_64 rng(5);
  for (long n = 2; n <= 7; ++n) {
    auto cm = trivial_h_cm(build_cyclic(n));
    for (int trial = 0; trial < 20; ++trial) {
      GroupWord w;
      const int len = static_cast<int>(rng() % 12);
      for (int i = 0; i < len; ++i) w.letters.push_back(static_cast<Letter>(rng() % 4));
      auto [p, q] = exponent_sums(w);
      // px + qy = 0 has n * gcd(p, q, n) solutions in (Z/n)^2.
      const long expected = std::gcd(std::gcd(mod(p, n), mod(q, n)), n);
      CAPTURE(w.to_string());
      CHECK(word_state_sum(w, cm).value == expected);
    }
  }
}

TEST_CASE("general H: solutions are counted through the kernel") {
  for (const auto& cmn : cm_fixture_names()) {
    auto cm = fixture_cm(cmn);
    const auto& G = cm.g();
    std::vector<std::size_t> preimages(G.order(), 0);
    for (Element y : cm.boundary_table()) ++preimages[y];
    for (const auto& name : builtin_word_names()) {
      auto w = builtin_word(name).without_da();
      std::uint64_t total = 0;
      for (Element x = 0; x < G.order(); ++x)
        for (Element y = 0; y < G.order(); ++y) {
          Element r = 0;
          for (Letter l : w.letters)
            r = G.mul(r, l == Letter::X ? x : l == Letter::Y ? y : l == Letter::XInv ? G.inv(x) : G.inv(y));
          // r boundary(a^-1) = e iff boundary(a) = r.
          total += preimages[r];
        }
      CAPTURE(cmn);
      CAPTURE(name);
      auto v = word_state_sum(builtin_word(name), cm);
      CHECK(v.count == total);
      CHECK(v.value == Rational(BigInt(total), BigInt(G.order() * cm.h().order())));
    }
  }
}

TEST_CASE("word state sum is independent of the thread count") {
  auto cm = fixture_cm("id_s3");
  auto w = builtin_word("k52");
  CHECK(word_state_sum(w, cm, 4) == word_state_sum(w, cm, 1));
}

TEST_CASE("figure-eight boundary system") {
  auto trivial = verify_boundary_system(*build_trivial());
  CHECK(trivial.clean());
  CHECK(trivial.assignments == 1);

  auto z2 = verify_boundary_system(*build_cyclic(2));
  CHECK(z2.clean());
  CHECK(z2.assignments == 128);
  CHECK(z2.unique_completions == z2.fin_tuples);

  // Over Z/n the first three equations force g34 = g3''4' - g11 and equation d
  // reduces to 2 g3''4' = 0.
  for (Element n : {3u, 4u, 5u}) {
    auto g = build_cyclic(n);
    std::uint64_t expected_failures = 0;
    BoundaryAssignment v{};
    while (true) {
      auto c = check_boundary_system(*g, v);
      if (c.a && c.b && c.c) expected_failures += (2 * v[kG3pp4p]) % n != 0;
      std::size_t i = 0;
      while (i < v.size() && ++v[i] == n) v[i++] = 0;
      if (i == v.size()) break;
    }
    auto rep = verify_boundary_system(*g);
    CAPTURE(n);
    CHECK(rep.d_failures == expected_failures);
    CHECK(rep.fin_failures == 0);
    CHECK(rep.substitution_failures == 0);
  }
  auto z3 = verify_boundary_system(*build_cyclic(3));
  CHECK(z3.d_failures > 0);
  CHECK_FALSE(z3.counterexamples.empty());
  auto c = check_boundary_system(*build_cyclic(3), {1, 0, 0, 1, 0, 1, 0});
  CHECK((c.a && c.b && c.c));
  CHECK_FALSE(c.d);

  auto s3 = verify_boundary_system(*build_symmetric(3), 100000, 1);
  CHECK_FALSE(s3.exhaustive);
  CHECK(s3.assignments == 100000);
  CHECK(s3.substitution_failures == 0);
  CHECK(s3.to_string().find("counterexample") != std::string::npos);
}
