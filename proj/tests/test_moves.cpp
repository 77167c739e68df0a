#include <algorithm>

#include "cmtop/fixtures.hpp"
#include "cmtop/moves.hpp"
#include "doctest.h"

using namespace cmtop;

namespace {

using Tets = std::vector<std::array<VertexLabel, 4>>;

Complex tets(Tets t) { return Complex::from_tet_list(t); }

EntityId face_id(const Complex& c, std::array<VertexLabel, 3> v) {
  for (Index f = 0; f < c.faces().size(); ++f) {
    auto fv = c.face_vertices(f);
    if (c.vertex_labels()[fv[0]] == v[0] && c.vertex_labels()[fv[1]] == v[1] &&
        c.vertex_labels()[fv[2]] == v[2])
      return c.faces()[f].id;
  }
  FAIL("no such face");
  return -1;
}

EntityId edge_id(const Complex& c, VertexLabel a, VertexLabel b) {
  for (const auto& e : c.edges())
    if (c.vertex_labels()[e.tail] == a && c.vertex_labels()[e.head] == b) return e.id;
  FAIL("no such edge");
  return -1;
}

long long delta(std::size_t after, std::size_t before) {
  return static_cast<long long>(after) - static_cast<long long>(before);
}

std::array<long long, 4> count_delta(const Complex& before, const Complex& after) {
  auto a = before.counts(), b = after.counts();
  return {delta(b.k0, a.k0), delta(b.k1, a.k1), delta(b.k2, a.k2), delta(b.k3, a.k3)};
}

std::array<long long, 4> expected_delta(MoveKind k) {
  switch (k) {
    case MoveKind::P14: return {1, 4, 6, 3};
    case MoveKind::P41: return {-1, -4, -6, -3};
    case MoveKind::P23: return {0, 1, 2, 1};
    case MoveKind::P32: return {0, -1, -2, -1};
    case MoveKind::B13: return {1, 4, 5, 2};
    case MoveKind::B31: return {-1, -4, -5, -2};
    case MoveKind::B22: return {0, 0, 0, 0};
  }
  return {};
}

const MoveKind kAllKinds[] = {MoveKind::P14, MoveKind::P41, MoveKind::P23, MoveKind::P32,
                              MoveKind::B13, MoveKind::B31, MoveKind::B22};

}  // namespace

TEST_CASE("P23 on two tets") {
  auto c = tets({{1, 2, 3, 4}, {2, 3, 4, 5}});
  CHECK(c.counts() == SimplexCounts{5, 9, 7, 2});
  auto r = apply(c, {MoveKind::P23, face_id(c, {2, 3, 4}), std::nullopt});
  CHECK(r.complex.counts() == SimplexCounts{5, 10, 9, 3});
  CHECK(canonical_code(r.complex) ==
        canonical_code(tets({{1, 2, 3, 5}, {1, 2, 4, 5}, {1, 3, 4, 5}})));
  CHECK(r.inverse.kind == MoveKind::P32);
  auto back = apply(r.complex, r.inverse);
  CHECK(canonical_code(back.complex) == canonical_code(c));
}

TEST_CASE("B13 on a boundary face with the new vertex first") {
  auto c = tets({{2, 3, 4, 5}});
  auto r = apply(c, {MoveKind::B13, face_id(c, {3, 4, 5}), 1});
  CHECK(r.complex.counts() == SimplexCounts{5, 10, 9, 3});
  CHECK(r.complex.is_simplicial());
  CHECK(canonical_code(r.complex) ==
        canonical_code(tets({{1, 2, 3, 4}, {1, 2, 3, 5}, {1, 2, 4, 5}})));
  CHECK(r.created_vertices == std::vector<VertexLabel>{1});
  auto back = apply(r.complex, r.inverse);
  CHECK(canonical_code(back.complex) == canonical_code(c));
}

TEST_CASE("B22 flips the diagonal 24 to 35") {
  auto c = tets({{1, 2, 3, 4}, {1, 2, 4, 5}});
  auto r = apply(c, {MoveKind::B22, edge_id(c, 2, 4), std::nullopt});
  CHECK(r.complex.counts() == c.counts());
  CHECK(canonical_code(r.complex) == canonical_code(tets({{1, 2, 3, 5}, {1, 3, 4, 5}})));
  const auto& ce = r.created_edges;
  REQUIRE(ce.size() == 1);
  Index e = *r.complex.edge_index(ce[0]);
  CHECK(r.complex.vertex_labels()[r.complex.edges()[e].tail] == 3);
  CHECK(r.complex.vertex_labels()[r.complex.edges()[e].head] == 5);
  auto back = apply(r.complex, r.inverse);
  CHECK(canonical_code(back.complex) == canonical_code(c));
}

TEST_CASE("P14 and P41") {
  auto c = fixture_complex("single_tet");
  auto r = apply(c, {MoveKind::P14, c.tets()[0].id, std::nullopt});
  CHECK(r.complex.counts() == SimplexCounts{5, 10, 10, 4});
  CHECK(r.created_vertices == std::vector<VertexLabel>{4});
  CHECK(r.inverse == MoveDescriptor{MoveKind::P41, 4, std::nullopt});
  auto back = apply(r.complex, r.inverse);
  CHECK(back.complex.counts() == c.counts());
  CHECK(canonical_code(back.complex) == canonical_code(c));
  CHECK_THROWS_AS(apply(c, {MoveKind::P14, 0, 2}), MovePreconditionError);
}

TEST_CASE("preconditions") {
  auto c = fixture_complex("single_tet");
  CHECK(enumerate_applicable(c, MoveKind::P23).empty());
  CHECK(enumerate_applicable(c, MoveKind::B13).size() == 4);
  CHECK(enumerate_applicable(c, MoveKind::P41).empty());
  CHECK(enumerate_applicable(c, MoveKind::B31).empty());
  CHECK(enumerate_applicable(fixture_complex("s3_boundary_4simplex"), MoveKind::P14).size() == 5);
  CHECK(enumerate_applicable(fixture_complex("s3_boundary_4simplex"), MoveKind::B13).empty());
  // Boundary face for P23, interior face for B13.
  auto two = tets({{1, 2, 3, 4}, {2, 3, 4, 5}});
  CHECK_THROWS_WITH_AS(apply(two, {MoveKind::P23, face_id(two, {1, 2, 3}), std::nullopt}),
                       doctest::Contains("boundary"), MovePreconditionError);
  CHECK_THROWS_AS(apply(two, {MoveKind::B13, face_id(two, {2, 3, 4}), std::nullopt}),
                  MovePreconditionError);
  CHECK_THROWS_AS(apply(two, {MoveKind::P23, 999, std::nullopt}), MovePreconditionError);
  // In the S^3 fixture every edge has degree 3, but P32 would recreate an existing face.
  auto s3 = fixture_complex("s3_boundary_4simplex");
  CHECK(enumerate_applicable(s3, MoveKind::P32).empty());
  CHECK(enumerate_applicable(s3, MoveKind::P23).empty());
}

TEST_CASE("moves on every fixture keep counts, structure and invert") {
  for (const auto& name : manifold_fixture_names()) {
    auto c = fixture_complex(name);
    for (MoveKind kind : kAllKinds) {
      for (const auto& m : enumerate_applicable(c, kind)) {
        CAPTURE(name);
        CAPTURE(to_string(m));
        auto r = apply(c, m);
        CHECK(count_delta(c, r.complex) == expected_delta(kind));
        CHECK(validate_manifold_basics(r.complex).empty());
        CHECK(boundary(r.complex).counts().euler() == boundary(c).counts().euler());
        CHECK(r.complex.is_simplicial() == c.is_simplicial());
        auto back = apply(r.complex, r.inverse);
        CHECK(canonical_code(back.complex) == canonical_code(c));
      }
    }
  }
}

TEST_CASE("move kinds parse") {
  CHECK(parse_move_kind("23") == MoveKind::P23);
  CHECK(parse_move_kind("b13") == MoveKind::B13);
  CHECK(parse_move_kind("P41") == MoveKind::P41);
  CHECK_THROWS_AS(parse_move_kind("b44"), std::invalid_argument);
  for (MoveKind k : kAllKinds) CHECK(inverse_kind(inverse_kind(k)) == k);
}
