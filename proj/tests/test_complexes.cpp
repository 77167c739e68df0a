#include <algorithm>
#include <random>
#include <set>

#include "cmtop/complex.hpp"
#include "cmtop/fixtures.hpp"
#include "cmtop/io.hpp"
#include "doctest.h"

using namespace cmtop;

namespace {

using Tets = std::vector<std::array<VertexLabel, 4>>;

// Subset counting written independently of the library.
SimplexCounts count_subsets(const Tets& tets) {
  std::set<std::vector<VertexLabel>> s[4];
  for (auto t : tets) {
    std::sort(t.begin(), t.end());
    for (int mask = 1; mask < 16; ++mask) {
      std::vector<VertexLabel> sub;
      for (int i = 0; i < 4; ++i)
        if (mask >> i & 1) sub.push_back(t[i]);
      s[sub.size() - 1].insert(sub);
    }
  }
  return {s[0].size(), s[1].size(), s[2].size(), s[3].size()};
}

std::size_t binomial(std::size_t n, std::size_t k) {
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

std::size_t boundary_faces(const Complex& c) {
  std::size_t n = 0;
  for (Index f = 0; f < c.faces().size(); ++f) n += c.is_boundary_face(f);
  return n;
}

bool has_rule(const ComplexReport& r, const std::string& rule) {
  return std::any_of(r.begin(), r.end(), [&](const ComplexViolation& v) { return v.rule == rule; });
}

}  // namespace

TEST_CASE("tet lists") {
  Tets one{{1, 2, 3, 4}};
  auto c = Complex::from_tet_list(one);
  CHECK(c.counts() == SimplexCounts{4, 6, 4, 1});
  CHECK(boundary_faces(c) == 4);
  CHECK(c.is_simplicial());

  Tets two{{1, 2, 3, 4}, {2, 3, 4, 5}};
  auto c2 = Complex::from_tet_list(two);
  CHECK(c2.counts() == count_subsets(two));
  CHECK(c2.counts() == SimplexCounts{5, 9, 7, 2});
  CHECK(boundary_faces(c2) == 6);
}

TEST_CASE("simplex boundaries reproduce binomial counts") {
  for (std::size_t n : {4, 5}) {
    Tets tets;
    for (int mask = 0; mask < (1 << n); ++mask) {
      if (__builtin_popcount(mask) != 4) continue;
      std::array<VertexLabel, 4> t{};
      int k = 0;
      for (std::size_t i = 0; i < n; ++i)
        if (mask >> i & 1) t[k++] = static_cast<VertexLabel>(i + 1);
      tets.push_back(t);
    }
    auto c = Complex::from_tet_list(tets);
    CHECK(c.counts() == SimplexCounts{binomial(n, 1), binomial(n, 2), binomial(n, 3), binomial(n, 4)});
  }
  auto s3 = fixture_complex("s3_boundary_4simplex");
  CHECK(s3.counts() == SimplexCounts{5, 10, 10, 5});
  CHECK(boundary_faces(s3) == 0);
  CHECK(boundary(s3).counts() == SimplexCounts{});
}

TEST_CASE("tet list errors") {
  Tets repeated{{1, 2, 2, 4}};
  CHECK_THROWS_AS(Complex::from_tet_list(repeated), std::invalid_argument);
  Tets three{{0, 1, 2, 3}, {0, 1, 2, 4}, {0, 1, 2, 5}};
  CHECK_THROWS_WITH_AS(Complex::from_tet_list(three), doctest::Contains("more than two"),
                       std::invalid_argument);
}

TEST_CASE("boundary Euler characteristics") {
  CHECK(boundary(fixture_complex("single_tet")).counts().euler() == 2);
  CHECK(boundary(fixture_complex("single_tet")).counts() == SimplexCounts{4, 6, 4, 0});
  CHECK(boundary(fixture_complex("solid_torus")).counts().euler() == 0);
  CHECK(boundary(fixture_complex("s2_interval")).counts().euler() == 4);
}

TEST_CASE("manifold fixtures") {
  auto torus = fixture_complex("solid_torus");
  CHECK(torus.counts() == SimplexCounts{3, 9, 9, 3});
  CHECK_FALSE(torus.is_simplicial());
  Tets s2i;
  for (auto [a, b, c] : std::vector<std::array<VertexLabel, 3>>{{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}}) {
    s2i.push_back({a, b, c, c + 4});
    s2i.push_back({a, b, b + 4, c + 4});
    s2i.push_back({a, a + 4, b + 4, c + 4});
  }
  auto s2 = fixture_complex("s2_interval");
  CHECK(s2.counts() == count_subsets(s2i));
  CHECK(s2.counts() == SimplexCounts{8, 22, 28, 12});
  CHECK(s2.counts().euler() == 2);
  for (const auto& name : manifold_fixture_names()) {
    CAPTURE(name);
    auto report = validate_manifold_basics(fixture_complex(name));
    CHECK(report.empty());
  }
}

TEST_CASE("broken complex is reported") {
  auto broken = fixture_complex("broken_complex");
  auto report = validate_manifold_basics(broken);
  REQUIRE_FALSE(report.empty());
  CHECK(has_rule(report, "tet-slot-compatibility"));
  CHECK(report[0].id == 2);
  CHECK_FALSE(report[0].detail.empty());
}

TEST_CASE("non-manifold configurations") {
  Tets edge_only{{0, 1, 2, 3}, {0, 1, 4, 5}};
  auto report = validate_manifold_basics(Complex::from_tet_list(edge_only));
  CHECK(has_rule(report, "strong-connectivity"));
  CHECK(has_rule(report, "edge-link"));

  // A dangling edge next to a tet.
  auto c = Complex::from_tet_list(Tets{{0, 1, 2, 3}});
  std::vector<VertexLabel> labels(c.vertex_labels().begin(), c.vertex_labels().end());
  labels.push_back(9);
  std::vector<Edge> edges(c.edges().begin(), c.edges().end());
  edges.push_back({0, 4, 100});
  Complex dangling(labels, edges, {c.faces().begin(), c.faces().end()}, {c.tets().begin(), c.tets().end()});
  CHECK(has_rule(validate_manifold_basics(dangling), "purity"));
}

TEST_CASE("structural mutations are detected") {
  for (const auto& name : manifold_fixture_names()) {
    CAPTURE(name);
    auto c = fixture_complex(name);
    std::vector<VertexLabel> labels(c.vertex_labels().begin(), c.vertex_labels().end());
    std::vector<Edge> edges(c.edges().begin(), c.edges().end());
    std::vector<Face> faces(c.faces().begin(), c.faces().end());
    std::vector<Tet> tets(c.tets().begin(), c.tets().end());
    for (std::size_t t = 0; t < tets.size(); ++t)
      for (int s = 0; s < 4; ++s)
        for (Index f = 0; f < faces.size(); ++f) {
          if (f == tets[t].faces[s]) continue;
          auto mutated = tets;
          mutated[t].faces[s] = f;
          CHECK_FALSE(check_structure(Complex(labels, edges, faces, mutated)).empty());
        }
    for (std::size_t f = 0; f < faces.size(); ++f)
      for (int s = 0; s < 3; ++s)
        for (Index e = 0; e < edges.size(); ++e) {
          if (e == faces[f].edges[s]) continue;
          auto mutated = faces;
          mutated[f].edges[s] = e;
          CHECK_FALSE(check_structure(Complex(labels, edges, mutated, tets)).empty());
        }
  }
}

TEST_CASE("relabel") {
  auto tet = fixture_complex("single_tet");
  CHECK(relabel(tet, {}) == tet);
  CHECK(relabel(tet, {{0, 0}, {1, 1}}) == tet);
  auto rev = relabel(tet, {{0, 3}, {1, 2}, {2, 1}, {3, 0}});
  CHECK(rev.is_simplicial());
  CHECK(rev.counts() == tet.counts());
  auto v = rev.tet_vertices(0);
  CHECK(std::vector<VertexLabel>{rev.vertex_labels()[v[0]], rev.vertex_labels()[v[1]],
                                 rev.vertex_labels()[v[2]], rev.vertex_labels()[v[3]]} ==
        std::vector<VertexLabel>{0, 1, 2, 3});
  CHECK_THROWS_AS(relabel(tet, {{0, 1}}), std::invalid_argument);

  std::mt19937_64 rng(7);
  for (const auto& name : manifold_fixture_names()) {
    CAPTURE(name);
    auto c = fixture_complex(name);
    std::vector<VertexLabel> labels(c.vertex_labels().begin(), c.vertex_labels().end());
    for (int trial = 0; trial < 10; ++trial) {
      auto image = labels;
      std::shuffle(image.begin(), image.end(), rng);
      std::map<VertexLabel, VertexLabel> perm, back;
      for (std::size_t i = 0; i < labels.size(); ++i) {
        perm[labels[i]] = image[i];
        back[image[i]] = labels[i];
      }
      auto r = relabel(c, perm);
      CHECK(check_structure(r).empty());
      CHECK(r.counts() == c.counts());
      CHECK(boundary(r).counts().euler() == boundary(c).counts().euler());
      CHECK(r.is_simplicial() == c.is_simplicial());
      CHECK(validate_manifold_basics(r).empty());
      if (c.is_simplicial()) {
        Tets mapped;
        for (Index t = 0; t < c.tets().size(); ++t) {
          auto tv = c.tet_vertices(t);
          mapped.push_back({perm[labels[tv[0]]], perm[labels[tv[1]]], perm[labels[tv[2]]], perm[labels[tv[3]]]});
        }
        CHECK(canonical_code(r) == canonical_code(Complex::from_tet_list(mapped)));
        CHECK(canonical_code(relabel(r, back)) == canonical_code(c));
      }
    }
  }
}

TEST_CASE("canonical code ignores ids and tet order") {
  Tets a{{0, 1, 2, 3}, {1, 2, 3, 4}, {0, 1, 2, 5}};
  Tets b{{10, 11, 12, 15}, {11, 12, 13, 14}, {10, 11, 12, 13}};
  CHECK(canonical_code(Complex::from_tet_list(a)) == canonical_code(Complex::from_tet_list(b)));
  Tets c{{0, 1, 2, 3}, {0, 2, 3, 4}, {0, 1, 2, 5}};
  CHECK(canonical_code(Complex::from_tet_list(a)) != canonical_code(Complex::from_tet_list(c)));
}

TEST_CASE("disjoint union") {
  auto u = disjoint_union(fixture_complex("single_tet"), fixture_complex("solid_torus"));
  CHECK(u.counts() == SimplexCounts{7, 15, 13, 4});
  CHECK(check_structure(u).empty());
  CHECK(validate_manifold_basics(u).empty());
}

TEST_CASE("Delta vertices are derived from the face gluings") {
  // The solid torus without explicit edge ends.
  std::string text;
  for (const auto& line : {"edge 1", "edge 2", "edge 3", "edge 4", "edge 5", "edge 6", "edge 7",
                           "edge 8", "edge 9", "face 1 1 2 3", "face 2 1 8 9", "face 3 7 8 3",
                           "face 4 2 8 6", "face 5 3 9 6", "face 6 1 7 5", "face 7 5 9 3",
                           "face 8 4 7 1", "face 9 4 8 2", "tet 1 1 2 4 5", "tet 2 6 2 3 7",
                           "tet 3 8 9 3 1"})
    text += std::string(line) + "\n";
  auto c = parse_complex(text);
  CHECK(c.counts() == SimplexCounts{3, 9, 9, 3});
  CHECK(canonical_code(c) == canonical_code(fixture_complex("solid_torus")));
}

TEST_CASE("complex files round-trip") {
  for (const auto& name : complex_fixture_names()) {
    CAPTURE(name);
    auto c = fixture_complex(name);
    CHECK(parse_complex(write_complex(c)) == c);
  }
  CHECK_THROWS_AS(parse_complex("tet 0 1 2\n"), ParseError);
  CHECK_THROWS_WITH_AS(parse_complex("face 1 1 2 3\n"), doctest::Contains(":1:"), ParseError);
  CHECK_THROWS_AS(parse_complex("tet 0 1 1 2\n"), ParseError);
  CHECK_THROWS_AS(parse_complex("blob 1\n"), ParseError);
}
