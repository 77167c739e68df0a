#include <filesystem>

#include "cmtop/fixtures.hpp"
#include "cmtop/io.hpp"
#include "doctest.h"

using namespace cmtop;

namespace {

const std::filesystem::path kDir = CMTOP_FIXTURE_DIR;

bool same_tables(const CrossedModule& a, const CrossedModule& b) {
  if (a.h().order() != b.h().order() || a.g().order() != b.g().order()) return false;
  for (Element x = 0; x < a.h().order(); ++x)
    for (Element y = 0; y < a.h().order(); ++y)
      if (a.h().mul(x, y) != b.h().mul(x, y)) return false;
  for (Element x = 0; x < a.g().order(); ++x)
    for (Element y = 0; y < a.g().order(); ++y)
      if (a.g().mul(x, y) != b.g().mul(x, y)) return false;
  return a.boundary_table() == b.boundary_table() && a.action_table() == b.action_table();
}

}  // namespace

TEST_CASE("complex files match the registry") {
  for (const auto& name : complex_fixture_names()) {
    CAPTURE(name);
    CHECK(load_complex_file(kDir / (name + ".cx")) == fixture_complex(name));
    CHECK(resolve_complex((kDir / (name + ".cx")).string()) == fixture_complex(name));
  }
}

TEST_CASE("crossed-module files match the registry and validate") {
  for (const auto& name : cm_fixture_names()) {
    CAPTURE(name);
    auto cm = load_cmod_file(kDir / (name + ".cmod"));
    CHECK(cm.name() == name);
    CHECK(same_tables(cm, fixture_cm(name)));
    CHECK(validate(cm, true).empty());
  }
  auto swap = load_cmod_file(kDir / "swap_z2xz2.cmod");
  CHECK(same_tables(swap, non_peiffer_cm()));
  auto v = validate(swap, true);
  REQUIRE(v.size() >= 1);
  for (const auto& x : v) CHECK(x.axiom == Axiom::Peiffer);
  CHECK(validate(swap, false).empty());
}

TEST_CASE("broken crossed module fails with a witness") {
  auto v = validate(load_cmod_file(kDir / "broken.cmod"), true);
  REQUIRE_FALSE(v.empty());
  CHECK(v.front().axiom == Axiom::BoundaryHomomorphism);
  CHECK_FALSE(v.front().witness.empty());
}
