#include "cmtop/fixtures.hpp"

#include <algorithm>
#include <filesystem>
#include <map>
#include <stdexcept>

#include "cmtop/io.hpp"

namespace cmtop {

namespace {

constexpr const char* kSingleTet = R"(# D^3
tet 0 1 2 3
)";

constexpr const char* kS3 = R"(# S^3 as the boundary of the 4-simplex
tet 0 1 2 3
tet 0 1 2 4
tet 0 1 3 4
tet 0 2 3 4
tet 1 2 3 4
)";

// Prism [a0 b0 c0 a1 b1 c1] cut into three tets, with the top triangle
// glued back onto the bottom one.
constexpr const char* kSolidTorus = R"(# D^2 x S^1, three tets, vertices a=0 b=1 c=2
edge 1 0 1   # ab
edge 2 0 2   # ac
edge 3 1 2   # bc
edge 4 0 0   # loop at a
edge 5 1 1   # loop at b
edge 6 2 2   # loop at c
edge 7 0 1   # a0 b1
edge 8 0 2   # a0 c1
edge 9 1 2   # b0 c1
face 1 1 2 3 # abc, bottom = top
face 2 1 8 9
face 3 7 8 3
face 4 2 8 6
face 5 3 9 6
face 6 1 7 5
face 7 5 9 3
face 8 4 7 1
face 9 4 8 2
tet 1 1 2 4 5  # a0 b0 c0 c1
tet 2 6 2 3 7  # a0 b0 b1 c1
tet 3 8 9 3 1  # a0 a1 b1 c1
)";

// Boundary of a tet times an interval; vertex v + 4 is v on the top level.
constexpr const char* kS2Interval = R"(# S^2 x [0,1]
tet 0 1 2 6
tet 0 1 5 6
tet 0 4 5 6
tet 0 1 3 7
tet 0 1 5 7
tet 0 4 5 7
tet 0 2 3 7
tet 0 2 6 7
tet 0 4 6 7
tet 1 2 3 7
tet 1 2 6 7
tet 1 5 6 7
)";

// Tet 2 reuses faces 1 and 2 of tet 1 in swapped slots.
constexpr const char* kBroken = R"(# two tets glued along two faces with mismatched slots
edge 1 0 1
edge 2 0 2
edge 3 0 3
edge 4 1 2
edge 5 1 3
edge 6 2 3
edge 7 0 4
edge 8 1 4
edge 9 3 4
face 1 1 2 4
face 2 1 3 5
face 3 2 3 6
face 4 4 5 6
face 5 1 7 8
face 6 3 7 9
tet 1 1 2 3 4
tet 2 2 1 5 6
)";

const std::map<std::string, const char*>& complex_texts() {
  static const std::map<std::string, const char*> m = {
      {"single_tet", kSingleTet},         {"s3_boundary_4simplex", kS3},
      {"solid_torus", kSolidTorus},       {"s2_interval", kS2Interval},
      {"broken_complex", kBroken},
  };
  return m;
}

}  // namespace

const std::vector<std::string>& complex_fixture_names() {
  static const std::vector<std::string> names = {"single_tet", "s3_boundary_4simplex", "solid_torus",
                                                 "s2_interval", "broken_complex"};
  return names;
}

const std::vector<std::string>& manifold_fixture_names() {
  static const std::vector<std::string> names = {"single_tet", "s3_boundary_4simplex", "solid_torus",
                                                 "s2_interval"};
  return names;
}

std::string fixture_complex_text(const std::string& name) {
  auto it = complex_texts().find(name);
  if (it == complex_texts().end()) throw std::invalid_argument("unknown complex fixture '" + name + "'");
  return it->second;
}

Complex fixture_complex(const std::string& name) {
  return parse_complex(fixture_complex_text(name), name);
}

const std::vector<std::string>& cm_fixture_names() {
  static const std::vector<std::string> names = {"id_z2",    "id_z3",    "id_s3",
                                                 "conj_z2xz2", "conj_z3", "trivh_z2",
                                                 "trivh_z3", "trivh_s3", "z4_to_z2"};
  return names;
}

CrossedModule fixture_cm(const std::string& name) {
  auto rename = [&](const CrossedModule& cm) {
    return CrossedModule(name, cm.h_ptr(), cm.g_ptr(), cm.boundary_table(), cm.action_table());
  };
  if (name == "id_z2") return rename(identity_cm(build_cyclic(2)));
  if (name == "id_z3") return rename(identity_cm(build_cyclic(3)));
  if (name == "id_s3") return rename(identity_cm(build_symmetric(3)));
  if (name == "conj_z2xz2") return rename(conjugation_cm(*build_group_from_spec("Z/2xZ/2")));
  if (name == "conj_z3") return rename(conjugation_cm(*build_cyclic(3)));
  if (name == "trivh_z2") return rename(trivial_h_cm(build_cyclic(2)));
  if (name == "trivh_z3") return rename(trivial_h_cm(build_cyclic(3)));
  if (name == "trivh_s3") return rename(trivial_h_cm(build_symmetric(3)));
  if (name == "z4_to_z2") return trivial_action_cm(name, build_cyclic(4), build_cyclic(2), {0, 1, 0, 1});
  throw std::invalid_argument("unknown crossed-module fixture '" + name + "'");
}

CrossedModule non_peiffer_cm() {
  return CrossedModule("swap_z2xz2", build_group_from_spec("Z/2xZ/2"), build_cyclic(2), {0, 1, 1, 0},
                       {0, 1, 2, 3, 0, 2, 1, 3});
}

Complex resolve_complex(const std::string& name_or_path) {
  if (std::filesystem::is_regular_file(name_or_path)) return load_complex_file(name_or_path);
  if (complex_texts().count(name_or_path)) return fixture_complex(name_or_path);
  throw ParseError(name_or_path, 0, 0, "no such file or complex fixture");
}

CrossedModule resolve_cm(const std::string& name_or_path) {
  if (std::filesystem::is_regular_file(name_or_path)) return load_cmod_file(name_or_path);
  const auto& names = cm_fixture_names();
  if (std::find(names.begin(), names.end(), name_or_path) != names.end()) return fixture_cm(name_or_path);
  if (name_or_path == "swap_z2xz2") return non_peiffer_cm();
  throw ParseError(name_or_path, 0, 0, "no such file or crossed-module fixture");
}

GroupPtr resolve_group(const std::string& spec_or_path) {
  if (std::filesystem::is_regular_file(spec_or_path)) return load_group_file(spec_or_path);
  try {
    return build_group_from_spec(spec_or_path);
  } catch (const std::invalid_argument&) {
    throw ParseError(spec_or_path, 0, 0, "no such file or group spec");
  }
}

}  // namespace cmtop
