#pragma once

#include <string>
#include <vector>

#include "cmtop/complex.hpp"
#include "cmtop/crossed_module.hpp"

namespace cmtop {

/// single_tet, s3_boundary_4simplex, solid_torus, s2_interval, broken_complex.
const std::vector<std::string>& complex_fixture_names();
/// The complexes meant to triangulate manifolds (everything but broken_complex).
const std::vector<std::string>& manifold_fixture_names();
std::string fixture_complex_text(const std::string& name);
Complex fixture_complex(const std::string& name);

/// id_z2, id_z3, id_s3, conj_z2xz2, conj_z3, trivh_z2, trivh_z3, trivh_s3,
/// z4_to_z2.
const std::vector<std::string>& cm_fixture_names();
CrossedModule fixture_cm(const std::string& name);

/// H = Z/2 x Z/2, G = Z/2 swapping the factors, boundary(a, b) = a + b.
/// Satisfies every axiom except Peiffer.
CrossedModule non_peiffer_cm();

/// Fixture name or file path.
Complex resolve_complex(const std::string& name_or_path);
CrossedModule resolve_cm(const std::string& name_or_path);
GroupPtr resolve_group(const std::string& spec_or_path);

}  // namespace cmtop
