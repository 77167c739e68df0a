#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cmtop/crossed_module.hpp"
#include "cmtop/statesum.hpp"

namespace cmtop {

/// DA stands for the factor boundary(A^-1).
enum class Letter { X, XInv, Y, YInv, DA };

struct GroupWord {
  std::vector<Letter> letters;

  bool has_da() const;
  GroupWord without_da() const;
  /// Token form, e.g. "XyxYD".
  std::string to_string() const;
  bool operator==(const GroupWord&) const = default;
};

/// Tokens X x Y y D (lower case = inverse, D = boundary(A^-1)); whitespace
/// is ignored. Throws std::invalid_argument naming the offending position.
GroupWord parse_word(std::string_view text);

/// fig8, t52, k52 (case-insensitive).
GroupWord builtin_word(std::string_view name);
const std::vector<std::string>& builtin_word_names();

/// Left-to-right product in G.
Element evaluate_word(const GroupWord& w, const CrossedModule& cm, Element x, Element y, Element a);

/// (1/|G|^2)(1/|H|) sum over x, y in G and a in H of delta_G(w). The count is
/// the number of (x, y, a) with w = e, so a = b = -1.
InvariantValue word_state_sum(const GroupWord& w, const CrossedModule& cm, unsigned threads = 1);

/// #{(x, y) in G^2 : relator(x, y) = e}. The relator must not contain D.
std::uint64_t count_reps(const GroupWord& relator, const FiniteGroup& g);

/// Order of the seven boundary variables of the figure-eight system.
enum BoundaryVar { kB, kR, kG11, kG34, kG22, kG3pp4p, kG12 };
using BoundaryAssignment = std::array<Element, 7>;

struct BoundaryCheck {
  bool a, b, c, d;
  /// The long word of the final equation evaluates to e.
  bool fin;
  /// The long word equals the X, Y word after X = g34^-1 g3''4, Y = b g11 b^-1.
  bool substitution;
};

/// g_{3''4} in the last equations is read as g_{3''4'}.
BoundaryCheck check_boundary_system(const FiniteGroup& g, const BoundaryAssignment& v);

struct BoundaryReport {
  std::string group;
  bool exhaustive = true;
  std::uint64_t assignments = 0;
  std::uint64_t satisfying_abc = 0;
  std::uint64_t d_failures = 0;
  std::uint64_t fin_failures = 0;
  std::uint64_t substitution_failures = 0;
  /// Exhaustive runs only: tuples (b, r, g11, g34, g3''4') satisfying the
  /// final equation, and how many of them extend to equations a-c in exactly one
  /// way (and in none).
  std::uint64_t fin_tuples = 0;
  std::uint64_t unique_completions = 0;
  std::uint64_t no_completion = 0;
  std::vector<BoundaryAssignment> counterexamples;

  bool clean() const { return d_failures == 0 && fin_failures == 0 && substitution_failures == 0; }
  std::string to_string() const;
};

/// Exhaustive over G^7 when `samples` is empty, otherwise that many uniform
/// samples drawn with `seed`.
BoundaryReport verify_boundary_system(const FiniteGroup& g, std::optional<std::uint64_t> samples = std::nullopt,
                                std::uint64_t seed = 0);

}  // namespace cmtop
