#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "cmtop/complex.hpp"
#include "cmtop/crossed_module.hpp"

namespace cmtop {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// g per edge and h per face, indexed like Complex::edges() / faces().
struct Coloring {
  std::vector<Element> edge_colors;
  std::vector<Element> face_colors;
};

/// |X| at the identity, 0 elsewhere.
std::size_t delta(const FiniteGroup& x, Element e);

/// boundary(h_012) g_12 g_01 g_02^-1 in the face's local order.
Element face_holonomy(const CrossedModule& cm, const Complex& c, const Coloring& col, Index face);
Element face_holonomy(const CrossedModule& cm, Element g01, Element g02, Element g12, Element h);

/// h_023 (g_23 |> h_012) h_123^-1 h_013^-1 in the tet's local order.
Element tet_obstruction(const CrossedModule& cm, const Complex& c, const Coloring& col, Index tet);
Element tet_obstruction(const CrossedModule& cm, Element g23, Element h012, Element h013,
                        Element h023, Element h123);

bool is_admissible(const CrossedModule& cm, const Complex& c, const Coloring& col);

/// Z = N |G|^a |H|^b, kept both as an exact rational and in factored form.
struct InvariantValue {
  Rational value;
  BigInt count;
  long long a = 0;
  long long b = 0;

  static InvariantValue from_count(BigInt count, long long a, long long b, std::size_t g_order,
                                   std::size_t h_order);
  /// "Z = p/q (N=..., a=..., b=...)"
  std::string to_string() const;
  bool operator==(const InvariantValue& o) const {
    return value == o.value && count == o.count && a == o.a && b == o.b;
  }
};

class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ResourceLimit : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

constexpr std::uint64_t kDefaultBudget = 100'000'000;

/// CMTOP_BUDGET if set to a positive integer, otherwise kDefaultBudget.
std::uint64_t budget_from_env();

/// |G|^K1 |H|^K2, saturating at UINT64_MAX.
std::uint64_t brute_force_iterations(const CrossedModule& cm, const Complex& c);

/// Sums the weight over every coloring. Throws BudgetExceeded when there are
/// more than `budget` colorings (default: budget_from_env()).
InvariantValue brute_force_invariant(const CrossedModule& cm, const Complex& c,
                                     std::optional<std::uint64_t> budget = std::nullopt,
                                     unsigned threads = 1);

/// Auto picks by estimated cost. Eliminate runs variable elimination over
/// edges and faces together; ConditionEdges enumerates edge colorings and
/// eliminates only the face variables for each.
enum class EngineStrategy { Auto, Eliminate, ConditionEdges };

struct EngineOptions {
  unsigned threads = 1;
  EngineStrategy strategy = EngineStrategy::Auto;
  /// Largest intermediate table the fast engine may allocate.
  std::uint64_t max_table_entries = std::uint64_t{1} << 26;
};

/// Same value as brute_force_invariant, computed by gauge fixing and
/// variable elimination. Requires a crossed module valid without Peiffer
/// (throws std::invalid_argument otherwise); throws ResourceLimit when an
/// intermediate table would exceed the configured size.
InvariantValue invariant(const CrossedModule& cm, const Complex& c, const EngineOptions& opts = {});

/// Colors of one tet, edges in local order 01 02 03 12 13 23 and faces in
/// slot order 012 013 023 123.
struct TetColoring {
  std::array<Element, 6> g{};
  std::array<Element, 4> h{};
};

/// boundary(h_023 (g_23 |> h_012)) == boundary(h_013 h_123).
bool consistency_identity(const CrossedModule& cm, const TetColoring& t);

/// Random tet coloring with all four faces flat (rejection sampling).
TetColoring sample_flat_tet_coloring(const CrossedModule& cm, std::mt19937_64& rng);

}  // namespace cmtop
