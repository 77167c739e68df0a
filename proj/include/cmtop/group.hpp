#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace cmtop {

/// Element of a finite group, stored as an index into its Cayley table.
/// Index 0 is always the identity.
using Element = std::uint32_t;

constexpr Element kIdentity = 0;

/// Finite group given by its full multiplication table.
///
/// Construction validates closure, the identity row/column, inverses and
/// associativity (exhaustive up to `exhaustive_assoc_bound`, randomly sampled
/// above it). Invalid tables throw std::invalid_argument. Instances are
/// immutable and cheap to share through std::shared_ptr.
class FiniteGroup {
 public:
  static constexpr std::size_t kDefaultAssocBound = 64;
  static constexpr std::size_t kAssocSamples = 10000;

  /// `table` is row-major: table[a * order + b] = a*b.
  FiniteGroup(std::string name, std::size_t order, std::vector<Element> table,
              std::size_t exhaustive_assoc_bound = kDefaultAssocBound);

  const std::string& name() const { return name_; }
  std::size_t order() const { return order_; }
  Element identity() const { return kIdentity; }

  Element compose(Element a, Element b) const;
  Element inverse(Element a) const;

  // Unchecked variants for inner loops.
  Element mul(Element a, Element b) const { return table_[a * order_ + b]; }
  Element inv(Element a) const { return inverses_[a]; }

  bool contains(Element a) const { return a < order_; }
  bool is_abelian() const;
  std::span<const Element> table() const { return table_; }
  std::span<const Element> inverses() const { return inverses_; }

 private:
  std::string name_;
  std::size_t order_;
  std::vector<Element> table_;
  std::vector<Element> inverses_;
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

/// Map between two finite groups. The constructor only checks shapes;
/// `homomorphism_witness` reports the first violated law, if any.
class GroupHom {
 public:
  GroupHom(GroupPtr source, GroupPtr target, std::vector<Element> map);

  /// Same as the constructor but throws when the map is not a homomorphism.
  static GroupHom checked(GroupPtr source, GroupPtr target, std::vector<Element> map);

  const FiniteGroup& source() const { return *source_; }
  const FiniteGroup& target() const { return *target_; }
  const GroupPtr& source_ptr() const { return source_; }
  const GroupPtr& target_ptr() const { return target_; }
  std::span<const Element> map() const { return map_; }
  Element operator()(Element a) const { return map_[a]; }

  /// Empty if the map is a homomorphism; otherwise {a} when the identity is
  /// not preserved, or {a, b} with f(ab) != f(a)f(b).
  std::vector<Element> homomorphism_witness() const;

 private:
  GroupPtr source_;
  GroupPtr target_;
  std::vector<Element> map_;
};

/// Automorphism group together with the underlying bijections; element i of
/// `group` is the bijection `bijections[i]`, ordered lexicographically.
struct AutGroup {
  GroupPtr group;
  std::vector<std::vector<Element>> bijections;
};

GroupPtr build_trivial();
GroupPtr build_cyclic(std::size_t n);
/// Symmetric group on n points; elements are permutations in lexicographic
/// order of their image arrays (so the identity comes first).
GroupPtr build_symmetric(std::size_t n);
/// Direct product; element (a, b) has index a * |right| + b.
GroupPtr build_direct_product(const FiniteGroup& left, const FiniteGroup& right);
AutGroup build_aut_group(const FiniteGroup& h);

/// Permutations of {0..n-1} backing build_symmetric(n), in element order.
std::vector<std::vector<Element>> symmetric_permutations(std::size_t n);

std::vector<Element> kernel(const GroupHom& f);

/// Builds a group from a compact spec such as "Z/3", "Z3", "S3", "1",
/// "Z/2xZ/2" or "Aut(Z/2xZ/2)". Throws std::invalid_argument otherwise.
GroupPtr build_group_from_spec(const std::string& spec);

}  // namespace cmtop
