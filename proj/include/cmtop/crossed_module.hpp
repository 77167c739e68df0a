#pragma once

#include <string>
#include <vector>

#include "cmtop/group.hpp"

namespace cmtop {

/// Which law a crossed-module table violates.
enum class Axiom {
  BoundaryHomomorphism,  // boundary is a group homomorphism H -> G
  Equivariance,          // boundary(x |> y) = x boundary(y) x^-1
  ActionAutomorphism,    // y -> x |> y is an automorphism of H
  ActionIdentity,        // e_G |> y = y
  ActionCompatibility,   // (x1 x2) |> y = x1 |> (x2 |> y)
  Peiffer,               // boundary(y) |> y' = y y' y^-1
};

const char* axiom_name(Axiom a);

struct AxiomViolation {
  Axiom axiom;
  std::vector<Element> witness;
  std::string message;
};

using ValidationReport = std::vector<AxiomViolation>;

/// Crossed module (H --boundary--> G, |>) over finite groups.
///
/// The G-on-G action is always conjugation and is not stored. The G-on-H
/// action is a dense |G| x |H| table. Construction only checks table shapes;
/// use validate() for the axioms.
class CrossedModule {
 public:
  CrossedModule(std::string name, GroupPtr h, GroupPtr g, std::vector<Element> boundary,
                std::vector<Element> action);

  const std::string& name() const { return name_; }
  const FiniteGroup& h() const { return *h_; }
  const FiniteGroup& g() const { return *g_; }
  const GroupPtr& h_ptr() const { return h_; }
  const GroupPtr& g_ptr() const { return g_; }

  Element boundary(Element y) const { return boundary_[y]; }
  Element act(Element x, Element y) const { return action_[x * h_->order() + y]; }
  GroupHom boundary_hom() const { return GroupHom(h_, g_, boundary_); }

  const std::vector<Element>& boundary_table() const { return boundary_; }
  const std::vector<Element>& action_table() const { return action_; }

  /// Range-checked action.
  Element act_checked(Element x, Element y) const;

 private:
  std::string name_;
  GroupPtr h_;
  GroupPtr g_;
  std::vector<Element> boundary_;
  std::vector<Element> action_;
};

/// Checks every axiom exhaustively and returns one entry per violated axiom
/// (the first witness found). With `strict_peiffer` the Peiffer identity is
/// checked as well.
ValidationReport validate(const CrossedModule& cm, bool strict_peiffer);

/// G = Aut(H), boundary(y) = conjugation by y, x |> y = x(y).
CrossedModule conjugation_cm(const FiniteGroup& h);
/// H = G, boundary = id, |> = conjugation.
CrossedModule identity_cm(const GroupPtr& g);
/// H trivial.
CrossedModule trivial_h_cm(const GroupPtr& g);
/// Both groups given, boundary given, trivial action.
CrossedModule trivial_action_cm(std::string name, GroupPtr h, GroupPtr g,
                                std::vector<Element> boundary);

}  // namespace cmtop
