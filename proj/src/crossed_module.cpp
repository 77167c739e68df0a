#include "cmtop/crossed_module.hpp"

#include <sstream>
#include <stdexcept>

namespace cmtop {

const char* axiom_name(Axiom a) {
  switch (a) {
    case Axiom::BoundaryHomomorphism: return "boundary-homomorphism";
    case Axiom::Equivariance: return "equivariance";
    case Axiom::ActionAutomorphism: return "action-automorphism";
    case Axiom::ActionIdentity: return "action-identity";
    case Axiom::ActionCompatibility: return "action-compatibility";
    case Axiom::Peiffer: return "peiffer";
  }
  return "unknown";
}

CrossedModule::CrossedModule(std::string name, GroupPtr h, GroupPtr g,
                             std::vector<Element> boundary, std::vector<Element> action)
    : name_(std::move(name)),
      h_(std::move(h)),
      g_(std::move(g)),
      boundary_(std::move(boundary)),
      action_(std::move(action)) {
  if (!h_ || !g_) throw std::invalid_argument("crossed module '" + name_ + "': missing group");
  if (boundary_.size() != h_->order()) {
    throw std::invalid_argument("crossed module '" + name_ + "': boundary has " +
                                std::to_string(boundary_.size()) + " entries, expected |H| = " +
                                std::to_string(h_->order()));
  }
  if (action_.size() != g_->order() * h_->order()) {
    throw std::invalid_argument("crossed module '" + name_ + "': action has " +
                                std::to_string(action_.size()) + " entries, expected |G|*|H| = " +
                                std::to_string(g_->order() * h_->order()));
  }
  for (std::size_t i = 0; i < boundary_.size(); ++i) {
    if (boundary_[i] >= g_->order()) {
      throw std::invalid_argument("crossed module '" + name_ + "': boundary(" +
                                  std::to_string(i) + ") = " + std::to_string(boundary_[i]) +
                                  " is not an element of G");
    }
  }
  for (std::size_t i = 0; i < action_.size(); ++i) {
    if (action_[i] >= h_->order()) {
      throw std::invalid_argument("crossed module '" + name_ + "': action entry [" +
                                  std::to_string(i / h_->order()) + "][" +
                                  std::to_string(i % h_->order()) + "] = " +
                                  std::to_string(action_[i]) + " is not an element of H");
    }
  }
}

Element CrossedModule::act_checked(Element x, Element y) const {
  if (x >= g_->order() || y >= h_->order()) {
    throw std::out_of_range("crossed module '" + name_ + "': act(" + std::to_string(x) + ", " +
                            std::to_string(y) + ") out of range");
  }
  return act(x, y);
}

namespace {

AxiomViolation violation(Axiom a, std::vector<Element> witness, const std::string& detail) {
  std::ostringstream msg;
  msg << axiom_name(a) << " fails at (";
  for (std::size_t i = 0; i < witness.size(); ++i) msg << (i ? ", " : "") << witness[i];
  msg << "): " << detail;
  return {a, std::move(witness), msg.str()};
}

}  // namespace

ValidationReport validate(const CrossedModule& cm, bool strict_peiffer) {
  ValidationReport report;
  const FiniteGroup& G = cm.g();
  const FiniteGroup& H = cm.h();
  const Element ng = static_cast<Element>(G.order());
  const Element nh = static_cast<Element>(H.order());

  if (auto w = cm.boundary_hom().homomorphism_witness(); !w.empty()) {
    std::string detail = w.size() == 1 ? "boundary(e_H) != e_G"
                                       : "boundary(y y') != boundary(y) boundary(y')";
    report.push_back(violation(Axiom::BoundaryHomomorphism, w, detail));
  }

  [&] {
    for (Element x = 0; x < ng; ++x)
      for (Element y = 0; y < nh; ++y)
        if (cm.boundary(cm.act(x, y)) != G.mul(G.mul(x, cm.boundary(y)), G.inv(x))) {
          report.push_back(violation(Axiom::Equivariance, {x, y},
                                     "boundary(x |> y) != x boundary(y) x^-1"));
          return;
        }
  }();

  [&] {
    for (Element x = 0; x < ng; ++x) {
      std::vector<bool> hit(nh, false);
      for (Element y = 0; y < nh; ++y) {
        Element img = cm.act(x, y);
        if (hit[img]) {
          report.push_back(violation(Axiom::ActionAutomorphism, {x, y},
                                     "x |> - is not injective (image " + std::to_string(img) +
                                         " repeated)"));
          return;
        }
        hit[img] = true;
      }
      for (Element y1 = 0; y1 < nh; ++y1)
        for (Element y2 = 0; y2 < nh; ++y2)
          if (cm.act(x, H.mul(y1, y2)) != H.mul(cm.act(x, y1), cm.act(x, y2))) {
            report.push_back(violation(Axiom::ActionAutomorphism, {x, y1, y2},
                                       "x |> (y y') != (x |> y)(x |> y')"));
            return;
          }
    }
  }();

  for (Element y = 0; y < nh; ++y) {
    if (cm.act(G.identity(), y) != y) {
      report.push_back(violation(Axiom::ActionIdentity, {y}, "e_G |> y != y"));
      break;
    }
  }

  [&] {
    for (Element x1 = 0; x1 < ng; ++x1)
      for (Element x2 = 0; x2 < ng; ++x2)
        for (Element y = 0; y < nh; ++y)
          if (cm.act(G.mul(x1, x2), y) != cm.act(x1, cm.act(x2, y))) {
            report.push_back(violation(Axiom::ActionCompatibility, {x1, x2, y},
                                       "(x1 x2) |> y != x1 |> (x2 |> y)"));
            return;
          }
  }();

  if (strict_peiffer) {
    [&] {
      for (Element y = 0; y < nh; ++y)
        for (Element y2 = 0; y2 < nh; ++y2)
          if (cm.act(cm.boundary(y), y2) != H.mul(H.mul(y, y2), H.inv(y))) {
            report.push_back(violation(Axiom::Peiffer, {y, y2},
                                       "boundary(y) |> y' != y y' y^-1"));
            return;
          }
    }();
  }
  return report;
}

CrossedModule conjugation_cm(const FiniteGroup& h) {
  AutGroup aut = build_aut_group(h);
  const std::size_t nh = h.order();
  auto index_of = [&](const std::vector<Element>& bij) {
    for (std::size_t i = 0; i < aut.bijections.size(); ++i)
      if (aut.bijections[i] == bij) return static_cast<Element>(i);
    throw std::logic_error("conjugation is not an automorphism");
  };
  std::vector<Element> boundary(nh);
  for (Element y = 0; y < nh; ++y) {
    std::vector<Element> conj(nh);
    for (Element z = 0; z < nh; ++z) conj[z] = h.mul(h.mul(y, z), h.inv(y));
    boundary[y] = index_of(conj);
  }
  std::vector<Element> action(aut.bijections.size() * nh);
  for (std::size_t x = 0; x < aut.bijections.size(); ++x)
    for (Element y = 0; y < nh; ++y) action[x * nh + y] = aut.bijections[x][y];
  auto hp = std::make_shared<const FiniteGroup>(h);
  return CrossedModule("conj(" + h.name() + ")", hp, aut.group, std::move(boundary),
                       std::move(action));
}

CrossedModule identity_cm(const GroupPtr& g) {
  const std::size_t n = g->order();
  std::vector<Element> boundary(n);
  std::vector<Element> action(n * n);
  for (Element x = 0; x < n; ++x) {
    boundary[x] = x;
    for (Element y = 0; y < n; ++y) action[x * n + y] = g->mul(g->mul(x, y), g->inv(x));
  }
  return CrossedModule("id(" + g->name() + ")", g, g, std::move(boundary), std::move(action));
}

CrossedModule trivial_h_cm(const GroupPtr& g) {
  return CrossedModule("trivh(" + g->name() + ")", build_trivial(), g, {kIdentity},
                       std::vector<Element>(g->order(), kIdentity));
}

CrossedModule trivial_action_cm(std::string name, GroupPtr h, GroupPtr g,
                                std::vector<Element> boundary) {
  const std::size_t nh = h->order(), ng = g->order();
  std::vector<Element> action(ng * nh);
  for (std::size_t x = 0; x < ng; ++x)
    for (Element y = 0; y < nh; ++y) action[x * nh + y] = y;
  return CrossedModule(std::move(name), std::move(h), std::move(g), std::move(boundary),
                       std::move(action));
}

}  // namespace cmtop
