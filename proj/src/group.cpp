#include "cmtop/group.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

namespace cmtop {

namespace {

std::string describe(const std::string& name) { return "group '" + name + "'"; }

}  // namespace

FiniteGroup::FiniteGroup(std::string name, std::size_t order, std::vector<Element> table,
                         std::size_t exhaustive_assoc_bound)
    : name_(std::move(name)), order_(order), table_(std::move(table)) {
  if (order_ == 0) throw std::invalid_argument(describe(name_) + ": order must be positive");
  if (table_.size() != order_ * order_) {
    throw std::invalid_argument(describe(name_) + ": table has " +
                                std::to_string(table_.size()) + " entries, expected " +
                                std::to_string(order_ * order_));
  }
  for (std::size_t i = 0; i < table_.size(); ++i) {
    if (table_[i] >= order_) {
      std::ostringstream msg;
      msg << describe(name_) << ": closure violated, " << i / order_ << "*" << i % order_
          << " = " << table_[i];
      throw std::invalid_argument(msg.str());
    }
  }
  for (Element x = 0; x < order_; ++x) {
    if (mul(kIdentity, x) != x || mul(x, kIdentity) != x) {
      throw std::invalid_argument(describe(name_) + ": element 0 is not the identity (fails at " +
                                  std::to_string(x) + ")");
    }
  }
  inverses_.assign(order_, 0);
  for (Element x = 0; x < order_; ++x) {
    Element found = static_cast<Element>(order_);
    for (Element y = 0; y < order_; ++y) {
      if (mul(x, y) == kIdentity && mul(y, x) == kIdentity) {
        found = y;
        break;
      }
    }
    if (found == order_) {
      throw std::invalid_argument(describe(name_) + ": element " + std::to_string(x) +
                                  " has no inverse");
    }
    inverses_[x] = found;
  }

  auto assoc_fails = [this](Element a, Element b, Element c) {
    return mul(mul(a, b), c) != mul(a, mul(b, c));
  };
  auto fail = [this](Element a, Element b, Element c) {
    std::ostringstream msg;
    msg << describe(name_) << ": associativity violated at (" << a << ", " << b << ", " << c
        << ")";
    throw std::invalid_argument(msg.str());
  };
  if (order_ <= exhaustive_assoc_bound) {
    for (Element a = 0; a < order_; ++a)
      for (Element b = 0; b < order_; ++b)
        for (Element c = 0; c < order_; ++c)
          if (assoc_fails(a, b, c)) fail(a, b, c);
  } else {
    std::mt19937_64 rng(0x5eed);
    std::uniform_int_distribution<Element> pick(0, static_cast<Element>(order_ - 1));
    for (std::size_t i = 0; i < kAssocSamples; ++i) {
      Element a = pick(rng), b = pick(rng), c = pick(rng);
      if (assoc_fails(a, b, c)) fail(a, b, c);
    }
  }
}

Element FiniteGroup::compose(Element a, Element b) const {
  if (a >= order_ || b >= order_) {
    throw std::out_of_range(describe(name_) + ": element index out of range in compose(" +
                            std::to_string(a) + ", " + std::to_string(b) + ")");
  }
  return mul(a, b);
}

Element FiniteGroup::inverse(Element a) const {
  if (a >= order_) {
    throw std::out_of_range(describe(name_) + ": element index out of range in inverse(" +
                            std::to_string(a) + ")");
  }
  return inv(a);
}

bool FiniteGroup::is_abelian() const {
  for (Element a = 0; a < order_; ++a)
    for (Element b = a + 1; b < order_; ++b)
      if (mul(a, b) != mul(b, a)) return false;
  return true;
}

GroupHom::GroupHom(GroupPtr source, GroupPtr target, std::vector<Element> map)
    : source_(std::move(source)), target_(std::move(target)), map_(std::move(map)) {
  if (!source_ || !target_) throw std::invalid_argument("homomorphism: null group");
  if (map_.size() != source_->order()) {
    throw std::invalid_argument("homomorphism " + source_->name() + " -> " + target_->name() +
                                ": map has " + std::to_string(map_.size()) +
                                " entries, expected " + std::to_string(source_->order()));
  }
  for (std::size_t i = 0; i < map_.size(); ++i) {
    if (map_[i] >= target_->order()) {
      throw std::invalid_argument("homomorphism " + source_->name() + " -> " + target_->name() +
                                  ": image of " + std::to_string(i) + " out of range");
    }
  }
}

GroupHom GroupHom::checked(GroupPtr source, GroupPtr target, std::vector<Element> map) {
  GroupHom f(std::move(source), std::move(target), std::move(map));
  if (auto w = f.homomorphism_witness(); !w.empty()) {
    std::ostringstream msg;
    msg << "map " << f.source().name() << " -> " << f.target().name()
        << " is not a homomorphism (witness";
    for (Element e : w) msg << ' ' << e;
    msg << ')';
    throw std::invalid_argument(msg.str());
  }
  return f;
}

std::vector<Element> GroupHom::homomorphism_witness() const {
  if (map_[kIdentity] != kIdentity) return {kIdentity};
  const auto& s = *source_;
  const auto& t = *target_;
  for (Element a = 0; a < s.order(); ++a)
    for (Element b = 0; b < s.order(); ++b)
      if (map_[s.mul(a, b)] != t.mul(map_[a], map_[b])) return {a, b};
  return {};
}

GroupPtr build_trivial() { return build_cyclic(1); }

GroupPtr build_cyclic(std::size_t n) {
  if (n == 0) throw std::invalid_argument("cyclic group: order must be at least 1");
  std::vector<Element> table(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) table[a * n + b] = static_cast<Element>((a + b) % n);
  std::string name = n == 1 ? "1" : "Z/" + std::to_string(n);
  return std::make_shared<const FiniteGroup>(std::move(name), n, std::move(table));
}

std::vector<std::vector<Element>> symmetric_permutations(std::size_t n) {
  std::vector<Element> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<Element>> perms;
  do {
    perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return perms;
}

namespace {

// Group of bijections under composition (f*g)(x) = f(g(x)); bijections must
// be sorted so that the identity is first.
GroupPtr group_from_bijections(std::string name,
                               const std::vector<std::vector<Element>>& bijections) {
  const std::size_t n = bijections.size();
  std::vector<Element> table(n * n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      std::vector<Element> prod(bijections[b].size());
      for (std::size_t x = 0; x < prod.size(); ++x) prod[x] = bijections[a][bijections[b][x]];
      auto it = std::lower_bound(bijections.begin(), bijections.end(), prod);
      if (it == bijections.end() || *it != prod)
        throw std::logic_error(name + ": bijection set not closed under composition");
      table[a * n + b] = static_cast<Element>(it - bijections.begin());
    }
  }
  return std::make_shared<const FiniteGroup>(std::move(name), n, std::move(table));
}

}  // namespace

GroupPtr build_symmetric(std::size_t n) {
  if (n == 0) throw std::invalid_argument("symmetric group: degree must be at least 1");
  if (n > 6) throw std::invalid_argument("symmetric group: degree above 6 is not supported");
  return group_from_bijections("S" + std::to_string(n), symmetric_permutations(n));
}

GroupPtr build_direct_product(const FiniteGroup& left, const FiniteGroup& right) {
  const std::size_t m = left.order(), k = right.order(), n = m * k;
  std::vector<Element> table(n * n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      Element l = left.mul(static_cast<Element>(a / k), static_cast<Element>(b / k));
      Element r = right.mul(static_cast<Element>(a % k), static_cast<Element>(b % k));
      table[a * n + b] = static_cast<Element>(l * k + r);
    }
  }
  return std::make_shared<const FiniteGroup>(left.name() + "x" + right.name(), n,
                                             std::move(table));
}

AutGroup build_aut_group(const FiniteGroup& h) {
  const std::size_t n = h.order();
  std::vector<std::vector<Element>> found;
  std::vector<Element> image(n, 0);
  std::vector<bool> used(n, false);
  image[0] = 0;
  used[0] = true;

  // Depth-first over images in increasing order, so results come out sorted.
  auto consistent_upto = [&](std::size_t k) {
    for (std::size_t a = 0; a <= k; ++a) {
      for (std::size_t b = 0; b <= k; ++b) {
        std::size_t ab = h.mul(static_cast<Element>(a), static_cast<Element>(b));
        if (ab > k) continue;
        if (image[ab] != h.mul(image[a], image[b])) return false;
      }
    }
    return true;
  };
  auto recurse = [&](auto&& self, std::size_t k) -> void {
    if (k == n) {
      found.push_back(image);
      return;
    }
    for (Element v = 1; v < n; ++v) {
      if (used[v]) continue;
      image[k] = v;
      used[v] = true;
      if (consistent_upto(k)) self(self, k + 1);
      used[v] = false;
    }
  };
  recurse(recurse, 1);

  AutGroup out;
  out.group = group_from_bijections("Aut(" + h.name() + ")", found);
  out.bijections = std::move(found);
  return out;
}

std::vector<Element> kernel(const GroupHom& f) {
  std::vector<Element> k;
  for (Element a = 0; a < f.source().order(); ++a)
    if (f(a) == f.target().identity()) k.push_back(a);
  return k;
}

namespace {

std::string strip(const std::string& s) {
  std::string out;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) out += c;
  return out;
}

std::size_t parse_positive(const std::string& digits, const std::string& spec) {
  if (digits.empty() || !std::all_of(digits.begin(), digits.end(),
                                     [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
    throw std::invalid_argument("unknown group spec '" + spec + "'");
  return std::stoul(digits);
}

GroupPtr build_factor(const std::string& f, const std::string& spec);

// Splits on top-level 'x' (not inside parentheses).
std::vector<std::string> split_product(const std::string& s) {
  std::vector<std::string> parts;
  int depth = 0;
  std::string cur;
  for (char c : s) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == 'x' && depth == 0) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  return parts;
}

GroupPtr build_product_spec(const std::string& s, const std::string& spec) {
  auto parts = split_product(s);
  GroupPtr g = build_factor(parts[0], spec);
  for (std::size_t i = 1; i < parts.size(); ++i) g = build_direct_product(*g, *build_factor(parts[i], spec));
  return g;
}

GroupPtr build_factor(const std::string& f, const std::string& spec) {
  if (f == "1" || f == "trivial") return build_trivial();
  if (f.rfind("Aut(", 0) == 0 && f.back() == ')')
    return build_aut_group(*build_product_spec(f.substr(4, f.size() - 5), spec)).group;
  if (f.rfind("Z/", 0) == 0) return build_cyclic(parse_positive(f.substr(2), spec));
  if (f.rfind("Z", 0) == 0) return build_cyclic(parse_positive(f.substr(1), spec));
  if (f.rfind("S_", 0) == 0) return build_symmetric(parse_positive(f.substr(2), spec));
  if (f.rfind("S", 0) == 0) return build_symmetric(parse_positive(f.substr(1), spec));
  throw std::invalid_argument("unknown group spec '" + spec + "'");
}

}  // namespace

GroupPtr build_group_from_spec(const std::string& spec) {
  std::string s = strip(spec);
  if (s.empty()) throw std::invalid_argument("empty group spec");
  return build_product_spec(s, spec);
}

}  // namespace cmtop
