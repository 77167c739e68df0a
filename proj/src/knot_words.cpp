#include "cmtop/knot_words.hpp"

#include <algorithm>
#include <cctype>
#include <random>
#include <sstream>
#include <thread>

namespace cmtop {

bool GroupWord::has_da() const {
  return std::find(letters.begin(), letters.end(), Letter::DA) != letters.end();
}

GroupWord GroupWord::without_da() const {
  GroupWord w;
  for (Letter l : letters)
    if (l != Letter::DA) w.letters.push_back(l);
  return w;
}

std::string GroupWord::to_string() const {
  std::string s;
  for (Letter l : letters) s += "XxYyD"[static_cast<int>(l)];
  return s;
}

GroupWord parse_word(std::string_view text) {
  GroupWord w;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char ch = text[i];
    if (std::isspace(static_cast<unsigned char>(ch))) continue;
    switch (ch) {
      case 'X': w.letters.push_back(Letter::X); break;
      case 'x': w.letters.push_back(Letter::XInv); break;
      case 'Y': w.letters.push_back(Letter::Y); break;
      case 'y': w.letters.push_back(Letter::YInv); break;
      case 'D':
        if (w.has_da())
          throw std::invalid_argument("word: second D at position " + std::to_string(i + 1));
        w.letters.push_back(Letter::DA);
        break;
      default:
        throw std::invalid_argument("word: unexpected '" + std::string(1, ch) + "' at position " +
                                    std::to_string(i + 1) + " (expected X x Y y D)");
    }
  }
  return w;
}

const std::vector<std::string>& builtin_word_names() {
  static const std::vector<std::string> names{"fig8", "t52", "k52"};
  return names;
}

GroupWord builtin_word(std::string_view name) {
  std::string n(name);
  std::transform(n.begin(), n.end(), n.begin(), [](unsigned char c) { return std::tolower(c); });
  if (n == "fig8") return parse_word("X y x Y x y X Y x Y D");
  if (n == "t52") return parse_word("Y X X X X Y x D");
  if (n == "k52") return parse_word("X y x Y X y x Y x y X Y x y D");
  throw std::invalid_argument("unknown builtin word '" + std::string(name) + "' (fig8, t52, k52)");
}

Element evaluate_word(const GroupWord& w, const CrossedModule& cm, Element x, Element y, Element a) {
  const FiniteGroup& G = cm.g();
  Element r = G.identity();
  for (Letter l : w.letters) {
    Element f = 0;
    switch (l) {
      case Letter::X: f = x; break;
      case Letter::XInv: f = G.inv(x); break;
      case Letter::Y: f = y; break;
      case Letter::YInv: f = G.inv(y); break;
      case Letter::DA: f = cm.boundary(cm.h().inv(a)); break;
    }
    r = G.mul(r, f);
  }
  return r;
}

InvariantValue word_state_sum(const GroupWord& w, const CrossedModule& cm, unsigned threads) {
  const std::size_t ng = cm.g().order(), nh = cm.h().order();
  const unsigned n = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(ng)));
  std::vector<std::uint64_t> partial(n, 0);
  auto run = [&](unsigned t) {
    for (Element x = static_cast<Element>(ng * t / n); x < ng * (t + 1) / n; ++x)
      for (Element y = 0; y < ng; ++y)
        for (Element a = 0; a < nh; ++a) partial[t] += evaluate_word(w, cm, x, y, a) == 0;
  };
  if (n == 1) {
    run(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < n; ++t) pool.emplace_back(run, t);
    for (auto& th : pool) th.join();
  }
  std::uint64_t count = 0;
  for (auto p : partial) count += p;
  // delta_G contributes |G| per solution against the 1/|G|^2 1/|H| prefactor.
  return InvariantValue::from_count(BigInt(count), -1, -1, ng, nh);
}

std::uint64_t count_reps(const GroupWord& relator, const FiniteGroup& g) {
  if (relator.has_da()) throw std::invalid_argument("count_reps: relator must not contain D");
  std::uint64_t n = 0;
  for (Element x = 0; x < g.order(); ++x)
    for (Element y = 0; y < g.order(); ++y) {
      Element r = 0;
      for (Letter l : relator.letters) {
        Element f = l == Letter::X ? x : l == Letter::Y ? y : l == Letter::XInv ? g.inv(x) : g.inv(y);
        r = g.mul(r, f);
      }
      n += r == 0;
    }
  return n;
}

namespace {

// Variable index, inverted.
using Term = std::pair<int, bool>;

Element product(const FiniteGroup& g, const BoundaryAssignment& v, std::initializer_list<Term> terms) {
  Element r = 0;
  for (auto [i, inv] : terms) r = g.mul(r, inv ? g.inv(v[i]) : v[i]);
  return r;
}

constexpr bool P = false, I = true;

}  // namespace

BoundaryCheck check_boundary_system(const FiniteGroup& g, const BoundaryAssignment& v) {
  const int b = kB, r = kR, g11 = kG11, g34 = kG34, g22 = kG22, g3 = kG3pp4p, g12 = kG12;
  BoundaryCheck c{};
  c.a = product(g, v, {{g12, P}}) == product(g, v, {{g22, P}, {g12, P}, {g11, P}});
  c.b = product(g, v, {{b, P}, {g11, I}, {b, I}, {g34, I}}) ==
        product(g, v, {{g3, I}, {g34, P}, {b, P}, {g11, I}, {b, I}, {g34, I}, {g22, I}});
  c.c = product(g, v, {{g34, P}}) ==
        product(g, v, {{r, P}, {g22, P}, {r, I}, {g34, P}, {b, P}, {g12, I}, {r, I}, {g3, I}});
  c.d = product(g, v, {{r, P}, {g12, P}, {b, I}, {g34, I}, {g3, P}, {b, P}}) ==
        product(g, v, {{r, P}, {g22, P}, {r, I}, {g3, P}, {b, P}, {g11, P}});
  const Element long_word = product(
      g, v, {{g34, I}, {g3, P}, {b, P}, {g11, I}, {b, I}, {g3, I}, {g34, P}, {b, P}, {g11, P}, {b, I},
             {g3, I}, {g34, P}, {b, P}, {g11, I}, {b, I}, {g34, I}, {g3, P}, {b, P}, {g11, P}, {b, I},
             {g3, I}, {g34, P}, {b, P}, {g11, P}, {b, I}});
  c.fin = long_word == 0;
  const Element X = g.mul(g.inv(v[g34]), v[g3]);
  const Element Y = g.mul(g.mul(v[b], v[g11]), g.inv(v[b]));
  const Element Xi = g.inv(X), Yi = g.inv(Y);
  Element xy = 0;
  for (Element f : {X, Yi, Xi, Y, Xi, Yi, X, Y, Xi, Y}) xy = g.mul(xy, f);
  c.substitution = xy == long_word;
  return c;
}

std::string BoundaryReport::to_string() const {
  std::ostringstream out;
  out << "group " << group << (exhaustive ? " exhaustive" : " sampled") << ": " << assignments
      << " assignments, " << satisfying_abc << " satisfy equations a-c, " << d_failures
      << " violate equation d, " << fin_failures << " violate the final equation, " << substitution_failures
      << " substitution mismatches";
  if (exhaustive)
    out << "; " << fin_tuples << " solutions of the final equation, " << unique_completions
        << " with a unique completion, " << no_completion << " with none";
  for (const auto& ce : counterexamples) {
    out << "\n  counterexample (b, r, g11', g3'4', g2'2'', g3''4', g1'2) =";
    for (Element e : ce) out << ' ' << e;
  }
  return out.str();
}

BoundaryReport verify_boundary_system(const FiniteGroup& g, std::optional<std::uint64_t> samples,
                                std::uint64_t seed) {
  BoundaryReport rep;
  rep.group = g.name();
  rep.exhaustive = !samples.has_value();
  auto visit = [&](const BoundaryAssignment& v) {
    ++rep.assignments;
    const BoundaryCheck c = check_boundary_system(g, v);
    rep.substitution_failures += !c.substitution;
    if (!(c.a && c.b && c.c)) return;
    ++rep.satisfying_abc;
    const bool bad = !c.d || !c.fin;
    rep.d_failures += !c.d;
    rep.fin_failures += !c.fin;
    if (bad && rep.counterexamples.size() < 5) rep.counterexamples.push_back(v);
  };
  const Element n = static_cast<Element>(g.order());
  if (samples) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<Element> pick(0, n - 1);
    for (std::uint64_t s = 0; s < *samples; ++s) {
      BoundaryAssignment v;
      for (auto& e : v) e = pick(rng);
      visit(v);
    }
    return rep;
  }
  BoundaryAssignment v{};
  while (true) {
    visit(v);
    std::size_t i = 0;
    while (i < v.size() && ++v[i] == n) v[i++] = 0;
    if (i == v.size()) break;
  }
  // Completions of each solution of the final equation to equations a-c.
  BoundaryAssignment w{};
  const int free_vars[] = {kB, kR, kG11, kG34, kG3pp4p};
  while (true) {
    if (check_boundary_system(g, w).fin) {
      ++rep.fin_tuples;
      std::uint64_t completions = 0;
      for (Element x = 0; x < n; ++x)
        for (Element y = 0; y < n; ++y) {
          BoundaryAssignment u = w;
          u[kG22] = x;
          u[kG12] = y;
          const BoundaryCheck c = check_boundary_system(g, u);
          completions += c.a && c.b && c.c;
        }
      rep.unique_completions += completions == 1;
      rep.no_completion += completions == 0;
    }
    std::size_t i = 0;
    while (i < 5 && ++w[free_vars[i]] == n) w[free_vars[i++]] = 0;
    if (i == 5) break;
  }
  return rep;
}

}  // namespace cmtop
