#include "cmtop/statesum.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <sstream>
#include <thread>

namespace cmtop {

std::size_t delta(const FiniteGroup& x, Element e) {
  if (!x.contains(e)) throw std::out_of_range("delta: element out of range");
  return e == x.identity() ? x.order() : 0;
}

Element face_holonomy(const CrossedModule& cm, Element g01, Element g02, Element g12, Element h) {
  const FiniteGroup& G = cm.g();
  return G.mul(G.mul(G.mul(cm.boundary(h), g12), g01), G.inv(g02));
}

Element face_holonomy(const CrossedModule& cm, const Complex& c, const Coloring& col, Index face) {
  const auto& e = c.faces()[face].edges;
  return face_holonomy(cm, col.edge_colors[e[0]], col.edge_colors[e[1]], col.edge_colors[e[2]],
                       col.face_colors[face]);
}

Element tet_obstruction(const CrossedModule& cm, Element g23, Element h012, Element h013,
                        Element h023, Element h123) {
  const FiniteGroup& H = cm.h();
  return H.mul(H.mul(H.mul(h023, cm.act(g23, h012)), H.inv(h123)), H.inv(h013));
}

Element tet_obstruction(const CrossedModule& cm, const Complex& c, const Coloring& col, Index tet) {
  const auto& f = c.tets()[tet].faces;
  return tet_obstruction(cm, col.edge_colors[c.tet_edge(tet, 2, 3)], col.face_colors[f[0]],
                         col.face_colors[f[1]], col.face_colors[f[2]], col.face_colors[f[3]]);
}

bool is_admissible(const CrossedModule& cm, const Complex& c, const Coloring& col) {
  if (col.edge_colors.size() != c.edges().size() || col.face_colors.size() != c.faces().size())
    throw std::invalid_argument("coloring does not match the complex");
  for (Index f = 0; f < c.faces().size(); ++f)
    if (face_holonomy(cm, c, col, f) != cm.g().identity()) return false;
  for (Index t = 0; t < c.tets().size(); ++t)
    if (tet_obstruction(cm, c, col, t) != cm.h().identity()) return false;
  return true;
}

namespace {

Rational power(std::size_t base, long long exp) {
  BigInt p = boost::multiprecision::pow(BigInt(base), static_cast<unsigned>(exp < 0 ? -exp : exp));
  return exp < 0 ? Rational(BigInt(1), p) : Rational(p);
}

}  // namespace

InvariantValue InvariantValue::from_count(BigInt count, long long a, long long b,
                                          std::size_t g_order, std::size_t h_order) {
  InvariantValue v;
  v.value = Rational(count) * power(g_order, a) * power(h_order, b);
  v.count = std::move(count);
  v.a = a;
  v.b = b;
  return v;
}

std::string InvariantValue::to_string() const {
  std::ostringstream out;
  out << "Z = " << boost::multiprecision::numerator(value) << '/'
      << boost::multiprecision::denominator(value) << " (N=" << count << ", a=" << a
      << ", b=" << b << ')';
  return out.str();
}

std::uint64_t budget_from_env() {
  if (const char* s = std::getenv("CMTOP_BUDGET")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(s, &end, 10);
    if (end != s && *end == '\0' && v > 0) return v;
  }
  return kDefaultBudget;
}

std::uint64_t brute_force_iterations(const CrossedModule& cm, const Complex& c) {
  std::uint64_t n = 1;
  auto times = [&](std::uint64_t x, std::size_t k) {
    for (std::size_t i = 0; i < k; ++i) {
      if (__builtin_mul_overflow(n, x, &n)) {
        n = std::numeric_limits<std::uint64_t>::max();
        return;
      }
    }
  };
  times(cm.g().order(), c.edges().size());
  times(cm.h().order(), c.faces().size());
  return n;
}

InvariantValue brute_force_invariant(const CrossedModule& cm, const Complex& c,
                                     std::optional<std::uint64_t> budget, unsigned threads) {
  const std::uint64_t limit = budget.value_or(budget_from_env());
  const std::uint64_t iterations = brute_force_iterations(cm, c);
  if (iterations > limit)
    throw BudgetExceeded("brute force needs " +
                         (iterations == std::numeric_limits<std::uint64_t>::max()
                              ? std::string("more than 2^64")
                              : std::to_string(iterations)) +
                         " colorings, budget is " + std::to_string(limit) +
                         "; use the fast engine or raise the budget");
  if (auto report = check_structure(c); !report.empty())
    throw std::invalid_argument("complex is inconsistent: " + report[0].detail);

  const auto counts = c.counts();
  const std::size_t K0 = counts.k0, K1 = counts.k1, K2 = counts.k2, K3 = counts.k3;
  const std::size_t ng = cm.g().order(), nh = cm.h().order();

  struct FaceIdx { Index e01, e02, e12; };
  struct TetIdx { Index f012, f013, f023, f123, e23; };
  std::vector<FaceIdx> faces;
  for (const auto& f : c.faces()) faces.push_back({f.edges[0], f.edges[1], f.edges[2]});
  std::vector<TetIdx> tets;
  for (Index t = 0; t < K3; ++t) {
    const auto& f = c.tets()[t].faces;
    tets.push_back({f[0], f[1], f[2], f[3], c.tet_edge(t, 2, 3)});
  }

  // Every coloring is visited; its weight is the product of the deltas.
  auto count_range = [&](Element first_lo, Element first_hi) -> std::uint64_t {
    std::uint64_t admissible = 0;
    std::vector<Element> g(K1, 0), h(K2, 0);
    if (K1 > 0) g[0] = first_lo;
    while (true) {
      std::fill(h.begin(), h.end(), 0);
      while (true) {
        bool ok = true;
        for (const auto& f : faces)
          if (face_holonomy(cm, g[f.e01], g[f.e02], g[f.e12], h[&f - faces.data()]) != 0) {
            ok = false;
            break;
          }
        if (ok)
          for (const auto& t : tets)
            if (tet_obstruction(cm, g[t.e23], h[t.f012], h[t.f013], h[t.f023], h[t.f123]) != 0) {
              ok = false;
              break;
            }
        admissible += ok;
        std::size_t i = 0;
        while (i < K2 && ++h[i] == nh) h[i++] = 0;
        if (i == K2) break;
      }
      std::size_t i = K1;
      for (std::size_t k = K1; k-- > 1;) {
        if (++g[k] < ng) {
          i = k;
          break;
        }
        g[k] = 0;
      }
      if (i != K1) continue;
      if (K1 == 0 || ++g[0] >= first_hi) break;
    }
    return admissible;
  };

  std::uint64_t admissible = 0;
  if (K1 == 0 || threads <= 1) {
    admissible = count_range(0, K1 ? static_cast<Element>(ng) : 1);
  } else {
    const unsigned n = std::min<unsigned>(threads, static_cast<unsigned>(ng));
    std::vector<std::uint64_t> partial(n, 0);
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < n; ++t) {
      Element lo = static_cast<Element>(ng * t / n), hi = static_cast<Element>(ng * (t + 1) / n);
      pool.emplace_back([&, t, lo, hi] { partial[t] = lo < hi ? count_range(lo, hi) : 0; });
    }
    for (auto& th : pool) th.join();
    admissible = std::accumulate(partial.begin(), partial.end(), std::uint64_t{0});
  }

  // Literal prefactors, then the same number in factored form.
  const BigInt weight = boost::multiprecision::pow(BigInt(ng), static_cast<unsigned>(K2)) *
                        boost::multiprecision::pow(BigInt(nh), static_cast<unsigned>(K3));
  const BigInt weighted_sum = BigInt(admissible) * weight;
  const long long k0 = K0, k1 = K1, k2 = K2, k3 = K3;
  Rational z = Rational(weighted_sum) * power(ng, -k0 + k1 - k2) * power(nh, k0 - k1 + k2 - k3) *
               power(ng, -k1) * power(nh, -k2);
  InvariantValue v = InvariantValue::from_count(BigInt(admissible), -k0, k0 - k1, ng, nh);
  if (v.value != z) throw std::logic_error("brute force: factored form disagrees with the sum");
  return v;
}

namespace {

struct Overflow {};

struct CheckedU64 {
  using T = std::uint64_t;
  static T from(std::uint64_t x) { return x; }
  static T mul(T a, T b) {
    T r;
    if (__builtin_mul_overflow(a, b, &r)) throw Overflow{};
    return r;
  }
  static T add(T a, T b) {
    T r;
    if (__builtin_add_overflow(a, b, &r)) throw Overflow{};
    return r;
  }
  static BigInt big(T a) { return BigInt(a); }
};

struct Exact {
  using T = BigInt;
  static T from(std::uint64_t x) { return BigInt(x); }
  static T mul(const T& a, const T& b) { return a * b; }
  static T add(const T& a, const T& b) { return a + b; }
  static BigInt big(const T& a) { return a; }
};

// A factor over sorted variables; the table is mixed radix with the last
// variable fastest.
template <typename Arith>
struct Factor {
  std::vector<int> vars;
  std::vector<typename Arith::T> table;
};

// Color: one variable per face holding h.
// Coset: the face color is section(x) * k where x is forced by flatness and
// k ranges over ker(boundary); k is omitted when the kernel is trivial.
enum class FaceMode { Color, Coset };

struct Layout {
  FaceMode mode = FaceMode::Color;
  std::vector<std::size_t> domain;
  std::uint64_t gauge_vertices = 0;
  // Variables [0, edge_vars) are edges, the rest are faces.
  std::size_t edge_vars = 0;
  // Per factor: the face or tet it checks and its slot variables (-1 = fixed).
  std::vector<bool> is_tet;
  std::vector<Index> entity;
  std::vector<std::vector<int>> slots;
  std::vector<std::vector<int>> scopes;
};

Layout make_layout(const CrossedModule& cm, const Complex& c, FaceMode mode) {
  Layout l;
  l.mode = mode;
  const std::size_t ne = c.edges().size(), nf = c.faces().size();
  // Vertex gauge: the root-fixed gauge group acts freely on admissible
  // colorings, so N = |G|^(K0 - components) times the count with spanning
  // forest edges set to the identity.
  std::vector<Index> parent(c.vertex_labels().size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](Index x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::vector<int> edge_var(ne, -1);
  for (Index e = 0; e < ne; ++e) {
    Index a = find(c.edges()[e].tail), b = find(c.edges()[e].head);
    if (a != b) {
      parent[std::max(a, b)] = std::min(a, b);
      ++l.gauge_vertices;
    } else {
      edge_var[e] = static_cast<int>(l.domain.size());
      l.domain.push_back(cm.g().order());
    }
  }
  l.edge_vars = l.domain.size();
  std::size_t kernel = 0;
  for (Element y : cm.boundary_table()) kernel += y == 0;
  const std::size_t face_domain = mode == FaceMode::Color ? cm.h().order() : kernel;
  std::vector<int> face_var(nf, -1);
  for (Index f = 0; f < nf; ++f) {
    if (face_domain == 1) continue;
    face_var[f] = static_cast<int>(l.domain.size());
    l.domain.push_back(face_domain);
  }

  auto add = [&](bool tet, Index id, std::vector<int> slots) {
    std::vector<int> scope = slots;
    scope.erase(std::remove(scope.begin(), scope.end(), -1), scope.end());
    std::sort(scope.begin(), scope.end());
    scope.erase(std::unique(scope.begin(), scope.end()), scope.end());
    l.is_tet.push_back(tet);
    l.entity.push_back(id);
    l.slots.push_back(std::move(slots));
    l.scopes.push_back(std::move(scope));
  };
  auto face_edges = [&](Index f) {
    const auto& e = c.faces()[f].edges;
    return std::vector<int>{edge_var[e[0]], edge_var[e[1]], edge_var[e[2]]};
  };
  for (Index f = 0; f < nf; ++f) {
    auto s = face_edges(f);
    if (mode == FaceMode::Color) s.push_back(face_var[f]);
    add(false, f, std::move(s));
  }
  for (Index t = 0; t < c.tets().size(); ++t) {
    const auto& f = c.tets()[t].faces;
    std::vector<int> s;
    if (mode == FaceMode::Color) {
      s = {edge_var[c.tet_edge(t, 2, 3)], face_var[f[0]], face_var[f[1]], face_var[f[2]], face_var[f[3]]};
    } else {
      for (Index face : f) {
        auto e = face_edges(face);
        s.insert(s.end(), e.begin(), e.end());
      }
      for (Index face : f) s.push_back(face_var[face]);
    }
    add(true, t, std::move(s));
  }
  return l;
}

struct Plan {
  std::vector<int> order;
  std::uint64_t max_table = 0;
  long double work = 0;
  bool operator<(const Plan& o) const {
    return max_table != o.max_table ? max_table < o.max_table : work < o.work;
  }
};

std::uint64_t saturating_size(const std::vector<int>& vars, const std::vector<std::size_t>& domain) {
  std::uint64_t n = 1;
  for (int v : vars)
    if (__builtin_mul_overflow(n, static_cast<std::uint64_t>(domain[v]), &n))
      return std::numeric_limits<std::uint64_t>::max();
  return n;
}

// Greedy elimination order by resulting table size. With an rng, the
// choice is perturbed so that repeated runs explore other orders.
Plan plan_elimination(const std::vector<std::size_t>& domain, std::vector<std::vector<int>> scopes,
                      std::mt19937_64* rng, double spread) {
  const std::size_t nvars = domain.size();
  Plan plan;
  for (const auto& s : scopes) plan.max_table = std::max(plan.max_table, saturating_size(s, domain));
  std::vector<std::vector<std::size_t>> uses(nvars);
  for (std::size_t i = 0; i < scopes.size(); ++i)
    for (int v : scopes[i]) uses[v].push_back(i);
  std::vector<bool> alive(nvars, true), live_factor(scopes.size(), true);
  std::uniform_real_distribution<double> jitter(0.0, spread);
  for (std::size_t round = 0; round < nvars; ++round) {
    int best = -1;
    double best_score = 0;
    std::uint64_t best_cost = 0;
    std::vector<int> best_scope;
    for (std::size_t v = 0; v < nvars; ++v) {
      if (!alive[v]) continue;
      std::vector<int> scope;
      for (std::size_t i : uses[v])
        if (live_factor[i]) scope.insert(scope.end(), scopes[i].begin(), scopes[i].end());
      std::sort(scope.begin(), scope.end());
      scope.erase(std::unique(scope.begin(), scope.end()), scope.end());
      scope.erase(std::remove(scope.begin(), scope.end(), static_cast<int>(v)), scope.end());
      const std::uint64_t cost = saturating_size(scope, domain);
      double score = std::log2(static_cast<double>(cost));
      if (rng) score += jitter(*rng);
      if (best < 0 || score < best_score) {
        best = static_cast<int>(v);
        best_score = score;
        best_cost = cost;
        best_scope = std::move(scope);
      }
    }
    alive[best] = false;
    plan.order.push_back(best);
    plan.max_table = std::max(plan.max_table, best_cost);
    std::size_t involved = 0;
    for (std::size_t i : uses[best])
      if (live_factor[i]) {
        live_factor[i] = false;
        ++involved;
      }
    plan.work += static_cast<long double>(best_cost) * domain[best] * involved;
    if (involved == 0) continue;
    scopes.push_back(best_scope);
    live_factor.push_back(true);
    for (int v : best_scope) uses[v].push_back(scopes.size() - 1);
  }
  return plan;
}

Plan best_plan(const std::vector<std::size_t>& domain, const std::vector<std::vector<int>>& scopes) {
  Plan best = plan_elimination(domain, scopes, nullptr, 0);
  std::mt19937_64 rng(0x5eed);
  for (int i = 0; i < 48; ++i) {
    Plan p = plan_elimination(domain, scopes, &rng, 1.0 + i % 4);
    if (p < best) best = std::move(p);
  }
  return best;
}

// Preimages under the boundary: one representative per image element and
// the kernel in increasing order.
struct Sections {
  std::vector<Element> kernel;
  std::vector<Element> section;
  static constexpr Element kNone = static_cast<Element>(-1);

  explicit Sections(const CrossedModule& cm) : section(cm.g().order(), kNone) {
    for (Element y = 0; y < cm.h().order(); ++y) {
      if (cm.boundary(y) == 0) kernel.push_back(y);
      if (section[cm.boundary(y)] == kNone) section[cm.boundary(y)] = y;
    }
  }
};

// Face color forced by flatness: boundary(h) = g02 g01^-1 g12^-1.
Element forced_image(const FiniteGroup& G, Element g01, Element g02, Element g12) {
  return G.mul(G.mul(g02, G.inv(g01)), G.inv(g12));
}

// Coset tet check; v holds the 12 face edges then the 4 kernel indices.
bool coset_tet_ok(const CrossedModule& cm, const Sections& sec, const Element* v) {
  std::array<Element, 4> h{};
  for (int s = 0; s < 4; ++s) {
    Element x = forced_image(cm.g(), v[3 * s], v[3 * s + 1], v[3 * s + 2]);
    if (sec.section[x] == Sections::kNone) return false;
    h[s] = cm.h().mul(sec.section[x], sec.kernel[v[12 + s]]);
  }
  // g23 is the 12 edge of face 023.
  return tet_obstruction(cm, v[8], h[0], h[1], h[2], h[3]) == 0;
}

Factor<CheckedU64> build_factor(const CrossedModule& cm, const Layout& l, std::size_t i, const Sections& sec) {
  const auto& slots = l.slots[i];
  Factor<CheckedU64> fac;
  fac.vars = l.scopes[i];
  std::vector<std::size_t> pos(slots.size());
  for (std::size_t k = 0; k < slots.size(); ++k)
    pos[k] = slots[k] < 0 ? SIZE_MAX
                          : static_cast<std::size_t>(
                                std::lower_bound(fac.vars.begin(), fac.vars.end(), slots[k]) - fac.vars.begin());
  std::vector<Element> v(slots.size());
  const std::size_t size = saturating_size(fac.vars, l.domain);
  fac.table.reserve(size);
  std::vector<Element> val(fac.vars.size(), 0);
  for (std::size_t idx = 0; idx < size; ++idx) {
    for (std::size_t k = 0; k < slots.size(); ++k) v[k] = pos[k] == SIZE_MAX ? 0 : val[pos[k]];
    bool ok;
    if (l.mode == FaceMode::Color)
      ok = l.is_tet[i] ? tet_obstruction(cm, v[0], v[1], v[2], v[3], v[4]) == 0
                       : face_holonomy(cm, v[0], v[1], v[2], v[3]) == 0;
    else if (!l.is_tet[i])
      ok = sec.section[forced_image(cm.g(), v[0], v[1], v[2])] != Sections::kNone;
    else
      ok = coset_tet_ok(cm, sec, v.data());
    fac.table.push_back(ok ? 1 : 0);
    for (std::size_t k = val.size(); k-- > 0;) {
      if (++val[k] < l.domain[fac.vars[k]]) break;
      val[k] = 0;
    }
  }
  return fac;
}

std::vector<Factor<CheckedU64>> build_factors(const CrossedModule& cm, const Layout& l) {
  const Sections sec(cm);
  std::vector<Factor<CheckedU64>> out;
  for (std::size_t i = 0; i < l.slots.size(); ++i) out.push_back(build_factor(cm, l, i, sec));
  return out;
}

template <typename Arith>
typename Arith::T eliminate_all(const std::vector<std::size_t>& domain,
                                const std::vector<Factor<CheckedU64>>& initial,
                                const std::vector<int>& order, const EngineOptions& opts) {
  using T = typename Arith::T;
  std::vector<Factor<Arith>> factors;
  for (const auto& f : initial) {
    Factor<Arith> g;
    g.vars = f.vars;
    g.table.reserve(f.table.size());
    for (auto x : f.table) g.table.push_back(Arith::from(x));
    factors.push_back(std::move(g));
  }
  T constant = Arith::from(1);

  for (int best : order) {
    std::vector<Factor<Arith>> involved, rest;
    for (auto& f : factors)
      (std::binary_search(f.vars.begin(), f.vars.end(), best) ? involved : rest).push_back(std::move(f));
    factors = std::move(rest);
    const std::size_t dv = domain[best];
    if (involved.empty()) {
      constant = Arith::mul(constant, Arith::from(dv));
      continue;
    }
    std::vector<int> out_vars;
    for (const auto& f : involved) out_vars.insert(out_vars.end(), f.vars.begin(), f.vars.end());
    std::sort(out_vars.begin(), out_vars.end());
    out_vars.erase(std::unique(out_vars.begin(), out_vars.end()), out_vars.end());
    out_vars.erase(std::remove(out_vars.begin(), out_vars.end(), best), out_vars.end());
    const std::uint64_t out_size = saturating_size(out_vars, domain);
    if (out_size > opts.max_table_entries)
      throw ResourceLimit("fast engine: an intermediate table would need " + std::to_string(out_size) +
                          " entries (limit " + std::to_string(opts.max_table_entries) + ")");

    // Strides of every involved factor along the output scope and along `best`.
    const std::size_t nout = out_vars.size();
    std::vector<std::vector<std::size_t>> stride(involved.size(), std::vector<std::size_t>(nout, 0));
    std::vector<std::size_t> stride_best(involved.size(), 0);
    for (std::size_t i = 0; i < involved.size(); ++i) {
      const auto& vars = involved[i].vars;
      std::size_t s = 1;
      for (std::size_t k = vars.size(); k-- > 0;) {
        if (vars[k] == best) stride_best[i] = s;
        else stride[i][std::lower_bound(out_vars.begin(), out_vars.end(), vars[k]) - out_vars.begin()] = s;
        s *= domain[vars[k]];
      }
    }
    Factor<Arith> out;
    out.vars = out_vars;
    out.table.assign(out_size, Arith::from(0));

    auto work = [&](std::size_t lo, std::size_t hi) {
      std::vector<Element> val(nout, 0);
      std::size_t rem = lo;
      for (std::size_t k = nout; k-- > 0;) {
        val[k] = static_cast<Element>(rem % domain[out_vars[k]]);
        rem /= domain[out_vars[k]];
      }
      std::vector<std::size_t> base(involved.size(), 0);
      for (std::size_t i = 0; i < involved.size(); ++i)
        for (std::size_t k = 0; k < nout; ++k) base[i] += val[k] * stride[i][k];
      for (std::size_t idx = lo; idx < hi; ++idx) {
        T sum = Arith::from(0);
        for (std::size_t x = 0; x < dv; ++x) {
          T prod = Arith::from(1);
          bool zero = false;
          for (std::size_t i = 0; i < involved.size(); ++i) {
            const T& entry = involved[i].table[base[i] + x * stride_best[i]];
            if (entry == 0) {
              zero = true;
              break;
            }
            prod = Arith::mul(prod, entry);
          }
          if (!zero) sum = Arith::add(sum, prod);
        }
        out.table[idx] = std::move(sum);
        for (std::size_t k = nout; k-- > 0;) {
          for (std::size_t i = 0; i < involved.size(); ++i) base[i] += stride[i][k];
          if (++val[k] < domain[out_vars[k]]) break;
          for (std::size_t i = 0; i < involved.size(); ++i) base[i] -= stride[i][k] * val[k];
          val[k] = 0;
        }
      }
    };

    const unsigned nthreads = opts.threads == 0 ? 1 : opts.threads;
    if (nthreads <= 1 || out_size * dv < (1u << 14)) {
      work(0, out_size);
    } else {
      std::vector<std::thread> pool;
      std::vector<std::exception_ptr> errors(nthreads);
      for (unsigned t = 0; t < nthreads; ++t) {
        std::size_t lo = out_size * t / nthreads, hi = out_size * (t + 1) / nthreads;
        pool.emplace_back([&, t, lo, hi] {
          try {
            work(lo, hi);
          } catch (...) {
            errors[t] = std::current_exception();
          }
        });
      }
      for (auto& th : pool) th.join();
      for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    }

    if (out.vars.empty()) {
      constant = Arith::mul(constant, out.table[0]);
      if (constant == 0) return constant;
    } else {
      factors.push_back(std::move(out));
    }
  }
  for (const auto& f : factors) constant = Arith::mul(constant, f.table.at(0));
  return constant;
}

// Slice count by elimination over all variables.
BigInt eliminate_count(const std::vector<std::size_t>& domain, const std::vector<Factor<CheckedU64>>& factors,
                       const std::vector<int>& order, const EngineOptions& opts) {
  try {
    return CheckedU64::big(eliminate_all<CheckedU64>(domain, factors, order, opts));
  } catch (const Overflow&) {
    return eliminate_all<Exact>(domain, factors, order, opts);
  }
}

// Conditioning on edges: enumerate the edge colorings in which every face
// has a preimage under the boundary, and for each one eliminate only the
// kernel variables of the faces.
class EdgeConditioning {
 public:
  EdgeConditioning(const CrossedModule& cm, const Layout& l) : cm_(cm), l_(l), sec_(cm) {
    const std::size_t ne = l.edge_vars;
    for (std::size_t i = 0; i < l.slots.size(); ++i) {
      if (l.is_tet[i]) {
        tets_.push_back(i);
        std::vector<int> scope;
        for (int v : l.scopes[i])
          if (v >= static_cast<int>(ne)) scope.push_back(v - static_cast<int>(ne));
        tet_scopes_.push_back(std::move(scope));
      } else if (l.scopes[i].empty()) {
        fixed_faces_.push_back(i);
      } else {
        faces_.push_back(i);
      }
    }
    face_domain_.assign(l.domain.begin() + ne, l.domain.end());
    face_plan_ = best_plan(face_domain_, tet_scopes_);

    // Assign first the edge that completes the most faces.
    std::vector<bool> assigned(ne, false);
    std::vector<std::size_t> missing(faces_.size());
    for (std::size_t j = 0; j < faces_.size(); ++j) missing[j] = l.scopes[faces_[j]].size();
    for (std::size_t depth = 0; depth < ne; ++depth) {
      int best = -1;
      std::pair<int, int> best_key{-1, -1};
      for (std::size_t v = 0; v < ne; ++v) {
        if (assigned[v]) continue;
        std::pair<int, int> key{0, 0};
        for (std::size_t j = 0; j < faces_.size(); ++j)
          if (std::binary_search(l.scopes[faces_[j]].begin(), l.scopes[faces_[j]].end(), static_cast<int>(v))) {
            key.first += missing[j] == 1;
            key.second += 1;
          }
        if (key > best_key) {
          best_key = key;
          best = static_cast<int>(v);
        }
      }
      assigned[best] = true;
      order_.push_back(best);
      checks_.emplace_back();
      for (std::size_t j = 0; j < faces_.size(); ++j)
        if (std::binary_search(l.scopes[faces_[j]].begin(), l.scopes[faces_[j]].end(), best) && --missing[j] == 0)
          checks_.back().push_back(faces_[j]);
    }
    std::size_t tet_entries = 0;
    for (const auto& s : tet_scopes_) tet_entries += saturating_size(s, face_domain_);
    per_coloring_work_ = face_plan_.work + tet_entries;
  }

  const Plan& face_plan() const { return face_plan_; }
  long double per_coloring_work() const { return per_coloring_work_; }

  // Edge colorings whose faces all have preimages, counted by elimination.
  std::optional<BigInt> coloring_count(const EngineOptions& opts) const {
    std::vector<std::size_t> domain(l_.domain.begin(), l_.domain.begin() + l_.edge_vars);
    std::vector<std::vector<int>> scopes;
    for (std::size_t i : faces_) scopes.push_back(l_.scopes[i]);
    Plan p = best_plan(domain, scopes);
    if (p.max_table > opts.max_table_entries) return std::nullopt;
    std::vector<Factor<CheckedU64>> factors;
    for (std::size_t i : faces_) factors.push_back(build_factor(cm_, l_, i, sec_));
    if (!fixed_ok()) return BigInt(0);
    return eliminate_count(domain, factors, p.order, opts);
  }

  BigInt count(const EngineOptions& opts) const {
    if (!fixed_ok()) return 0;
    const unsigned n = order_.empty() ? 1
                                      : std::max(1u, std::min<unsigned>(opts.threads,
                                                                        static_cast<unsigned>(l_.domain[order_[0]])));
    std::vector<BigInt> partial(n);
    std::vector<std::exception_ptr> errors(n);
    auto run = [&](unsigned t) {
      try {
        std::vector<Element> val(l_.edge_vars, 0);
        EngineOptions single = opts;
        single.threads = 1;
        Accumulator acc;
        if (order_.empty()) {
          acc.add(kernel_count(val, single));
        } else {
          const std::size_t d0 = l_.domain[order_[0]];
          search(0, static_cast<Element>(d0 * t / n), static_cast<Element>(d0 * (t + 1) / n), val, single, acc);
        }
        partial[t] = acc.total();
      } catch (...) {
        errors[t] = std::current_exception();
      }
    };
    if (n == 1) {
      run(0);
    } else {
      std::vector<std::thread> pool;
      for (unsigned t = 0; t < n; ++t) pool.emplace_back(run, t);
      for (auto& th : pool) th.join();
    }
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
    BigInt total = 0;
    for (const auto& p : partial) total += p;
    return total;
  }

 private:
  struct Accumulator {
    std::uint64_t small = 0;
    BigInt big = 0;
    void add(const BigInt& x) {
      if (x <= std::numeric_limits<std::uint64_t>::max()) {
        std::uint64_t y = static_cast<std::uint64_t>(x);
        if (!__builtin_add_overflow(small, y, &small)) return;
      }
      big += x;
    }
    BigInt total() const { return big + small; }
  };

  bool fixed_ok() const {
    for (std::size_t i : fixed_faces_)
      if (build_factor(cm_, l_, i, sec_).table.at(0) == 0) return false;
    return true;
  }

  bool face_ok(std::size_t i, const std::vector<Element>& val) const {
    Element g[3];
    for (int k = 0; k < 3; ++k) g[k] = l_.slots[i][k] < 0 ? 0 : val[l_.slots[i][k]];
    return sec_.section[forced_image(cm_.g(), g[0], g[1], g[2])] != Sections::kNone;
  }

  void search(std::size_t depth, Element lo, Element hi, std::vector<Element>& val, const EngineOptions& opts,
              Accumulator& acc) const {
    if (depth == order_.size()) {
      acc.add(kernel_count(val, opts));
      return;
    }
    const int v = order_[depth];
    if (depth > 0) {
      lo = 0;
      hi = static_cast<Element>(l_.domain[v]);
    }
    for (Element x = lo; x < hi; ++x) {
      val[v] = x;
      bool ok = true;
      for (std::size_t i : checks_[depth])
        if (!(ok = face_ok(i, val))) break;
      if (ok) search(depth + 1, 0, 0, val, opts, acc);
    }
    val[v] = 0;
  }

  // Number of kernel assignments making every tet admissible.
  BigInt kernel_count(const std::vector<Element>& val, const EngineOptions& opts) const {
    const int ne = static_cast<int>(l_.edge_vars);
    std::vector<Factor<CheckedU64>> factors;
    Element v[16];
    for (std::size_t j = 0; j < tets_.size(); ++j) {
      const auto& slots = l_.slots[tets_[j]];
      Factor<CheckedU64> fac;
      fac.vars = tet_scopes_[j];
      for (int k = 0; k < 12; ++k) v[k] = slots[k] < 0 ? 0 : val[slots[k]];
      std::array<std::size_t, 4> pos{};
      for (int s = 0; s < 4; ++s)
        pos[s] = slots[12 + s] < 0 ? SIZE_MAX
                                   : static_cast<std::size_t>(std::lower_bound(fac.vars.begin(), fac.vars.end(),
                                                                               slots[12 + s] - ne) -
                                                              fac.vars.begin());
      const std::size_t size = saturating_size(fac.vars, face_domain_);
      fac.table.reserve(size);
      std::vector<Element> k(fac.vars.size(), 0);
      for (std::size_t idx = 0; idx < size; ++idx) {
        for (int s = 0; s < 4; ++s) v[12 + s] = pos[s] == SIZE_MAX ? 0 : k[pos[s]];
        fac.table.push_back(coset_tet_ok(cm_, sec_, v) ? 1 : 0);
        for (std::size_t q = k.size(); q-- > 0;) {
          if (++k[q] < face_domain_[fac.vars[q]]) break;
          k[q] = 0;
        }
      }
      if (fac.vars.empty() && fac.table[0] == 0) return 0;
      factors.push_back(std::move(fac));
    }
    return eliminate_count(face_domain_, factors, face_plan_.order, opts);
  }

  const CrossedModule& cm_;
  const Layout& l_;
  Sections sec_;
  std::vector<std::size_t> faces_, fixed_faces_, tets_;
  std::vector<std::vector<int>> tet_scopes_;
  std::vector<std::size_t> face_domain_;
  Plan face_plan_;
  std::vector<int> order_;
  std::vector<std::vector<std::size_t>> checks_;
  long double per_coloring_work_ = 0;
};

}  // namespace

InvariantValue invariant(const CrossedModule& cm, const Complex& c, const EngineOptions& opts) {
  if (auto report = validate(cm, false); !report.empty())
    throw std::invalid_argument("fast engine needs a valid crossed module: " + report[0].message);
  if (auto report = check_structure(c); !report.empty())
    throw std::invalid_argument("complex is inconsistent: " + report[0].detail);
  Layout layout = make_layout(cm, c, FaceMode::Color);
  Plan plan = best_plan(layout.domain, layout.scopes);
  Layout coset = make_layout(cm, c, FaceMode::Coset);
  if (Plan p = best_plan(coset.domain, coset.scopes); p < plan) {
    layout = coset;
    plan = std::move(p);
  }
  const bool plan_fits = plan.max_table <= opts.max_table_entries;

  // Conditioning on edges pays off when few edge colorings survive.
  EdgeConditioning conditioning(cm, coset);
  const bool face_plan_fits = conditioning.face_plan().max_table <= opts.max_table_entries;
  bool condition = opts.strategy == EngineStrategy::ConditionEdges;
  if (opts.strategy == EngineStrategy::Auto && face_plan_fits && (!plan_fits || plan.work > 1e6)) {
    if (auto colorings = conditioning.coloring_count(opts)) {
      const long double estimate =
          static_cast<long double>(*colorings) * (conditioning.per_coloring_work() + coset.edge_vars);
      condition = !plan_fits || estimate < plan.work;
    }
  }
  const Plan& used = condition ? conditioning.face_plan() : plan;
  if (used.max_table > opts.max_table_entries)
    throw ResourceLimit("fast engine: best elimination order needs a table of " +
                        std::to_string(used.max_table) + " entries (limit " +
                        std::to_string(opts.max_table_entries) + ")");

  BigInt slice = condition ? conditioning.count(opts)
                           : eliminate_count(layout.domain, build_factors(cm, layout), plan.order, opts);
  const std::size_t ng = cm.g().order(), nh = cm.h().order();
  BigInt count = slice * boost::multiprecision::pow(BigInt(ng), static_cast<unsigned>(layout.gauge_vertices));
  const long long k0 = c.counts().k0, k1 = c.counts().k1;
  return InvariantValue::from_count(std::move(count), -k0, k0 - k1, ng, nh);
}

bool consistency_identity(const CrossedModule& cm, const TetColoring& t) {
  const FiniteGroup& H = cm.h();
  // Faces: h[0] = 012, h[1] = 013, h[2] = 023, h[3] = 123; g[5] = 23.
  Element lhs = H.mul(t.h[2], cm.act(t.g[5], t.h[0]));
  Element rhs = H.mul(t.h[1], t.h[3]);
  return cm.boundary(lhs) == cm.boundary(rhs);
}

TetColoring sample_flat_tet_coloring(const CrossedModule& cm, std::mt19937_64& rng) {
  std::uniform_int_distribution<Element> pick_g(0, static_cast<Element>(cm.g().order() - 1));
  std::uniform_int_distribution<Element> pick_h(0, static_cast<Element>(cm.h().order() - 1));
  // Edge positions (01, 02, 12) of each face slot within 01 02 03 12 13 23.
  static constexpr int kFaceEdges[4][3] = {{0, 1, 3}, {0, 2, 4}, {1, 2, 5}, {3, 4, 5}};
  for (std::uint64_t tries = 0; tries < 100'000'000; ++tries) {
    TetColoring t;
    for (auto& g : t.g) g = pick_g(rng);
    for (auto& h : t.h) h = pick_h(rng);
    bool flat = true;
    for (int s = 0; s < 4 && flat; ++s)
      flat = face_holonomy(cm, t.g[kFaceEdges[s][0]], t.g[kFaceEdges[s][1]], t.g[kFaceEdges[s][2]], t.h[s]) == 0;
    if (flat) return t;
  }
  throw std::runtime_error("sample_flat_tet_coloring: no flat coloring found");
}

}  // namespace cmtop
