#include "cmtop/moves.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>

namespace cmtop {

const char* move_name(MoveKind k) {
  switch (k) {
    case MoveKind::P14: return "P14";
    case MoveKind::P41: return "P41";
    case MoveKind::P23: return "P23";
    case MoveKind::P32: return "P32";
    case MoveKind::B13: return "B13";
    case MoveKind::B31: return "B31";
    case MoveKind::B22: return "B22";
  }
  return "?";
}

MoveKind parse_move_kind(const std::string& s) {
  std::string u;
  for (char ch : s) u += static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
  if (!u.empty() && std::isdigit(static_cast<unsigned char>(u[0]))) u = "P" + u;
  for (MoveKind k : {MoveKind::P14, MoveKind::P41, MoveKind::P23, MoveKind::P32, MoveKind::B13,
                     MoveKind::B31, MoveKind::B22})
    if (u == move_name(k)) return k;
  throw std::invalid_argument("unknown move '" + s + "' (expected 14, 41, 23, 32, b13, b31 or b22)");
}

MoveKind inverse_kind(MoveKind k) {
  switch (k) {
    case MoveKind::P14: return MoveKind::P41;
    case MoveKind::P41: return MoveKind::P14;
    case MoveKind::P23: return MoveKind::P32;
    case MoveKind::P32: return MoveKind::P23;
    case MoveKind::B13: return MoveKind::B31;
    case MoveKind::B31: return MoveKind::B13;
    case MoveKind::B22: return MoveKind::B22;
  }
  return k;
}

TargetKind target_kind(MoveKind k) {
  switch (k) {
    case MoveKind::P14: return TargetKind::Tet;
    case MoveKind::P23:
    case MoveKind::B13: return TargetKind::Face;
    case MoveKind::P32:
    case MoveKind::B22: return TargetKind::Edge;
    case MoveKind::P41:
    case MoveKind::B31: return TargetKind::Vertex;
  }
  return TargetKind::Tet;
}

std::string to_string(const MoveDescriptor& m) {
  static constexpr const char* kTarget[] = {"vertex", "edge", "face", "tet"};
  std::ostringstream out;
  out << move_name(m.kind) << " on " << kTarget[static_cast<int>(target_kind(m.kind))] << ' '
      << m.target;
  if (m.new_vertex) out << " (new vertex " << *m.new_vertex << ')';
  return out.str();
}

namespace {

using AbsSet = std::vector<int>;  // sorted abstract vertex ids

AbsSet abs_set(std::initializer_list<int> xs) {
  AbsSet s(xs);
  std::sort(s.begin(), s.end());
  return s;
}

std::string show(const AbsSet& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s[i]);
  return out + "}";
}

// Old tets of a configuration with their corners identified across the glued
// faces. Abstract vertex ids are 0..n-1 by first appearance.
struct Config {
  const Complex* c = nullptr;
  std::vector<Index> tets;
  std::vector<std::array<int, 4>> corners;
  std::vector<Index> vertex_of;  // complex vertex index per abstract vertex
  int size() const { return static_cast<int>(vertex_of.size()); }
};

class Retriangulation {
 public:
  Retriangulation(const Complex& c, const MoveDescriptor& m) : c_(c), m_(m) {}

  [[noreturn]] void fail(const std::string& why) const { throw MovePreconditionError(m_, why); }

  Config glue(std::vector<Index> tets, const std::vector<Index>& glue_faces) const {
    Config cfg;
    cfg.c = &c_;
    cfg.tets = std::move(tets);
    const std::size_t k = cfg.tets.size();
    std::vector<int> parent(4 * k);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    auto pos = [&](Index t) -> int {
      auto it = std::find(cfg.tets.begin(), cfg.tets.end(), t);
      return it == cfg.tets.end() ? -1 : static_cast<int>(it - cfg.tets.begin());
    };
    for (Index f : glue_faces) {
      const auto& slots = c_.face_slots(f);
      if (slots.size() != 2) fail("face " + std::to_string(c_.faces()[f].id) + " is not interior");
      int a = pos(slots[0].tet), b = pos(slots[1].tet);
      if (a < 0 || b < 0) fail("face " + std::to_string(c_.faces()[f].id) + " leaves the configuration");
      for (int i = 0; i < 3; ++i) {
        int x = find(4 * a + kTetFaceCorners[slots[0].slot][i]);
        int y = find(4 * b + kTetFaceCorners[slots[1].slot][i]);
        if (x != y) parent[std::max(x, y)] = std::min(x, y);
      }
    }
    std::map<int, int> id_of_root;
    cfg.corners.resize(k);
    for (std::size_t t = 0; t < k; ++t) {
      auto verts = c_.tet_vertices(cfg.tets[t]);
      for (int i = 0; i < 4; ++i) {
        int r = find(static_cast<int>(4 * t + i));
        auto [it, fresh] = id_of_root.emplace(r, static_cast<int>(id_of_root.size()));
        if (fresh) cfg.vertex_of.push_back(verts[i]);
        cfg.corners[t][i] = it->second;
      }
    }
    return cfg;
  }

  // Replaces the configuration's old tets by `new_tets` (sets of abstract
  // vertices). `new_abs` is the abstract id of an inserted vertex, if any.
  MoveResult retriangulate(const Config& cfg, const std::vector<AbsSet>& new_tets,
                           std::optional<int> new_abs, VertexLabel new_label) {
    const int n_abs = cfg.size() + (new_abs ? 1 : 0);
    auto label_of_abs = [&](int a) -> VertexLabel {
      if (new_abs && a == *new_abs) return new_label;
      return c_.vertex_labels()[cfg.vertex_of[a]];
    };

    // Old simplices of the configuration as abstract sets, mapped to entities.
    std::map<AbsSet, Index> old_edges, old_faces;
    std::set<int> old_vertices;
    for (std::size_t k = 0; k < cfg.tets.size(); ++k) {
      const auto& cr = cfg.corners[k];
      for (int i = 0; i < 4; ++i) {
        old_vertices.insert(cr[i]);
        for (int j = i + 1; j < 4; ++j) {
          if (cr[i] == cr[j]) fail("configuration is not embedded (tet " +
                                   std::to_string(c_.tets()[cfg.tets[k]].id) +
                                   " has two corners identified)");
          AbsSet key = abs_set({cr[i], cr[j]});
          Index e = c_.tet_edge(cfg.tets[k], i, j);
          auto [it, fresh] = old_edges.emplace(key, e);
          if (!fresh && it->second != e) fail("configuration is not embedded (edge " + show(key) + ")");
        }
      }
      for (int s = 0; s < 4; ++s) {
        const auto& fc = kTetFaceCorners[s];
        AbsSet key = abs_set({cr[fc[0]], cr[fc[1]], cr[fc[2]]});
        Index f = c_.tets()[cfg.tets[k]].faces[s];
        auto [it, fresh] = old_faces.emplace(key, f);
        if (!fresh && it->second != f) fail("configuration is not embedded (face " + show(key) + ")");
      }
    }

    std::set<AbsSet> new_edge_keys, new_face_keys;
    std::set<int> new_vertices;
    for (const auto& t : new_tets) {
      new_vertices.insert(t.begin(), t.end());
      for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) {
          new_edge_keys.insert({t[i], t[j]});
          for (int k = j + 1; k < 4; ++k) new_face_keys.insert({t[i], t[j], t[k]});
        }
    }

    // Removed entities must be closed under incidence and disjoint from the
    // retained ones.
    std::set<Index> removed_v, removed_e, removed_f, kept_v, kept_e, kept_f;
    for (int a : old_vertices) (new_vertices.count(a) ? kept_v : removed_v).insert(cfg.vertex_of[a]);
    for (const auto& [key, e] : old_edges) (new_edge_keys.count(key) ? kept_e : removed_e).insert(e);
    for (const auto& [key, f] : old_faces) (new_face_keys.count(key) ? kept_f : removed_f).insert(f);
    for (Index v : removed_v)
      if (kept_v.count(v)) fail("vertex " + std::to_string(c_.vertex_labels()[v]) + " occurs both inside and outside the star");
    for (Index e : removed_e)
      if (kept_e.count(e)) fail("edge " + std::to_string(c_.edges()[e].id) + " is identified with a retained edge");
    for (Index f : removed_f)
      if (kept_f.count(f)) fail("face " + std::to_string(c_.faces()[f].id) + " is identified with a retained face");
    std::set<Index> tet_set(cfg.tets.begin(), cfg.tets.end());
    for (Index f : removed_f)
      for (const auto& slot : c_.face_slots(f))
        if (!tet_set.count(slot.tet))
          fail("face " + std::to_string(c_.faces()[f].id) + " would be removed but also bounds tet " +
               std::to_string(c_.tets()[slot.tet].id));
    for (Index f = 0; f < c_.faces().size(); ++f) {
      if (removed_f.count(f)) continue;
      for (Index e : c_.faces()[f].edges)
        if (removed_e.count(e))
          fail("edge " + std::to_string(c_.edges()[e].id) + " would be removed but also bounds face " +
               std::to_string(c_.faces()[f].id));
    }
    for (Index e = 0; e < c_.edges().size(); ++e) {
      if (removed_e.count(e)) continue;
      const Edge& ed = c_.edges()[e];
      if (removed_v.count(ed.tail) || removed_v.count(ed.head))
        fail("vertex would be removed but also bounds edge " + std::to_string(ed.id));
    }

    // Total order on the abstract vertices extending every old local order.
    std::vector<std::set<int>> succ(n_abs);
    std::vector<int> indegree(n_abs, 0);
    for (const auto& cr : cfg.corners)
      for (int i = 0; i + 1 < 4; ++i)
        if (succ[cr[i]].insert(cr[i + 1]).second) ++indegree[cr[i + 1]];
    using Key = std::pair<VertexLabel, int>;
    std::priority_queue<Key, std::vector<Key>, std::greater<>> ready;
    for (int a = 0; a < n_abs; ++a)
      if (indegree[a] == 0) ready.push({label_of_abs(a), a});
    std::vector<int> rank(n_abs, -1);
    int next_rank = 0;
    while (!ready.empty()) {
      int a = ready.top().second;
      ready.pop();
      rank[a] = next_rank++;
      for (int b : succ[a])
        if (--indegree[b] == 0) ready.push({label_of_abs(b), b});
    }
    if (next_rank != n_abs) fail("local vertex orders around the configuration are cyclic");
    auto by_rank = [&](AbsSet s) {
      std::sort(s.begin(), s.end(), [&](int x, int y) { return rank[x] < rank[y]; });
      return s;
    };

    // Assemble the new complex.
    MoveResult out;
    auto max_id = [](auto range) {
      EntityId m = -1;
      for (const auto& x : range) m = std::max(m, x.id);
      return m;
    };
    EntityId next_edge = max_id(c_.edges()) + 1, next_face = max_id(c_.faces()) + 1,
             next_tet = max_id(c_.tets()) + 1;

    std::vector<VertexLabel> labels;
    std::vector<Index> vmap(c_.vertex_labels().size(), UINT32_MAX);
    for (Index v = 0; v < c_.vertex_labels().size(); ++v) {
      if (removed_v.count(v)) {
        out.removed_vertices.push_back(c_.vertex_labels()[v]);
        continue;
      }
      vmap[v] = static_cast<Index>(labels.size());
      labels.push_back(c_.vertex_labels()[v]);
    }
    Index new_vertex_index = UINT32_MAX;
    if (new_abs) {
      new_vertex_index = static_cast<Index>(labels.size());
      labels.push_back(new_label);
      out.created_vertices.push_back(new_label);
    }
    auto vertex_index_of_abs = [&](int a) {
      return new_abs && a == *new_abs ? new_vertex_index : vmap[cfg.vertex_of[a]];
    };

    std::vector<Edge> edges;
    std::vector<Index> emap(c_.edges().size(), UINT32_MAX);
    for (Index e = 0; e < c_.edges().size(); ++e) {
      if (removed_e.count(e)) {
        out.removed_edges.push_back(c_.edges()[e].id);
        continue;
      }
      Edge ed = c_.edges()[e];
      ed.tail = vmap[ed.tail];
      ed.head = vmap[ed.head];
      emap[e] = static_cast<Index>(edges.size());
      edges.push_back(ed);
    }
    std::map<AbsSet, Index> created_edge;
    auto edge_for = [&](int a, int b) -> Index {
      AbsSet key = abs_set({a, b});
      if (auto it = old_edges.find(key); it != old_edges.end()) return emap[it->second];
      if (auto it = created_edge.find(key); it != created_edge.end()) return it->second;
      AbsSet ordered = by_rank(key);
      Index idx = static_cast<Index>(edges.size());
      edges.push_back({vertex_index_of_abs(ordered[0]), vertex_index_of_abs(ordered[1]), next_edge});
      out.created_edges.push_back(next_edge++);
      created_edge.emplace(key, idx);
      return idx;
    };

    std::vector<Face> faces;
    std::vector<Index> fmap(c_.faces().size(), UINT32_MAX);
    for (Index f = 0; f < c_.faces().size(); ++f) {
      if (removed_f.count(f)) {
        out.removed_faces.push_back(c_.faces()[f].id);
        continue;
      }
      Face fc = c_.faces()[f];
      for (auto& e : fc.edges) e = emap[e];
      fmap[f] = static_cast<Index>(faces.size());
      faces.push_back(fc);
    }
    std::map<AbsSet, Index> created_face;
    auto face_for = [&](const AbsSet& ordered) -> Index {
      AbsSet key = ordered;
      std::sort(key.begin(), key.end());
      if (auto it = old_faces.find(key); it != old_faces.end()) return fmap[it->second];
      if (auto it = created_face.find(key); it != created_face.end()) return it->second;
      Face fc;
      for (int s = 0; s < 3; ++s)
        fc.edges[s] = edge_for(ordered[kFaceEdgeCorners[s][0]], ordered[kFaceEdgeCorners[s][1]]);
      fc.id = next_face;
      out.created_faces.push_back(next_face++);
      Index idx = static_cast<Index>(faces.size());
      faces.push_back(fc);
      created_face.emplace(key, idx);
      return idx;
    };

    std::vector<Tet> tets;
    for (Index t = 0; t < c_.tets().size(); ++t) {
      if (tet_set.count(t)) continue;
      Tet tt = c_.tets()[t];
      for (auto& f : tt.faces) f = fmap[f];
      tets.push_back(tt);
    }
    for (Index t : cfg.tets) out.removed_tets.push_back(c_.tets()[t].id);
    std::sort(out.removed_tets.begin(), out.removed_tets.end());
    for (const auto& nt : new_tets) {
      AbsSet ordered = by_rank(nt);
      Tet tt;
      for (int s = 0; s < 4; ++s) {
        const auto& fc = kTetFaceCorners[s];
        tt.faces[s] = face_for({ordered[fc[0]], ordered[fc[1]], ordered[fc[2]]});
      }
      tt.id = next_tet;
      out.created_tets.push_back(next_tet++);
      tets.push_back(tt);
    }

    out.complex = Complex(std::move(labels), std::move(edges), std::move(faces), std::move(tets));
    if (auto report = check_structure(out.complex); !report.empty())
      throw std::logic_error(to_string(m_) + ": produced an inconsistent complex: " + report[0].detail);
    if (c_.is_simplicial() && !out.complex.is_simplicial())
      fail("the result would not be a simplicial complex (a created simplex already exists)");
    return out;
  }

 private:
  const Complex& c_;
  const MoveDescriptor& m_;
};

struct Occurrence {
  Index tet;
  int i, j;
};

std::vector<Occurrence> vertex_occurrences(const Complex& c, Index v) {
  std::vector<Occurrence> occ;
  for (Index t = 0; t < c.tets().size(); ++t) {
    auto verts = c.tet_vertices(t);
    for (int i = 0; i < 4; ++i)
      if (verts[i] == v) occ.push_back({t, i, -1});
  }
  return occ;
}

std::vector<Occurrence> edge_occurrences(const Complex& c, Index e) {
  std::vector<Occurrence> occ;
  for (Index t = 0; t < c.tets().size(); ++t)
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j)
        if (c.tet_edge(t, i, j) == e) occ.push_back({t, i, j});
  return occ;
}

bool distinct_tets(const std::vector<Occurrence>& occ) {
  std::set<Index> s;
  for (const auto& o : occ) s.insert(o.tet);
  return s.size() == occ.size();
}

std::vector<Index> tets_of(const std::vector<Occurrence>& occ) {
  std::vector<Index> t;
  for (const auto& o : occ) t.push_back(o.tet);
  return t;
}

// Faces with both slots inside `tets` that satisfy `pred`.
template <typename Pred>
std::vector<Index> internal_faces(const Complex& c, const std::vector<Index>& tets, Pred pred) {
  std::set<Index> ts(tets.begin(), tets.end());
  std::vector<Index> out;
  for (Index f = 0; f < c.faces().size(); ++f) {
    const auto& slots = c.face_slots(f);
    if (slots.size() == 2 && ts.count(slots[0].tet) && ts.count(slots[1].tet) && pred(f))
      out.push_back(f);
  }
  return out;
}

VertexLabel fresh_label(const Complex& c, const MoveDescriptor& m) {
  auto labels = c.vertex_labels();
  if (m.new_vertex) {
    if (*m.new_vertex < 0) throw MovePreconditionError(m, "new vertex label must be nonnegative");
    if (c.vertex_index(*m.new_vertex))
      throw MovePreconditionError(m, "vertex " + std::to_string(*m.new_vertex) + " already exists");
    return *m.new_vertex;
  }
  return labels.empty() ? 0 : labels.back() + 1;
}

Index require_vertex(const Complex& c, const MoveDescriptor& m) {
  auto v = c.vertex_index(m.target);
  if (!v) throw MovePreconditionError(m, "no such vertex");
  return *v;
}
Index require_edge(const Complex& c, const MoveDescriptor& m) {
  auto e = c.edge_index(m.target);
  if (!e) throw MovePreconditionError(m, "no such edge");
  return *e;
}
Index require_face(const Complex& c, const MoveDescriptor& m) {
  auto f = c.face_index(m.target);
  if (!f) throw MovePreconditionError(m, "no such face");
  return *f;
}
Index require_tet(const Complex& c, const MoveDescriptor& m) {
  auto t = c.tet_index(m.target);
  if (!t) throw MovePreconditionError(m, "no such tet");
  return *t;
}

}  // namespace

MoveResult apply(const Complex& c, const MoveDescriptor& m) {
  if (auto report = check_structure(c); !report.empty())
    throw MovePreconditionError(m, "input complex is inconsistent: " + report[0].detail);
  Retriangulation r(c, m);
  MoveResult out;
  switch (m.kind) {
    case MoveKind::P14: {
      Index t = require_tet(c, m);
      VertexLabel label = fresh_label(c, m);
      Config cfg = r.glue({t}, {});
      std::vector<AbsSet> nt;
      for (int s = 0; s < 4; ++s) {
        const auto& fc = kTetFaceCorners[s];
        nt.push_back(abs_set({4, fc[0], fc[1], fc[2]}));
      }
      out = r.retriangulate(cfg, nt, 4, label);
      out.inverse = {MoveKind::P41, label, std::nullopt};
      break;
    }
    case MoveKind::P41: {
      if (m.new_vertex) throw MovePreconditionError(m, "P41 takes no new vertex");
      Index v = require_vertex(c, m);
      auto occ = vertex_occurrences(c, v);
      if (occ.size() != 4 || !distinct_tets(occ))
        r.fail("vertex lies in " + std::to_string(occ.size()) + " tet corners, need 4 distinct tets");
      auto tets = tets_of(occ);
      auto glued = internal_faces(c, tets, [&](Index f) {
        auto fv = c.face_vertices(f);
        return std::find(fv.begin(), fv.end(), v) != fv.end();
      });
      Config cfg = r.glue(tets, glued);
      int center = cfg.corners[0][occ[0].i];
      for (std::size_t k = 0; k < occ.size(); ++k)
        if (cfg.corners[k][occ[k].i] != center) r.fail("vertex star is not a cone over a tet boundary");
      if (cfg.size() != 5) r.fail("vertex star is not a cone over a tet boundary");
      AbsSet rest;
      for (int a = 0; a < 5; ++a)
        if (a != center) rest.push_back(a);
      out = r.retriangulate(cfg, {rest}, std::nullopt, 0);
      out.inverse = {MoveKind::P14, out.created_tets.at(0), c.vertex_labels()[v]};
      break;
    }
    case MoveKind::P23: {
      if (m.new_vertex) throw MovePreconditionError(m, "P23 takes no new vertex");
      Index f = require_face(c, m);
      const auto& slots = c.face_slots(f);
      if (slots.size() != 2) r.fail("face is on the boundary");
      if (slots[0].tet == slots[1].tet) r.fail("face is glued to its own tet");
      Config cfg = r.glue({slots[0].tet, slots[1].tet}, {f});
      if (cfg.size() != 5) r.fail("the two tets are not a bipyramid");
      const auto& fc = kTetFaceCorners[slots[0].slot];
      std::array<int, 3> p{cfg.corners[0][fc[0]], cfg.corners[0][fc[1]], cfg.corners[0][fc[2]]};
      int a = cfg.corners[0][3 - slots[0].slot];
      int b = cfg.corners[1][3 - slots[1].slot];
      out = r.retriangulate(cfg,
                            {abs_set({a, b, p[0], p[1]}), abs_set({a, b, p[0], p[2]}),
                             abs_set({a, b, p[1], p[2]})},
                            std::nullopt, 0);
      out.inverse = {MoveKind::P32, out.created_edges.at(0), std::nullopt};
      break;
    }
    case MoveKind::P32: {
      if (m.new_vertex) throw MovePreconditionError(m, "P32 takes no new vertex");
      Index e = require_edge(c, m);
      auto occ = edge_occurrences(c, e);
      if (occ.size() != 3 || !distinct_tets(occ))
        r.fail("edge lies in " + std::to_string(occ.size()) + " tet edge slots, need 3 distinct tets");
      auto tets = tets_of(occ);
      auto glued = internal_faces(c, tets, [&](Index f) {
        const auto& fe = c.faces()[f].edges;
        return std::find(fe.begin(), fe.end(), e) != fe.end();
      });
      Config cfg = r.glue(tets, glued);
      if (cfg.size() != 5) r.fail("edge star is not a triangular bipyramid");
      int p = cfg.corners[0][occ[0].i], q = cfg.corners[0][occ[0].j];
      for (std::size_t k = 0; k < occ.size(); ++k)
        if (abs_set({cfg.corners[k][occ[k].i], cfg.corners[k][occ[k].j]}) != abs_set({p, q}))
          r.fail("edge star is not a triangular bipyramid");
      AbsSet rest;
      for (int a = 0; a < 5; ++a)
        if (a != p && a != q) rest.push_back(a);
      out = r.retriangulate(cfg,
                            {abs_set({p, rest[0], rest[1], rest[2]}),
                             abs_set({q, rest[0], rest[1], rest[2]})},
                            std::nullopt, 0);
      out.inverse = {MoveKind::P23, out.created_faces.at(0), std::nullopt};
      break;
    }
    case MoveKind::B13: {
      Index f = require_face(c, m);
      const auto& slots = c.face_slots(f);
      if (slots.size() != 1) r.fail("face is not on the boundary");
      VertexLabel label = fresh_label(c, m);
      Config cfg = r.glue({slots[0].tet}, {});
      const auto& fc = kTetFaceCorners[slots[0].slot];
      int apex = 3 - slots[0].slot;
      out = r.retriangulate(cfg,
                            {abs_set({4, apex, fc[0], fc[1]}), abs_set({4, apex, fc[0], fc[2]}),
                             abs_set({4, apex, fc[1], fc[2]})},
                            4, label);
      out.inverse = {MoveKind::B31, label, std::nullopt};
      break;
    }
    case MoveKind::B31: {
      if (m.new_vertex) throw MovePreconditionError(m, "B31 takes no new vertex");
      Index v = require_vertex(c, m);
      auto occ = vertex_occurrences(c, v);
      if (occ.size() != 3 || !distinct_tets(occ))
        r.fail("vertex lies in " + std::to_string(occ.size()) + " tet corners, need 3 distinct tets");
      auto tets = tets_of(occ);
      auto glued = internal_faces(c, tets, [&](Index f) {
        auto fv = c.face_vertices(f);
        return std::find(fv.begin(), fv.end(), v) != fv.end();
      });
      Config cfg = r.glue(tets, glued);
      int center = cfg.corners[0][occ[0].i];
      for (std::size_t k = 0; k < occ.size(); ++k)
        if (cfg.corners[k][occ[k].i] != center) r.fail("vertex star is not a cone");
      if (cfg.size() != 5) r.fail("the three tets do not form a subdivided tet");
      std::vector<int> in_all;
      for (int a = 0; a < 5; ++a) {
        if (a == center) continue;
        bool all = true;
        for (const auto& cr : cfg.corners) all &= std::find(cr.begin(), cr.end(), a) != cr.end();
        if (all) in_all.push_back(a);
      }
      if (in_all.size() != 1) r.fail("the three tets do not share a common apex");
      AbsSet rest;
      for (int a = 0; a < 5; ++a)
        if (a != center) rest.push_back(a);
      out = r.retriangulate(cfg, {rest}, std::nullopt, 0);
      // The only created face is the new boundary face opposite the apex.
      EntityId base_face = -1;
      const Complex& nc = out.complex;
      Index nt = *nc.tet_index(out.created_tets.at(0));
      for (Index f : nc.tets()[nt].faces)
        if (std::find(out.created_faces.begin(), out.created_faces.end(), nc.faces()[f].id) !=
            out.created_faces.end())
          base_face = nc.faces()[f].id;
      out.inverse = {MoveKind::B13, base_face, c.vertex_labels()[v]};
      break;
    }
    case MoveKind::B22: {
      if (m.new_vertex) throw MovePreconditionError(m, "B22 takes no new vertex");
      Index e = require_edge(c, m);
      auto occ = edge_occurrences(c, e);
      if (occ.size() != 2 || !distinct_tets(occ))
        r.fail("edge lies in " + std::to_string(occ.size()) + " tet edge slots, need 2 distinct tets");
      auto tets = tets_of(occ);
      std::vector<Index> faces_with_e;
      for (Index f = 0; f < c.faces().size(); ++f) {
        const auto& fe = c.faces()[f].edges;
        if (std::find(fe.begin(), fe.end(), e) != fe.end()) faces_with_e.push_back(f);
      }
      auto glued = internal_faces(c, tets, [&](Index f) {
        return std::find(faces_with_e.begin(), faces_with_e.end(), f) != faces_with_e.end();
      });
      if (faces_with_e.size() != 3 || glued.size() != 1)
        r.fail("edge must lie in one interior face shared by its two tets and two boundary faces");
      Config cfg = r.glue(tets, glued);
      if (cfg.size() != 5) r.fail("the two tets are not glued along a single face");
      int p = cfg.corners[0][occ[0].i], q = cfg.corners[0][occ[0].j];
      if (abs_set({cfg.corners[1][occ[1].i], cfg.corners[1][occ[1].j]}) != abs_set({p, q}))
        r.fail("the two tets are not glued along a face containing the edge");
      const auto& slots = c.face_slots(glued[0]);
      int slot0 = slots[0].tet == tets[0] ? slots[0].slot : slots[1].slot;
      int x = -1;
      for (int k : kTetFaceCorners[slot0])
        if (cfg.corners[0][k] != p && cfg.corners[0][k] != q) x = cfg.corners[0][k];
      AbsSet yz;
      for (int a = 0; a < 5; ++a)
        if (a != p && a != q && a != x) yz.push_back(a);
      out = r.retriangulate(cfg, {abs_set({x, p, yz[0], yz[1]}), abs_set({x, q, yz[0], yz[1]})},
                            std::nullopt, 0);
      out.inverse = {MoveKind::B22, out.created_edges.at(0), std::nullopt};
      break;
    }
  }
  return out;
}

std::vector<MoveDescriptor> enumerate_applicable(const Complex& c, MoveKind kind) {
  std::vector<EntityId> targets;
  switch (target_kind(kind)) {
    case TargetKind::Vertex:
      targets.assign(c.vertex_labels().begin(), c.vertex_labels().end());
      break;
    case TargetKind::Edge:
      for (const auto& e : c.edges()) targets.push_back(e.id);
      break;
    case TargetKind::Face:
      for (const auto& f : c.faces()) targets.push_back(f.id);
      break;
    case TargetKind::Tet:
      for (const auto& t : c.tets()) targets.push_back(t.id);
      break;
  }
  std::sort(targets.begin(), targets.end());
  std::vector<MoveDescriptor> out;
  for (EntityId id : targets) {
    MoveDescriptor m{kind, id, std::nullopt};
    try {
      apply(c, m);
      out.push_back(m);
    } catch (const MovePreconditionError&) {
    }
  }
  return out;
}

}  // namespace cmtop
