#include "cmtop/complex.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace cmtop {

namespace {

struct UnionFind {
  std::vector<Index> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  Index find(Index x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(Index a, Index b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

template <typename T>
void index_ids(const std::vector<T>& items, std::unordered_map<EntityId, Index>& out,
               const char* kind) {
  out.clear();
  out.reserve(items.size());
  for (Index i = 0; i < items.size(); ++i) {
    if (!out.emplace(items[i].id, i).second)
      throw std::invalid_argument(std::string("duplicate ") + kind + " id " +
                                  std::to_string(items[i].id));
  }
}

std::optional<Index> lookup(const std::unordered_map<EntityId, Index>& m, EntityId id) {
  auto it = m.find(id);
  if (it == m.end()) return std::nullopt;
  return it->second;
}

}  // namespace

Complex::Complex(std::vector<VertexLabel> vertex_labels, std::vector<Edge> edges,
                 std::vector<Face> faces, std::vector<Tet> tets)
    : labels_(std::move(vertex_labels)),
      edges_(std::move(edges)),
      faces_(std::move(faces)),
      tets_(std::move(tets)) {
  // Keep vertices sorted by label so that index order is label order.
  std::vector<Index> order(labels_.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](Index a, Index b) { return labels_[a] < labels_[b]; });
  std::vector<Index> new_index(labels_.size());
  std::vector<VertexLabel> sorted(labels_.size());
  for (Index i = 0; i < order.size(); ++i) {
    new_index[order[i]] = i;
    sorted[i] = labels_[order[i]];
    if (i > 0 && sorted[i] == sorted[i - 1])
      throw std::invalid_argument("duplicate vertex label " + std::to_string(sorted[i]));
  }
  labels_ = std::move(sorted);

  for (auto& e : edges_) {
    if (e.tail >= labels_.size() || e.head >= labels_.size())
      throw std::invalid_argument("edge " + std::to_string(e.id) + ": vertex index out of range");
    e.tail = new_index[e.tail];
    e.head = new_index[e.head];
  }
  for (const auto& f : faces_)
    for (Index e : f.edges)
      if (e >= edges_.size())
        throw std::invalid_argument("face " + std::to_string(f.id) + ": edge index out of range");
  for (const auto& t : tets_)
    for (Index f : t.faces)
      if (f >= faces_.size())
        throw std::invalid_argument("tet " + std::to_string(t.id) + ": face index out of range");

  index_ids(edges_, edge_by_id_, "edge");
  index_ids(faces_, face_by_id_, "face");
  index_ids(tets_, tet_by_id_, "tet");

  face_slots_.assign(faces_.size(), {});
  for (Index t = 0; t < tets_.size(); ++t)
    for (int s = 0; s < 4; ++s) face_slots_[tets_[t].faces[s]].push_back({t, s});
}

Complex Complex::from_tet_list(std::span<const std::array<VertexLabel, 4>> tets) {
  std::vector<std::array<VertexLabel, 4>> sorted_tets;
  std::set<VertexLabel> verts;
  std::set<std::array<VertexLabel, 2>> edge_set;
  std::set<std::array<VertexLabel, 3>> face_set;
  std::set<std::array<VertexLabel, 4>> seen;
  for (std::size_t i = 0; i < tets.size(); ++i) {
    auto t = tets[i];
    std::sort(t.begin(), t.end());
    for (int k = 0; k < 4; ++k) {
      if (t[k] < 0) throw std::invalid_argument("tet #" + std::to_string(i) + ": negative vertex id");
      if (k > 0 && t[k] == t[k - 1])
        throw std::invalid_argument("tet #" + std::to_string(i) + ": repeated vertex " +
                                    std::to_string(t[k]));
    }
    if (!seen.insert(t).second)
      throw std::invalid_argument("tet #" + std::to_string(i) + ": duplicate tet");
    sorted_tets.push_back(t);
    verts.insert(t.begin(), t.end());
    for (int a = 0; a < 4; ++a)
      for (int b = a + 1; b < 4; ++b) {
        edge_set.insert({t[a], t[b]});
        for (int c = b + 1; c < 4; ++c) face_set.insert({t[a], t[b], t[c]});
      }
  }

  std::vector<VertexLabel> labels(verts.begin(), verts.end());
  auto vidx = [&](VertexLabel l) {
    return static_cast<Index>(std::lower_bound(labels.begin(), labels.end(), l) - labels.begin());
  };
  std::vector<std::array<VertexLabel, 2>> edge_list(edge_set.begin(), edge_set.end());
  std::vector<std::array<VertexLabel, 3>> face_list(face_set.begin(), face_set.end());
  auto eidx = [&](VertexLabel a, VertexLabel b) {
    std::array<VertexLabel, 2> key{a, b};
    return static_cast<Index>(std::lower_bound(edge_list.begin(), edge_list.end(), key) -
                              edge_list.begin());
  };
  auto fidx = [&](VertexLabel a, VertexLabel b, VertexLabel c) {
    std::array<VertexLabel, 3> key{a, b, c};
    return static_cast<Index>(std::lower_bound(face_list.begin(), face_list.end(), key) -
                              face_list.begin());
  };

  std::vector<Edge> edges;
  for (Index i = 0; i < edge_list.size(); ++i)
    edges.push_back({vidx(edge_list[i][0]), vidx(edge_list[i][1]), i});
  std::vector<Face> faces;
  for (Index i = 0; i < face_list.size(); ++i) {
    const auto& f = face_list[i];
    faces.push_back({{eidx(f[0], f[1]), eidx(f[0], f[2]), eidx(f[1], f[2])}, i});
  }
  std::vector<Tet> out_tets;
  std::vector<int> incidence(face_list.size(), 0);
  for (Index i = 0; i < sorted_tets.size(); ++i) {
    const auto& t = sorted_tets[i];
    Tet tet;
    tet.id = i;
    for (int s = 0; s < 4; ++s) {
      const auto& c = kTetFaceCorners[s];
      Index f = fidx(t[c[0]], t[c[1]], t[c[2]]);
      tet.faces[s] = f;
      if (++incidence[f] > 2) {
        std::ostringstream msg;
        msg << "face (" << t[c[0]] << "," << t[c[1]] << "," << t[c[2]]
            << ") is shared by more than two tets";
        throw std::invalid_argument(msg.str());
      }
    }
    out_tets.push_back(tet);
  }
  return Complex(std::move(labels), std::move(edges), std::move(faces), std::move(out_tets));
}

Complex Complex::from_delta(const std::vector<DeltaEdge>& edges,
                            const std::vector<DeltaFace>& faces,
                            const std::vector<DeltaTet>& tets) {
  std::unordered_map<EntityId, Index> edge_of, face_of;
  for (Index i = 0; i < edges.size(); ++i)
    if (!edge_of.emplace(edges[i].id, i).second)
      throw std::invalid_argument("duplicate edge id " + std::to_string(edges[i].id));
  for (Index i = 0; i < faces.size(); ++i)
    if (!face_of.emplace(faces[i].id, i).second)
      throw std::invalid_argument("duplicate face id " + std::to_string(faces[i].id));

  std::vector<Face> out_faces;
  for (const auto& f : faces) {
    Face face;
    face.id = f.id;
    for (int s = 0; s < 3; ++s) {
      auto it = edge_of.find(f.edges[s]);
      if (it == edge_of.end())
        throw std::invalid_argument("face " + std::to_string(f.id) + ": unknown edge " +
                                    std::to_string(f.edges[s]));
      face.edges[s] = it->second;
    }
    out_faces.push_back(face);
  }
  std::vector<Tet> out_tets;
  for (const auto& t : tets) {
    Tet tet;
    tet.id = t.id;
    for (int s = 0; s < 4; ++s) {
      auto it = face_of.find(t.faces[s]);
      if (it == face_of.end())
        throw std::invalid_argument("tet " + std::to_string(t.id) + ": unknown face " +
                                    std::to_string(t.faces[s]));
      tet.faces[s] = it->second;
    }
    out_tets.push_back(tet);
  }

  std::size_t with_ends = std::count_if(edges.begin(), edges.end(),
                                        [](const DeltaEdge& e) { return e.ends.has_value(); });
  if (with_ends != 0 && with_ends != edges.size())
    throw std::invalid_argument("edge endpoints must be given for all edges or for none");

  std::vector<VertexLabel> labels;
  std::vector<Edge> out_edges;
  if (with_ends) {
    std::set<VertexLabel> verts;
    for (const auto& e : edges) {
      if (e.ends->first < 0 || e.ends->second < 0)
        throw std::invalid_argument("edge " + std::to_string(e.id) + ": negative vertex id");
      verts.insert(e.ends->first);
      verts.insert(e.ends->second);
    }
    labels.assign(verts.begin(), verts.end());
    auto vidx = [&](VertexLabel l) {
      return static_cast<Index>(std::lower_bound(labels.begin(), labels.end(), l) -
                                labels.begin());
    };
    for (const auto& e : edges) out_edges.push_back({vidx(e.ends->first), vidx(e.ends->second), e.id});
  } else {
    // Endpoint slots: 2e = tail of edge e, 2e + 1 = head.
    UnionFind uf(2 * edges.size());
    for (const auto& f : out_faces) {
      uf.unite(2 * f.edges[0], 2 * f.edges[1]);
      uf.unite(2 * f.edges[0] + 1, 2 * f.edges[2]);
      uf.unite(2 * f.edges[1] + 1, 2 * f.edges[2] + 1);
    }
    std::unordered_map<Index, Index> vertex_of_root;
    for (Index slot = 0; slot < 2 * edges.size(); ++slot) {
      Index r = uf.find(slot);
      if (vertex_of_root.emplace(r, static_cast<Index>(labels.size())).second)
        labels.push_back(static_cast<VertexLabel>(labels.size()));
    }
    for (Index e = 0; e < edges.size(); ++e)
      out_edges.push_back({vertex_of_root[uf.find(2 * e)], vertex_of_root[uf.find(2 * e + 1)],
                           edges[e].id});
  }
  return Complex(std::move(labels), std::move(out_edges), std::move(out_faces),
                 std::move(out_tets));
}

SimplexCounts Complex::counts() const {
  return {labels_.size(), edges_.size(), faces_.size(), tets_.size()};
}

std::array<Index, 3> Complex::face_vertices(Index f) const {
  const auto& face = faces_[f];
  return {edges_[face.edges[0]].tail, edges_[face.edges[0]].head, edges_[face.edges[1]].head};
}

std::array<Index, 4> Complex::tet_vertices(Index t) const {
  auto v = face_vertices(tets_[t].faces[0]);
  return {v[0], v[1], v[2], face_vertices(tets_[t].faces[3])[2]};
}

Index Complex::tet_edge(Index t, int i, int j) const {
  const auto& tf = tets_[t].faces;
  auto fe = [&](int slot, int eslot) { return faces_[tf[slot]].edges[eslot]; };
  switch (i * 4 + j) {
    case 1: return fe(0, 0);   // 01
    case 2: return fe(0, 1);   // 02
    case 3: return fe(1, 1);   // 03
    case 6: return fe(0, 2);   // 12
    case 7: return fe(1, 2);   // 13
    case 11: return fe(2, 2);  // 23
    default: throw std::invalid_argument("tet_edge: need 0 <= i < j <= 3");
  }
}

std::optional<Index> Complex::vertex_index(VertexLabel label) const {
  auto it = std::lower_bound(labels_.begin(), labels_.end(), label);
  if (it == labels_.end() || *it != label) return std::nullopt;
  return static_cast<Index>(it - labels_.begin());
}
std::optional<Index> Complex::edge_index(EntityId id) const { return lookup(edge_by_id_, id); }
std::optional<Index> Complex::face_index(EntityId id) const { return lookup(face_by_id_, id); }
std::optional<Index> Complex::tet_index(EntityId id) const { return lookup(tet_by_id_, id); }

bool Complex::is_simplicial() const {
  if (!check_structure(*this).empty()) return false;
  std::set<std::array<Index, 2>> es;
  for (const auto& e : edges_)
    if (!(e.tail < e.head) || !es.insert({e.tail, e.head}).second) return false;
  std::set<std::array<Index, 3>> fs;
  for (Index f = 0; f < faces_.size(); ++f) {
    auto v = face_vertices(f);
    if (!(v[0] < v[1] && v[1] < v[2]) || !fs.insert(v).second) return false;
  }
  std::set<std::array<Index, 4>> ts;
  for (Index t = 0; t < tets_.size(); ++t) {
    auto v = tet_vertices(t);
    if (!(v[0] < v[1] && v[1] < v[2] && v[2] < v[3]) || !ts.insert(v).second) return false;
  }
  return true;
}

ComplexReport check_structure(const Complex& c) {
  ComplexReport report;
  const auto edges = c.edges();
  const auto faces = c.faces();
  const auto tets = c.tets();
  for (Index f = 0; f < faces.size(); ++f) {
    const auto& e = faces[f].edges;
    const Edge &e01 = edges[e[0]], &e02 = edges[e[1]], &e12 = edges[e[2]];
    if (e01.tail != e02.tail || e01.head != e12.tail || e02.head != e12.head) {
      std::ostringstream msg;
      msg << "edges " << e01.id << ", " << e02.id << ", " << e12.id
          << " do not close up under the face's vertex order";
      report.push_back({"face-slot-compatibility", "face", faces[f].id, msg.str()});
    }
  }
  static constexpr int kShared[6][4] = {
      // (slot a, edge slot a, slot b, edge slot b)
      {0, 0, 1, 0}, {0, 1, 2, 0}, {0, 2, 3, 0}, {1, 1, 2, 1}, {1, 2, 3, 1}, {2, 2, 3, 2}};
  static constexpr const char* kEdgeName[6] = {"01", "02", "12", "03", "13", "23"};
  for (Index t = 0; t < tets.size(); ++t) {
    const auto& tf = tets[t].faces;
    for (int k = 0; k < 6; ++k) {
      const auto [sa, ea, sb, eb] = kShared[k];
      Index x = faces[tf[sa]].edges[ea];
      Index y = faces[tf[sb]].edges[eb];
      if (x != y) {
        std::ostringstream msg;
        msg << "faces " << faces[tf[sa]].id << " and " << faces[tf[sb]].id
            << " disagree on local edge " << kEdgeName[k] << " (edges " << edges[x].id << " vs "
            << edges[y].id << ")";
        report.push_back({"tet-slot-compatibility", "tet", tets[t].id, msg.str()});
        break;
      }
    }
  }
  for (Index f = 0; f < faces.size(); ++f) {
    if (c.face_slots(f).size() > 2) {
      report.push_back({"face-incidence", "face", faces[f].id,
                        "face lies in " + std::to_string(c.face_slots(f).size()) +
                            " tet slots (at most 2 allowed)"});
    }
  }
  return report;
}

namespace {

void check_purity(const Complex& c, ComplexReport& report) {
  if (c.tets().empty()) return;
  std::vector<bool> vertex_used(c.vertex_labels().size(), false);
  std::vector<bool> edge_used(c.edges().size(), false);
  for (const auto& f : c.faces())
    for (Index e : f.edges) edge_used[e] = true;
  for (const auto& e : c.edges()) vertex_used[e.tail] = vertex_used[e.head] = true;
  for (Index v = 0; v < vertex_used.size(); ++v)
    if (!vertex_used[v])
      report.push_back({"purity", "vertex", c.vertex_labels()[v], "vertex lies in no edge"});
  for (Index e = 0; e < edge_used.size(); ++e)
    if (!edge_used[e]) report.push_back({"purity", "edge", c.edges()[e].id, "edge lies in no face"});
  for (Index f = 0; f < c.faces().size(); ++f)
    if (c.face_slots(f).empty())
      report.push_back({"purity", "face", c.faces()[f].id, "face lies in no tet"});
}

void check_strong_connectivity(const Complex& c, ComplexReport& report) {
  const std::size_t nt = c.tets().size();
  if (nt == 0) return;
  // Components of the underlying space, through shared vertices.
  UnionFind space(c.vertex_labels().size());
  for (const auto& e : c.edges()) space.unite(e.tail, e.head);
  UnionFind dual(nt);
  for (Index f = 0; f < c.faces().size(); ++f) {
    const auto& slots = c.face_slots(f);
    for (std::size_t k = 1; k < slots.size(); ++k) dual.unite(slots[0].tet, slots[k].tet);
  }
  std::unordered_map<Index, Index> dual_root_of_component;
  for (Index t = 0; t < nt; ++t) {
    Index comp = space.find(c.tet_vertices(t)[0]);
    Index root = dual.find(t);
    auto [it, inserted] = dual_root_of_component.emplace(comp, root);
    if (!inserted && it->second != root) {
      report.push_back({"strong-connectivity", "tet", c.tets()[t].id,
                        "tet is not reachable through faces from tet " +
                            std::to_string(c.tets()[it->second].id) + " of the same component"});
      return;
    }
  }
}

void check_edge_links(const Complex& c, ComplexReport& report) {
  const std::size_t ne = c.edges().size();
  std::vector<std::vector<Index>> link_vertices(ne);
  std::vector<std::vector<std::array<Index, 2>>> link_edges(ne);
  for (Index f = 0; f < c.faces().size(); ++f) {
    auto v = c.face_vertices(f);
    const auto& fe = c.faces()[f].edges;
    for (int s = 0; s < 3; ++s) link_vertices[fe[s]].push_back(v[2 - s]);
  }
  for (Index t = 0; t < c.tets().size(); ++t) {
    auto v = c.tet_vertices(t);
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) {
        std::array<Index, 2> rest{};
        int k = 0;
        for (int m = 0; m < 4; ++m)
          if (m != i && m != j) rest[k++] = v[m];
        link_edges[c.tet_edge(t, i, j)].push_back(rest);
      }
  }
  for (Index e = 0; e < ne; ++e) {
    const auto& lv = link_vertices[e];
    std::unordered_map<Index, Index> pos;
    for (Index k = 0; k < lv.size(); ++k) pos.emplace(lv[k], k);
    UnionFind uf(lv.size());
    std::vector<int> degree(lv.size(), 0);
    bool ok = true;
    for (const auto& le : link_edges[e]) {
      auto a = pos.find(le[0]), b = pos.find(le[1]);
      if (a == pos.end() || b == pos.end()) {
        ok = false;
        break;
      }
      uf.unite(a->second, b->second);
      if (++degree[a->second] > 2 || ++degree[b->second] > 2) {
        report.push_back({"edge-link", "edge", c.edges()[e].id, "edge link branches"});
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    for (Index k = 1; k < lv.size(); ++k) {
      if (uf.find(k) != uf.find(0)) {
        report.push_back({"edge-link", "edge", c.edges()[e].id, "edge link is disconnected"});
        break;
      }
    }
  }
}

}  // namespace

ComplexReport validate_manifold_basics(const Complex& c) {
  ComplexReport report = check_structure(c);
  const bool structure_ok = report.empty();
  check_purity(c, report);
  check_strong_connectivity(c, report);
  if (structure_ok && c.is_simplicial()) check_edge_links(c, report);
  return report;
}

Complex boundary(const Complex& c) {
  std::vector<Index> edge_map(c.edges().size(), UINT32_MAX);
  std::vector<Index> vertex_map(c.vertex_labels().size(), UINT32_MAX);
  std::vector<VertexLabel> labels;
  std::vector<Edge> edges;
  std::vector<Face> faces;
  auto keep_vertex = [&](Index v) {
    if (vertex_map[v] == UINT32_MAX) {
      vertex_map[v] = static_cast<Index>(labels.size());
      labels.push_back(c.vertex_labels()[v]);
    }
    return vertex_map[v];
  };
  for (Index f = 0; f < c.faces().size(); ++f) {
    if (!c.is_boundary_face(f)) continue;
    Face face = c.faces()[f];
    for (auto& e : face.edges) {
      if (edge_map[e] == UINT32_MAX) {
        const Edge& src = c.edges()[e];
        edge_map[e] = static_cast<Index>(edges.size());
        Index tail = keep_vertex(src.tail);
        Index head = keep_vertex(src.head);
        edges.push_back({tail, head, src.id});
      }
      e = edge_map[e];
    }
    faces.push_back(face);
  }
  return Complex(std::move(labels), std::move(edges), std::move(faces), {});
}

Complex relabel(const Complex& c, const std::map<VertexLabel, VertexLabel>& permutation) {
  const auto labels = c.vertex_labels();
  std::vector<VertexLabel> key(labels.size());
  std::set<VertexLabel> image;
  for (Index v = 0; v < labels.size(); ++v) {
    auto it = permutation.find(labels[v]);
    key[v] = it == permutation.end() ? labels[v] : it->second;
    if (!image.insert(key[v]).second)
      throw std::invalid_argument("relabel: not a bijection (label " + std::to_string(key[v]) +
                                  " hit twice)");
  }

  std::vector<Edge> edges(c.edges().begin(), c.edges().end());
  for (auto& e : edges)
    if (key[e.head] < key[e.tail]) std::swap(e.tail, e.head);

  // Stable sort of corner positions by new label.
  auto sorted_positions = [&](auto corners) {
    std::array<int, std::tuple_size_v<decltype(corners)>> pos{};
    std::iota(pos.begin(), pos.end(), 0);
    std::stable_sort(pos.begin(), pos.end(),
                     [&](int a, int b) { return key[corners[a]] < key[corners[b]]; });
    return pos;
  };

  std::vector<Face> faces(c.faces().begin(), c.faces().end());
  for (Index f = 0; f < faces.size(); ++f) {
    auto sigma = sorted_positions(c.face_vertices(f));
    const auto& old = c.faces()[f].edges;
    for (int s = 0; s < 3; ++s) {
      int a = sigma[kFaceEdgeCorners[s][0]], b = sigma[kFaceEdgeCorners[s][1]];
      if (a > b) std::swap(a, b);
      // old edge slot of the corner pair (a, b): (0,1)->0, (0,2)->1, (1,2)->2
      faces[f].edges[s] = old[a + b - 1];
    }
  }
  std::vector<Tet> tets(c.tets().begin(), c.tets().end());
  for (Index t = 0; t < tets.size(); ++t) {
    auto sigma = sorted_positions(c.tet_vertices(t));
    const auto& old = c.tets()[t].faces;
    for (int s = 0; s < 4; ++s) tets[t].faces[s] = old[3 - sigma[3 - s]];
  }
  std::vector<VertexLabel> new_labels(key.begin(), key.end());
  return Complex(std::move(new_labels), std::move(edges), std::move(faces), std::move(tets));
}

Complex disjoint_union(const Complex& a, const Complex& b) {
  auto max_or = [](auto range, auto proj) {
    std::int64_t m = -1;
    for (const auto& x : range) m = std::max<std::int64_t>(m, proj(x));
    return m;
  };
  const VertexLabel label_shift = max_or(a.vertex_labels(), [](VertexLabel l) { return l; }) + 1;
  const EntityId edge_shift = max_or(a.edges(), [](const Edge& e) { return e.id; }) + 1;
  const EntityId face_shift = max_or(a.faces(), [](const Face& f) { return f.id; }) + 1;
  const EntityId tet_shift = max_or(a.tets(), [](const Tet& t) { return t.id; }) + 1;
  const Index nv = static_cast<Index>(a.vertex_labels().size());
  const Index ne = static_cast<Index>(a.edges().size());
  const Index nf = static_cast<Index>(a.faces().size());

  std::vector<VertexLabel> labels(a.vertex_labels().begin(), a.vertex_labels().end());
  for (VertexLabel l : b.vertex_labels()) labels.push_back(l + label_shift);
  std::vector<Edge> edges(a.edges().begin(), a.edges().end());
  for (Edge e : b.edges()) edges.push_back({e.tail + nv, e.head + nv, e.id + edge_shift});
  std::vector<Face> faces(a.faces().begin(), a.faces().end());
  for (Face f : b.faces()) {
    for (auto& e : f.edges) e += ne;
    f.id += face_shift;
    faces.push_back(f);
  }
  std::vector<Tet> tets(a.tets().begin(), a.tets().end());
  for (Tet t : b.tets()) {
    for (auto& f : t.faces) f += nf;
    t.id += tet_shift;
    tets.push_back(t);
  }
  return Complex(std::move(labels), std::move(edges), std::move(faces), std::move(tets));
}

namespace {

// Breadth-first canonical labelling from one start tet; returns the code and
// marks every tet reached.
std::vector<std::int64_t> code_from(const Complex& c, Index start, std::vector<bool>& reached) {
  const auto edges = c.edges();
  const auto faces = c.faces();
  const auto tets = c.tets();
  std::vector<std::int64_t> tet_c(tets.size(), -1), face_c(faces.size(), -1),
      edge_c(edges.size(), -1), vert_c(c.vertex_labels().size(), -1);
  std::int64_t nt = 0, nf = 0, ne = 0, nv = 0;
  std::vector<std::int64_t> code;
  std::deque<Index> queue{start};
  tet_c[start] = nt++;
  while (!queue.empty()) {
    Index t = queue.front();
    queue.pop_front();
    reached[t] = true;
    code.push_back(-1);
    for (Index f : tets[t].faces) {
      bool fresh_face = face_c[f] < 0;
      if (fresh_face) face_c[f] = nf++;
      code.push_back(face_c[f]);
      if (!fresh_face) continue;
      for (Index e : faces[f].edges) {
        bool fresh_edge = edge_c[e] < 0;
        if (fresh_edge) edge_c[e] = ne++;
        code.push_back(edge_c[e]);
        if (!fresh_edge) continue;
        for (Index v : {edges[e].tail, edges[e].head}) {
          if (vert_c[v] < 0) vert_c[v] = nv++;
          code.push_back(vert_c[v]);
        }
      }
    }
    for (Index f : tets[t].faces)
      for (const auto& slot : c.face_slots(f))
        if (tet_c[slot.tet] < 0) {
          tet_c[slot.tet] = nt++;
          queue.push_back(slot.tet);
        }
  }
  return code;
}

}  // namespace

std::vector<std::int64_t> canonical_code(const Complex& c) {
  const std::size_t nt = c.tets().size();
  std::vector<bool> assigned(nt, false);
  std::vector<std::vector<std::int64_t>> components;
  for (Index t = 0; t < nt; ++t) {
    if (assigned[t]) continue;
    std::vector<bool> comp(nt, false);
    code_from(c, t, comp);
    std::vector<std::int64_t> best;
    for (Index s = 0; s < nt; ++s) {
      if (!comp[s]) continue;
      assigned[s] = true;
      std::vector<bool> scratch(nt, false);
      auto code = code_from(c, s, scratch);
      if (best.empty() || code < best) best = std::move(code);
    }
    components.push_back(std::move(best));
  }
  std::sort(components.begin(), components.end());
  auto counts = c.counts();
  std::vector<std::int64_t> out{static_cast<std::int64_t>(counts.k0),
                                static_cast<std::int64_t>(counts.k1),
                                static_cast<std::int64_t>(counts.k2),
                                static_cast<std::int64_t>(counts.k3)};
  for (auto& comp : components) {
    out.push_back(-2);
    out.insert(out.end(), comp.begin(), comp.end());
  }
  return out;
}

}  // namespace cmtop
