#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace cmtop {

using VertexLabel = std::int64_t;
using EntityId = std::int64_t;
using Index = std::uint32_t;

/// Oriented edge between two vertex indices (tail < head in the local order).
struct Edge {
  Index tail = 0;
  Index head = 0;
  EntityId id = 0;
  bool operator==(const Edge&) const = default;
};

/// Triangle with edge slots (01), (02), (12) of its local order.
struct Face {
  std::array<Index, 3> edges{};
  EntityId id = 0;
  bool operator==(const Face&) const = default;
};

/// Tetrahedron with face slots (012), (013), (023), (123). Slot s is the face
/// opposite local vertex 3 - s.
struct Tet {
  std::array<Index, 4> faces{};
  EntityId id = 0;
  bool operator==(const Tet&) const = default;
};

struct SimplexCounts {
  std::size_t k0 = 0, k1 = 0, k2 = 0, k3 = 0;
  bool operator==(const SimplexCounts&) const = default;
  long long euler() const {
    return static_cast<long long>(k0) - static_cast<long long>(k1) +
           static_cast<long long>(k2) - static_cast<long long>(k3);
  }
};

/// Where a face sits inside a tetrahedron.
struct FaceSlot {
  Index tet;
  int slot;
};

/// Ordered Delta-complex of dimension at most 3.
///
/// Simplicial triangulations are the special case where every simplex has
/// distinct vertices, no two simplices share a vertex set, and local orders
/// agree with the vertex labels. Vertices are kept sorted by label.
/// The constructor range-checks indices and ids; structural laws (slot
/// compatibility, at most two tets per face) are reported by
/// check_structure() so that broken inputs can still be inspected.
class Complex {
 public:
  Complex() = default;
  Complex(std::vector<VertexLabel> vertex_labels, std::vector<Edge> edges,
          std::vector<Face> faces, std::vector<Tet> tets);

  /// Simplicial constructor. Throws on a repeated vertex within a tet or on a
  /// face shared by more than two tets.
  static Complex from_tet_list(std::span<const std::array<VertexLabel, 4>> tets);

  struct DeltaEdge {
    EntityId id;
    std::optional<std::pair<VertexLabel, VertexLabel>> ends;
  };
  struct DeltaFace {
    EntityId id;
    std::array<EntityId, 3> edges;
  };
  struct DeltaTet {
    EntityId id;
    std::array<EntityId, 4> faces;
  };
  /// Delta constructor. Without explicit edge ends, vertices are the classes
  /// of edge endpoints identified through the faces, labelled 0, 1, ... by
  /// first appearance.
  static Complex from_delta(const std::vector<DeltaEdge>& edges,
                            const std::vector<DeltaFace>& faces,
                            const std::vector<DeltaTet>& tets);

  std::span<const VertexLabel> vertex_labels() const { return labels_; }
  std::span<const Edge> edges() const { return edges_; }
  std::span<const Face> faces() const { return faces_; }
  std::span<const Tet> tets() const { return tets_; }
  SimplexCounts counts() const;

  std::array<Index, 3> face_vertices(Index f) const;
  std::array<Index, 4> tet_vertices(Index t) const;
  /// Edge joining local vertices i < j of tet t.
  Index tet_edge(Index t, int i, int j) const;

  const std::vector<FaceSlot>& face_slots(Index f) const { return face_slots_[f]; }
  bool is_boundary_face(Index f) const { return face_slots_[f].size() == 1; }

  std::optional<Index> vertex_index(VertexLabel label) const;
  std::optional<Index> edge_index(EntityId id) const;
  std::optional<Index> face_index(EntityId id) const;
  std::optional<Index> tet_index(EntityId id) const;

  /// True when the complex is a simplicial complex whose local orders are
  /// induced by the vertex labels.
  bool is_simplicial() const;

  bool operator==(const Complex& o) const {
    return labels_ == o.labels_ && edges_ == o.edges_ && faces_ == o.faces_ && tets_ == o.tets_;
  }

 private:
  std::vector<VertexLabel> labels_;
  std::vector<Edge> edges_;
  std::vector<Face> faces_;
  std::vector<Tet> tets_;
  std::vector<std::vector<FaceSlot>> face_slots_;
  std::unordered_map<EntityId, Index> edge_by_id_, face_by_id_, tet_by_id_;
};

/// Local vertices (i, j) of the edge in face slot s.
constexpr std::array<std::array<int, 2>, 3> kFaceEdgeCorners{{{0, 1}, {0, 2}, {1, 2}}};
/// Local vertices of the face in tet slot s.
constexpr std::array<std::array<int, 3>, 4> kTetFaceCorners{{{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}}};

struct ComplexViolation {
  std::string rule;
  std::string entity;  // "vertex", "edge", "face" or "tet"
  EntityId id = 0;     // entity id (vertex label for vertices)
  std::string detail;
};

using ComplexReport = std::vector<ComplexViolation>;

/// Slot compatibility of faces and tets, and at most two tets per face.
ComplexReport check_structure(const Complex& c);

/// check_structure plus purity, strong connectivity of every component and,
/// for simplicial complexes, edge links that are paths or cycles.
ComplexReport validate_manifold_basics(const Complex& c);

/// Faces lying in exactly one tet, with their edges and vertices.
Complex boundary(const Complex& c);

/// Applies a bijection of vertex labels. Every simplex is reordered by the
/// new labels, ties (repeated vertices) keeping their previous order.
Complex relabel(const Complex& c, const std::map<VertexLabel, VertexLabel>& permutation);

/// Second operand's labels and ids are shifted past the first's.
Complex disjoint_union(const Complex& a, const Complex& b);

/// Isomorphism invariant of ordered Delta-complexes (labels and ids ignored).
std::vector<std::int64_t> canonical_code(const Complex& c);

}  // namespace cmtop
