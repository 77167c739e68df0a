#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cmtop/complex.hpp"

namespace cmtop {

enum class MoveKind { P14, P41, P23, P32, B13, B31, B22 };

const char* move_name(MoveKind k);
/// Accepts "14", "p14", "P14", "b13", ... Throws std::invalid_argument.
MoveKind parse_move_kind(const std::string& s);
MoveKind inverse_kind(MoveKind k);

/// What the target id refers to for each kind.
enum class TargetKind { Vertex, Edge, Face, Tet };
TargetKind target_kind(MoveKind k);

/// A single move. `target` is a tet id (P14), face id (P23, B13), edge id
/// (P32, B22) or vertex label (P41, B31). `new_vertex` is the label of the
/// inserted vertex for P14 and B13 (default: one past the largest label).
struct MoveDescriptor {
  MoveKind kind = MoveKind::P14;
  EntityId target = 0;
  std::optional<VertexLabel> new_vertex;
  bool operator==(const MoveDescriptor&) const = default;
};

std::string to_string(const MoveDescriptor& m);

class MovePreconditionError : public std::invalid_argument {
 public:
  MovePreconditionError(const MoveDescriptor& m, const std::string& why)
      : std::invalid_argument(to_string(m) + ": " + why), move_(m) {}
  const MoveDescriptor& move() const { return move_; }

 private:
  MoveDescriptor move_;
};

struct MoveResult {
  Complex complex;
  /// Undoes this move on `complex`.
  MoveDescriptor inverse;
  std::vector<VertexLabel> created_vertices, removed_vertices;
  std::vector<EntityId> created_edges, removed_edges;
  std::vector<EntityId> created_faces, removed_faces;
  std::vector<EntityId> created_tets, removed_tets;
};

/// Applies one move. On simplicial inputs the result must again be
/// simplicial; on other Delta-complexes only the local configuration is
/// required to be embedded. Throws MovePreconditionError.
MoveResult apply(const Complex& c, const MoveDescriptor& m);

/// Every descriptor of the given kind whose precondition holds (default new
/// vertex labels), in increasing target order.
std::vector<MoveDescriptor> enumerate_applicable(const Complex& c, MoveKind kind);

}  // namespace cmtop
