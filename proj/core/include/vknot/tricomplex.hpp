#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "vknot/perm.hpp"

namespace vknot {

struct TriangulationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct SingularBoundary : TriangulationError {
  using TriangulationError::TriangulationError;
};

enum class BoundaryLabel : unsigned char {
  SurfaceCopy0 = 0,
  SurfaceCopy1 = 1,
  KnotTorus = 2,
  Other = 3,
};

const char* to_string(BoundaryLabel label);

// Generalized triangulation: a set of abstract tetrahedra with faces glued in
// pairs by affine maps, recorded as full vertex permutations.  A face may be
// left unglued, in which case it is a boundary face and carries a label.
struct GluedTriangulation {
  struct Tetrahedron {
    std::array<int32_t, 4> adj = {-1, -1, -1, -1};  // neighbour tet per face, -1 = boundary
    std::array<Perm4, 4> gluing = {};               // vertex map to neighbour's labels
    std::array<BoundaryLabel, 4> label = {BoundaryLabel::Other, BoundaryLabel::Other,
                                          BoundaryLabel::Other, BoundaryLabel::Other};
  };

  std::vector<Tetrahedron> tets;

  int size() const { return static_cast<int>(tets.size()); }
  bool empty() const { return tets.empty(); }

  int add_tetrahedron() {
    tets.emplace_back();
    return size() - 1;
  }

  bool is_glued(int t, int f) const { return tets[t].adj[f] >= 0; }

  // Installs the involutive gluing (t1,f1) <-> (t2,f2) with vertex map perm
  // (from t1's labels to t2's labels; perm[f1] must equal f2).  Both faces
  // must currently be boundary.
  void glue(int t1, int f1, int t2, int f2, Perm4 perm);

  // Detaches a glued face pair; both sides become boundary with `label`.
  void unglue(int t, int f, BoundaryLabel label = BoundaryLabel::Other);

  void set_boundary_label(int t, int f, BoundaryLabel label);
  BoundaryLabel boundary_label(int t, int f) const { return tets[t].label[f]; }
};

enum class VertexLinkType : unsigned char { Sphere, Disk, Singular };

// Orbit decomposition of the simplices of a triangulation, plus vertex link
// classification.  Slot indexing: vertex slot = 4t+v, edge slot = 6t+e,
// face slot = 4t+f.
struct Skeleton {
  int vertex_count = 0;
  int edge_count = 0;
  int face_count = 0;

  std::vector<int32_t> vertex_class;  // 4n slots
  std::vector<int32_t> edge_class;    // 6n slots
  std::vector<int32_t> face_class;    // 4n slots

  // Edge orientation relative to the class representative: bit set means this
  // slot's (lo,hi) vertex order is reversed.  An "end" of edge class k is a
  // pair (k, 0|1); slot ends map through the flip bit.
  std::vector<char> edge_flip;

  std::vector<int32_t> edge_degree;        // tetrahedron incidences per class
  std::vector<char> vertex_on_boundary;    // per vertex class
  std::vector<char> edge_on_boundary;      // per edge class
  std::vector<VertexLinkType> link_type;   // per vertex class

  long long euler_characteristic = 0;  // V - E + F - T
  bool valid_edges = true;             // no edge identified with itself reversed

  int n = 0;

  int vclass(int t, int v) const { return vertex_class[4 * t + v]; }
  int eclass(int t, int e) const { return edge_class[6 * t + e]; }
  int fclass(int t, int f) const { return face_class[4 * t + f]; }
};

Skeleton compute_skeleton(const GluedTriangulation& tri);

// Structural validity: gluing tables involutive with valid permutations, no
// face glued to itself, and no edge identified with itself in reverse.
bool is_valid_triangulation(const GluedTriangulation& tri, std::string* reason = nullptr);

struct BoundaryComponent {
  std::vector<BoundaryLabel> labels;  // distinct labels present, sorted
  int face_count = 0;
  long long euler_characteristic = 0;
  long long genus = 0;  // (2 - chi) / 2 for closed orientable components

  bool has_label(BoundaryLabel l) const {
    for (BoundaryLabel x : labels)
      if (x == l) return true;
    return false;
  }
};

// Combinatorial structure of the boundary surface: its triangles are the
// boundary face slots; two triangles are adjacent along a boundary edge when
// the fan of internal faces around that edge connects them.  Corners are
// grouped into fans (the vertices of the abstract boundary surface); a
// pinched vertex of the triangulation carries several fans.
struct BoundaryStructure {
  struct Face {
    int tet, face;
  };
  // One record per boundary edge.  (a0,a1) are vertex labels in face_a's
  // tetrahedron; (b0,b1) their images in face_b's.
  struct Edge {
    int face_a, a0, a1;
    int face_b, b0, b1;
  };

  std::vector<Face> faces;
  std::vector<int32_t> face_slot_index;  // 4n -> index into faces, or -1
  std::vector<int32_t> face_component;   // per boundary face
  int component_count = 0;
  std::vector<int32_t> fan_class;  // 4*faces.size(); -1 at unused corners
  int fan_count = 0;
  std::vector<Edge> edges;
};

BoundaryStructure boundary_structure(const GluedTriangulation& tri);

// Connected components of the boundary 2-complex (adjacency through boundary
// edges).  Vertices are counted once per boundary fan, so the Euler
// characteristic is that of the abstract closed surface even when two sheets
// of boundary meet at a pinched vertex.
std::vector<BoundaryComponent> boundary_components(const GluedTriangulation& tri);

// As boundary_components, but throws SingularBoundary if any boundary vertex
// is pinched (more than one fan of boundary triangles around it).
std::vector<BoundaryComponent> boundary_census(const GluedTriangulation& tri);

// Reference to a simplex class of the original triangulation.
struct SimplexRef {
  int dim = -1;
  int id = -1;
  friend bool operator==(const SimplexRef&, const SimplexRef&) = default;
  friend auto operator<=>(const SimplexRef&, const SimplexRef&) = default;
};

struct SubdivisionResult {
  GluedTriangulation tri;                 // 24n tetrahedra
  std::vector<SimplexRef> vertex_origin;  // per new vertex class: barycenter of what
};

// Barycentric subdivision.  Boundary labels are inherited by descendant faces.
SubdivisionResult barycentric_subdivide(const GluedTriangulation& tri);

struct RemovalResult {
  GluedTriangulation tri;
  std::vector<int32_t> old_to_new;  // -1 if removed
  std::vector<int32_t> new_to_old;
};

// Removes the flagged tetrahedra.  Faces that were glued to a removed
// tetrahedron become boundary; their label is Other unless `relabel` supplies
// one (called with the surviving side's old tet index and face).
RemovalResult remove_tetrahedra(
    const GluedTriangulation& tri, const std::vector<char>& remove,
    const std::function<BoundaryLabel(int, int)>& relabel = nullptr);

// Text format: first line is the tetrahedron count; one line per tetrahedron
// with four whitespace-separated fields, one per face, either
// "b:<label>" or "g:<tet>:<face>:<digits>" where the three digits are the
// images of the face's vertices in ascending order.
std::string to_text(const GluedTriangulation& tri);
GluedTriangulation from_text(const std::string& text);

// Connected components of the triangulation (through face gluings).
std::vector<int32_t> tetrahedron_components(const GluedTriangulation& tri, int* count = nullptr);

// Keeps only the tetrahedra of components selected by `keep` (indexed by
// component id as produced by tetrahedron_components).
GluedTriangulation keep_components(const GluedTriangulation& tri, const std::vector<char>& keep);

}  // namespace vknot
