#pragma once

#include <string>
#include <vector>

#include "vknot/gauss.hpp"

namespace vknot {

// Closed triangulated surface with explicit edge adjacency.  Vertices are
// global class ids; edge slot j of a triangle is the edge (v[j], v[(j+1)%3]).
// Two distinct edges may share both endpoints, so adjacency is kept per slot
// instead of being derived from endpoint pairs.
struct Surface2 {
  struct Neighbor {
    int tri = -1;
    int slot = -1;
  };
  struct Triangle {
    int v[3] = {-1, -1, -1};
    Neighbor nbr[3];
  };

  int vertex_count = 0;
  std::vector<Triangle> tris;

  int size() const { return static_cast<int>(tris.size()); }
};

// Checks that every slot is glued involutively to a different slot with the
// endpoint classes matched in reverse (orientable gluing), that the three
// vertex classes of every triangle are distinct, and that the corners around
// every vertex class form a single cycle.
bool is_closed_surface(const Surface2& s, std::string* reason = nullptr);

long long surface_euler_characteristic(const Surface2& s);  // V - E + F

// Connected components through edge adjacency, indexed by triangle.
std::vector<int32_t> surface_components(const Surface2& s, int* count = nullptr);

// A point of the knot curve inside the thickened surface: a surface vertex
// together with a height.  Heights 1 and 2 are the interior levels of the
// three-layer product (0 and 3 are the boundary copies); under-strands run at
// height 1 and over-strands at height 2.
struct KnotNode {
  int vertex = -1;
  int level = 1;
  friend bool operator==(const KnotNode&, const KnotNode&) = default;
  friend auto operator<=>(const KnotNode&, const KnotNode&) = default;
};

struct EdgeRef {
  int tri = -1;
  int slot = -1;
};

struct CanonicalSurface {
  Surface2 surf;
  int genus = 0;
  int crossings = 0;
  int boundary_circles = 0;  // cap count of the underlying ribbon surface

  // Closed knot cycle; consecutive nodes (cyclically) span knot edges.  A
  // vertical step appears where the strand switches height at a port.
  std::vector<KnotNode> knot;

  // knot_steps[i] locates the edge knot[i] -> knot[i+1] (cyclically).  For a
  // horizontal step the slot runs from knot[i].vertex to knot[i+1].vertex;
  // for a vertical step it merely starts at the shared vertex.
  std::vector<EdgeRef> knot_steps;

  struct CrossingVerts {
    int nw, n, ne, e, se, s, sw, w, c;
  };
  std::vector<CrossingVerts> verts;

  // Knot edges of the square: under-strand W-C and C-E, over-strand S-C and
  // C-N, as (triangle, slot) references.
  struct CrossingEdges {
    EdgeRef wc, ce, sc, cn;
  };
  std::vector<CrossingEdges> edges;
};

// Canonical surface realization of the diagram: an eight-triangle square per
// crossing, glued port to port along the bands of the diagram (each band is
// collapsed to its attaching edges), with each cap disk collapsed to the
// corner orbit it is attached to.  Collapsing a band or a closed disk does
// not change the homeomorphism type, so the reported genus is the supporting
// genus of the diagram.  Requires at least one crossing.
CanonicalSurface build_canonical_surface(const OrientedGaussCode& code);

}  // namespace vknot
