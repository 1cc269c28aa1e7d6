#pragma once

#include <string>
#include <vector>

#include "vknot/arith.hpp"
#include "vknot/tricomplex.hpp"

namespace vknot {

// Normal surface coordinates: 7 per tetrahedron, laid out as
//   [t0, t1, t2, t3, q0, q1, q2]
// where t_a is the triangle cutting off corner a and the quadrilateral types
// are numbered by the pair of opposite edges they avoid:
//   q0 separates {0,1} from {2,3},
//   q1 separates {0,2} from {1,3},
//   q2 separates {0,3} from {1,2}.

// The quadrilateral type whose quads keep vertices a and b on the same side.
constexpr int quad_pairing(int a, int b) {
  int e = edge_index(a, b);
  return e < 3 ? e : 5 - e;
}

struct SparseTerm {
  int32_t col;
  int32_t coef;
};

struct MatchingSystem {
  int n = 0;  // tetrahedra
  std::vector<std::vector<SparseTerm>> rows;

  int cols() const { return 7 * n; }
};

// One equation per (internal face, corner) pair: the triangles and quads
// inducing a given arc type on the face must agree across the gluing.
// Rows appear in construction order (tetrahedron, then face, then corner);
// rows whose terms cancel are dropped.
MatchingSystem build_matching_system(const GluedTriangulation& tri);

std::vector<std::vector<Integer>> dense_rows(const MatchingSystem& sys);

bool satisfies_matching(const MatchingSystem& sys, const std::vector<Integer>& v);

// At most one quadrilateral type positive per tetrahedron.
bool satisfies_quad_condition(int n, const std::vector<Integer>& v);

// Everything classification needs about a fixed triangulation.
struct NormalContext {
  GluedTriangulation tri;
  Skeleton sk;
  BoundaryStructure bs;
  MatchingSystem system;
  std::vector<Rational> chi;  // per-coordinate Euler weights
};

NormalContext build_normal_context(GluedTriangulation tri);

// Euler characteristic of the normal surface with coordinates v.
Rational surface_euler(const NormalContext& ctx, const std::vector<Integer>& v);

// Number of normal arcs on boundary faces carrying the given label.
Integer boundary_arcs(const NormalContext& ctx, const std::vector<Integer>& v,
                      BoundaryLabel label);

bool surface_closed(const NormalContext& ctx, const std::vector<Integer>& v);

// Number of intersection points with the edge (a,b) of tetrahedron t.
Integer edge_weight(const NormalContext& ctx, const std::vector<Integer>& v,
                    int t, int a, int b);

enum class SurfaceClass {
  VertexLink,              // all quad coordinates zero
  TwoSphere,               // closed, chi = 2, primitive
  VerticalAnnulus,         // chi = 0, primitive, arcs on both surface copies
  ClassicalizationAnnulus, // chi = 0, primitive, arcs on one copy, essential
  Other,
};

const char* to_string(SurfaceClass c);

SurfaceClass classify_surface(const NormalContext& ctx, const std::vector<Integer>& v);

// Whether the boundary curves of the surface, restricted to boundary faces
// labelled `label`, are mod-2 homologically nontrivial in that subsurface.
bool boundary_curves_essential(const NormalContext& ctx,
                               const std::vector<Integer>& v, BoundaryLabel label);

// Checks that v is a valid vertex witness: nonnegative, nonzero, satisfies
// the matching equations and the quadrilateral condition, entries within the
// vertex-solution height bound 2^(7n-1), and spans the one-dimensional face
// of the solution cone cut out by its zero set.
bool verify_vertex_witness(const NormalContext& ctx, const std::vector<Integer>& v,
                           std::string* reason = nullptr);

}  // namespace vknot
