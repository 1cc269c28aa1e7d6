#pragma once

#include <vector>

#include "vknot/normal.hpp"
#include "vknot/tricomplex.hpp"

namespace vknot {

struct InadmissibleVector : TriangulationError {
  using TriangulationError::TriangulationError;
};
struct NonSurfaceVector : TriangulationError {
  using TriangulationError::TriangulationError;
};
struct NotASphere : TriangulationError {
  using TriangulationError::TriangulationError;
};
struct NotSingular : TriangulationError {
  using TriangulationError::TriangulationError;
};
struct NotALoop : TriangulationError {
  using TriangulationError::TriangulationError;
};
struct NotAVerticalAnnulus : TriangulationError {
  using TriangulationError::TriangulationError;
};

// A circle of singular boundary edges (edge classes bordered by both surface
// copies).  The interesting cases have one edge (a loop at a single vertex)
// or two edges joining the same vertex pair.
struct SingularCircle {
  std::vector<int32_t> edge_classes;
};

struct SingularityReport {
  std::vector<int32_t> isolated_vertices;  // singular vertices off every circle
  std::vector<SingularCircle> circles;
  bool conforming = true;  // every doubly-labelled edge component closed up

  // One of the seven vertex/circle configurations that crushing a vertical
  // annulus can leave behind: 2 or 1 or 0 isolated vertices with no circles,
  // 1 vertex + two loops, two loops, four loops, or one two-edge circle.
  bool matches_lemma_shape() const;
};

SingularityReport compute_singularities(const GluedTriangulation& tri);

struct CrushOutcome {
  GluedTriangulation tri;
  SingularityReport singularities;
  int removed_tet_count = 0;
};

// Crush along the normal surface with coordinates v: delete every tetrahedron
// carrying a quadrilateral and re-glue the remaining faces by following the
// corridors of flattened product regions through the deleted tetrahedra.
CrushOutcome crush(const NormalContext& ctx, const std::vector<Integer>& v);
CrushOutcome crush(const GluedTriangulation& tri, const std::vector<Integer>& v);

// Keeps exactly the connected components containing a KnotTorus boundary
// face.  May return the empty triangulation.
GluedTriangulation prune_to_knot(const GluedTriangulation& tri);

// Crush along an essential 2-sphere and discard the components split off the
// knot.  Empty result means the knot was trivial.
GluedTriangulation split_along_sphere(const NormalContext& ctx,
                                      const std::vector<Integer>& v);

// Stretch the singular vertex class p towards an edge: one boundary fan at p
// is lifted off onto a fresh apex by a layer of prisms over its triangles.
// Repeated stretches separate all fans, leaving Disk or Sphere links.
GluedTriangulation desingularize(const GluedTriangulation& tri, int p);

// Remove a circle of singular edges: a 1-edge circle is capped with a folded
// cone tetrahedron, a 2-edge circle is folded shut by a bridge tetrahedron;
// the vertices this leaves singular are desingularized.
GluedTriangulation eliminate_loop(const GluedTriangulation& tri,
                                  const SingularCircle& circle);

// Crush along a vertical annulus, then clean up: eliminate 1-edge circles,
// then 2-edge circles, desingularize what remains, and prune to the knot
// component.
GluedTriangulation destabilize(const NormalContext& ctx,
                               const std::vector<Integer>& v);

}  // namespace vknot
