#pragma once

#include <vector>

#include "vknot/gauss.hpp"
#include "vknot/surface2d.hpp"
#include "vknot/tricomplex.hpp"

namespace vknot {

// Thickened surface S x I as three stacked prism layers over the canonical
// surface, each prism split into three tetrahedra along the staircase of its
// sorted vertex classes (a shared vertex order keeps the wall diagonals of
// neighbouring prisms compatible).  The bottom copy of the surface is
// labelled SurfaceCopy0, the top SurfaceCopy1, and the knot cycle runs
// through the interior 1-skeleton at heights 1 and 2.
struct ThickenedProduct {
  GluedTriangulation tri;
  std::vector<int32_t> knot_vertices;  // vertex classes on the knot circle
  std::vector<int32_t> knot_edges;     // edge classes on the knot circle
};

ThickenedProduct build_thickened_product(const CanonicalSurface& cs);

struct ExteriorBuildStats {
  int crossings = 0;
  int genus = 0;
  int product_tets = 0;
  int removed_tets = 0;
};

// Canonical exterior of the knot: the thickened product is barycentrically
// subdivided twice (so the open star of the knot is a regular neighbourhood),
// every tetrahedron meeting the knot is removed, and the freshly exposed
// boundary is labelled KnotTorus.  The boundary census of the result is two
// copies of the canonical surface plus one torus.
GluedTriangulation build_canonical_exterior(const OrientedGaussCode& code,
                                            ExteriorBuildStats* stats = nullptr);

}  // namespace vknot
