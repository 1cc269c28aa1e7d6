#pragma once

#include <cstdint>

#include "vknot/tricomplex.hpp"

namespace vknot {

struct SimplifyOptions {
  int target_tets = 0;        // stop once size() <= target (0 = reduce as far as possible)
  int plateau_rounds = 64;    // fruitless escape attempts tolerated before giving up
  int jiggle_inserts = 3;     // 2-3 insertions per climbing attempt
  int max_jiggle_tets = 4096; // only attempt escapes below this size
  std::uint64_t seed = 0x9e3779b97f4a7c15ull;
};

// Shrinks a triangulation using local moves that preserve the underlying
// manifold and the labelling of the boundary: Pachner 3-2 moves, pillow
// (degree-two edge) collapses, and boundary shellings, plus seeded 2-3
// insertions to step off plateaus.  Deterministic for fixed options; the
// result never has more tetrahedra than the input.
GluedTriangulation simplify(const GluedTriangulation& tri,
                            const SimplifyOptions& opts = {});

}  // namespace vknot
