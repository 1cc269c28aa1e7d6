#include "vknot/exterior.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>
#include <utility>

namespace vknot {

namespace {

constexpr int kLayers = 3;

// Staircase prism over a triangle with vertex classes w0 < w1 < w2 between
// levels l and l+1: writing a_r = (w_r, l) and b_r = (w_r, l+1), the three
// tetrahedra are
//   s=0: [a0, a1, a2, b2],  s=1: [a0, a1, b1, b2],  s=2: [a0, b0, b1, b2].
// The shared class order makes the wall diagonal over an edge run from its
// smaller class at level l to its larger class at level l+1 on both sides.

struct WallFace {
  int s;
  int face;
  std::array<int, 3> corner;  // canonical corner order
};

// Wall triangles over the prism edge with sorted ranks (rlo, rhi).  Corner
// order is (lo@l, hi@l, hi@l+1) for the lower triangle and
// (lo@l, lo@l+1, hi@l+1) for the upper one.
void wall_faces(int rlo, int rhi, WallFace* lower, WallFace* upper) {
  if (rlo == 0 && rhi == 1) {
    *lower = {1, 3, {0, 1, 2}};
    *upper = {2, 3, {0, 1, 2}};
  } else if (rlo == 1 && rhi == 2) {
    *lower = {0, 0, {1, 2, 3}};
    *upper = {1, 0, {1, 2, 3}};
  } else {
    *lower = {0, 1, {0, 2, 3}};
    *upper = {2, 2, {0, 1, 3}};
  }
}

Perm4 face_perm(const WallFace& from, const WallFace& to) {
  int img[4] = {-1, -1, -1, -1};
  img[from.face] = to.face;
  for (int i = 0; i < 3; ++i) img[from.corner[i]] = to.corner[i];
  return Perm4(img[0], img[1], img[2], img[3]);
}

}  // namespace

ThickenedProduct build_thickened_product(const CanonicalSurface& cs) {
  const Surface2& s = cs.surf;
  const int nt = s.size();
  ThickenedProduct out;
  GluedTriangulation& tri = out.tri;
  for (int i = 0; i < 9 * nt; ++i) tri.add_tetrahedron();
  auto tet_id = [](int t, int layer, int piece) { return 9 * t + 3 * layer + piece; };

  // rank_of_slot[t][j]: position of slot j's class among the sorted classes.
  std::vector<std::array<int, 3>> rank(nt);
  for (int t = 0; t < nt; ++t)
    for (int j = 0; j < 3; ++j) {
      const int* v = s.tris[t].v;
      rank[t][j] = (v[j] > v[(j + 1) % 3]) + (v[j] > v[(j + 2) % 3]);
    }

  for (int t = 0; t < nt; ++t) {
    for (int l = 0; l < kLayers; ++l) {
      tri.glue(tet_id(t, l, 0), 2, tet_id(t, l, 1), 2, Perm4::identity());
      tri.glue(tet_id(t, l, 1), 1, tet_id(t, l, 2), 1, Perm4::identity());
      if (l + 1 < kLayers)
        tri.glue(tet_id(t, l, 2), 0, tet_id(t, l + 1, 0), 3, Perm4(3, 0, 1, 2));
    }
    tri.set_boundary_label(tet_id(t, 0, 0), 3, BoundaryLabel::SurfaceCopy0);
    tri.set_boundary_label(tet_id(t, kLayers - 1, 2), 0, BoundaryLabel::SurfaceCopy1);
  }

  for (int t = 0; t < nt; ++t)
    for (int j = 0; j < 3; ++j) {
      Surface2::Neighbor nb = s.tris[t].nbr[j];
      if (nb.tri < t) continue;
      if (nb.tri == t) throw std::logic_error("surface triangle glued to itself");
      int x = s.tris[t].v[j], y = s.tris[t].v[(j + 1) % 3];
      int rx = rank[t][j], ry = rank[t][(j + 1) % 3];
      int r2x = rank[nb.tri][(nb.slot + 1) % 3], r2y = rank[nb.tri][nb.slot];
      int r1lo = x < y ? rx : ry, r1hi = x < y ? ry : rx;
      int r2lo = x < y ? r2x : r2y, r2hi = x < y ? r2y : r2x;
      WallFace lo1, up1, lo2, up2;
      wall_faces(r1lo, r1hi, &lo1, &up1);
      wall_faces(r2lo, r2hi, &lo2, &up2);
      for (int l = 0; l < kLayers; ++l) {
        tri.glue(tet_id(t, l, lo1.s), lo1.face, tet_id(nb.tri, l, lo2.s), lo2.face,
                 face_perm(lo1, lo2));
        tri.glue(tet_id(t, l, up1.s), up1.face, tet_id(nb.tri, l, up2.s), up2.face,
                 face_perm(up1, up2));
      }
    }

  Skeleton sk = compute_skeleton(tri);
  const size_t len = cs.knot.size();
  for (size_t i = 0; i < len; ++i) {
    const KnotNode& a = cs.knot[i];
    const KnotNode& b = cs.knot[(i + 1) % len];
    EdgeRef ref = cs.knot_steps[i];
    int r = rank[ref.tri][ref.slot];
    int bottom = tet_id(ref.tri, a.level, 0);  // bottom of layer a.level is level a.level
    out.knot_vertices.push_back(sk.vclass(bottom, r));
    if (a.level == b.level) {
      int r2 = rank[ref.tri][(ref.slot + 1) % 3];
      out.knot_edges.push_back(sk.eclass(bottom, edge_index(r, r2)));
    } else {
      // Vertical edge between levels 1 and 2 lives in layer 1.
      static const int piece_of_rank[3] = {2, 1, 0};
      static const int edge_of_rank[3] = {edge_index(0, 1), edge_index(1, 2), edge_index(2, 3)};
      out.knot_edges.push_back(
          sk.eclass(tet_id(ref.tri, 1, piece_of_rank[r]), edge_of_rank[r]));
    }
  }

  std::vector<int32_t> vs = out.knot_vertices, es = out.knot_edges;
  std::sort(vs.begin(), vs.end());
  std::sort(es.begin(), es.end());
  if (std::adjacent_find(vs.begin(), vs.end()) != vs.end() ||
      std::adjacent_find(es.begin(), es.end()) != es.end())
    throw std::logic_error("knot classes are not distinct in the product");
  return out;
}

GluedTriangulation build_canonical_exterior(const OrientedGaussCode& code,
                                            ExteriorBuildStats* stats) {
  CanonicalSurface cs = build_canonical_surface(code);
  ThickenedProduct prod = build_thickened_product(cs);
  if (stats) {
    stats->crossings = cs.crossings;
    stats->genus = cs.genus;
    stats->product_tets = prod.tri.size();
  }

  GluedTriangulation cur = std::move(prod.tri);
  Skeleton sk = compute_skeleton(cur);
  std::vector<char> kv(sk.vertex_count, 0), ke(sk.edge_count, 0);
  for (int32_t v : prod.knot_vertices) kv[v] = 1;
  for (int32_t e : prod.knot_edges) ke[e] = 1;

  for (int round = 0; round < 2; ++round) {
    long long old_v = std::count(kv.begin(), kv.end(), 1);
    long long old_e = std::count(ke.begin(), ke.end(), 1);
    SubdivisionResult sub = barycentric_subdivide(cur);
    Skeleton sk2 = compute_skeleton(sub.tri);
    std::vector<char> kv2(sk2.vertex_count, 0), ke2(sk2.edge_count, 0);
    for (int v = 0; v < sk2.vertex_count; ++v) {
      SimplexRef r = sub.vertex_origin[v];
      if ((r.dim == 0 && kv[r.id]) || (r.dim == 1 && ke[r.id])) kv2[v] = 1;
    }
    for (int t = 0; t < sub.tri.size(); ++t)
      for (int e = 0; e < 6; ++e) {
        int ec = sk2.eclass(t, e);
        if (ke2[ec]) continue;
        SimplexRef ra = sub.vertex_origin[sk2.vclass(t, kEdgeVertices[e][0])];
        SimplexRef rb = sub.vertex_origin[sk2.vclass(t, kEdgeVertices[e][1])];
        if (ra.dim > rb.dim) std::swap(ra, rb);
        if (ra.dim == 0 && rb.dim == 1 && kv[ra.id] && ke[rb.id]) ke2[ec] = 1;
      }
    if (std::count(kv2.begin(), kv2.end(), 1) != old_v + old_e ||
        std::count(ke2.begin(), ke2.end(), 1) != 2 * old_e)
      throw std::logic_error("knot tracking lost simplices across subdivision");
    cur = std::move(sub.tri);
    sk = std::move(sk2);
    kv = std::move(kv2);
    ke = std::move(ke2);
  }

  std::vector<char> remove(cur.size(), 0);
  int removed = 0;
  for (int t = 0; t < cur.size(); ++t)
    for (int c = 0; c < 4; ++c)
      if (kv[sk.vclass(t, c)]) {
        remove[t] = 1;
        ++removed;
        break;
      }
  RemovalResult rem = remove_tetrahedra(
      cur, remove, [](int, int) { return BoundaryLabel::KnotTorus; });
  if (stats) stats->removed_tets = removed;
  return std::move(rem.tri);
}

}  // namespace vknot
