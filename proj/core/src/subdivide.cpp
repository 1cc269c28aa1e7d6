#include <cassert>

#include "vknot/tricomplex.hpp"

namespace vknot {

namespace {

std::array<Perm4, 24> all_perms() {
  std::array<Perm4, 24> out{};
  int k = 0;
  int img[4];
  for (img[0] = 0; img[0] < 4; ++img[0])
    for (img[1] = 0; img[1] < 4; ++img[1])
      for (img[2] = 0; img[2] < 4; ++img[2])
        for (img[3] = 0; img[3] < 4; ++img[3]) {
          Perm4 p(img[0], img[1], img[2], img[3]);
          if (p.is_permutation()) out[k++] = p;
        }
  return out;
}

const std::array<Perm4, 24> kPerms = all_perms();

int perm_index(Perm4 p) {
  for (int i = 0; i < 24; ++i)
    if (kPerms[i] == p) return i;
  throw TriangulationError("not a permutation");
}

}  // namespace

// Each subtetrahedron corresponds to a flag pi of the parent: its corners
// 0..3 sit at the barycenters of the vertex pi[0], the edge {pi[0],pi[1]},
// the face {pi[0],pi[1],pi[2]} and the tetrahedron itself.
SubdivisionResult barycentric_subdivide(const GluedTriangulation& tri) {
  const int n = tri.size();
  Skeleton sk = compute_skeleton(tri);
  SubdivisionResult res;
  res.tri.tets.resize(static_cast<size_t>(n) * 24);

  auto sub_index = [](int t, int p) { return t * 24 + p; };

  auto flag_swap = [](Perm4 pi, int i) {
    return pi * Perm4::transposition(i, i + 1);
  };

  for (int t = 0; t < n; ++t) {
    for (int p = 0; p < 24; ++p) {
      Perm4 pi = kPerms[p];
      int self = sub_index(t, p);
      // Faces 0,1,2 stay inside the parent tetrahedron.  The neighbour is the
      // flag with positions j,j+1 swapped; corner indices match up directly.
      for (int j = 0; j < 3; ++j) {
        int other = sub_index(t, perm_index(flag_swap(pi, j)));
        if (!res.tri.is_glued(self, j))
          res.tri.glue(self, j, other, j, Perm4::identity());
      }
      // Face 3 lies on the parent face opposite pi[3].
      int orig_face = pi[3];
      if (tri.is_glued(t, orig_face)) {
        Perm4 sigma = tri.tets[t].gluing[orig_face];
        int t2 = tri.tets[t].adj[orig_face];
        int other = sub_index(t2, perm_index(sigma * pi));
        if (!res.tri.is_glued(self, 3))
          res.tri.glue(self, 3, other, 3, Perm4::identity());
      } else {
        res.tri.set_boundary_label(self, 3, tri.boundary_label(t, orig_face));
      }
    }
  }

  Skeleton nsk = compute_skeleton(res.tri);
  res.vertex_origin.assign(nsk.vertex_count, SimplexRef{});
  for (int t = 0; t < n; ++t)
    for (int p = 0; p < 24; ++p) {
      Perm4 pi = kPerms[p];
      int self = sub_index(t, p);
      std::array<SimplexRef, 4> ref;
      ref[0] = {0, sk.vclass(t, pi[0])};
      ref[1] = {1, sk.eclass(t, edge_index(pi[0], pi[1]))};
      ref[2] = {2, sk.fclass(t, pi[3])};
      ref[3] = {3, t};
      for (int j = 0; j < 4; ++j) {
        int cls = nsk.vclass(self, j);
        if (res.vertex_origin[cls].dim < 0)
          res.vertex_origin[cls] = ref[j];
        else
          assert(res.vertex_origin[cls] == ref[j]);
      }
    }
  return res;
}

RemovalResult remove_tetrahedra(const GluedTriangulation& tri,
                                const std::vector<char>& remove,
                                const std::function<BoundaryLabel(int, int)>& relabel) {
  const int n = tri.size();
  RemovalResult res;
  res.old_to_new.assign(n, -1);
  for (int t = 0; t < n; ++t)
    if (!remove[t]) {
      res.old_to_new[t] = static_cast<int>(res.new_to_old.size());
      res.new_to_old.push_back(t);
    }
  res.tri.tets.resize(res.new_to_old.size());
  for (int nt = 0; nt < static_cast<int>(res.new_to_old.size()); ++nt) {
    int t = res.new_to_old[nt];
    for (int f = 0; f < 4; ++f) {
      if (!tri.is_glued(t, f)) {
        res.tri.tets[nt].adj[f] = -1;
        res.tri.tets[nt].label[f] = tri.boundary_label(t, f);
        continue;
      }
      int t2 = tri.tets[t].adj[f];
      if (remove[t2]) {
        res.tri.tets[nt].adj[f] = -1;
        res.tri.tets[nt].label[f] = relabel ? relabel(t, f) : BoundaryLabel::Other;
      } else {
        res.tri.tets[nt].adj[f] = res.old_to_new[t2];
        res.tri.tets[nt].gluing[f] = tri.tets[t].gluing[f];
      }
    }
  }
  return res;
}

}  // namespace vknot
