#include "vknot/surgery.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <set>
#include <utility>

namespace vknot {

namespace {

int copy_bit(BoundaryLabel label) {
  if (label == BoundaryLabel::SurfaceCopy0) return 1;
  if (label == BoundaryLabel::SurfaceCopy1) return 2;
  return 0;
}

}  // namespace

bool SingularityReport::matches_lemma_shape() const {
  if (!conforming) return false;
  std::vector<size_t> sizes;
  sizes.reserve(circles.size());
  for (const SingularCircle& c : circles) sizes.push_back(c.edge_classes.size());
  std::sort(sizes.begin(), sizes.end());
  const size_t v = isolated_vertices.size();
  if (sizes.empty()) return v <= 2;
  if (sizes == std::vector<size_t>{1, 1}) return v <= 1;
  if (sizes == std::vector<size_t>{1, 1, 1, 1}) return v == 0;
  if (sizes == std::vector<size_t>{2}) return v == 0;
  return false;
}

SingularityReport compute_singularities(const GluedTriangulation& tri) {
  SingularityReport rep;
  if (tri.empty()) return rep;
  Skeleton sk = compute_skeleton(tri);

  // Which surface copies touch each vertex and edge class, read off the
  // labelled boundary faces.  Both copies meeting means singular.
  std::vector<uint8_t> vbits(sk.vertex_count, 0), ebits(sk.edge_count, 0);
  for (int t = 0; t < tri.size(); ++t)
    for (int f = 0; f < 4; ++f) {
      if (tri.is_glued(t, f)) continue;
      int bit = copy_bit(tri.boundary_label(t, f));
      if (!bit) continue;
      for (int a = 0; a < 4; ++a) {
        if (a == f) continue;
        vbits[sk.vclass(t, a)] |= bit;
        for (int b = a + 1; b < 4; ++b) {
          if (b == f) continue;
          ebits[sk.eclass(t, edge_index(a, b))] |= bit;
        }
      }
    }

  std::vector<int32_t> e_u(sk.edge_count, -1), e_w(sk.edge_count, -1);
  for (int t = 0; t < tri.size(); ++t)
    for (int e = 0; e < 6; ++e) {
      int c = sk.eclass(t, e);
      if (e_u[c] >= 0) continue;
      e_u[c] = sk.vclass(t, kEdgeVertices[e][0]);
      e_w[c] = sk.vclass(t, kEdgeVertices[e][1]);
    }

  std::vector<int32_t> eprime;
  for (int c = 0; c < sk.edge_count; ++c)
    if (ebits[c] == 3) eprime.push_back(c);

  std::vector<char> on_circle(sk.vertex_count, 0);
  for (int c : eprime) on_circle[e_u[c]] = on_circle[e_w[c]] = 1;
  for (int v = 0; v < sk.vertex_count; ++v)
    if (vbits[v] == 3 && !on_circle[v]) rep.isolated_vertices.push_back(v);

  // A loop edge closes a circle on its own.  The remaining singular edges
  // are grouped by shared endpoints; a group is a circle only when every
  // vertex it meets has exactly two edge-ends in the group.
  std::vector<int32_t> nonloop;
  for (int c : eprime) {
    if (e_u[c] == e_w[c])
      rep.circles.push_back({{c}});
    else
      nonloop.push_back(c);
  }
  std::map<int, std::vector<int>> at_vertex;
  for (int c : nonloop) {
    at_vertex[e_u[c]].push_back(c);
    at_vertex[e_w[c]].push_back(c);
  }
  std::set<int32_t> seen;
  for (int c : nonloop) {
    if (seen.count(c)) continue;
    std::vector<int32_t> comp = {c};
    seen.insert(c);
    for (size_t i = 0; i < comp.size(); ++i)
      for (int v : {e_u[comp[i]], e_w[comp[i]]})
        for (int d : at_vertex[v])
          if (seen.insert(d).second) comp.push_back(d);
    std::map<int, int> deg;
    for (int d : comp) {
      deg[e_u[d]]++;
      deg[e_w[d]]++;
    }
    for (auto& [v, k] : deg)
      if (k != 2) rep.conforming = false;
    std::sort(comp.begin(), comp.end());
    rep.circles.push_back({comp});
  }
  std::sort(rep.circles.begin(), rep.circles.end(),
            [](const SingularCircle& a, const SingularCircle& b) {
              return a.edge_classes < b.edge_classes;
            });
  return rep;
}

CrushOutcome crush(const NormalContext& ctx, const std::vector<Integer>& v) {
  const GluedTriangulation& tri = ctx.tri;
  const int n = tri.size();
  if (static_cast<int>(v.size()) != 7 * n)
    throw NonSurfaceVector("coordinate vector length mismatch");
  for (const Integer& x : v)
    if (x < 0) throw InadmissibleVector("negative coordinate");
  if (!satisfies_quad_condition(n, v))
    throw InadmissibleVector("quadrilateral condition violated");
  if (!satisfies_matching(ctx.system, v))
    throw NonSurfaceVector("matching equations not satisfied");

  std::vector<int> quad(n, -1);
  int removed = 0;
  for (int t = 0; t < n; ++t)
    for (int k = 0; k < 3; ++k)
      if (v[7 * t + 4 + k] > 0) {
        quad[t] = k;
        ++removed;
        break;
      }

  CrushOutcome out;
  out.removed_tet_count = removed;
  std::vector<int32_t> to_new(n, -1);
  for (int t = 0; t < n; ++t)
    if (quad[t] < 0) to_new[t] = out.tri.add_tetrahedron();

  // Faces between two surviving tetrahedra keep their gluings; surviving
  // boundary faces keep their labels.
  for (int t = 0; t < n; ++t) {
    if (quad[t] >= 0) continue;
    for (int f = 0; f < 4; ++f) {
      if (!tri.is_glued(t, f)) {
        out.tri.set_boundary_label(to_new[t], f, tri.boundary_label(t, f));
        continue;
      }
      int t2 = tri.tets[t].adj[f];
      if (quad[t2] >= 0) continue;
      if (out.tri.is_glued(to_new[t], f)) continue;
      out.tri.glue(to_new[t], f, to_new[t2], tri.tets[t].gluing[f][f],
                   tri.tets[t].gluing[f]);
    }
  }

  // Every other surviving face starts a corridor through deleted tetrahedra.
  // Flattening a tetrahedron whose quads have type k folds its faces together
  // in the pairs {g, g xor (k+1)}, the vertex map being the transposition of
  // the two face indices.  `acc` maps the start tetrahedron's labels to the
  // current one's, with acc[f] tracking the face the corridor runs through.
  for (int t = 0; t < n; ++t) {
    if (quad[t] >= 0) continue;
    for (int f = 0; f < 4; ++f) {
      if (!tri.is_glued(t, f)) continue;
      if (quad[tri.tets[t].adj[f]] < 0) continue;
      if (out.tri.is_glued(to_new[t], f)) continue;

      Perm4 acc = tri.tets[t].gluing[f];
      int cur = tri.tets[t].adj[f];
      int entry = acc[f];
      std::set<std::pair<int, int>> visited;
      for (;;) {
        if (!visited.insert({cur, entry}).second) {
          // The corridor closes up without reaching a surviving face.
          out.tri.set_boundary_label(to_new[t], f, BoundaryLabel::Other);
          break;
        }
        int exit = entry ^ (quad[cur] + 1);
        acc = Perm4::transposition(entry, exit) * acc;
        if (!tri.is_glued(cur, exit)) {
          out.tri.set_boundary_label(to_new[t], f, tri.boundary_label(cur, exit));
          break;
        }
        Perm4 step = tri.tets[cur].gluing[exit];
        entry = step[exit];
        cur = tri.tets[cur].adj[exit];
        acc = step * acc;
        if (quad[cur] < 0) {
          if ((cur == t && entry == f) || out.tri.is_glued(to_new[cur], entry))
            out.tri.set_boundary_label(to_new[t], f, BoundaryLabel::Other);
          else
            out.tri.glue(to_new[t], f, to_new[cur], entry, acc);
          break;
        }
      }
    }
  }

  out.singularities = compute_singularities(out.tri);
  return out;
}

CrushOutcome crush(const GluedTriangulation& tri, const std::vector<Integer>& v) {
  return crush(build_normal_context(tri), v);
}

GluedTriangulation prune_to_knot(const GluedTriangulation& tri) {
  if (tri.empty()) return tri;
  int count = 0;
  std::vector<int32_t> comp = tetrahedron_components(tri, &count);
  std::vector<char> keep(count, 0);
  for (int t = 0; t < tri.size(); ++t)
    for (int f = 0; f < 4; ++f)
      if (!tri.is_glued(t, f) &&
          tri.boundary_label(t, f) == BoundaryLabel::KnotTorus)
        keep[comp[t]] = 1;
  return keep_components(tri, keep);
}

GluedTriangulation split_along_sphere(const NormalContext& ctx,
                                      const std::vector<Integer>& v) {
  if (classify_surface(ctx, v) != SurfaceClass::TwoSphere)
    throw NotASphere("surface is not a normal 2-sphere");
  return prune_to_knot(crush(ctx, v).tri);
}

namespace {

// One prism per boundary face with a corner lifted off the singular vertex.
// Corners are listed in a chosen order sigma; the staircase over that order
// keeps one tetrahedron per lifted corner:
//   A = (B0,B1,B2,T2)  when sigma[2] lifts,
//   B = (B0,B1,T1,T2)  when sigma[1] lifts,
//   C = (B0,T0,T1,T2)  when sigma[0] lifts,
// where T_i coincides with B_i wherever sigma[i] stays down.
struct Prism {
  int t = -1, f = -1;                // the boundary face being collared
  std::array<int, 3> c = {0, 0, 0};  // corner labels in sigma order
  std::array<char, 3> lifted = {0, 0, 0};
  int tetA = -1, tetB = -1, tetC = -1;
  BoundaryLabel label = BoundaryLabel::Other;

  int pos(int corner) const {
    for (int i = 0; i < 3; ++i)
      if (c[i] == corner) return i;
    return -1;
  }
};

// A wall of the prism between sigma positions i < j splits along the diagonal
// B_i -- T_j into a lower triangle {B_i, B_j, T_j} and an upper triangle
// {B_i, T_i, T_j}.  The tables give the carrying tetrahedron's face and the
// slots of the symbolic corners (unused ones are -1).
struct WallPiece {
  int tet = -1, face = -1;
  int b_lo = -1, b_hi = -1, t_lo = -1, t_hi = -1;
};

WallPiece lower_piece(const Prism& p, int i, int j) {
  if (i == 0 && j == 1) return {p.tetB, 3, 0, 1, -1, 2};
  if (i == 1 && j == 2) return {p.tetA, 0, 1, 2, -1, 3};
  return {p.tetA, 1, 0, 2, -1, 3};  // (0,2)
}

WallPiece upper_piece(const Prism& p, int i, int j) {
  if (i == 0 && j == 1) return {p.tetC, 3, 0, -1, 1, 2};
  if (i == 1 && j == 2) return {p.tetB, 0, 1, -1, 2, 3};
  return {p.tetC, 2, 0, -1, 1, 3};  // (0,2)
}

// Slot of the bottom vertex over corner c in piece P.  In an upper piece
// whose higher corner stays down, the T_j slot carries that bottom vertex.
int bottom_slot(const WallPiece& P, const Prism& pr, int i, int c) {
  if (pr.pos(c) == i) return P.b_lo;
  return P.b_hi >= 0 ? P.b_hi : P.t_hi;
}

// Slot of the lifted endpoint's top vertex in a single-lift triangle piece.
int top_slot(const WallPiece& P) { return P.t_lo >= 0 ? P.t_lo : P.t_hi; }

Perm4 face_map(int face_a, std::initializer_list<std::pair<int, int>> slot_pairs,
               int face_b) {
  int m[4] = {-1, -1, -1, -1};
  m[face_a] = face_b;
  for (auto& [sa, sb] : slot_pairs) m[sa] = sb;
  return Perm4(m[0], m[1], m[2], m[3]);
}

int count_hits(const std::array<int, 3>& order,
               const std::vector<std::pair<int, int>>& before) {
  auto pos = [&](int c) {
    for (int i = 0; i < 3; ++i)
      if (order[i] == c) return i;
    return 3;
  };
  int hits = 0;
  for (auto& [x, y] : before)
    if (pos(x) < pos(y)) ++hits;
  return hits;
}

}  // namespace

GluedTriangulation desingularize(const GluedTriangulation& tri, int p) {
  Skeleton sk = compute_skeleton(tri);
  if (p < 0 || p >= sk.vertex_count)
    throw NotSingular("no such vertex class");
  if (sk.link_type[p] != VertexLinkType::Singular)
    throw NotSingular("vertex link is not singular");
  BoundaryStructure bs = boundary_structure(tri);
  const int bf = static_cast<int>(bs.faces.size());

  // The stretch lifts one boundary fan at p onto a fresh apex: the fan of
  // the first corner at p in scan order.
  int chosen_fan = -1;
  std::set<int> fans;
  for (int j = 0; j < bf; ++j)
    for (int a = 0; a < 4; ++a) {
      if (a == bs.faces[j].face || sk.vclass(bs.faces[j].tet, a) != p) continue;
      fans.insert(bs.fan_class[4 * j + a]);
      if (chosen_fan < 0) chosen_fan = bs.fan_class[4 * j + a];
    }
  if (fans.size() < 2)
    throw TriangulationError("singular vertex has no separable boundary fans");

  auto lifted_corner = [&](int j, int a) {
    return a != bs.faces[j].face && sk.vclass(bs.faces[j].tet, a) == p &&
           bs.fan_class[4 * j + a] == chosen_fan;
  };

  std::vector<int> prism_of(bf, -1);
  std::vector<Prism> prisms;
  for (int j = 0; j < bf; ++j) {
    Prism pr;
    pr.t = bs.faces[j].tet;
    pr.f = bs.faces[j].face;
    pr.label = tri.boundary_label(pr.t, pr.f);
    int k = 0;
    bool any = false;
    for (int a = 0; a < 4; ++a) {
      if (a == pr.f) continue;
      pr.c[k] = a;
      pr.lifted[k] = lifted_corner(j, a) ? 1 : 0;
      any |= pr.lifted[k] != 0;
      ++k;
    }
    if (!any) continue;
    prism_of[j] = static_cast<int>(prisms.size());
    prisms.push_back(pr);
  }

  // Wall records: boundary edges with a lifted endpoint.  When both endpoints
  // lift, the wall is a quadrilateral and its diagonal must be cut the same
  // way on both sides; bit x selects the diagonal running from the bottom of
  // endpoint x to the top of the other endpoint.
  struct Wall {
    int rec;
    bool both;
  };
  std::vector<Wall> walls;
  std::vector<int> quad_walls;
  for (int r = 0; r < static_cast<int>(bs.edges.size()); ++r) {
    const BoundaryStructure::Edge& e = bs.edges[r];
    bool l0 = lifted_corner(e.face_a, e.a0);
    bool l1 = lifted_corner(e.face_a, e.a1);
    if (lifted_corner(e.face_b, e.b0) != l0 || lifted_corner(e.face_b, e.b1) != l1)
      throw TriangulationError("inconsistent fan structure at singular vertex");
    if (!l0 && !l1) continue;
    if (e.face_a == e.face_b && std::min(e.a0, e.a1) == std::min(e.b0, e.b1) &&
        std::max(e.a0, e.a1) == std::max(e.b0, e.b1))
      throw TriangulationError("boundary edge folded onto itself at singular vertex");
    if (l0 && l1) quad_walls.push_back(r);
    walls.push_back({r, l0 && l1});
  }

  // Choose diagonal bits and per-prism corner orders.  A prism is orderable
  // under a bit assignment when some corner order agrees with the diagonals
  // of all its quadrilateral walls; a twisted prism is not, so small cases
  // search the assignments exhaustively and the rest fall back to canonical
  // bits with flat plug tetrahedra wherever the two sides still disagree.
  auto constraints_for = [&](const std::vector<char>& bits) {
    std::vector<std::vector<std::pair<int, int>>> cons(prisms.size());
    for (int r : quad_walls) {
      const BoundaryStructure::Edge& e = bs.edges[r];
      int x = bits[r];
      cons[prism_of[e.face_a]].push_back(x == 0 ? std::pair{e.a0, e.a1}
                                                : std::pair{e.a1, e.a0});
      cons[prism_of[e.face_b]].push_back(x == 0 ? std::pair{e.b0, e.b1}
                                                : std::pair{e.b1, e.b0});
    }
    return cons;
  };
  auto feasible = [&](const std::vector<std::vector<std::pair<int, int>>>& cons) {
    for (size_t i = 0; i < prisms.size(); ++i) {
      std::array<int, 3> order = prisms[i].c;
      std::sort(order.begin(), order.end());
      bool ok = false;
      do {
        if (count_hits(order, cons[i]) == static_cast<int>(cons[i].size())) ok = true;
      } while (!ok && std::next_permutation(order.begin(), order.end()));
      if (!ok) return false;
    }
    return true;
  };

  const size_t kSearchCap = 14;
  std::vector<char> bits(bs.edges.size(), 0);
  if (quad_walls.size() <= kSearchCap) {
    for (size_t mask = 0; mask < (size_t{1} << quad_walls.size()); ++mask) {
      std::vector<char> trial(bs.edges.size(), 0);
      for (size_t k = 0; k < quad_walls.size(); ++k)
        trial[quad_walls[k]] = static_cast<char>((mask >> k) & 1);
      if (feasible(constraints_for(trial))) {
        bits = trial;
        break;
      }
    }
  }
  std::vector<std::vector<std::pair<int, int>>> cons = constraints_for(bits);
  for (size_t i = 0; i < prisms.size(); ++i) {
    Prism& pr = prisms[i];
    std::array<int, 3> order = pr.c;
    std::sort(order.begin(), order.end());
    std::array<int, 3> best = order;
    int best_hits = -1;
    do {
      int hits = count_hits(order, cons[i]);
      if (hits > best_hits) {
        best_hits = hits;
        best = order;
      }
    } while (std::next_permutation(order.begin(), order.end()));
    std::array<char, 3> lifted;
    for (int k = 0; k < 3; ++k) lifted[k] = pr.lifted[pr.pos(best[k])];
    pr.c = best;
    pr.lifted = lifted;
  }

  GluedTriangulation work = tri;
  for (Prism& pr : prisms) {
    if (pr.lifted[2]) pr.tetA = work.add_tetrahedron();
    if (pr.lifted[1]) pr.tetB = work.add_tetrahedron();
    if (pr.lifted[0]) pr.tetC = work.add_tetrahedron();

    // Base of the staircase onto the old boundary face.
    if (pr.tetA >= 0)
      work.glue(pr.tetA, 3, pr.t, pr.f, Perm4(pr.c[0], pr.c[1], pr.c[2], pr.f));
    else if (pr.tetB >= 0)
      work.glue(pr.tetB, 2, pr.t, pr.f, Perm4(pr.c[0], pr.c[1], pr.f, pr.c[2]));
    else
      work.glue(pr.tetC, 1, pr.t, pr.f, Perm4(pr.c[0], pr.f, pr.c[1], pr.c[2]));

    // Interior faces between consecutive steps.
    if (pr.tetA >= 0 && pr.tetB >= 0)
      work.glue(pr.tetA, 2, pr.tetB, 2, Perm4::identity());
    if (pr.tetB >= 0 && pr.tetC >= 0)
      work.glue(pr.tetB, 1, pr.tetC, 1, Perm4::identity());
    if (pr.tetA >= 0 && pr.tetB < 0 && pr.tetC >= 0)
      work.glue(pr.tetA, 2, pr.tetC, 1, Perm4(0, 2, 1, 3));

    // The lifted top replaces the old face on the boundary.
    if (pr.tetC >= 0)
      work.set_boundary_label(pr.tetC, 0, pr.label);
    else if (pr.tetB >= 0)
      work.set_boundary_label(pr.tetB, 1, pr.label);
    else
      work.set_boundary_label(pr.tetA, 2, pr.label);
  }

  for (const Wall& w : walls) {
    const BoundaryStructure::Edge& e = bs.edges[w.rec];
    const Prism& pa = prisms[prism_of[e.face_a]];
    const Prism& pb = prisms[prism_of[e.face_b]];
    int ia = std::min(pa.pos(e.a0), pa.pos(e.a1));
    int ja = std::max(pa.pos(e.a0), pa.pos(e.a1));
    int ib = std::min(pb.pos(e.b0), pb.pos(e.b1));
    int jb = std::max(pb.pos(e.b0), pb.pos(e.b1));

    if (!w.both) {
      // Triangle wall: both bottoms plus the lifted endpoint's top.  The kept
      // piece is the lower one when the lifted corner sits at the higher
      // sigma position, the upper one otherwise.
      int la = lifted_corner(e.face_a, e.a0) ? e.a0 : e.a1;
      int lb = lifted_corner(e.face_b, e.b0) ? e.b0 : e.b1;
      WallPiece A = pa.pos(la) == ja ? lower_piece(pa, ia, ja) : upper_piece(pa, ia, ja);
      WallPiece B = pb.pos(lb) == jb ? lower_piece(pb, ib, jb) : upper_piece(pb, ib, jb);
      work.glue(A.tet, A.face, B.tet, B.face,
                face_map(A.face,
                         {{bottom_slot(A, pa, ia, e.a0), bottom_slot(B, pb, ib, e.b0)},
                          {bottom_slot(A, pa, ia, e.a1), bottom_slot(B, pb, ib, e.b1)},
                          {top_slot(A), top_slot(B)}},
                         B.face));
      continue;
    }

    // Quadrilateral wall.  Each side realizes the diagonal from the bottom of
    // whichever endpoint its corner order places first.
    int xa = pa.pos(e.a0) < pa.pos(e.a1) ? 0 : 1;
    int xb = pb.pos(e.b0) < pb.pos(e.b1) ? 0 : 1;
    WallPiece la = lower_piece(pa, ia, ja), ua = upper_piece(pa, ia, ja);
    WallPiece lb = lower_piece(pb, ib, jb), ub = upper_piece(pb, ib, jb);
    if (xa == xb) {
      // Same diagonal; sigma positions agree endpoint-wise, so the pieces
      // glue slot by slot.
      work.glue(la.tet, la.face, lb.tet, lb.face,
                face_map(la.face,
                         {{la.b_lo, lb.b_lo}, {la.b_hi, lb.b_hi}, {la.t_hi, lb.t_hi}},
                         lb.face));
      work.glue(ua.tet, ua.face, ub.tet, ub.face,
                face_map(ua.face,
                         {{ua.b_lo, ub.b_lo}, {ua.t_lo, ub.t_lo}, {ua.t_hi, ub.t_hi}},
                         ub.face));
      continue;
    }

    // Mismatched diagonals: a flat plug tetrahedron carries both cuts.  Its
    // corners are 0 = bottom(e0), 1 = bottom(e1), 2 = top(e0), 3 = top(e1),
    // so faces {2,1} share the x=0 diagonal and faces {3,0} the x=1 one.
    int plug = work.add_tetrahedron();
    auto glue_side = [&](const Prism& pr, const WallPiece& lo, const WallPiece& up,
                         int c0, int c1, int x) {
      int i = std::min(pr.pos(c0), pr.pos(c1));
      auto bot = [&](const WallPiece& P, int c) { return bottom_slot(P, pr, i, c); };
      auto top = [&](const WallPiece& P, int c) {
        return pr.pos(c) == i ? P.t_lo : P.t_hi;
      };
      if (x == 0) {
        work.glue(lo.tet, lo.face, plug, 2,
                  face_map(lo.face,
                           {{bot(lo, c0), 0}, {bot(lo, c1), 1}, {top(lo, c1), 3}}, 2));
        work.glue(up.tet, up.face, plug, 1,
                  face_map(up.face,
                           {{bot(up, c0), 0}, {top(up, c0), 2}, {top(up, c1), 3}}, 1));
      } else {
        work.glue(lo.tet, lo.face, plug, 3,
                  face_map(lo.face,
                           {{bot(lo, c0), 0}, {bot(lo, c1), 1}, {top(lo, c0), 2}}, 3));
        work.glue(up.tet, up.face, plug, 0,
                  face_map(up.face,
                           {{bot(up, c1), 1}, {top(up, c1), 3}, {top(up, c0), 2}}, 0));
      }
    };
    glue_side(pa, la, ua, e.a0, e.a1, xa);
    glue_side(pb, lb, ub, e.b0, e.b1, xb);
  }

  return work;
}

namespace {

// Repeatedly stretch the vertex class holding slot (t,a) until its link is
// no longer singular.  Slots of pre-existing tetrahedra stay valid because
// stretching only adds tetrahedra.
GluedTriangulation desingularize_at_slot(GluedTriangulation work, int t, int a) {
  for (int guard = 0; guard < 64; ++guard) {
    Skeleton sk = compute_skeleton(work);
    int p = sk.vclass(t, a);
    if (sk.link_type[p] != VertexLinkType::Singular) return work;
    work = desingularize(work, p);
  }
  throw TriangulationError("vertex failed to desingularize");
}

}  // namespace

GluedTriangulation eliminate_loop(const GluedTriangulation& tri,
                                  const SingularCircle& circle) {
  SingularityReport rep = compute_singularities(tri);
  std::vector<int32_t> want = circle.edge_classes;
  std::sort(want.begin(), want.end());
  bool found = false;
  for (const SingularCircle& c : rep.circles)
    if (c.edge_classes == want) found = true;
  if (!found || want.empty() || want.size() > 2)
    throw NotALoop("not a singular circle of this triangulation");

  Skeleton sk = compute_skeleton(tri);
  struct Slot {
    int t, f, a, b;
  };
  auto slots_of = [&](int eclass) {
    std::vector<Slot> out;
    for (int t = 0; t < tri.size(); ++t)
      for (int f = 0; f < 4; ++f) {
        if (tri.is_glued(t, f)) continue;
        for (int a = 0; a < 4; ++a) {
          if (a == f) continue;
          for (int b = a + 1; b < 4; ++b)
            if (b != f && sk.eclass(t, edge_index(a, b)) == eclass)
              out.push_back({t, f, a, b});
        }
      }
    return out;
  };

  GluedTriangulation work = tri;

  if (want.size() == 1) {
    // Cap the loop with a cone: a tetrahedron folded along 2<->3 is a cone
    // over a disk whose boundary circle is the merged edge (2,3); seating its
    // face {1,2,3} on a boundary triangle identifies that circle with the
    // loop and folds the triangle's other two edges together.
    std::vector<Slot> slots = slots_of(want[0]);
    if (slots.empty()) throw NotALoop("singular circle is not on the boundary");
    Slot s = slots.front();
    if (sk.vclass(s.t, s.a) != sk.vclass(s.t, s.b))
      throw NotALoop("circle edge is not a loop");
    int w = -1;
    for (int x = 0; x < 4; ++x)
      if (x != s.f && x != s.a && x != s.b) w = x;
    BoundaryLabel label = work.boundary_label(s.t, s.f);
    int X = work.add_tetrahedron();
    work.glue(X, 3, X, 2, Perm4(0, 1, 3, 2));
    work.glue(X, 0, s.t, s.f, Perm4(s.f, w, s.a, s.b));
    work.set_boundary_label(X, 1, label);
    return desingularize_at_slot(std::move(work), s.t, s.a);
  }

  // Two-edge circle: a bridge tetrahedron glued onto one boundary face at
  // each edge identifies the two edges endpoint-consistently, closing the
  // circle into a single loop pair; both endpoints are then stretched apart.
  std::vector<Slot> s1 = slots_of(want[0]);
  std::vector<Slot> s2 = slots_of(want[1]);
  for (const Slot& a : s1)
    for (const Slot& b : s2) {
      if (a.t == b.t && a.f == b.f) continue;
      int ua = std::min(sk.vclass(a.t, a.a), sk.vclass(a.t, a.b));
      int va = std::max(sk.vclass(a.t, a.a), sk.vclass(a.t, a.b));
      int ub = std::min(sk.vclass(b.t, b.a), sk.vclass(b.t, b.b));
      int vb = std::max(sk.vclass(b.t, b.a), sk.vclass(b.t, b.b));
      if (ua == va || ua != ub || va != vb) continue;
      auto u_first = [&](const Slot& s) {
        return sk.vclass(s.t, s.a) == ua ? std::pair{s.a, s.b} : std::pair{s.b, s.a};
      };
      auto [u1, v1] = u_first(a);
      auto [u2, v2] = u_first(b);
      int w1 = -1, w2 = -1;
      for (int x = 0; x < 4; ++x) {
        if (x != a.f && x != u1 && x != v1) w1 = x;
        if (x != b.f && x != u2 && x != v2) w2 = x;
      }
      BoundaryLabel label1 = work.boundary_label(a.t, a.f);
      BoundaryLabel label2 = work.boundary_label(b.t, b.f);
      int X = work.add_tetrahedron();
      work.glue(X, 3, a.t, a.f, Perm4(u1, v1, w1, a.f));
      work.glue(X, 2, b.t, b.f, Perm4(u2, v2, b.f, w2));
      work.set_boundary_label(X, 0, label1);
      work.set_boundary_label(X, 1, label2);
      work = desingularize_at_slot(std::move(work), a.t, u1);
      return desingularize_at_slot(std::move(work), a.t, v1);
    }
  throw NotALoop("circle edges do not bound a joinable pair of faces");
}

GluedTriangulation destabilize(const NormalContext& ctx,
                               const std::vector<Integer>& v) {
  if (classify_surface(ctx, v) != SurfaceClass::VerticalAnnulus)
    throw NotAVerticalAnnulus("surface is not a vertical annulus");
  GluedTriangulation work = crush(ctx, v).tri;

  auto next_circle = [&](size_t edges, SingularCircle* out) {
    SingularityReport rep = compute_singularities(work);
    for (const SingularCircle& c : rep.circles)
      if (c.edge_classes.size() == edges) {
        *out = c;
        return true;
      }
    return false;
  };

  SingularCircle c;
  for (size_t edges : {size_t{1}, size_t{2}}) {
    int guard = 0;
    while (next_circle(edges, &c)) {
      if (++guard > 16)
        throw TriangulationError("singular circles persist after destabilization");
      work = eliminate_loop(work, c);
    }
  }

  for (int guard = 0;; ++guard) {
    if (guard > 64)
      throw TriangulationError("singular vertices persist after destabilization");
    Skeleton sk = compute_skeleton(work);
    int p = -1;
    for (int x = 0; x < sk.vertex_count && p < 0; ++x)
      if (sk.link_type[x] == VertexLinkType::Singular) p = x;
    if (p < 0) break;
    work = desingularize(work, p);
  }

  return prune_to_knot(work);
}

}  // namespace vknot
