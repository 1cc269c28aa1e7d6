#include "vknot/normal.hpp"

#include <algorithm>
#include <map>

#include "vknot/linalg.hpp"

namespace vknot {

const char* to_string(SurfaceClass c) {
  switch (c) {
    case SurfaceClass::VertexLink: return "VertexLink";
    case SurfaceClass::TwoSphere: return "TwoSphere";
    case SurfaceClass::VerticalAnnulus: return "VerticalAnnulus";
    case SurfaceClass::ClassicalizationAnnulus: return "ClassicalizationAnnulus";
    case SurfaceClass::Other: return "Other";
  }
  return "?";
}

MatchingSystem build_matching_system(const GluedTriangulation& tri) {
  MatchingSystem sys;
  sys.n = tri.size();
  for (int t = 0; t < tri.size(); ++t) {
    for (int f = 0; f < 4; ++f) {
      if (!tri.is_glued(t, f)) continue;
      int t2 = tri.tets[t].adj[f];
      Perm4 sigma = tri.tets[t].gluing[f];
      int f2 = sigma[f];
      // Each internal face contributes once.
      if (t2 < t || (t2 == t && f2 < f)) continue;
      for (int a = 0; a < 4; ++a) {
        if (a == f) continue;
        int a2 = sigma[a];
        std::map<int, int> coef;
        coef[7 * t + a] += 1;
        coef[7 * t + 4 + quad_pairing(a, f)] += 1;
        coef[7 * t2 + a2] -= 1;
        coef[7 * t2 + 4 + quad_pairing(a2, f2)] -= 1;
        std::vector<SparseTerm> terms;
        for (auto [col, c] : coef)
          if (c != 0) terms.push_back({col, c});
        if (!terms.empty()) sys.rows.push_back(std::move(terms));
      }
    }
  }
  return sys;
}

std::vector<std::vector<Integer>> dense_rows(const MatchingSystem& sys) {
  std::vector<std::vector<Integer>> out(sys.rows.size(),
                                        std::vector<Integer>(sys.cols(), 0));
  for (size_t i = 0; i < sys.rows.size(); ++i)
    for (const SparseTerm& term : sys.rows[i]) out[i][term.col] = term.coef;
  return out;
}

bool satisfies_matching(const MatchingSystem& sys, const std::vector<Integer>& v) {
  for (const auto& row : sys.rows) {
    Integer s = 0;
    for (const SparseTerm& term : row) s += term.coef * v[term.col];
    if (s != 0) return false;
  }
  return true;
}

bool satisfies_quad_condition(int n, const std::vector<Integer>& v) {
  for (int t = 0; t < n; ++t) {
    int positive = 0;
    for (int k = 0; k < 3; ++k)
      if (v[7 * t + 4 + k] > 0) ++positive;
    if (positive > 1) return false;
  }
  return true;
}

NormalContext build_normal_context(GluedTriangulation tri) {
  NormalContext ctx;
  ctx.tri = std::move(tri);
  ctx.sk = compute_skeleton(ctx.tri);
  ctx.bs = boundary_structure(ctx.tri);
  ctx.system = build_matching_system(ctx.tri);

  // Euler weights.  Each elementary piece contributes
  //   1  -  sum over its sides (1 for a boundary face, 1/2 for an internal
  //   face, shared with the neighbouring piece)  +  sum over its corners of
  //   1/deg(edge), splitting each edge intersection point among the pieces
  //   meeting it.
  const int n = ctx.tri.size();
  ctx.chi.assign(7 * n, 0);
  auto face_side = [&](int t, int f) {
    return ctx.tri.is_glued(t, f) ? Rational(1, 2) : Rational(1);
  };
  auto corner_weight = [&](int t, int a, int b) {
    return Rational(1, ctx.sk.edge_degree[ctx.sk.eclass(t, edge_index(a, b))]);
  };
  for (int t = 0; t < n; ++t) {
    for (int a = 0; a < 4; ++a) {
      Rational w = 1;
      for (int f = 0; f < 4; ++f)
        if (f != a) w -= face_side(t, f);
      for (int x = 0; x < 4; ++x)
        if (x != a) w += corner_weight(t, a, x);
      ctx.chi[7 * t + a] = w;
    }
    for (int k = 0; k < 3; ++k) {
      Rational w = 1;
      for (int f = 0; f < 4; ++f) w -= face_side(t, f);
      for (int e = 0; e < 6; ++e) {
        auto [a, b] = kEdgeVertices[e];
        if (quad_pairing(a, b) != k) w += corner_weight(t, a, b);
      }
      ctx.chi[7 * t + 4 + k] = w;
    }
  }
  return ctx;
}

Rational surface_euler(const NormalContext& ctx, const std::vector<Integer>& v) {
  Rational chi = 0;
  for (size_t i = 0; i < v.size(); ++i)
    if (v[i] != 0) chi += ctx.chi[i] * Rational(v[i]);
  return chi;
}

namespace {

// Arcs of the surface on one face of one tetrahedron.
Integer face_arcs(const std::vector<Integer>& v, int t, int f) {
  Integer s = 0;
  for (int a = 0; a < 4; ++a)
    if (a != f) s += v[7 * t + a];
  for (int k = 0; k < 3; ++k) s += v[7 * t + 4 + k];
  return s;
}

}  // namespace

Integer boundary_arcs(const NormalContext& ctx, const std::vector<Integer>& v,
                      BoundaryLabel label) {
  Integer s = 0;
  for (const BoundaryStructure::Face& bf : ctx.bs.faces)
    if (ctx.tri.boundary_label(bf.tet, bf.face) == label)
      s += face_arcs(v, bf.tet, bf.face);
  return s;
}

bool surface_closed(const NormalContext& ctx, const std::vector<Integer>& v) {
  for (const BoundaryStructure::Face& bf : ctx.bs.faces)
    if (face_arcs(v, bf.tet, bf.face) != 0) return false;
  return true;
}

Integer edge_weight(const NormalContext& ctx, const std::vector<Integer>& v,
                    int t, int a, int b) {
  (void)ctx;
  Integer s = v[7 * t + a] + v[7 * t + b];
  for (int k = 0; k < 3; ++k)
    if (k != quad_pairing(a, b)) s += v[7 * t + 4 + k];
  return s;
}

bool boundary_curves_essential(const NormalContext& ctx,
                               const std::vector<Integer>& v, BoundaryLabel label) {
  const BoundaryStructure& bs = ctx.bs;
  auto labelled = [&](int face_index) {
    const BoundaryStructure::Face& bf = bs.faces[face_index];
    return ctx.tri.boundary_label(bf.tet, bf.face) == label;
  };

  // Graph on the fans of the labelled subsurface; edge parities are the
  // mod-2 edge weights of the surface.
  struct GraphEdge {
    int u, w;
    int parity;
  };
  std::vector<GraphEdge> edges;
  std::vector<std::vector<int>> at_fan(bs.fan_count);
  for (const BoundaryStructure::Edge& e : bs.edges) {
    if (!labelled(e.face_a) || !labelled(e.face_b)) continue;
    const BoundaryStructure::Face& fa = bs.faces[e.face_a];
    Integer w = edge_weight(ctx, v, fa.tet, e.a0, e.a1);
    int u = bs.fan_class[4 * e.face_a + e.a0];
    int x = bs.fan_class[4 * e.face_a + e.a1];
    at_fan[u].push_back(static_cast<int>(edges.size()));
    at_fan[x].push_back(static_cast<int>(edges.size()));
    edges.push_back({u, x, static_cast<int>(mpz_odd_p(w.get_mpz_t()))});
  }

  // Spanning forest with accumulated parities; any non-tree edge closing an
  // odd cycle exhibits a cycle of the subsurface that the boundary curves
  // cross an odd number of times.
  std::vector<int> state(bs.fan_count, -1);  // -1 unseen, else parity to root
  std::vector<char> used(edges.size(), 0);
  for (int start = 0; start < bs.fan_count; ++start) {
    if (state[start] >= 0 || at_fan[start].empty()) continue;
    state[start] = 0;
    std::vector<int> stack = {start};
    while (!stack.empty()) {
      int node = stack.back();
      stack.pop_back();
      for (int ei : at_fan[node]) {
        const GraphEdge& e = edges[ei];
        int other = e.u == node ? e.w : e.u;
        if (state[other] < 0) {
          used[ei] = 1;
          state[other] = state[node] ^ e.parity;
          stack.push_back(other);
        }
      }
    }
  }
  for (size_t ei = 0; ei < edges.size(); ++ei) {
    if (used[ei]) continue;
    const GraphEdge& e = edges[ei];
    if ((state[e.u] ^ state[e.w] ^ e.parity) & 1) return true;
  }
  return false;
}

SurfaceClass classify_surface(const NormalContext& ctx, const std::vector<Integer>& v) {
  bool zero = true, quads_zero = true;
  for (int t = 0; t < ctx.system.n && (zero || quads_zero); ++t) {
    for (int i = 0; i < 7; ++i) {
      if (v[7 * t + i] != 0) zero = false;
      if (i >= 4 && v[7 * t + i] != 0) quads_zero = false;
    }
  }
  if (zero) return SurfaceClass::Other;
  if (quads_zero) return SurfaceClass::VertexLink;

  Integer g = content(v);
  Rational chi = surface_euler(ctx, v);

  if (chi == 2 && g == 1 && surface_closed(ctx, v)) return SurfaceClass::TwoSphere;

  if (chi == 0 && g == 1 && !surface_closed(ctx, v)) {
    Integer knot = boundary_arcs(ctx, v, BoundaryLabel::KnotTorus);
    Integer other = boundary_arcs(ctx, v, BoundaryLabel::Other);
    if (knot == 0 && other == 0) {
      Integer c0 = boundary_arcs(ctx, v, BoundaryLabel::SurfaceCopy0);
      Integer c1 = boundary_arcs(ctx, v, BoundaryLabel::SurfaceCopy1);
      if (c0 > 0 && c1 > 0) return SurfaceClass::VerticalAnnulus;
      if ((c0 > 0) != (c1 > 0)) {
        BoundaryLabel side = c0 > 0 ? BoundaryLabel::SurfaceCopy0
                                    : BoundaryLabel::SurfaceCopy1;
        if (boundary_curves_essential(ctx, v, side))
          return SurfaceClass::ClassicalizationAnnulus;
      }
    }
  }
  return SurfaceClass::Other;
}

bool verify_vertex_witness(const NormalContext& ctx, const std::vector<Integer>& v,
                           std::string* reason) {
  auto fail = [&](const char* why) {
    if (reason) *reason = why;
    return false;
  };
  const int cols = ctx.system.cols();
  if (static_cast<int>(v.size()) != cols) return fail("wrong coordinate count");
  bool nonzero = false;
  for (const Integer& x : v) {
    if (x < 0) return fail("negative coordinate");
    if (x != 0) nonzero = true;
  }
  if (!nonzero) return fail("zero vector");

  // Height bound for vertex solutions.
  Integer bound = 1;
  bound <<= cols - 1;
  for (const Integer& x : v)
    if (x > bound) return fail("coordinate exceeds the vertex height bound");

  if (!satisfies_matching(ctx.system, v)) return fail("matching equations violated");
  if (!satisfies_quad_condition(ctx.system.n, v))
    return fail("quadrilateral condition violated");

  // v spans an extreme ray iff the matching rows, restricted to the columns
  // where v is positive, have corank exactly one.
  std::vector<int> support;
  for (int i = 0; i < cols; ++i)
    if (v[i] != 0) support.push_back(i);
  IncrementalRank acc(static_cast<int>(support.size()));
  for (const auto& row : ctx.system.rows) {
    std::vector<Rational> r(support.size(), 0);
    bool any = false;
    for (const SparseTerm& term : row) {
      auto it = std::lower_bound(support.begin(), support.end(), term.col);
      if (it != support.end() && *it == term.col) {
        r[it - support.begin()] = term.coef;
        any = true;
      }
    }
    if (any) acc.add_row(std::move(r));
    if (acc.rank() == static_cast<int>(support.size())) break;
  }
  if (acc.rank() != static_cast<int>(support.size()) - 1)
    return fail("not an extreme ray of the solution cone");
  if (reason) reason->clear();
  return true;
}

}  // namespace vknot
