#include <vector>

#include "doctest.h"
#include "vknot/normal.hpp"

using namespace vknot;

namespace {

GluedTriangulation two_tet(int glued_faces) {
  GluedTriangulation tri;
  tri.add_tetrahedron();
  tri.add_tetrahedron();
  for (int f = 0; f < glued_faces; ++f) tri.glue(0, f, 1, f, Perm4::identity());
  return tri;
}

std::vector<Integer> vertex_link_vector(const GluedTriangulation& tri,
                                        const Skeleton& sk, int vclass) {
  std::vector<Integer> v(7 * tri.size(), 0);
  for (int t = 0; t < tri.size(); ++t)
    for (int a = 0; a < 4; ++a)
      if (sk.vclass(t, a) == vclass) v[7 * t + a] += 1;
  return v;
}

}  // namespace

TEST_CASE("quad pairing") {
  CHECK(quad_pairing(0, 1) == 0);
  CHECK(quad_pairing(2, 3) == 0);
  CHECK(quad_pairing(0, 2) == 1);
  CHECK(quad_pairing(1, 3) == 1);
  CHECK(quad_pairing(0, 3) == 2);
  CHECK(quad_pairing(1, 2) == 2);
}

TEST_CASE("matching system shape") {
  CHECK(build_matching_system(two_tet(0)).rows.empty());
  MatchingSystem one = build_matching_system(two_tet(1));
  CHECK(one.rows.size() == 3);
  for (const auto& row : one.rows) CHECK(row.size() == 4);
  CHECK(build_matching_system(two_tet(4)).rows.size() == 12);
}

TEST_CASE("vertex links satisfy the matching equations and calibrate Euler") {
  std::vector<GluedTriangulation> family;
  family.push_back(two_tet(0));
  family.push_back(two_tet(1));
  family.push_back(two_tet(2));
  family.push_back(two_tet(4));
  {
    GluedTriangulation snapped;
    snapped.add_tetrahedron();
    snapped.glue(0, 3, 0, 2, Perm4(0, 1, 3, 2));
    family.push_back(snapped);
  }
  {
    GluedTriangulation lst;
    lst.add_tetrahedron();
    lst.glue(0, 0, 0, 1, Perm4(1, 2, 3, 0));
    family.push_back(lst);
  }
  {
    GluedTriangulation tri;
    tri.add_tetrahedron();
    family.push_back(barycentric_subdivide(tri).tri);
  }
  family.push_back(barycentric_subdivide(two_tet(4)).tri);

  for (const GluedTriangulation& tri : family) {
    NormalContext ctx = build_normal_context(tri);
    for (int v = 0; v < ctx.sk.vertex_count; ++v) {
      std::vector<Integer> link = vertex_link_vector(ctx.tri, ctx.sk, v);
      CHECK(satisfies_matching(ctx.system, link));
      CHECK(classify_surface(ctx, link) == SurfaceClass::VertexLink);
      Rational chi = surface_euler(ctx, link);
      if (ctx.sk.link_type[v] == VertexLinkType::Sphere) {
        CHECK(chi == 2);
        CHECK(surface_closed(ctx, link));
      } else if (ctx.sk.link_type[v] == VertexLinkType::Disk) {
        CHECK(chi == 1);
        CHECK(!surface_closed(ctx, link));
      }
    }
  }
}

TEST_CASE("doubled quadrilateral in the two-tet double is a sphere") {
  NormalContext ctx = build_normal_context(two_tet(4));
  for (int k = 0; k < 3; ++k) {
    std::vector<Integer> v(14, 0);
    v[4 + k] = 1;
    v[7 + 4 + k] = 1;
    CHECK(satisfies_matching(ctx.system, v));
    CHECK(satisfies_quad_condition(2, v));
    CHECK(surface_closed(ctx, v));
    CHECK(surface_euler(ctx, v) == 2);
    CHECK(classify_surface(ctx, v) == SurfaceClass::TwoSphere);
  }
}

TEST_CASE("quad pairs in the two-face double: one annulus, two meridian disks") {
  // Two tetrahedra glued along faces 0 and 1 form a solid torus.  The type-0
  // quad pair runs parallel to the interface (an annulus); the other two
  // types cut across it (meridian disks).
  GluedTriangulation tri = two_tet(2);
  tri.set_boundary_label(0, 2, BoundaryLabel::SurfaceCopy0);
  tri.set_boundary_label(0, 3, BoundaryLabel::SurfaceCopy0);
  tri.set_boundary_label(1, 2, BoundaryLabel::SurfaceCopy1);
  tri.set_boundary_label(1, 3, BoundaryLabel::SurfaceCopy1);
  NormalContext ctx = build_normal_context(tri);
  for (int k = 0; k < 3; ++k) {
    std::vector<Integer> v(14, 0);
    v[4 + k] = 1;
    v[7 + 4 + k] = 1;
    CHECK(satisfies_matching(ctx.system, v));
    CHECK(!surface_closed(ctx, v));
    CHECK(boundary_arcs(ctx, v, BoundaryLabel::SurfaceCopy0) == 2);
    CHECK(boundary_arcs(ctx, v, BoundaryLabel::SurfaceCopy1) == 2);
    CHECK(boundary_arcs(ctx, v, BoundaryLabel::KnotTorus) == 0);
    if (k == 0) {
      CHECK(surface_euler(ctx, v) == 0);
      CHECK(classify_surface(ctx, v) == SurfaceClass::VerticalAnnulus);
    } else {
      CHECK(surface_euler(ctx, v) == 1);
      CHECK(classify_surface(ctx, v) == SurfaceClass::Other);
    }
  }
}

TEST_CASE("same-copy annulus with null-homologous boundary is not classicalizing") {
  // Same solid torus, but the whole boundary is one copy: the annulus pair's
  // two boundary curves are parallel, so their mod-2 class vanishes.
  GluedTriangulation tri = two_tet(2);
  for (int t = 0; t < 2; ++t)
    for (int f = 2; f < 4; ++f)
      tri.set_boundary_label(t, f, BoundaryLabel::SurfaceCopy0);
  NormalContext ctx = build_normal_context(tri);
  std::vector<Integer> v(14, 0);
  v[4] = 1;
  v[7 + 4] = 1;
  CHECK(surface_euler(ctx, v) == 0);
  CHECK(!boundary_curves_essential(ctx, v, BoundaryLabel::SurfaceCopy0));
  CHECK(classify_surface(ctx, v) == SurfaceClass::Other);
}

TEST_CASE("edge weights") {
  NormalContext ctx = build_normal_context(two_tet(2));
  std::vector<Integer> v(14, 0);
  v[4] = 1;      // q0 in tet 0
  v[7 + 4] = 1;  // q0 in tet 1
  CHECK(edge_weight(ctx, v, 0, 0, 1) == 0);
  CHECK(edge_weight(ctx, v, 0, 2, 3) == 0);
  CHECK(edge_weight(ctx, v, 0, 0, 2) == 1);
  CHECK(edge_weight(ctx, v, 0, 1, 3) == 1);
  v[0] = 2;  // triangles add to every edge at their corner
  CHECK(edge_weight(ctx, v, 0, 0, 1) == 2);
  CHECK(edge_weight(ctx, v, 0, 0, 2) == 3);
  CHECK(edge_weight(ctx, v, 0, 2, 3) == 0);
}

TEST_CASE("quad condition") {
  std::vector<Integer> v(14, 0);
  v[4] = 1;
  v[7 + 5] = 2;
  CHECK(satisfies_quad_condition(2, v));
  v[5] = 1;
  CHECK(!satisfies_quad_condition(2, v));
}

TEST_CASE("vertex witness verification") {
  NormalContext ctx = build_normal_context(two_tet(4));
  Skeleton& sk = ctx.sk;

  std::string reason;
  // Vertex links of the double are extreme rays.
  for (int v = 0; v < sk.vertex_count; ++v) {
    std::vector<Integer> link = vertex_link_vector(ctx.tri, sk, v);
    CHECK(verify_vertex_witness(ctx, link, &reason));
    CHECK(reason.empty());
  }

  // A sum of two vertex links is a solution but not extreme.
  std::vector<Integer> sum = vertex_link_vector(ctx.tri, sk, 0);
  std::vector<Integer> other = vertex_link_vector(ctx.tri, sk, 1);
  for (size_t i = 0; i < sum.size(); ++i) sum[i] += other[i];
  CHECK(satisfies_matching(ctx.system, sum));
  CHECK(!verify_vertex_witness(ctx, sum, &reason));
  CHECK(reason == "not an extreme ray of the solution cone");

  std::vector<Integer> zero(14, 0);
  CHECK(!verify_vertex_witness(ctx, zero, &reason));
  CHECK(reason == "zero vector");

  std::vector<Integer> negative(14, 0);
  negative[0] = -1;
  CHECK(!verify_vertex_witness(ctx, negative, &reason));
  CHECK(reason == "negative coordinate");

  std::vector<Integer> wrong_size(7, 0);
  CHECK(!verify_vertex_witness(ctx, wrong_size, &reason));

  // Entries beyond 2^(7n-1) are rejected even if they solve the system.
  std::vector<Integer> huge = vertex_link_vector(ctx.tri, sk, 0);
  Integer big = 1;
  big <<= 14;
  for (Integer& x : huge) x *= big;
  CHECK(satisfies_matching(ctx.system, huge));
  CHECK(!verify_vertex_witness(ctx, huge, &reason));
  CHECK(reason == "coordinate exceeds the vertex height bound");

  // Solutions violating the quadrilateral condition are rejected.
  std::vector<Integer> quads(14, 0);
  for (int k = 0; k < 3; ++k) quads[4 + k] = quads[7 + 4 + k] = 1;
  CHECK(satisfies_matching(ctx.system, quads));
  CHECK(!verify_vertex_witness(ctx, quads, &reason));
  CHECK(reason == "quadrilateral condition violated");
}
