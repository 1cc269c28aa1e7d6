#include <algorithm>
#include <set>

#include "doctest.h"
#include "vknot/tricomplex.hpp"

using namespace vknot;

namespace {

bool same_triangulation(const GluedTriangulation& a, const GluedTriangulation& b) {
  if (a.size() != b.size()) return false;
  for (int t = 0; t < a.size(); ++t)
    for (int f = 0; f < 4; ++f) {
      if (a.tets[t].adj[f] != b.tets[t].adj[f]) return false;
      if (a.is_glued(t, f)) {
        if (a.tets[t].gluing[f] != b.tets[t].gluing[f]) return false;
      } else if (a.tets[t].label[f] != b.tets[t].label[f]) {
        return false;
      }
    }
  return true;
}

GluedTriangulation one_tet() {
  GluedTriangulation tri;
  tri.add_tetrahedron();
  return tri;
}

// Two tetrahedra glued along all four faces by the identity: a closed
// 3-manifold (the double of a ball).
GluedTriangulation two_tet_double() {
  GluedTriangulation tri;
  tri.add_tetrahedron();
  tri.add_tetrahedron();
  for (int f = 0; f < 4; ++f) tri.glue(0, f, 1, f, Perm4::identity());
  return tri;
}

}  // namespace

TEST_CASE("single tetrahedron skeleton") {
  GluedTriangulation tri = one_tet();
  Skeleton sk = compute_skeleton(tri);
  CHECK(sk.vertex_count == 4);
  CHECK(sk.edge_count == 6);
  CHECK(sk.face_count == 4);
  CHECK(sk.euler_characteristic == 1);
  CHECK(sk.valid_edges);
  for (int v = 0; v < 4; ++v) {
    CHECK(sk.vertex_on_boundary[v]);
    CHECK(sk.link_type[v] == VertexLinkType::Disk);
  }
  for (int e = 0; e < 6; ++e) {
    CHECK(sk.edge_on_boundary[e]);
    CHECK(sk.edge_degree[e] == 1);
  }
  CHECK(is_valid_triangulation(tri));

  auto bc = boundary_components(tri);
  REQUIRE(bc.size() == 1);
  CHECK(bc[0].face_count == 4);
  CHECK(bc[0].euler_characteristic == 2);
  CHECK(bc[0].genus == 0);
  REQUIRE(bc[0].labels.size() == 1);
  CHECK(bc[0].labels[0] == BoundaryLabel::Other);
}

TEST_CASE("two tetrahedra glued along one face") {
  GluedTriangulation tri;
  tri.add_tetrahedron();
  tri.add_tetrahedron();
  tri.glue(0, 0, 1, 0, Perm4::identity());
  Skeleton sk = compute_skeleton(tri);
  CHECK(sk.vertex_count == 5);
  CHECK(sk.edge_count == 9);
  CHECK(sk.face_count == 7);
  CHECK(sk.euler_characteristic == 1);
  auto bc = boundary_components(tri);
  REQUIRE(bc.size() == 1);
  CHECK(bc[0].face_count == 6);
  CHECK(bc[0].euler_characteristic == 2);
}

TEST_CASE("gluing validation") {
  GluedTriangulation tri = one_tet();
  CHECK_THROWS_AS(tri.glue(0, 0, 0, 0, Perm4::identity()), TriangulationError);
  // permutation must carry face to face
  CHECK_THROWS_AS(tri.glue(0, 0, 0, 1, Perm4::identity()), TriangulationError);
  tri.add_tetrahedron();
  tri.glue(0, 0, 1, 0, Perm4::identity());
  CHECK_THROWS_AS(tri.glue(0, 0, 1, 1, Perm4::transposition(0, 1)),
                  TriangulationError);
}

TEST_CASE("closed double of the ball") {
  GluedTriangulation tri = two_tet_double();
  Skeleton sk = compute_skeleton(tri);
  CHECK(sk.vertex_count == 4);
  CHECK(sk.edge_count == 6);
  CHECK(sk.face_count == 4);
  CHECK(sk.euler_characteristic == 0);
  CHECK(is_valid_triangulation(tri));
  for (int v = 0; v < sk.vertex_count; ++v) {
    CHECK(!sk.vertex_on_boundary[v]);
    CHECK(sk.link_type[v] == VertexLinkType::Sphere);
  }
  for (int e = 0; e < sk.edge_count; ++e) CHECK(sk.edge_degree[e] == 2);
  CHECK(boundary_components(tri).empty());
  CHECK(boundary_census(tri).empty());
}

TEST_CASE("snapped ball: two faces of one tetrahedron identified") {
  // Face {0,1,2} onto face {0,1,3}, folding across the edge (0,1).
  GluedTriangulation tri = one_tet();
  tri.glue(0, 3, 0, 2, Perm4(0, 1, 3, 2));
  Skeleton sk = compute_skeleton(tri);
  CHECK(sk.valid_edges);
  CHECK(sk.vertex_count == 3);
  CHECK(sk.edge_count == 4);
  CHECK(sk.face_count == 3);
  CHECK(sk.euler_characteristic == 1);
  for (int v = 0; v < sk.vertex_count; ++v)
    CHECK(sk.link_type[v] == VertexLinkType::Disk);
  auto bc = boundary_components(tri);
  REQUIRE(bc.size() == 1);
  CHECK(bc[0].face_count == 2);
  CHECK(bc[0].euler_characteristic == 2);
}

TEST_CASE("degree-one internal edge") {
  // Face {1,2,3} onto face {0,2,3}: the edge (2,3) becomes internal of
  // degree one.
  GluedTriangulation tri = one_tet();
  tri.glue(0, 0, 0, 1, Perm4(1, 0, 2, 3));
  Skeleton sk = compute_skeleton(tri);
  CHECK(sk.valid_edges);
  CHECK(sk.vertex_count == 3);
  CHECK(sk.edge_count == 4);
  int e23 = sk.eclass(0, edge_index(2, 3));
  CHECK(sk.edge_degree[e23] == 1);
  CHECK(!sk.edge_on_boundary[e23]);
  CHECK(is_valid_triangulation(tri));
  auto bc = boundary_components(tri);
  REQUIRE(bc.size() == 1);
  CHECK(bc[0].euler_characteristic == 2);
}

TEST_CASE("edge identified with itself reversed is invalid") {
  GluedTriangulation tri = one_tet();
  // Face {1,2,3} onto {0,3,2}: edge (2,3) maps to (3,2).
  tri.glue(0, 0, 0, 1, Perm4(1, 0, 3, 2));
  Skeleton sk = compute_skeleton(tri);
  CHECK(!sk.valid_edges);
  std::string reason;
  CHECK(!is_valid_triangulation(tri, &reason));
  CHECK(reason == "edge identified with itself in reverse");
}

TEST_CASE("unglue and relabel") {
  GluedTriangulation tri = two_tet_double();
  tri.unglue(0, 2, BoundaryLabel::KnotTorus);
  CHECK(!tri.is_glued(0, 2));
  CHECK(!tri.is_glued(1, 2));
  CHECK(tri.boundary_label(0, 2) == BoundaryLabel::KnotTorus);
  CHECK(tri.boundary_label(1, 2) == BoundaryLabel::KnotTorus);
  auto bc = boundary_components(tri);
  REQUIRE(bc.size() == 1);
  CHECK(bc[0].face_count == 2);
  CHECK(bc[0].euler_characteristic == 2);
  CHECK(bc[0].has_label(BoundaryLabel::KnotTorus));
  CHECK(!bc[0].has_label(BoundaryLabel::Other));
}

TEST_CASE("text format round trip") {
  GluedTriangulation tri = two_tet_double();
  tri.unglue(0, 2, BoundaryLabel::SurfaceCopy1);
  std::string text = to_text(tri);
  GluedTriangulation back = from_text(text);
  CHECK(same_triangulation(tri, back));
  CHECK(to_text(back) == text);

  GluedTriangulation single = one_tet();
  single.set_boundary_label(0, 3, BoundaryLabel::KnotTorus);
  CHECK(same_triangulation(single, from_text(to_text(single))));
}

TEST_CASE("text format rejects malformed input") {
  CHECK_THROWS_AS(from_text("1\nb:Other b:Other b:Other"), TriangulationError);
  CHECK_THROWS_AS(from_text("1\nb:Bogus b:Other b:Other b:Other"),
                  TriangulationError);
  CHECK_THROWS_AS(from_text("1\ng:0:0:123 b:Other b:Other b:Other"),
                  TriangulationError);
  // non-involutive table
  CHECK_THROWS_AS(
      from_text("2\ng:1:0:123 b:Other b:Other b:Other\n"
                "b:Other b:Other b:Other b:Other"),
      TriangulationError);
}

TEST_CASE("barycentric subdivision of one tetrahedron") {
  GluedTriangulation tri = one_tet();
  tri.set_boundary_label(0, 0, BoundaryLabel::KnotTorus);
  SubdivisionResult sub = barycentric_subdivide(tri);
  CHECK(sub.tri.size() == 24);
  CHECK(is_valid_triangulation(sub.tri));
  Skeleton sk = compute_skeleton(sub.tri);
  CHECK(sk.vertex_count == 15);
  CHECK(sk.edge_count == 50);
  CHECK(sk.face_count == 60);
  CHECK(sk.euler_characteristic == 1);

  int by_dim[4] = {0, 0, 0, 0};
  for (const SimplexRef& r : sub.vertex_origin) {
    REQUIRE(r.dim >= 0);
    by_dim[r.dim]++;
  }
  CHECK(by_dim[0] == 4);
  CHECK(by_dim[1] == 6);
  CHECK(by_dim[2] == 4);
  CHECK(by_dim[3] == 1);

  // The center vertex is interior with a sphere link.
  for (int v = 0; v < sk.vertex_count; ++v) {
    if (sub.vertex_origin[v].dim == 3) {
      CHECK(!sk.vertex_on_boundary[v]);
      CHECK(sk.link_type[v] == VertexLinkType::Sphere);
    } else {
      CHECK(sk.vertex_on_boundary[v]);
      CHECK(sk.link_type[v] == VertexLinkType::Disk);
    }
  }

  // Boundary labels are inherited: one original face carried KnotTorus.
  int knot = 0, other = 0;
  for (int t = 0; t < sub.tri.size(); ++t)
    for (int f = 0; f < 4; ++f) {
      if (sub.tri.is_glued(t, f)) continue;
      (sub.tri.boundary_label(t, f) == BoundaryLabel::KnotTorus ? knot : other)++;
    }
  CHECK(knot == 6);
  CHECK(other == 18);

  auto bc = boundary_components(sub.tri);
  REQUIRE(bc.size() == 1);
  CHECK(bc[0].face_count == 24);
  CHECK(bc[0].euler_characteristic == 2);
}

TEST_CASE("barycentric subdivision of a closed manifold") {
  GluedTriangulation tri = two_tet_double();
  SubdivisionResult sub = barycentric_subdivide(tri);
  CHECK(sub.tri.size() == 48);
  CHECK(is_valid_triangulation(sub.tri));
  Skeleton sk = compute_skeleton(sub.tri);
  CHECK(sk.vertex_count == 16);
  CHECK(sk.euler_characteristic == 0);
  for (int v = 0; v < sk.vertex_count; ++v)
    CHECK(sk.link_type[v] == VertexLinkType::Sphere);
}

TEST_CASE("removal turns interface faces into boundary") {
  GluedTriangulation tri;
  tri.add_tetrahedron();
  tri.add_tetrahedron();
  tri.glue(0, 0, 1, 0, Perm4::identity());
  std::vector<char> remove = {0, 1};
  RemovalResult res = remove_tetrahedra(tri, remove, [](int, int) {
    return BoundaryLabel::SurfaceCopy0;
  });
  CHECK(res.tri.size() == 1);
  CHECK(res.old_to_new[0] == 0);
  CHECK(res.old_to_new[1] == -1);
  CHECK(res.new_to_old == std::vector<int32_t>{0});
  CHECK(!res.tri.is_glued(0, 0));
  CHECK(res.tri.boundary_label(0, 0) == BoundaryLabel::SurfaceCopy0);
}

TEST_CASE("components and filtering") {
  GluedTriangulation tri;
  tri.add_tetrahedron();
  tri.add_tetrahedron();
  tri.add_tetrahedron();
  tri.glue(0, 0, 1, 0, Perm4::identity());
  int count = 0;
  auto comp = tetrahedron_components(tri, &count);
  CHECK(count == 2);
  CHECK(comp == std::vector<int32_t>{0, 0, 1});
  GluedTriangulation kept = keep_components(tri, {0, 1});
  CHECK(kept.size() == 1);
  GluedTriangulation kept2 = keep_components(tri, {1, 0});
  CHECK(kept2.size() == 2);
  CHECK(kept2.is_glued(0, 0));
}

TEST_CASE("pinched boundary vertex detected by the census") {
  // In a subdivided closed manifold, find two internal faces sharing exactly
  // one vertex and no edge; cutting both open leaves two boundary pillows
  // meeting at a pinched vertex.
  GluedTriangulation tri = barycentric_subdivide(two_tet_double()).tri;
  Skeleton sk = compute_skeleton(tri);

  struct FaceInfo {
    int t = -1, f = -1;
    std::set<int> vs, es;
  };
  std::vector<FaceInfo> info(sk.face_count);
  for (int t = 0; t < tri.size(); ++t)
    for (int f = 0; f < 4; ++f) {
      int c = sk.fclass(t, f);
      if (info[c].t >= 0) continue;
      info[c].t = t;
      info[c].f = f;
      for (int a = 0; a < 4; ++a)
        if (a != f) info[c].vs.insert(sk.vclass(t, a));
      for (int e = 0; e < 6; ++e) {
        auto [a, b] = kEdgeVertices[e];
        if (a != f && b != f) info[c].es.insert(sk.eclass(t, e));
      }
    }

  bool found = false;
  for (int i = 0; i < sk.face_count && !found; ++i)
    for (int j = i + 1; j < sk.face_count && !found; ++j) {
      std::vector<int> shared_v, shared_e;
      std::set_intersection(info[i].vs.begin(), info[i].vs.end(),
                            info[j].vs.begin(), info[j].vs.end(),
                            std::back_inserter(shared_v));
      std::set_intersection(info[i].es.begin(), info[i].es.end(),
                            info[j].es.begin(), info[j].es.end(),
                            std::back_inserter(shared_e));
      if (shared_v.size() == 1 && shared_e.empty()) {
        tri.unglue(info[i].t, info[i].f);
        tri.unglue(info[j].t, info[j].f);
        found = true;
      }
    }
  REQUIRE(found);

  auto bc = boundary_components(tri);
  REQUIRE(bc.size() == 2);
  CHECK(bc[0].face_count == 2);
  CHECK(bc[1].face_count == 2);
  CHECK(bc[0].euler_characteristic == 2);
  CHECK(bc[1].euler_characteristic == 2);
  CHECK_THROWS_AS(boundary_census(tri), SingularBoundary);
}
