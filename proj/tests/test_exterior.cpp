#include "vknot/exterior.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <string>

#include "doctest.h"
#include "vknot/gauss.hpp"
#include "vknot/tricomplex.hpp"

using namespace vknot;

namespace {

std::string random_code_text(std::mt19937& rng, int c) {
  std::vector<int> slots(2 * c);
  for (int i = 0; i < 2 * c; ++i) slots[i] = i / 2 + 1;
  std::shuffle(slots.begin(), slots.end(), rng);
  std::map<int, bool> first_over, positive;
  for (int k = 1; k <= c; ++k) {
    first_over[k] = rng() & 1;
    positive[k] = rng() & 1;
  }
  std::map<int, int> seen;
  std::string out;
  for (int i = 0; i < 2 * c; ++i) {
    int k = slots[i];
    bool over = seen[k]++ ? !first_over[k] : first_over[k];
    bool lr = over ? positive[k] : !positive[k];
    if (!out.empty()) out += ' ';
    out += over ? '+' : '-';
    out += lr ? '>' : '<';
    out += std::to_string(k);
  }
  return out;
}

// Every knot vertex class should meet exactly two knot edge classes.
void check_knot_cycle(const ThickenedProduct& prod) {
  Skeleton sk = compute_skeleton(prod.tri);
  std::set<int32_t> kverts(prod.knot_vertices.begin(), prod.knot_vertices.end());
  std::set<int32_t> kedges(prod.knot_edges.begin(), prod.knot_edges.end());
  REQUIRE(kverts.size() == prod.knot_vertices.size());
  REQUIRE(kedges.size() == prod.knot_edges.size());
  REQUIRE(kverts.size() == kedges.size());
  std::map<int32_t, int> incidence;
  std::set<int32_t> done;
  for (int t = 0; t < prod.tri.size(); ++t)
    for (int e = 0; e < 6; ++e) {
      int ec = sk.eclass(t, e);
      if (!kedges.count(ec) || !done.insert(ec).second) continue;
      int a = sk.vclass(t, kEdgeVertices[e][0]);
      int b = sk.vclass(t, kEdgeVertices[e][1]);
      REQUIRE(kverts.count(a));
      REQUIRE(kverts.count(b));
      ++incidence[a];
      ++incidence[b];
      CHECK(!sk.edge_on_boundary[ec]);
    }
  REQUIRE(done.size() == kedges.size());
  for (int32_t v : kverts) {
    CHECK(incidence[v] == 2);
    CHECK(!sk.vertex_on_boundary[v]);
  }
}

struct CensusSummary {
  std::vector<long long> copy_genus;  // genus of components carrying copy labels
  std::vector<long long> knot_genus;  // genus of components carrying KnotTorus
};

CensusSummary summarize(const GluedTriangulation& tri) {
  CensusSummary out;
  for (const BoundaryComponent& bc : boundary_census(tri)) {
    bool copy = bc.has_label(BoundaryLabel::SurfaceCopy0) ||
                bc.has_label(BoundaryLabel::SurfaceCopy1);
    bool knot = bc.has_label(BoundaryLabel::KnotTorus);
    REQUIRE(copy != knot);  // labels never mix across the drilled torus
    REQUIRE(bc.labels.size() == 1);
    (copy ? out.copy_genus : out.knot_genus).push_back(bc.genus);
  }
  std::sort(out.copy_genus.begin(), out.copy_genus.end());
  return out;
}

}  // namespace

TEST_CASE("thickened product of the virtual trefoil") {
  CanonicalSurface cs = build_canonical_surface(parse_gauss_code("+>1 -<2 -<1 +>2"));
  ThickenedProduct prod = build_thickened_product(cs);
  CHECK(prod.tri.size() == 9 * 16);
  std::string reason;
  CHECK_MESSAGE(is_valid_triangulation(prod.tri, &reason), reason);

  auto census = boundary_census(prod.tri);
  REQUIRE(census.size() == 2);
  std::set<BoundaryLabel> seen;
  for (const BoundaryComponent& bc : census) {
    CHECK(bc.genus == 1);
    CHECK(bc.face_count == 16);  // one boundary face per surface triangle
    REQUIRE(bc.labels.size() == 1);
    seen.insert(bc.labels[0]);
  }
  CHECK(seen == std::set<BoundaryLabel>{BoundaryLabel::SurfaceCopy0,
                                        BoundaryLabel::SurfaceCopy1});
  CHECK(prod.knot_vertices.size() == cs.knot.size());
  check_knot_cycle(prod);
}

TEST_CASE("thickened product over random codes") {
  std::mt19937 rng(20240517);
  for (int iter = 0; iter < 25; ++iter) {
    int c = 1 + static_cast<int>(rng() % 5);
    std::string text = random_code_text(rng, c);
    CAPTURE(text);
    CanonicalSurface cs = build_canonical_surface(parse_gauss_code(text));
    ThickenedProduct prod = build_thickened_product(cs);
    CHECK(prod.tri.size() == 72 * c);
    std::string reason;
    CHECK_MESSAGE(is_valid_triangulation(prod.tri, &reason), reason);
    int ncomp = 0;
    tetrahedron_components(prod.tri, &ncomp);
    CHECK(ncomp == 1);
    auto census = boundary_census(prod.tri);
    REQUIRE(census.size() == 2);
    for (const BoundaryComponent& bc : census) CHECK(bc.genus == cs.genus);
    check_knot_cycle(prod);
  }
}

TEST_CASE("canonical exterior of a curl") {
  ExteriorBuildStats stats;
  GluedTriangulation ext = build_canonical_exterior(parse_gauss_code("+>1 -<1"), &stats);
  CHECK(stats.crossings == 1);
  CHECK(stats.genus == 0);
  CHECK(stats.product_tets == 72);
  CHECK(stats.removed_tets > 0);
  CHECK(ext.size() == 41472 - stats.removed_tets);

  std::string reason;
  CHECK_MESSAGE(is_valid_triangulation(ext, &reason), reason);
  int ncomp = 0;
  tetrahedron_components(ext, &ncomp);
  CHECK(ncomp == 1);

  CensusSummary cs = summarize(ext);
  CHECK(cs.copy_genus == std::vector<long long>{0, 0});
  CHECK(cs.knot_genus == std::vector<long long>{1});

  // chi of a compact orientable 3-manifold is half that of its boundary.
  Skeleton sk = compute_skeleton(ext);
  CHECK(sk.euler_characteristic == 2);
}

TEST_CASE("canonical exterior of the virtual trefoil") {
  ExteriorBuildStats stats;
  GluedTriangulation ext =
      build_canonical_exterior(parse_gauss_code("+>1 -<2 -<1 +>2"), &stats);
  CHECK(stats.genus == 1);
  CHECK(stats.product_tets == 144);
  CHECK(ext.size() == 82944 - stats.removed_tets);

  std::string reason;
  CHECK_MESSAGE(is_valid_triangulation(ext, &reason), reason);
  int ncomp = 0;
  tetrahedron_components(ext, &ncomp);
  CHECK(ncomp == 1);

  CensusSummary cs = summarize(ext);
  CHECK(cs.copy_genus == std::vector<long long>{1, 1});
  CHECK(cs.knot_genus == std::vector<long long>{1});

  Skeleton sk = compute_skeleton(ext);
  CHECK(sk.euler_characteristic == 0);
}

TEST_CASE("canonical exterior of the classical trefoil") {
  ExteriorBuildStats stats;
  GluedTriangulation ext = build_canonical_exterior(
      parse_gauss_code("+>1 -<2 +>3 -<1 +>2 -<3"), &stats);
  CHECK(stats.genus == 0);
  CHECK(stats.product_tets == 216);

  std::string reason;
  CHECK_MESSAGE(is_valid_triangulation(ext, &reason), reason);

  CensusSummary cs = summarize(ext);
  CHECK(cs.copy_genus == std::vector<long long>{0, 0});
  CHECK(cs.knot_genus == std::vector<long long>{1});

  Skeleton sk = compute_skeleton(ext);
  CHECK(sk.euler_characteristic == 2);
}
