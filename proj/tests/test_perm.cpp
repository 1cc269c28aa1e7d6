#include <vector>

#include "doctest.h"
#include "vknot/perm.hpp"

using vknot::Perm4;
using vknot::edge_index;
using vknot::kEdgeVertices;

TEST_CASE("identity and raw round trip") {
  Perm4 id = Perm4::identity();
  for (int i = 0; i < 4; ++i) CHECK(id[i] == i);
  CHECK(Perm4(id.raw()) == id);
  CHECK(id.is_permutation());
  CHECK(id.sign() == 1);
}

TEST_CASE("composition applies right factor first") {
  Perm4 p(1, 2, 3, 0);
  Perm4 q(0, 1, 3, 2);
  Perm4 r = p * q;
  for (int i = 0; i < 4; ++i) CHECK(r[i] == p[q[i]]);
}

TEST_CASE("group properties over all permutations") {
  std::vector<Perm4> all;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c)
        for (int d = 0; d < 4; ++d) {
          Perm4 p(a, b, c, d);
          if (p.is_permutation()) all.push_back(p);
        }
  REQUIRE(all.size() == 24);
  for (Perm4 p : all) {
    CHECK(p * p.inverse() == Perm4::identity());
    CHECK(p.inverse() * p == Perm4::identity());
    CHECK(p.sign() * p.inverse().sign() == 1);
  }
  for (Perm4 p : all)
    for (Perm4 q : all) CHECK((p * q).sign() == p.sign() * q.sign());
}

TEST_CASE("transpositions") {
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      if (i == j) continue;
      Perm4 t = Perm4::transposition(i, j);
      CHECK(t[i] == j);
      CHECK(t[j] == i);
      CHECK(t.sign() == -1);
      for (int k = 0; k < 4; ++k)
        if (k != i && k != j) CHECK(t[k] == k);
    }
}

TEST_CASE("edge indexing is consistent") {
  for (int e = 0; e < 6; ++e) {
    auto [a, b] = kEdgeVertices[e];
    CHECK(edge_index(a, b) == e);
    CHECK(edge_index(b, a) == e);
  }
}
