#include "vknot/tricomplex.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <numeric>
#include <sstream>

namespace vknot {

const char* to_string(BoundaryLabel label) {
  switch (label) {
    case BoundaryLabel::SurfaceCopy0: return "SurfaceCopy0";
    case BoundaryLabel::SurfaceCopy1: return "SurfaceCopy1";
    case BoundaryLabel::KnotTorus: return "KnotTorus";
    case BoundaryLabel::Other: return "Other";
  }
  return "?";
}

void GluedTriangulation::glue(int t1, int f1, int t2, int f2, Perm4 perm) {
  if (!perm.is_permutation() || perm[f1] != f2)
    throw TriangulationError("gluing permutation does not map face to face");
  if (t1 == t2 && f1 == f2)
    throw TriangulationError("cannot glue a face to itself");
  if (is_glued(t1, f1) || is_glued(t2, f2))
    throw TriangulationError("face already glued");
  tets[t1].adj[f1] = t2;
  tets[t1].gluing[f1] = perm;
  tets[t2].adj[f2] = t1;
  tets[t2].gluing[f2] = perm.inverse();
}

void GluedTriangulation::unglue(int t, int f, BoundaryLabel label) {
  if (!is_glued(t, f)) return;
  int t2 = tets[t].adj[f];
  int f2 = tets[t].gluing[f][f];
  tets[t].adj[f] = -1;
  tets[t].label[f] = label;
  tets[t2].adj[f2] = -1;
  tets[t2].label[f2] = label;
}

void GluedTriangulation::set_boundary_label(int t, int f, BoundaryLabel label) {
  if (is_glued(t, f)) throw TriangulationError("cannot label an internal face");
  tets[t].label[f] = label;
}

namespace {

// Union-find with an optional parity bit on each union relation.
struct UnionFind {
  std::vector<int32_t> parent;
  std::vector<char> parity;  // parity relative to parent
  bool consistent = true;

  explicit UnionFind(int n) : parent(n), parity(n, 0) {
    std::iota(parent.begin(), parent.end(), 0);
  }

  std::pair<int, char> find(int x) {
    if (parent[x] == x) return {x, 0};
    auto [root, p] = find(parent[x]);
    parent[x] = root;
    parity[x] = static_cast<char>(parity[x] ^ p);
    return {root, parity[x]};
  }

  void unite(int a, int b, char rel) {
    auto [ra, pa] = find(a);
    auto [rb, pb] = find(b);
    if (ra == rb) {
      if ((pa ^ pb) != rel) consistent = false;
      return;
    }
    parent[ra] = rb;
    parity[ra] = static_cast<char>(pa ^ pb ^ rel);
  }
};

std::vector<int32_t> compress_classes(UnionFind& uf, int slots, int* count) {
  std::vector<int32_t> cls(slots, -1);
  int next = 0;
  for (int s = 0; s < slots; ++s) {
    int root = uf.find(s).first;
    if (cls[root] < 0) cls[root] = next++;
    cls[s] = cls[root];
  }
  // Second pass so every slot (not just roots) is mapped.
  for (int s = 0; s < slots; ++s) cls[s] = cls[uf.find(s).first];
  *count = next;
  return cls;
}

// The two faces of a tetrahedron containing edge (a,b) are those opposite the
// other two vertices.
std::array<int, 2> faces_at_edge(int a, int b) {
  std::array<int, 2> out{};
  int k = 0;
  for (int v = 0; v < 4; ++v)
    if (v != a && v != b) out[k++] = v;
  return out;
}

}  // namespace

Skeleton compute_skeleton(const GluedTriangulation& tri) {
  const int n = tri.size();
  Skeleton sk;
  sk.n = n;

  UnionFind vuf(4 * n), euf(6 * n), fuf(4 * n);

  for (int t = 0; t < n; ++t) {
    for (int f = 0; f < 4; ++f) {
      if (!tri.is_glued(t, f)) continue;
      const int t2 = tri.tets[t].adj[f];
      const Perm4 sigma = tri.tets[t].gluing[f];
      const int f2 = sigma[f];
      fuf.unite(4 * t + f, 4 * t2 + f2, 0);
      for (int a = 0; a < 4; ++a) {
        if (a == f) continue;
        vuf.unite(4 * t + a, 4 * t2 + sigma[a], 0);
      }
      for (int e = 0; e < 6; ++e) {
        auto [a, b] = kEdgeVertices[e];
        if (a == f || b == f) continue;  // edge not on this face
        int ia = sigma[a], ib = sigma[b];
        char rel = ia > ib ? 1 : 0;
        euf.unite(6 * t + e, 6 * t2 + edge_index(ia, ib), rel);
      }
    }
  }

  sk.vertex_class = compress_classes(vuf, 4 * n, &sk.vertex_count);
  sk.edge_class = compress_classes(euf, 6 * n, &sk.edge_count);
  sk.face_class = compress_classes(fuf, 4 * n, &sk.face_count);
  sk.valid_edges = euf.consistent;

  sk.edge_flip.assign(6 * n, 0);
  for (int s = 0; s < 6 * n; ++s) sk.edge_flip[s] = euf.find(s).second;

  sk.edge_degree.assign(sk.edge_count, 0);
  for (int s = 0; s < 6 * n; ++s) sk.edge_degree[sk.edge_class[s]]++;

  sk.vertex_on_boundary.assign(sk.vertex_count, 0);
  sk.edge_on_boundary.assign(sk.edge_count, 0);
  for (int t = 0; t < n; ++t)
    for (int f = 0; f < 4; ++f) {
      if (tri.is_glued(t, f)) continue;
      for (int a = 0; a < 4; ++a)
        if (a != f) sk.vertex_on_boundary[sk.vclass(t, a)] = 1;
      for (int e = 0; e < 6; ++e) {
        auto [a, b] = kEdgeVertices[e];
        if (a != f && b != f) sk.edge_on_boundary[sk.eclass(t, e)] = 1;
      }
    }

  // Vertex links.  For each class: triangles = corner slots, edges = face
  // incidences (internal ones pair up), vertices = edge-class ends.
  std::vector<long long> f_link(sk.vertex_count, 0), inc_int(sk.vertex_count, 0),
      inc_bdry(sk.vertex_count, 0), ends(sk.vertex_count, 0);
  for (int t = 0; t < n; ++t)
    for (int v = 0; v < 4; ++v) f_link[sk.vclass(t, v)]++;
  for (int t = 0; t < n; ++t)
    for (int f = 0; f < 4; ++f)
      for (int a = 0; a < 4; ++a) {
        if (a == f) continue;
        if (tri.is_glued(t, f))
          inc_int[sk.vclass(t, a)]++;
        else
          inc_bdry[sk.vclass(t, a)]++;
      }
  // End vertex classes per edge class, taken from the first slot seen with
  // parity tracked.
  std::vector<int32_t> end0(sk.edge_count, -1), end1(sk.edge_count, -1);
  for (int t = 0; t < n; ++t)
    for (int e = 0; e < 6; ++e) {
      int c = sk.eclass(t, e);
      if (end0[c] >= 0) continue;
      auto [a, b] = kEdgeVertices[e];
      if (sk.edge_flip[6 * t + e]) std::swap(a, b);
      end0[c] = sk.vclass(t, a);
      end1[c] = sk.vclass(t, b);
    }
  for (int c = 0; c < sk.edge_count; ++c) {
    ends[end0[c]]++;
    ends[end1[c]]++;
  }

  sk.link_type.assign(sk.vertex_count, VertexLinkType::Singular);
  for (int v = 0; v < sk.vertex_count; ++v) {
    long long chi = ends[v] - (inc_int[v] / 2 + inc_bdry[v]) + f_link[v];
    if (!sk.vertex_on_boundary[v] && chi == 2)
      sk.link_type[v] = VertexLinkType::Sphere;
    else if (sk.vertex_on_boundary[v] && chi == 1)
      sk.link_type[v] = VertexLinkType::Disk;
  }

  sk.euler_characteristic = static_cast<long long>(sk.vertex_count) - sk.edge_count +
                            sk.face_count - n;
  return sk;
}

bool is_valid_triangulation(const GluedTriangulation& tri, std::string* reason) {
  const int n = tri.size();
  for (int t = 0; t < n; ++t)
    for (int f = 0; f < 4; ++f) {
      if (!tri.is_glued(t, f)) continue;
      int t2 = tri.tets[t].adj[f];
      Perm4 sigma = tri.tets[t].gluing[f];
      if (t2 < 0 || t2 >= n || !sigma.is_permutation()) {
        if (reason) *reason = "malformed gluing table";
        return false;
      }
      int f2 = sigma[f];
      if (t2 == t && f2 == f) {
        if (reason) *reason = "face glued to itself";
        return false;
      }
      if (tri.tets[t2].adj[f2] != t || tri.tets[t2].gluing[f2] != sigma.inverse()) {
        if (reason) *reason = "gluing table not involutive";
        return false;
      }
    }
  Skeleton sk = compute_skeleton(tri);
  if (!sk.valid_edges) {
    if (reason) *reason = "edge identified with itself in reverse";
    return false;
  }
  return true;
}

namespace {

// Walks around an edge from one boundary face to the opposite boundary face.
// `f` must be a boundary face of `t`, and (a,b) an edge of that face.
// Returns the partner boundary face slot and the accumulated vertex map from
// t's labels to the partner's labels.
struct FanEnd {
  int tet;
  int face;
  Perm4 map;
};

FanEnd walk_boundary_fan(const GluedTriangulation& tri, int t, int f, int a, int b) {
  auto other_face = [](int a_, int b_, int avoid) {
    auto fs = faces_at_edge(a_, b_);
    return fs[0] == avoid ? fs[1] : fs[0];
  };
  int cur_t = t;
  int cross = other_face(a, b, f);
  Perm4 m = Perm4::identity();
  int ca = a, cb = b;
  for (;;) {
    if (!tri.is_glued(cur_t, cross)) return {cur_t, cross, m};
    Perm4 sigma = tri.tets[cur_t].gluing[cross];
    int nt = tri.tets[cur_t].adj[cross];
    int came = sigma[cross];
    m = sigma * m;
    ca = m[a];
    cb = m[b];
    cur_t = nt;
    cross = other_face(ca, cb, came);
  }
}

}  // namespace

BoundaryStructure boundary_structure(const GluedTriangulation& tri) {
  const int n = tri.size();
  BoundaryStructure bs;
  bs.face_slot_index.assign(4 * n, -1);
  for (int t = 0; t < n; ++t)
    for (int f = 0; f < 4; ++f)
      if (!tri.is_glued(t, f)) {
        bs.face_slot_index[4 * t + f] = static_cast<int>(bs.faces.size());
        bs.faces.push_back({t, f});
      }

  const int bf = static_cast<int>(bs.faces.size());
  UnionFind comp(bf), fans(4 * bf);
  std::vector<std::array<char, 6>> edge_done(bf, {0, 0, 0, 0, 0, 0});
  for (int i = 0; i < bf; ++i) {
    auto [t, f] = bs.faces[i];
    for (int a = 0; a < 4; ++a) {
      if (a == f) continue;
      for (int b = a + 1; b < 4; ++b) {
        if (b == f) continue;
        if (edge_done[i][edge_index(a, b)]) continue;
        FanEnd end = walk_boundary_fan(tri, t, f, a, b);
        int j = bs.face_slot_index[4 * end.tet + end.face];
        assert(j >= 0);
        int b0 = end.map[a], b1 = end.map[b];
        edge_done[i][edge_index(a, b)] = 1;
        edge_done[j][edge_index(b0, b1)] = 1;
        bs.edges.push_back({i, a, b, j, b0, b1});
        comp.unite(i, j, 0);
        fans.unite(4 * i + a, 4 * j + b0, 0);
        fans.unite(4 * i + b, 4 * j + b1, 0);
      }
    }
  }

  bs.face_component = compress_classes(comp, bf, &bs.component_count);

  // Fan ids only at corners lying on the face.
  bs.fan_class.assign(4 * bf, -1);
  std::vector<int32_t> root_id(4 * bf, -1);
  for (int i = 0; i < bf; ++i)
    for (int a = 0; a < 4; ++a) {
      if (a == bs.faces[i].face) continue;
      int root = fans.find(4 * i + a).first;
      if (root_id[root] < 0) root_id[root] = bs.fan_count++;
      bs.fan_class[4 * i + a] = root_id[root];
    }
  return bs;
}

std::vector<BoundaryComponent> boundary_components(const GluedTriangulation& tri) {
  BoundaryStructure bs = boundary_structure(tri);
  const int bf = static_cast<int>(bs.faces.size());
  std::vector<BoundaryComponent> out(bs.component_count);

  std::vector<std::vector<char>> label_seen(bs.component_count,
                                            std::vector<char>(4, 0));
  std::vector<int32_t> fan_component(bs.fan_count, -1);

  for (int i = 0; i < bf; ++i) {
    auto [t, f] = bs.faces[i];
    int c = bs.face_component[i];
    out[c].face_count++;
    label_seen[c][static_cast<int>(tri.boundary_label(t, f))] = 1;
    for (int a = 0; a < 4; ++a)
      if (a != f) fan_component[bs.fan_class[4 * i + a]] = c;
  }

  std::vector<long long> edges_per_component(bs.component_count, 0);
  for (const BoundaryStructure::Edge& e : bs.edges)
    edges_per_component[bs.face_component[e.face_a]]++;
  std::vector<long long> fans_per_component(bs.component_count, 0);
  for (int fan = 0; fan < bs.fan_count; ++fan)
    fans_per_component[fan_component[fan]]++;

  for (int c = 0; c < bs.component_count; ++c) {
    long long chi =
        fans_per_component[c] - edges_per_component[c] + out[c].face_count;
    out[c].euler_characteristic = chi;
    out[c].genus = (2 - chi) / 2;
    for (int l = 0; l < 4; ++l)
      if (label_seen[c][l]) out[c].labels.push_back(static_cast<BoundaryLabel>(l));
  }
  return out;
}

std::vector<BoundaryComponent> boundary_census(const GluedTriangulation& tri) {
  BoundaryStructure bs = boundary_structure(tri);
  // A vertex class met by more than one fan is pinched.
  Skeleton sk = compute_skeleton(tri);
  std::vector<int32_t> fan_vertex(bs.fan_count, -1);
  std::vector<int32_t> fans_at_vertex(sk.vertex_count, 0);
  for (int i = 0; i < static_cast<int>(bs.faces.size()); ++i) {
    auto [t, f] = bs.faces[i];
    for (int a = 0; a < 4; ++a) {
      if (a == f) continue;
      int fan = bs.fan_class[4 * i + a];
      if (fan_vertex[fan] < 0) {
        fan_vertex[fan] = sk.vclass(t, a);
        fans_at_vertex[fan_vertex[fan]]++;
      }
    }
  }
  for (int v = 0; v < sk.vertex_count; ++v)
    if (fans_at_vertex[v] > 1)
      throw SingularBoundary("boundary is pinched at a vertex");
  return boundary_components(tri);
}

std::string to_text(const GluedTriangulation& tri) {
  std::ostringstream os;
  os << tri.size() << "\n";
  for (int t = 0; t < tri.size(); ++t) {
    for (int f = 0; f < 4; ++f) {
      if (f) os << ' ';
      if (!tri.is_glued(t, f)) {
        os << "b:" << to_string(tri.boundary_label(t, f));
      } else {
        Perm4 sigma = tri.tets[t].gluing[f];
        os << "g:" << tri.tets[t].adj[f] << ':' << sigma[f] << ':';
        for (int a = 0; a < 4; ++a)
          if (a != f) os << sigma[a];
      }
    }
    os << "\n";
  }
  return os.str();
}

GluedTriangulation from_text(const std::string& text) {
  std::istringstream is(text);
  int n = -1;
  if (!(is >> n) || n < 0) throw TriangulationError("bad tetrahedron count");
  GluedTriangulation tri;
  tri.tets.resize(n);
  struct Pending {
    int t2, f2;
    Perm4 perm;
  };
  std::vector<std::array<Pending, 4>> pend(n);
  std::vector<std::array<char, 4>> glued(n, {0, 0, 0, 0});

  for (int t = 0; t < n; ++t) {
    for (int f = 0; f < 4; ++f) {
      std::string field;
      if (!(is >> field)) throw TriangulationError("truncated triangulation text");
      if (field.rfind("b:", 0) == 0) {
        std::string name = field.substr(2);
        BoundaryLabel l;
        if (name == "SurfaceCopy0") l = BoundaryLabel::SurfaceCopy0;
        else if (name == "SurfaceCopy1") l = BoundaryLabel::SurfaceCopy1;
        else if (name == "KnotTorus") l = BoundaryLabel::KnotTorus;
        else if (name == "Other") l = BoundaryLabel::Other;
        else throw TriangulationError("unknown boundary label: " + name);
        tri.tets[t].label[f] = l;
        continue;
      }
      if (field.rfind("g:", 0) != 0)
        throw TriangulationError("bad face field: " + field);
      int t2 = -1, f2 = -1;
      std::string digits;
      {
        std::string rest = field.substr(2);
        size_t c1 = rest.find(':');
        size_t c2 = rest.find(':', c1 == std::string::npos ? c1 : c1 + 1);
        if (c1 == std::string::npos || c2 == std::string::npos)
          throw TriangulationError("bad gluing field: " + field);
        t2 = std::stoi(rest.substr(0, c1));
        f2 = std::stoi(rest.substr(c1 + 1, c2 - c1 - 1));
        digits = rest.substr(c2 + 1);
      }
      if (t2 < 0 || t2 >= n || f2 < 0 || f2 > 3 || digits.size() != 3)
        throw TriangulationError("bad gluing field: " + field);
      int img[4];
      img[f] = f2;
      int k = 0;
      for (int a = 0; a < 4; ++a) {
        if (a == f) continue;
        char d = digits[k++];
        if (d < '0' || d > '3') throw TriangulationError("bad gluing digits");
        img[a] = d - '0';
      }
      Perm4 sigma(img[0], img[1], img[2], img[3]);
      if (!sigma.is_permutation())
        throw TriangulationError("gluing digits not a permutation");
      pend[t][f] = {t2, f2, sigma};
      glued[t][f] = 1;
    }
  }
  for (int t = 0; t < n; ++t)
    for (int f = 0; f < 4; ++f) {
      if (!glued[t][f] || tri.is_glued(t, f)) continue;
      const Pending& p = pend[t][f];
      if (!glued[p.t2][p.f2] || pend[p.t2][p.f2].t2 != t ||
          pend[p.t2][p.f2].f2 != f || pend[p.t2][p.f2].perm != p.perm.inverse())
        throw TriangulationError("gluing table not involutive");
      tri.glue(t, f, p.t2, p.f2, p.perm);
    }
  return tri;
}

std::vector<int32_t> tetrahedron_components(const GluedTriangulation& tri, int* count) {
  const int n = tri.size();
  std::vector<int32_t> comp(n, -1);
  int next = 0;
  std::vector<int> stack;
  for (int s = 0; s < n; ++s) {
    if (comp[s] >= 0) continue;
    comp[s] = next;
    stack.push_back(s);
    while (!stack.empty()) {
      int t = stack.back();
      stack.pop_back();
      for (int f = 0; f < 4; ++f) {
        if (!tri.is_glued(t, f)) continue;
        int t2 = tri.tets[t].adj[f];
        if (comp[t2] < 0) {
          comp[t2] = next;
          stack.push_back(t2);
        }
      }
    }
    ++next;
  }
  if (count) *count = next;
  return comp;
}

GluedTriangulation keep_components(const GluedTriangulation& tri,
                                   const std::vector<char>& keep) {
  int count = 0;
  std::vector<int32_t> comp = tetrahedron_components(tri, &count);
  std::vector<char> remove(tri.size(), 0);
  for (int t = 0; t < tri.size(); ++t)
    if (!keep[comp[t]]) remove[t] = 1;
  return remove_tetrahedra(tri, remove).tri;
}

}  // namespace vknot
