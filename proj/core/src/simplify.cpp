#include "vknot/simplify.hpp"

#include <algorithm>
#include <array>
#include <random>
#include <cstdio>
#include <cstdlib>
#include <vector>

namespace vknot {
namespace {

// Working mesh: tetrahedra are flagged dead instead of being erased so that
// moves can run in place; compact() squeezes the corpses out.
struct Mesh {
  GluedTriangulation tri;
  std::vector<char> dead;
  int alive = 0;

  explicit Mesh(const GluedTriangulation& t)
      : tri(t), dead(t.size(), 0), alive(t.size()) {}

  int size() const { return tri.size(); }
  bool live(int t) const { return t >= 0 && !dead[t]; }

  int adj(int t, int f) const { return tri.tets[t].adj[f]; }
  Perm4 gluing(int t, int f) const { return tri.tets[t].gluing[f]; }
  BoundaryLabel label(int t, int f) const { return tri.tets[t].label[f]; }

  void set_pair(int t1, int f1, int t2, int f2, Perm4 p) {
    if (p[f1] != f2 || (t1 == t2 && f1 == f2))
      throw TriangulationError("simplify: inconsistent rewiring");
    tri.tets[t1].adj[f1] = t2;
    tri.tets[t1].gluing[f1] = p;
    tri.tets[t2].adj[f2] = t1;
    tri.tets[t2].gluing[f2] = p.inverse();
  }
  void set_boundary(int t, int f, BoundaryLabel l) {
    tri.tets[t].adj[f] = -1;
    tri.tets[t].gluing[f] = Perm4();
    tri.tets[t].label[f] = l;
  }
  void kill(int t) {
    dead[t] = 1;
    --alive;
  }
  int spawn() {
    int t = tri.add_tetrahedron();
    dead.push_back(0);
    ++alive;
    return t;
  }

  void compact() {
    if (alive == size()) return;
    tri = remove_tetrahedra(tri, dead).tri;
    dead.assign(tri.size(), 0);
    alive = tri.size();
  }
};

// A slot on the outside of the region a move replaces: either the boundary
// face it used to be (keep the label) or the partner it was glued to.
struct Outer {
  bool boundary = false;
  BoundaryLabel label = BoundaryLabel::Other;
  int tet = -1, face = -1;  // partner slot
  Perm4 to_partner;         // old tet labels -> partner labels
};

Outer read_outer(const Mesh& m, int t, int f) {
  Outer o;
  if (m.adj(t, f) < 0) {
    o.boundary = true;
    o.label = m.label(t, f);
  } else {
    o.tet = m.adj(t, f);
    o.face = m.gluing(t, f)[f];
    o.to_partner = m.gluing(t, f);
  }
  return o;
}

// Reconnects the outside of a replaced region.  `slots[i]` is where old
// outer slot i ends up on the new tetrahedra, with `maps[i]` sending old tet
// labels to new tet labels.  Partners pointing back into the old region are
// resolved against the slot list itself.
struct Rewire {
  struct Old {
    int tet, face;
  };
  std::vector<Old> old_slots;
  std::vector<std::array<int, 2>> new_slots;  // (tet, face) on replacement
  std::vector<Perm4> maps;                    // old labels -> new labels

  int find(int t, int f) const {
    for (size_t i = 0; i < old_slots.size(); ++i)
      if (old_slots[i].tet == t && old_slots[i].face == f) return (int)i;
    return -1;
  }

  void apply(Mesh& m) const {
    std::vector<char> done(old_slots.size(), 0);
    for (size_t i = 0; i < old_slots.size(); ++i) {
      if (done[i]) continue;
      Outer o = read_outer(m, old_slots[i].tet, old_slots[i].face);
      auto [nt, nf] = new_slots[i];
      if (o.boundary) {
        m.set_boundary(nt, nf, o.label);
        done[i] = 1;
        continue;
      }
      int j = find(o.tet, o.face);
      if (j < 0) {
        m.set_pair(nt, nf, o.tet, o.face, o.to_partner * maps[i].inverse());
        done[i] = 1;
      } else {
        // two outer slots of the region glued to each other from outside
        auto [jt, jf] = new_slots[(size_t)j];
        m.set_pair(nt, nf, jt, jf, maps[(size_t)j] * o.to_partner * maps[i].inverse());
        done[i] = done[(size_t)j] = 1;
      }
    }
  }
};

// Walk around edge (a,b) of tetrahedron t.  Each visited slot records the
// tetrahedron, the edge endpoints in its labels, and the two remaining
// labels (c before d in walk direction: we leave across the face opposite c).
struct RingSlot {
  int tet, a, b, c, d;
};
struct Ring {
  bool closed = false;
  std::vector<RingSlot> slots;
};

Ring walk_ring(const Mesh& m, int t, int a, int b) {
  Ring ring;
  int others[2], k = 0;
  for (int x = 0; x < 4; ++x)
    if (x != a && x != b) others[k++] = x;
  RingSlot cur{t, a, b, others[0], others[1]};
  // forward until closed or boundary
  for (;;) {
    ring.slots.push_back(cur);
    if (m.adj(cur.tet, cur.c) < 0) break;
    Perm4 p = m.gluing(cur.tet, cur.c);
    RingSlot nxt;
    nxt.tet = m.adj(cur.tet, cur.c);
    nxt.a = p[cur.a];
    nxt.b = p[cur.b];
    nxt.d = p[cur.c];  // entered across this face
    nxt.c = 6 - nxt.a - nxt.b - nxt.d;
    if (nxt.tet == t && nxt.a == a && nxt.b == b && nxt.c == others[0]) {
      ring.closed = true;
      return ring;
    }
    cur = nxt;
    if ((int)ring.slots.size() > 4 * m.size()) break;  // defensive
  }
  // open: extend backwards from the start across d
  RingSlot back{t, a, b, others[1], others[0]};  // walk the other way
  while (m.adj(back.tet, back.c) >= 0) {
    Perm4 p = m.gluing(back.tet, back.c);
    RingSlot nxt;
    nxt.tet = m.adj(back.tet, back.c);
    nxt.a = p[back.a];
    nxt.b = p[back.b];
    nxt.d = p[back.c];
    nxt.c = 6 - nxt.a - nxt.b - nxt.d;
    back = nxt;
    ring.slots.insert(ring.slots.begin(), {back.tet, back.a, back.b, back.d, back.c});
    if ((int)ring.slots.size() > 4 * m.size()) break;
  }
  return ring;
}

bool ring_contains(const Ring& r, int t, int x, int y) {
  for (const RingSlot& s : r.slots)
    if (s.tet == t && ((s.a == x && s.b == y) || (s.a == y && s.b == x)))
      return true;
  return false;
}

// ---- Pachner 3-2 ----------------------------------------------------------

bool try_three_two(Mesh& m, int t, int a, int b) {
  Ring ring = walk_ring(m, t, a, b);
  if (!ring.closed || ring.slots.size() != 3) return false;
  const RingSlot& s0 = ring.slots[0];
  const RingSlot& s1 = ring.slots[1];
  const RingSlot& s2 = ring.slots[2];
  if (s0.tet == s1.tet || s0.tet == s2.tet || s1.tet == s2.tet) return false;

  // Bipyramid: apexes a/b, equator corners Q_i = d of slot i.  New tets
  // nA = (a, Q0, Q1, Q2) and nB = (b, Q0, Q1, Q2), labels 0=apex, 1+i=Q_i.
  int nA = m.spawn();
  int nB = m.spawn();
  m.set_pair(nA, 0, nB, 0, Perm4::identity());

  Rewire rw;
  const RingSlot* s[3] = {&s0, &s1, &s2};
  for (int i = 0; i < 3; ++i) {
    int qprev = 1 + ((i + 2) % 3);  // label of Q_{i-1} (= c of slot i)
    int qcur = 1 + i;               // label of Q_i   (= d of slot i)
    int qnext = 1 + ((i + 1) % 3);
    // face opposite b: (a, Q_{i-1}, Q_i) -> nA face qnext
    Perm4 mapA;
    {
      int img[4];
      img[s[i]->a] = 0;
      img[s[i]->c] = qprev;
      img[s[i]->d] = qcur;
      img[s[i]->b] = qnext;
      mapA = Perm4(img[0], img[1], img[2], img[3]);
    }
    rw.old_slots.push_back({s[i]->tet, s[i]->b});
    rw.new_slots.push_back({nA, qnext});
    rw.maps.push_back(mapA);
    // face opposite a: (b, Q_{i-1}, Q_i) -> nB face qnext
    Perm4 mapB;
    {
      int img[4];
      img[s[i]->b] = 0;
      img[s[i]->c] = qprev;
      img[s[i]->d] = qcur;
      img[s[i]->a] = qnext;
      mapB = Perm4(img[0], img[1], img[2], img[3]);
    }
    rw.old_slots.push_back({s[i]->tet, s[i]->a});
    rw.new_slots.push_back({nB, qnext});
    rw.maps.push_back(mapB);
  }
  rw.apply(m);
  for (int i = 0; i < 3; ++i) m.kill(s[i]->tet);
  return true;
}

// ---- pillow collapse (2-0 around a degree-two edge) ------------------------

bool try_two_zero(Mesh& m, int t, int a, int b) {
  Ring ring = walk_ring(m, t, a, b);
  if (!ring.closed || ring.slots.size() != 2) return false;
  const RingSlot& s0 = ring.slots[0];
  const RingSlot& s1 = ring.slots[1];
  if (s0.tet == s1.tet) return false;

  // Opposite edges (c,d) in each tetrahedron must be distinct edge classes
  // and not both on the boundary, otherwise flattening pinches something.
  Ring opp0 = walk_ring(m, s0.tet, s0.c, s0.d);
  if (ring_contains(opp0, s1.tet, s1.c, s1.d)) return false;
  Ring opp1 = walk_ring(m, s1.tet, s1.c, s1.d);
  if (!opp0.closed && !opp1.closed) return false;

  // Flattening correspondence phi: s0.tet labels -> s1.tet labels.
  Perm4 phi;
  {
    int img[4];
    img[s0.a] = s1.a;
    img[s0.b] = s1.b;
    img[s0.c] = s1.d;
    img[s0.d] = s1.c;
    phi = Perm4(img[0], img[1], img[2], img[3]);
  }

  // Outer faces pair up: (s0.tet, x) with (s1.tet, phi[x]) for x in {a, b}.
  for (int x : {s0.a, s0.b}) {
    Outer o0 = read_outer(m, s0.tet, x);
    Outer o1 = read_outer(m, s1.tet, phi[x]);
    if (o0.boundary && o1.boundary) return false;
    for (const Outer& o : {o0, o1}) {
      if (o.boundary) continue;
      if (o.tet == s0.tet || o.tet == s1.tet) return false;  // glued to the pillow
    }
  }

  for (int x : {s0.a, s0.b}) {
    Outer o0 = read_outer(m, s0.tet, x);
    Outer o1 = read_outer(m, s1.tet, phi[x]);
    if (o0.boundary) {
      m.set_boundary(o1.tet, o1.face, o0.label);
    } else if (o1.boundary) {
      m.set_boundary(o0.tet, o0.face, o1.label);
    } else {
      m.set_pair(o0.tet, o0.face, o1.tet, o1.face,
                 o1.to_partner * phi * o0.to_partner.inverse());
    }
  }
  m.kill(s0.tet);
  m.kill(s1.tet);
  return true;
}

// ---- layered boundary-edge fold ---------------------------------------------

// Eliminates the boundary edge (t0, a0-b0), which must join two distinct
// boundary vertices: a new tetrahedron is layered across the edge's two
// boundary triangles (flipping the boundary diagonal), and its two fresh
// faces are folded together around the new diagonal.  Costs one tetrahedron
// but removes two boundary triangles and merges the edge's endpoints, so the
// boundary triangulation shrinks even when every cheaper move is stuck.
// All legality checks run against the pre-layer skeleton: the layer itself
// merges no classes, and the fold around the fresh degree-one edge identifies
// exactly the old side pairs checked here.
bool try_flip_fold(Mesh& m, const Skeleton& sk, int t0, int a0, int b0,
                   std::vector<char>& touched) {
  Ring ring = walk_ring(m, t0, a0, b0);
  if (ring.closed || ring.slots.empty()) return false;
  const RingSlot F = ring.slots.front();
  const RingSlot L = ring.slots.back();
  if (F.tet == L.tet && F.d == L.c) return false;
  BoundaryLabel l = m.label(F.tet, F.d);
  if (l != m.label(L.tet, L.c)) return false;

  int u = sk.vclass(F.tet, F.a), v = sk.vclass(F.tet, F.b);
  if (u == v) return false;
  int w1 = sk.vclass(F.tet, F.c), w2 = sk.vclass(L.tet, L.d);
  for (int c : {u, v, w1, w2})
    if (touched[c]) return false;

  // fold legality around the new diagonal: sides (b,w) land on (a,w)
  struct Side {
    int cls;
    bool flip;
  };
  auto side = [&](int tt, int x, int y) -> Side {
    int e = edge_index(x, y);
    return {sk.eclass(tt, e), (bool)(sk.edge_flip[6 * tt + e] ^ (char)(x > y))};
  };
  Side eb1 = side(F.tet, F.b, F.c), ea1 = side(F.tet, F.a, F.c);
  Side eb2 = side(L.tet, L.b, L.d), ea2 = side(L.tet, L.a, L.d);
  if (eb1.cls == eb2.cls || ea1.cls == ea2.cls || eb1.cls == ea2.cls ||
      eb2.cls == ea1.cls)
    return false;
  if (eb1.cls == ea1.cls && eb1.flip != ea1.flip) return false;
  if (eb2.cls == ea2.cls && eb2.flip != ea2.flip) return false;

  // layer the new tetrahedron (a, b, w1, w2) across the two boundary faces
  int n = m.spawn();
  {
    int img[4];
    img[0] = F.a;
    img[1] = F.b;
    img[2] = F.c;
    img[3] = F.d;
    m.set_pair(n, 3, F.tet, F.d, Perm4(img[0], img[1], img[2], img[3]));
  }
  {
    int img[4];
    img[0] = L.a;
    img[1] = L.b;
    img[3] = L.d;
    img[2] = L.c;
    m.set_pair(n, 2, L.tet, L.c, Perm4(img[0], img[1], img[2], img[3]));
  }
  m.set_boundary(n, 0, l);
  m.set_boundary(n, 1, l);
  // fold the two fresh faces together around the new diagonal (w1, w2)
  m.set_pair(n, 0, n, 1, Perm4::transposition(0, 1));

  touched[u] = touched[v] = touched[w1] = touched[w2] = 1;
  return true;
}

// ---- snapped-tetrahedron deletion -------------------------------------------

// A tetrahedron with two of its own faces glued to each other is a one-tet
// ball (the fold runs around a degree-one edge).  When one remaining face is
// boundary and the other is glued to a different tetrahedron, the ball hangs
// off the rest along a single disk, so deleting it changes nothing; the face
// it was glued to becomes boundary and inherits the label of the disk it
// replaces.
bool try_snap_delete(Mesh& m, int t) {
  int f1 = -1;
  for (int f = 0; f < 4; ++f)
    if (m.adj(t, f) == t) f1 = f;
  if (f1 < 0) return false;
  int f2 = m.gluing(t, f1)[f1];
  int g1 = -1, g2 = -1;
  for (int f = 0; f < 4; ++f)
    if (f != f1 && f != f2) (g1 < 0 ? g1 : g2) = f;
  bool b1 = m.adj(t, g1) < 0, b2 = m.adj(t, g2) < 0;
  if (b1 == b2) return false;  // a lone component, or a ball joining two disks
  int gb = b1 ? g1 : g2, gi = b1 ? g2 : g1;
  Outer o = read_outer(m, t, gi);
  m.set_boundary(o.tet, o.face, m.label(t, gb));
  m.kill(t);
  return true;
}

// ---- close-the-book ---------------------------------------------------------

// Folds together the two boundary triangles that meet along the boundary
// edge (t0, a0-b0), making the edge internal.  Legal when the two triangles
// are distinct, the vertices opposite the edge are distinct, and the side
// edges have no coincidences beyond a compatibly oriented pair.
bool try_close_book(Mesh& m, const Skeleton& sk, int t0, int a0, int b0,
                    std::vector<char>& touched) {
  Ring ring = walk_ring(m, t0, a0, b0);
  if (ring.closed || ring.slots.empty()) return false;
  const RingSlot F = ring.slots.front();  // boundary triangle (F.tet, opp F.d)
  const RingSlot L = ring.slots.back();   // boundary triangle (L.tet, opp L.c)
  int t1 = F.tet, f1 = F.d;
  int t2 = L.tet, f2 = L.c;
  if (t1 == t2 && f1 == f2) return false;
  if (m.label(t1, f1) != m.label(t2, f2)) return false;

  int corners[4] = {sk.vclass(t1, F.a), sk.vclass(t1, F.b), sk.vclass(t1, F.c),
                    sk.vclass(t2, L.d)};
  if (corners[2] == corners[3]) return false;  // opposite vertices must differ
  for (int c : corners)
    if (touched[c]) return false;

  // The fold merges side edges in two pairs.  A pair may already be one edge
  // class if the fold respects its orientation; any other coincidence among
  // the four sides would chain extra identifications, so reject those.
  struct Side {
    int cls;
    bool flip;  // fold-image order disagrees with the slot's (lo,hi) order
  };
  auto side = [&](int tt, int x, int y, bool rev) -> Side {
    int e = edge_index(x, y);
    return {sk.eclass(tt, e), (bool)(sk.edge_flip[6 * tt + e] ^ (char)rev)};
  };
  Side e1a = side(t1, F.a, F.c, false);
  Side e1b = side(t1, F.b, F.c, false);
  Side e2a = side(t2, L.a, L.d, (F.a < F.c) != (L.a < L.d));
  Side e2b = side(t2, L.b, L.d, (F.b < F.c) != (L.b < L.d));
  if (e1a.cls == e1b.cls || e2a.cls == e2b.cls || e1a.cls == e2b.cls ||
      e1b.cls == e2a.cls)
    return false;
  if (e1a.cls == e2a.cls && e1a.flip != e2a.flip) return false;
  if (e1b.cls == e2b.cls && e1b.flip != e2b.flip) return false;

  Perm4 fold;
  {
    int img[4];
    img[F.a] = L.a;
    img[F.b] = L.b;
    img[F.c] = L.d;
    img[F.d] = L.c;
    fold = Perm4(img[0], img[1], img[2], img[3]);
  }
  m.set_pair(t1, f1, t2, f2, fold);
  for (int c : corners) touched[c] = 1;
  return true;
}

// ---- boundary shelling ------------------------------------------------------

// Light per-batch class data for shelling legality.
struct ClassInfo {
  Skeleton sk;
  explicit ClassInfo(const GluedTriangulation& tri) : sk(compute_skeleton(tri)) {}
};

// Attempts to shell tetrahedron t off the boundary.  The glued faces must
// form an embedded disk in the rest of the complex: interior simplices of
// that disk may not recur in t or lie on the existing boundary.  `sk` must
// describe the current mesh (callers must not invalidate it mid-batch).
bool try_shell(Mesh& m, const Skeleton& sk, int t) {
  int free_faces[4], nfree = 0;
  for (int f = 0; f < 4; ++f)
    if (m.adj(t, f) < 0) free_faces[nfree++] = f;
  if (nfree < 1 || nfree > 3) return false;
  BoundaryLabel l = m.label(t, free_faces[0]);
  for (int i = 1; i < nfree; ++i)
    if (m.label(t, free_faces[i]) != l) return false;
  for (int f = 0; f < 4; ++f)
    if (m.adj(t, f) == t) return false;

  auto edge_unique_in_tet = [&](int e) {
    int cls = sk.eclass(t, e);
    for (int e2 = 0; e2 < 6; ++e2)
      if (e2 != e && sk.eclass(t, e2) == cls) return false;
    return true;
  };

  if (nfree == 1) {
    // attachment disk = cone on the vertex opposite the free face
    int apex = free_faces[0];
    if (sk.vertex_on_boundary[sk.vclass(t, apex)]) return false;
    for (int c = 0; c < 4; ++c)
      if (c != apex && sk.vclass(t, c) == sk.vclass(t, apex)) return false;
    for (int c = 0; c < 4; ++c)
      if (c != apex && !edge_unique_in_tet(edge_index(apex, c))) return false;
  } else if (nfree == 2) {
    int hinge = edge_index(free_faces[0], free_faces[1]);
    if (sk.edge_on_boundary[sk.eclass(t, hinge)]) return false;
    if (!edge_unique_in_tet(hinge)) return false;
  }
  // nfree == 3: the attachment is a single internal face, always a disk.

  for (int f = 0; f < 4; ++f) {
    if (m.adj(t, f) < 0) continue;
    int s = m.adj(t, f);
    int sf = m.gluing(t, f)[f];
    m.set_boundary(s, sf, l);
  }
  m.kill(t);
  return true;
}

// ---- edge collapse ----------------------------------------------------------

// Tiny union-find over sparse ids; unite() reports false when both ids were
// already in one set (a cycle, which the collapse conditions must reject).
struct MicroDsu {
  std::vector<std::array<int, 2>> node;  // (id, parent index)

  int find(int id) {
    int i = -1;
    for (size_t k = 0; k < node.size(); ++k)
      if (node[k][0] == id) i = (int)k;
    if (i < 0) {
      node.push_back({id, (int)node.size()});
      i = (int)node.size() - 1;
    }
    while (node[i][1] != i) i = node[i][1];
    return i;
  }
  bool unite(int a, int b) {
    int ra = find(a), rb = find(b);
    if (ra == rb) return false;
    node[ra][1] = rb;
    return true;
  }
};

// Collapses the edge (t0, a0-b0), joining two distinct vertex classes, and
// deletes every tetrahedron around it.  Internal edges may not join two
// boundary vertices; boundary edges are fine (the contraction restricts to an
// edge contraction of the boundary surface).  Legality follows the standard
// chain conditions: per triangle containing e the two side edges must merge
// without closing a cycle and without accumulating more than two boundary
// sides, and per ring tetrahedron the two side faces likewise (boundary as a
// single shared node).
bool try_collapse_edge(Mesh& m, const Skeleton& sk, int t0, int a0, int b0,
                       std::vector<char>& touched) {
  Ring ring = walk_ring(m, t0, a0, b0);
  const int len = (int)ring.slots.size();
  if (len == 0) return false;
  for (int i = 0; i < len; ++i)
    for (int j = i + 1; j < len; ++j)
      if (ring.slots[i].tet == ring.slots[j].tet) return false;

  int u = sk.vclass(t0, a0), v = sk.vclass(t0, b0);
  if (u == v) return false;
  if (ring.closed && sk.vertex_on_boundary[u] && sk.vertex_on_boundary[v])
    return false;  // an internal edge may not join two boundary vertices
  for (const RingSlot& s : ring.slots) {
    if (touched[sk.vclass(s.tet, s.a)] || touched[sk.vclass(s.tet, s.b)] ||
        touched[sk.vclass(s.tet, s.c)] || touched[sk.vclass(s.tet, s.d)])
      return false;
  }

  // Side-edge chains.  Every triangle containing e identifies its two other
  // edges: the triangle between slots i and i+1 contributes ((a,d_i),(b,d_i)),
  // and for a boundary edge the leading boundary triangle adds ((a,c_0),(b,c_0)).
  // A merge may not close a cycle, and a merged class may keep at most two
  // boundary sides; sides on the two vanishing boundary triangles are not kept.
  struct MergePair {
    int x, y;
  };
  std::vector<MergePair> pairs;
  for (int i = 0; i < len; ++i) {
    const RingSlot& s = ring.slots[i];
    pairs.push_back({sk.eclass(s.tet, edge_index(s.a, s.d)),
                     sk.eclass(s.tet, edge_index(s.b, s.d))});
  }
  int end_slots[4] = {-1, -1, -1, -1};
  if (!ring.closed) {
    const RingSlot& F = ring.slots.front();
    const RingSlot& L = ring.slots.back();
    pairs.push_back({sk.eclass(F.tet, edge_index(F.a, F.c)),
                     sk.eclass(F.tet, edge_index(F.b, F.c))});
    end_slots[0] = sk.eclass(F.tet, edge_index(F.a, F.c));
    end_slots[1] = sk.eclass(F.tet, edge_index(F.b, F.c));
    end_slots[2] = sk.eclass(L.tet, edge_index(L.a, L.d));
    end_slots[3] = sk.eclass(L.tet, edge_index(L.b, L.d));
    int ecls = sk.eclass(t0, edge_index(a0, b0));
    for (int z : end_slots)
      if (z == ecls) return false;
  }
  // weight = boundary sides a class keeps after the vanishing triangles go;
  // a merged class is a legal boundary edge iff its group keeps <= 2 sides
  auto surviving_sides = [&](int cls) {
    if (!sk.edge_on_boundary[cls]) return 0;
    int vanish = 0;
    for (int z : end_slots)
      if (z == cls) ++vanish;
    return 2 - vanish;
  };
  MicroDsu edges;
  {
    for (const MergePair& p : pairs) {
      if (p.x == p.y) return false;
      if (!edges.unite(p.x, p.y)) return false;
    }
    std::vector<int> seen_cls;
    std::vector<std::array<int, 2>> group_sides;  // (root, total)
    for (const MergePair& p : pairs) {
      for (int cls : {p.x, p.y}) {
        bool dup = false;
        for (int z : seen_cls)
          if (z == cls) dup = true;
        if (dup) continue;
        seen_cls.push_back(cls);
        int root = edges.find(cls);
        bool found = false;
        for (auto& g : group_sides)
          if (g[0] == root) {
            g[1] += surviving_sides(cls);
            found = true;
          }
        if (!found) group_sides.push_back({root, surviving_sides(cls)});
      }
    }
    for (auto& g : group_sides)
      if (g[1] > 2) return false;
  }

  // side-face chains: each ring tetrahedron flattens its faces opposite a
  // and b onto each other
  const int face_sentinel = sk.face_count;
  MicroDsu faces;
  for (const RingSlot& s : ring.slots) {
    int fa = sk.fclass(s.tet, s.a);
    int fb = sk.fclass(s.tet, s.b);
    if (fa == fb) return false;
    if (m.adj(s.tet, s.a) < 0 && !faces.unite(fa, face_sentinel)) return false;
    if (m.adj(s.tet, s.b) < 0 && !faces.unite(fb, face_sentinel)) return false;
    if (!faces.unite(fa, fb)) return false;
  }

  // resolve the side-face chains: each ring tet is a wire joining its two
  // side slots; follow chains from external (or boundary) endpoints
  auto side_of = [&](int tet, int face) -> std::pair<int, int> {
    for (int i = 0; i < len; ++i) {
      if (ring.slots[i].tet != tet) continue;
      if (ring.slots[i].a == face) return {i, 0};
      if (ring.slots[i].b == face) return {i, 1};
    }
    return {-1, -1};
  };
  std::vector<char> wire_done(len, 0);
  struct Pending {
    int t1, f1, t2, f2;
    Perm4 p;
    bool to_boundary1 = false, to_boundary2 = false;
    BoundaryLabel l1 = BoundaryLabel::Other, l2 = BoundaryLabel::Other;
  };
  std::vector<Pending> plan;
  for (int i = 0; i < len; ++i) {
    for (int start_side = 0; start_side < 2 && !wire_done[i]; ++start_side) {
      const RingSlot& s = ring.slots[i];
      int face0 = start_side == 0 ? s.a : s.b;
      Outer o0 = read_outer(m, s.tet, face0);
      if (!o0.boundary && side_of(o0.tet, o0.face).first >= 0)
        continue;  // interior of a chain; wait for its endpoint
      // walk the chain
      Perm4 acc;  // start labels -> current tet labels
      bool start_is_boundary = o0.boundary;
      BoundaryLabel start_label = o0.label;
      int st = -1, sf = -1;
      if (!o0.boundary) {
        st = o0.tet;
        sf = o0.face;
        acc = o0.to_partner.inverse();
      } else {
        acc = Perm4::identity();  // unused until rebased
      }
      int cur = i, cur_side = start_side;
      for (;;) {
        const RingSlot& cs = ring.slots[cur];
        wire_done[cur] = 1;
        Perm4 flat = Perm4::transposition(cs.a, cs.b);
        acc = flat * acc;
        int exit_face = cur_side == 0 ? cs.b : cs.a;
        Outer oe = read_outer(m, cs.tet, exit_face);
        if (oe.boundary) {
          if (start_is_boundary)
            throw TriangulationError("edge collapse: boundary chain slipped through");
          plan.push_back(
              {st, sf, -1, -1, Perm4(), false, true, BoundaryLabel::Other, oe.label});
          break;
        }
        auto [j, jside] = side_of(oe.tet, oe.face);
        if (j < 0) {
          if (start_is_boundary) {
            plan.push_back({oe.tet, oe.face, -1, -1, Perm4(), false, true,
                            BoundaryLabel::Other, start_label});
          } else {
            plan.push_back(
                {st, sf, oe.tet, oe.face, oe.to_partner * acc, false, false,
                 BoundaryLabel::Other, BoundaryLabel::Other});
          }
          break;
        }
        acc = oe.to_partner * acc;
        cur = j;
        cur_side = jside;
      }
    }
  }
  for (const Pending& p : plan) {
    if (p.to_boundary2) {
      m.set_boundary(p.t1, p.f1, p.l2);
    } else {
      m.set_pair(p.t1, p.f1, p.t2, p.f2, p.p);
    }
  }
  for (const RingSlot& s : ring.slots) {
    m.kill(s.tet);
    touched[sk.vclass(s.tet, s.a)] = 1;
    touched[sk.vclass(s.tet, s.b)] = 1;
    touched[sk.vclass(s.tet, s.c)] = 1;
    touched[sk.vclass(s.tet, s.d)] = 1;
  }
  return true;
}

// ---- open-book cut (used to escape plateaus) --------------------------------

// Cuts along an internal triangle that meets the boundary in an arc of one or
// two of its edges (the inverse of the fold above).  The cut does not change
// the manifold, but it grows the boundary and can split vertex classes apart,
// which re-arms the vertex-separation moves.
bool try_open_book(Mesh& m, const Skeleton& sk, int t, int f) {
  if (m.adj(t, f) < 0) return false;
  int verts[3], nv = 0;
  for (int x = 0; x < 4; ++x)
    if (x != f) verts[nv++] = x;
  struct FaceEdge {
    int x, y, cls;
    bool bdry;
  };
  FaceEdge fe[3];
  int nb = 0;
  for (int i = 0; i < 3; ++i) {
    int x = verts[i], y = verts[(i + 1) % 3];
    int cls = sk.eclass(t, edge_index(x, y));
    fe[i] = {x, y, cls, (bool)sk.edge_on_boundary[cls]};
    if (fe[i].bdry) ++nb;
  }
  if (nb < 1 || nb > 2) return false;
  if (fe[0].cls == fe[1].cls || fe[0].cls == fe[2].cls || fe[1].cls == fe[2].cls)
    return false;
  if (nb == 1) {
    // the vertex opposite the boundary edge must be interior, or the cut
    // would touch the boundary outside the arc
    for (int i = 0; i < 3; ++i) {
      if (!fe[i].bdry) continue;
      int opp = verts[(i + 2) % 3];
      if (sk.vertex_on_boundary[sk.vclass(t, opp)]) return false;
    }
  }

  // the new boundary disks join the old boundary along the arc; every old
  // boundary triangle at the arc must agree on a label for them to inherit
  BoundaryLabel l{};
  bool have_label = false;
  for (int i = 0; i < 3; ++i) {
    if (!fe[i].bdry) continue;
    Ring r = walk_ring(m, t, fe[i].x, fe[i].y);
    if (r.closed || r.slots.empty()) return false;
    BoundaryLabel la = m.label(r.slots.front().tet, r.slots.front().d);
    BoundaryLabel lb = m.label(r.slots.back().tet, r.slots.back().c);
    if (la != lb) return false;
    if (have_label && la != l) return false;
    l = la;
    have_label = true;
  }

  Outer o = read_outer(m, t, f);
  m.set_boundary(t, f, l);
  m.set_boundary(o.tet, o.face, l);
  return true;
}

// ---- 4-4 rotation (used to escape plateaus) ---------------------------------

// Rotates the octahedron formed by the four tetrahedra around a degree-four
// internal edge (A,B): the axis moves from (A,B) to the equator diagonal
// (Q0,Q2).  Size-neutral, but it reshuffles edge degrees, which frees other
// moves.
bool try_four_four(Mesh& m, int t, int a, int b) {
  Ring ring = walk_ring(m, t, a, b);
  if (!ring.closed || ring.slots.size() != 4) return false;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (ring.slots[i].tet == ring.slots[j].tet) return false;

  // Slot i is the tet (A, B, Q_{i-1}, Q_i).  New tets n_j = (Q0, Q2, X_j,
  // X_{j+1}) with X = (Q1, A, Q3, B); labels 0=Q0, 1=Q2, 2=X_j, 3=X_{j+1}.
  int n[4];
  for (int j = 0; j < 4; ++j) n[j] = m.spawn();
  for (int j = 0; j < 4; ++j)
    m.set_pair(n[j], 2, n[(j + 1) % 4], 3, Perm4(0, 1, 3, 2));

  // Old outer faces: top (A,Q_{i-1},Q_i) opposite b_i, bottom (B,Q_{i-1},Q_i)
  // opposite a_i.  Their new homes, with (new tet, new face, images of
  // A/B-off-face, Q_{i-1}, Q_i):
  static const int top[4][4] = {  // new tet idx, new face, img c, img d
      {1, 1, 3, 0}, {0, 1, 0, 2}, {0, 0, 2, 1}, {1, 0, 1, 3}};
  static const int bot[4][4] = {
      {2, 1, 2, 0}, {3, 1, 0, 3}, {3, 0, 3, 1}, {2, 0, 1, 2}};
  static const int img_apex_top[4] = {2, 3, 3, 2};  // label of A in the new tet
  static const int img_apex_bot[4] = {3, 2, 2, 3};  // label of B in the new tet

  Rewire rw;
  for (int i = 0; i < 4; ++i) {
    const RingSlot& s = ring.slots[i];
    {
      int img[4];
      img[s.a] = img_apex_top[i];
      img[s.b] = top[i][1];  // off-face vertex carries the new face index
      img[s.c] = top[i][2];
      img[s.d] = top[i][3];
      rw.old_slots.push_back({s.tet, s.b});
      rw.new_slots.push_back({n[top[i][0]], top[i][1]});
      rw.maps.push_back(Perm4(img[0], img[1], img[2], img[3]));
    }
    {
      int img[4];
      img[s.b] = img_apex_bot[i];
      img[s.a] = bot[i][1];
      img[s.c] = bot[i][2];
      img[s.d] = bot[i][3];
      rw.old_slots.push_back({s.tet, s.a});
      rw.new_slots.push_back({n[bot[i][0]], bot[i][1]});
      rw.maps.push_back(Perm4(img[0], img[1], img[2], img[3]));
    }
  }
  rw.apply(m);
  for (const RingSlot& s : ring.slots) m.kill(s.tet);
  return true;
}

// ---- 1-4 subdivision (used to escape plateaus) ------------------------------

// Replaces a tetrahedron with the four-tet cone over a new interior vertex.
// Strictly uphill, but it restores interior structure in triangulations whose
// whole one-skeleton has drifted onto the boundary, where the vertex-based
// moves have nothing left to act on.
bool try_one_four(Mesh& m, int t) {
  if (!m.live(t)) return false;
  int n[4];
  for (int i = 0; i < 4; ++i) n[i] = m.spawn();
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      m.set_pair(n[i], j, n[j], i, Perm4::transposition(i, j));
  Rewire rw;
  for (int f = 0; f < 4; ++f) {
    rw.old_slots.push_back({t, f});
    rw.new_slots.push_back({n[f], f});
    rw.maps.push_back(Perm4::identity());
  }
  rw.apply(m);
  m.kill(t);
  return true;
}

// ---- 2-3 insertion (used to escape plateaus) --------------------------------

bool try_two_three(Mesh& m, int t, int f) {
  if (m.adj(t, f) < 0) return false;
  int u = m.adj(t, f);
  if (u == t) return false;
  Perm4 p = m.gluing(t, f);
  int g = p[f];

  int v[3], k = 0;
  for (int x = 0; x < 4; ++x)
    if (x != f) v[k++] = x;
  int w[3] = {p[v[0]], p[v[1]], p[v[2]]};

  // New tets n_i = (A, B, V_i, V_{i+1}), labels 0=A (vertex f of t),
  // 1=B (vertex g of u), 2=V_i, 3=V_{i+1}.
  int n[3];
  for (int i = 0; i < 3; ++i) n[i] = m.spawn();
  for (int i = 0; i < 3; ++i)
    m.set_pair(n[i], 2, n[(i + 1) % 3], 3, Perm4(0, 1, 3, 2));

  Rewire rw;
  for (int j = 0; j < 3; ++j) {
    int i = (j + 1) % 3;
    // t's face opposite v[j] becomes n_i's face 1
    {
      int img[4];
      img[f] = 0;
      img[v[(j + 1) % 3]] = 2;
      img[v[(j + 2) % 3]] = 3;
      img[v[j]] = 1;
      rw.old_slots.push_back({t, v[j]});
      rw.new_slots.push_back({n[i], 1});
      rw.maps.push_back(Perm4(img[0], img[1], img[2], img[3]));
    }
    // u's face opposite w[j] becomes n_i's face 0
    {
      int img[4];
      img[g] = 1;
      img[w[(j + 1) % 3]] = 2;
      img[w[(j + 2) % 3]] = 3;
      img[w[j]] = 0;
      rw.old_slots.push_back({u, w[j]});
      rw.new_slots.push_back({n[i], 0});
      rw.maps.push_back(Perm4(img[0], img[1], img[2], img[3]));
    }
  }
  rw.apply(m);
  m.kill(t);
  m.kill(u);
  return true;
}

// ---- driver -----------------------------------------------------------------

// Tet visit order for one sweep.  A deterministic scan always walks back into
// the same fixed point; shuffling between sweeps lets repeated reductions of
// one triangulation land in different places, which the plateau loop exploits.
std::vector<int> sweep_order(const Mesh& m, std::mt19937_64* rng) {
  std::vector<int> order;
  order.reserve(m.size());
  for (int t = 0; t < m.size(); ++t) order.push_back(t);
  if (rng)
    for (size_t i = order.size(); i > 1; --i)
      std::swap(order[i - 1], order[(*rng)() % i]);
  return order;
}

// One full sweep of monotone moves; returns number of moves applied.
int monotone_sweep(Mesh& m, int target, std::mt19937_64* rng) {
  int moves = 0;

  // ring moves need only local walks
  for (int t : sweep_order(m, rng)) {
    if (!m.live(t)) continue;
    if (try_snap_delete(m, t)) {
      ++moves;
      continue;
    }
    for (int e = 0; e < 6 && m.live(t); ++e) {
      int a = kEdgeVertices[e][0], b = kEdgeVertices[e][1];
      if (try_three_two(m, t, a, b) || try_two_zero(m, t, a, b)) ++moves;
      if (target && m.alive <= target) return moves;
    }
  }

  // shelling and book-closing batch against one skeleton snapshot; spacing
  // rule: no two applied moves may share a vertex class, so every legality
  // check made against the snapshot stays true as the batch is applied
  m.compact();
  ClassInfo info(m.tri);
  std::vector<char> touched(info.sk.vertex_count, 0);
  std::vector<int> order = sweep_order(m, rng);
  for (int t : order) {
    if (!m.live(t)) continue;
    for (int e = 0; e < 6 && m.live(t); ++e) {
      if (try_collapse_edge(m, info.sk, t, kEdgeVertices[e][0],
                            kEdgeVertices[e][1], touched))
        ++moves;
      if (target && m.alive <= target) return moves;
    }
  }
  for (int t : order) {
    if (!m.live(t)) continue;
    bool clash = false;
    for (int c = 0; c < 4; ++c)
      if (touched[info.sk.vclass(t, c)]) clash = true;
    if (clash) continue;
    if (try_shell(m, info.sk, t)) {
      ++moves;
      for (int c = 0; c < 4; ++c) touched[info.sk.vclass(t, c)] = 1;
      if (target && m.alive <= target) return moves;
    }
  }
  for (int t : order) {
    if (!m.live(t)) continue;
    for (int f = 0; f < 4; ++f) {
      if (m.adj(t, f) >= 0) continue;
      for (int a = 0; a < 4; ++a) {
        for (int b = a + 1; b < 4; ++b) {
          if (a == f || b == f) continue;
          if (try_close_book(m, info.sk, t, a, b, touched)) ++moves;
        }
      }
    }
  }
  return moves;
}

void reduce_to_fixed_point(Mesh& m, int target, std::mt19937_64* rng = nullptr) {
  while (m.alive > 0 && (!target || m.alive > target)) {
    int moves = monotone_sweep(m, target, rng);
    if (m.size() > 2 * m.alive) m.compact();
    if (moves == 0) break;
  }
  m.compact();
}

}  // namespace

GluedTriangulation simplify(const GluedTriangulation& tri,
                            const SimplifyOptions& opts) {
  std::mt19937_64 rng(opts.seed);
  Mesh mesh(tri);
  reduce_to_fixed_point(mesh, opts.target_tets, &rng);
  GluedTriangulation best = mesh.tri;

  if (opts.target_tets && best.size() <= opts.target_tets) return best;

  GluedTriangulation cur = best;
  long dbg_44 = 0, dbg_ob = 0, dbg_23 = 0, dbg_14 = 0, dbg_rounds = 0;
  for (int stale = 0; stale < opts.plateau_rounds;) {
    if (best.size() <= 2 || best.size() > opts.max_jiggle_tets) break;
    if (opts.target_tets && best.size() <= opts.target_tets) break;
    ++dbg_rounds;
    Mesh work(cur);
    // size-neutral shuffle: a burst of random 4-4 rotations
    int rotations = 1 + (int)(rng() % 24);
    for (int i = 0; i < rotations; ++i) {
      for (int tries = 0; tries < 64; ++tries) {
        int t = (int)(rng() % (std::uint64_t)work.size());
        int e = (int)(rng() % 6);
        if (!work.live(t)) continue;
        if (try_four_four(work, t, kEdgeVertices[e][0], kEdgeVertices[e][1])) {
          ++dbg_44;
          break;
        }
      }
    }
    // climb and cut in compound bursts; a single perturbation gets undone by
    // the very next greedy sweep, so pile several on before reducing
    int style = (int)(rng() % 4);
    if (style == 0 || style == 2) {
      int cuts = 2 + (int)(rng() % 10);
      for (int i = 0; i < cuts; ++i) {
        work.compact();
        ClassInfo info(work.tri);
        for (int tries = 0; tries < 64; ++tries) {
          int t = (int)(rng() % (std::uint64_t)work.size());
          int f = (int)(rng() % 4);
          if (try_open_book(work, info.sk, t, f)) { ++dbg_ob; break; }
        }
      }
    }
    if (style == 1 || style == 2) {
      int inserts =
          1 + (int)(rng() % (std::uint64_t)(2 * opts.jiggle_inserts));
      for (int i = 0; i < inserts; ++i) {
        for (int tries = 0; tries < 64; ++tries) {
          int t = (int)(rng() % (std::uint64_t)work.size());
          int f = (int)(rng() % 4);
          if (!work.live(t)) continue;
          if (try_two_three(work, t, f)) { ++dbg_23; break; }
        }
      }
    }
    if (style == 3) {
      // re-seed interior vertices: subdivide a scattering of tetrahedra
      int subs = 2 + (int)(rng() % 8) + work.alive / 16;
      for (int i = 0; i < subs; ++i) {
        int t = (int)(rng() % (std::uint64_t)work.size());
        if (try_one_four(work, t)) ++dbg_14;
      }
    }
    work.compact();
    reduce_to_fixed_point(work, opts.target_tets, &rng);
    if (work.tri.size() < best.size()) {
      best = work.tri;
      cur = work.tri;
      stale = 0;
    } else {
      if (work.tri.size() == cur.size()) cur = work.tri;  // drift sideways
      ++stale;
    }
  }
  if (getenv("VKNOT_DBG"))
    fprintf(stderr, "plateau: rounds=%ld 44=%ld ob=%ld 23=%ld 14=%ld\n", dbg_rounds, dbg_44, dbg_ob, dbg_23, dbg_14);
  return best;
}

}  // namespace vknot
