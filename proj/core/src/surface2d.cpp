#include "vknot/surface2d.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace vknot {

namespace {

struct UnionFind {
  std::vector<int32_t> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

bool is_closed_surface(const Surface2& s, std::string* reason) {
  auto fail = [&](const char* r) {
    if (reason) *reason = r;
    return false;
  };
  const int n = s.size();
  for (int t = 0; t < n; ++t) {
    const auto& tr = s.tris[t];
    if (tr.v[0] == tr.v[1] || tr.v[0] == tr.v[2] || tr.v[1] == tr.v[2])
      return fail("triangle with a repeated vertex class");
    for (int j = 0; j < 3; ++j) {
      if (tr.v[j] < 0 || tr.v[j] >= s.vertex_count) return fail("vertex class out of range");
      Surface2::Neighbor nb = tr.nbr[j];
      if (nb.tri < 0 || nb.tri >= n || nb.slot < 0 || nb.slot > 2)
        return fail("unglued or malformed edge slot");
      if (nb.tri == t && nb.slot == j) return fail("edge glued to itself");
      const auto& other = s.tris[nb.tri];
      if (other.nbr[nb.slot].tri != t || other.nbr[nb.slot].slot != j)
        return fail("edge adjacency not involutive");
      int a = tr.v[j], b = tr.v[(j + 1) % 3];
      int a2 = other.v[nb.slot], b2 = other.v[(nb.slot + 1) % 3];
      if (a != b2 || b != a2) return fail("edge endpoints do not match reversed");
    }
  }
  // Corner cycles: from corner j of t, cross slot j and land on the corner of
  // the same vertex in the neighbour.  Every vertex class must give one orbit.
  std::vector<char> seen(3 * n, 0);
  std::vector<int32_t> orbits(s.vertex_count, 0);
  std::vector<char> touched(s.vertex_count, 0);
  for (int start = 0; start < 3 * n; ++start) {
    if (seen[start]) continue;
    int cls = s.tris[start / 3].v[start % 3];
    ++orbits[cls];
    touched[cls] = 1;
    int cur = start;
    while (!seen[cur]) {
      seen[cur] = 1;
      int t = cur / 3, j = cur % 3;
      Surface2::Neighbor nb = s.tris[t].nbr[j];
      cur = 3 * nb.tri + (nb.slot + 1) % 3;
      if (s.tris[cur / 3].v[cur % 3] != cls) return fail("corner walk left its vertex class");
    }
    if (cur != start) return fail("corner walk is not a cycle");
  }
  for (int v = 0; v < s.vertex_count; ++v) {
    if (!touched[v]) return fail("vertex class with no corner");
    if (orbits[v] != 1) return fail("vertex link is not a single circle");
  }
  return true;
}

long long surface_euler_characteristic(const Surface2& s) {
  long long pairs = 0;
  for (int t = 0; t < s.size(); ++t)
    for (int j = 0; j < 3; ++j) {
      Surface2::Neighbor nb = s.tris[t].nbr[j];
      if (nb.tri > t || (nb.tri == t && nb.slot > j)) ++pairs;
    }
  return static_cast<long long>(s.vertex_count) - pairs + s.size();
}

std::vector<int32_t> surface_components(const Surface2& s, int* count) {
  std::vector<int32_t> comp(s.size(), -1);
  int next = 0;
  std::vector<int32_t> stack;
  for (int t0 = 0; t0 < s.size(); ++t0) {
    if (comp[t0] >= 0) continue;
    comp[t0] = next;
    stack.push_back(t0);
    while (!stack.empty()) {
      int t = stack.back();
      stack.pop_back();
      for (int j = 0; j < 3; ++j) {
        int u = s.tris[t].nbr[j].tri;
        if (u >= 0 && comp[u] < 0) {
          comp[u] = next;
          stack.push_back(u);
        }
      }
    }
    ++next;
  }
  if (count) *count = next;
  return comp;
}

namespace {

// Local vertex ids within one crossing square, centre last.
enum : int { kNW = 0, kN, kNE, kE, kSE, kS, kSW, kW, kC };

struct SlotRef {
  int tri;  // local triangle index within the square
  int slot;
};

// Boundary edges flanking each port, in the square's cyclic corner order
// NW, N, NE, E, SE, S, SW, W.
SlotRef edge_prev(int port) {
  switch (port) {
    case kN: return {1, 2};
    case kE: return {3, 2};
    case kS: return {5, 2};
    default: return {7, 2};  // kW
  }
}
SlotRef edge_next(int port) {
  switch (port) {
    case kN: return {2, 0};
    case kE: return {4, 0};
    case kS: return {6, 0};
    default: return {0, 0};  // kW
  }
}
int corner_prev(int port) {
  switch (port) {
    case kN: return kNW;
    case kE: return kNE;
    case kS: return kSE;
    default: return kSW;
  }
}
int corner_next(int port) {
  switch (port) {
    case kN: return kNE;
    case kE: return kSE;
    case kS: return kSW;
    default: return kNW;
  }
}

}  // namespace

CanonicalSurface build_canonical_surface(const OrientedGaussCode& code) {
  const int c = code.crossing_count;
  if (c < 1) throw std::invalid_argument("canonical surface needs at least one crossing");

  // The under-strand runs W -> E.  The over-strand runs S -> N when, seen from
  // the under direction, the other strand passes right-to-left; N -> S
  // otherwise.  The under pass's side symbol is the authoritative record.
  std::vector<char> northbound(c, 1);
  for (const CrossingPass& p : code.passes)
    if (!p.over) northbound[p.crossing_id - 1] = (p.side == Side::RightToLeft);

  Surface2 raw;
  raw.vertex_count = 9 * c;
  raw.tris.resize(8 * c);
  // Eight-triangle square: a fan pair per quadrant around the centre, all
  // counterclockwise.
  static const int kTriangle[8][3] = {
      {kNW, kW, kC}, {kNW, kC, kN}, {kNE, kN, kC}, {kNE, kC, kE},
      {kSE, kE, kC}, {kSE, kC, kS}, {kSW, kS, kC}, {kSW, kC, kW}};
  auto glue = [&raw](int t1, int s1, int t2, int s2) {
    raw.tris[t1].nbr[s1] = {t2, s2};
    raw.tris[t2].nbr[s2] = {t1, s1};
  };
  for (int k = 0; k < c; ++k) {
    for (int i = 0; i < 8; ++i)
      for (int j = 0; j < 3; ++j) raw.tris[8 * k + i].v[j] = 9 * k + kTriangle[i][j];
    // Interior edges form a cycle of the eight triangles around the centre.
    static const int kInterior[8][4] = {{0, 2, 1, 0}, {1, 1, 2, 1}, {2, 2, 3, 0}, {3, 1, 4, 1},
                                        {4, 2, 5, 0}, {5, 1, 6, 1}, {6, 2, 7, 0}, {7, 1, 0, 1}};
    for (const int* g : kInterior) glue(8 * k + g[0], g[1], 8 * k + g[2], g[3]);
  }

  UnionFind uf(9 * c);
  const int visits = 2 * c;
  auto square = [&](int visit) { return code.passes[visit].crossing_id - 1; };
  auto exit_port = [&](int visit) {
    const CrossingPass& p = code.passes[visit];
    if (!p.over) return kE;
    return northbound[p.crossing_id - 1] ? kN : kS;
  };
  auto entry_port = [&](int visit) {
    const CrossingPass& p = code.passes[visit];
    if (!p.over) return kW;
    return northbound[p.crossing_id - 1] ? kS : kN;
  };
  for (int i = 0; i < visits; ++i) {
    int a = square(i), b = square((i + 1) % visits);
    int x = exit_port(i), y = entry_port((i + 1) % visits);
    SlotRef pa = edge_prev(x), nb = edge_next(y);
    glue(8 * a + pa.tri, pa.slot, 8 * b + nb.tri, nb.slot);
    SlotRef na = edge_next(x), pb = edge_prev(y);
    glue(8 * a + na.tri, na.slot, 8 * b + pb.tri, pb.slot);
    uf.unite(9 * a + x, 9 * b + y);
    uf.unite(9 * a + corner_prev(x), 9 * b + corner_next(y));
    uf.unite(9 * a + corner_next(x), 9 * b + corner_prev(y));
  }

  // Deterministic class ids in order of first appearance.
  std::vector<int32_t> cls(9 * c, -1);
  int classes = 0;
  for (int v = 0; v < 9 * c; ++v) {
    int r = uf.find(v);
    if (cls[r] < 0) cls[r] = classes++;
    cls[v] = cls[r];
  }

  CanonicalSurface out;
  out.crossings = c;
  out.surf = raw;
  out.surf.vertex_count = classes;
  for (auto& t : out.surf.tris)
    for (int j = 0; j < 3; ++j) t.v[j] = cls[t.v[j]];

  std::string why;
  if (!is_closed_surface(out.surf, &why))
    throw std::logic_error("canonical surface is not a closed surface: " + why);

  std::set<int> corner_classes;
  for (int k = 0; k < c; ++k)
    for (int corner : {kNW, kNE, kSE, kSW}) corner_classes.insert(cls[9 * k + corner]);
  out.boundary_circles = static_cast<int>(corner_classes.size());

  long long chi = surface_euler_characteristic(out.surf);
  if (chi != out.boundary_circles - c || ((2 - chi) & 1))
    throw std::logic_error("canonical surface Euler characteristic mismatch");
  out.genus = static_cast<int>((2 - chi) / 2);
  if (out.genus < 0) throw std::logic_error("canonical surface has negative genus");

  out.verts.resize(c);
  out.edges.resize(c);
  for (int k = 0; k < c; ++k) {
    out.verts[k] = {cls[9 * k + kNW], cls[9 * k + kN], cls[9 * k + kNE],
                    cls[9 * k + kE],  cls[9 * k + kSE], cls[9 * k + kS],
                    cls[9 * k + kSW], cls[9 * k + kW],  cls[9 * k + kC]};
    out.edges[k].wc = {8 * k + 0, 1};
    out.edges[k].ce = {8 * k + 3, 1};
    out.edges[k].sc = {8 * k + 6, 1};
    out.edges[k].cn = {8 * k + 1, 1};
  }

  // Knot cycle: under-strands at height 1, over-strands at height 2, with a
  // vertical step at any port where the role switches.
  for (int i = 0; i < visits; ++i) {
    const CrossingPass& p = code.passes[i];
    int k = p.crossing_id - 1;
    const CanonicalSurface::CrossingVerts& cv = out.verts[k];
    KnotNode triple[3];
    if (!p.over) {
      triple[0] = {cv.w, 1};
      triple[1] = {cv.c, 1};
      triple[2] = {cv.e, 1};
    } else if (northbound[k]) {
      triple[0] = {cv.s, 2};
      triple[1] = {cv.c, 2};
      triple[2] = {cv.n, 2};
    } else {
      triple[0] = {cv.n, 2};
      triple[1] = {cv.c, 2};
      triple[2] = {cv.s, 2};
    }
    for (const KnotNode& node : triple) {
      if (!out.knot.empty() && out.knot.back() == node) continue;
      if (!out.knot.empty() && out.knot.back().vertex != node.vertex &&
          out.knot.back().level != node.level)
        throw std::logic_error("knot strands do not meet at a port");
      out.knot.push_back(node);
    }
  }
  if (out.knot.size() > 1 && out.knot.front() == out.knot.back()) out.knot.pop_back();

  std::set<KnotNode> distinct(out.knot.begin(), out.knot.end());
  if (distinct.size() != out.knot.size())
    throw std::logic_error("knot cycle is not embedded");
  for (size_t i = 0; i < out.knot.size(); ++i) {
    const KnotNode& a = out.knot[i];
    const KnotNode& b = out.knot[(i + 1) % out.knot.size()];
    bool vertical = a.vertex == b.vertex && a.level != b.level;
    bool horizontal = a.level == b.level && a.vertex != b.vertex;
    if (!vertical && !horizontal) throw std::logic_error("malformed knot step");
  }

  // Locate each step in the complex.  The horizontal steps of the cycle are,
  // in order, the strand halves of the visits; a vertical step borrows the
  // following horizontal step's starting corner.
  std::vector<EdgeRef> horizontal;
  for (int i = 0; i < visits; ++i) {
    const CrossingPass& p = code.passes[i];
    int k = p.crossing_id - 1;
    if (!p.over) {
      horizontal.push_back(out.edges[k].wc);
      horizontal.push_back(out.edges[k].ce);
    } else if (northbound[k]) {
      horizontal.push_back(out.edges[k].sc);
      horizontal.push_back(out.edges[k].cn);
    } else {
      horizontal.push_back({8 * k + 2, 1});  // N -> C, the far side of cn
      horizontal.push_back({8 * k + 5, 1});  // C -> S, the far side of sc
    }
  }
  const size_t len = out.knot.size();
  out.knot_steps.resize(len);
  std::vector<size_t> vertical_steps;
  size_t next_h = 0;
  for (size_t i = 0; i < len; ++i) {
    const KnotNode& a = out.knot[i];
    const KnotNode& b = out.knot[(i + 1) % len];
    if (a.level != b.level) {
      vertical_steps.push_back(i);
      continue;
    }
    if (next_h >= horizontal.size()) throw std::logic_error("knot step bookkeeping mismatch");
    EdgeRef r = horizontal[next_h++];
    const auto& t = out.surf.tris[r.tri];
    if (t.v[r.slot] != a.vertex || t.v[(r.slot + 1) % 3] != b.vertex)
      throw std::logic_error("knot step does not match its edge");
    out.knot_steps[i] = r;
  }
  if (next_h != horizontal.size()) throw std::logic_error("unused knot strand half");
  for (size_t i : vertical_steps) {
    EdgeRef next_ref = out.knot_steps[(i + 1) % len];
    if (next_ref.tri < 0) throw std::logic_error("vertical step not followed by a strand");
    if (out.surf.tris[next_ref.tri].v[next_ref.slot] != out.knot[i].vertex)
      throw std::logic_error("vertical step starting corner mismatch");
    out.knot_steps[i] = next_ref;
  }
  return out;
}

}  // namespace vknot
