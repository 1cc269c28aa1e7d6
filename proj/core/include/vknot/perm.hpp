#pragma once

#include <array>
#include <cstdint>
#include <string>

namespace vknot {

// Permutation of {0,1,2,3}, packed two bits per image.  Used as the vertex
// map of a face gluing: perm[v] is the neighbour's label for our vertex v.
class Perm4 {
 public:
  constexpr Perm4() : bits_(0xE4) {}  // identity 3,2,1,0 packed -> 11 10 01 00
  constexpr explicit Perm4(uint8_t raw_bits) : bits_(raw_bits) {}
  constexpr Perm4(int a, int b, int c, int d)
      : bits_(static_cast<uint8_t>(a | (b << 2) | (c << 4) | (d << 6))) {}

  static constexpr Perm4 identity() { return Perm4(); }
  static constexpr Perm4 transposition(int i, int j) {
    Perm4 p = Perm4(Perm4().with(i, j));
    return Perm4(p.with(j, i));
  }

  constexpr int operator[](int i) const { return (bits_ >> (2 * i)) & 3; }

  // (p * q)[i] == p[q[i]]: apply q first, then p.
  constexpr Perm4 operator*(Perm4 q) const {
    return Perm4((*this)[q[0]], (*this)[q[1]], (*this)[q[2]], (*this)[q[3]]);
  }

  constexpr Perm4 inverse() const {
    Perm4 r(0);
    for (int i = 0; i < 4; ++i) r = Perm4(r.with((*this)[i], i));
    return r;
  }

  constexpr bool is_permutation() const {
    int seen = 0;
    for (int i = 0; i < 4; ++i) seen |= 1 << (*this)[i];
    return seen == 0xF;
  }

  constexpr int sign() const {
    int inv = 0;
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j)
        if ((*this)[i] > (*this)[j]) ++inv;
    return (inv & 1) ? -1 : 1;
  }

  constexpr uint8_t raw() const { return bits_; }
  friend constexpr bool operator==(Perm4 a, Perm4 b) { return a.bits_ == b.bits_; }
  friend constexpr bool operator!=(Perm4 a, Perm4 b) { return a.bits_ != b.bits_; }

  std::string str() const {
    std::string s = "(----)";
    for (int i = 0; i < 4; ++i) s[1 + i] = static_cast<char>('0' + (*this)[i]);
    return s;
  }

 private:
  constexpr uint8_t with(int i, int v) const {
    return static_cast<uint8_t>((bits_ & ~(3 << (2 * i))) | (v << (2 * i)));
  }
  uint8_t bits_;
};

// Vertex pairs of the six tetrahedron edges, in a fixed order.
inline constexpr std::array<std::array<int, 2>, 6> kEdgeVertices = {{
    {0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

constexpr int edge_index(int a, int b) {
  if (a > b) { int t = a; a = b; b = t; }
  if (a == 0) return b - 1;       // 01,02,03 -> 0,1,2
  if (a == 1) return b + 1;       // 12,13    -> 3,4
  return 5;                       // 23       -> 5
}

}  // namespace vknot
