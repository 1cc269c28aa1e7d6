#include "vknot/enumerate.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>

#include "vknot/linalg.hpp"

namespace vknot {

namespace {

struct Bits {
  std::vector<uint64_t> w;

  explicit Bits(int n = 0) : w((n + 63) / 64, 0) {}
  void set(int i) { w[i >> 6] |= uint64_t(1) << (i & 63); }
  bool test(int i) const { return (w[i >> 6] >> (i & 63)) & 1; }

  static int intersection_count(const Bits& a, const Bits& b) {
    int c = 0;
    for (size_t i = 0; i < a.w.size(); ++i)
      c += std::popcount(a.w[i] & b.w[i]);
    return c;
  }
  // (a & b) subset of c
  static bool intersection_subset(const Bits& a, const Bits& b, const Bits& c) {
    for (size_t i = 0; i < a.w.size(); ++i)
      if ((a.w[i] & b.w[i]) & ~c.w[i]) return false;
    return true;
  }
};

struct Ray {
  std::vector<Integer> x;
  Bits zero;
};

Bits zero_set(const std::vector<Integer>& x) {
  Bits z(static_cast<int>(x.size()));
  for (size_t i = 0; i < x.size(); ++i)
    if (x[i] == 0) z.set(static_cast<int>(i));
  return z;
}

// Rank-based adjacency: u, w are adjacent in the cone cut out by the
// processed rows and the nonnegativity constraints iff the common zero set,
// imposed as equations on top of the rows, leaves exactly a 2-dimensional
// solution space.
bool adjacent_by_rank(const std::vector<std::vector<SparseTerm>>& rows,
                      int processed, int cols, const Bits& zu, const Bits& zw) {
  IncrementalRank acc(cols);
  std::vector<Rational> unit(cols, 0);
  for (int i = 0; i < cols; ++i)
    if (zu.test(i) && zw.test(i)) {
      unit[i] = 1;
      acc.add_row(unit);
      unit[i] = 0;
    }
  for (int r = 0; r < processed; ++r) {
    std::vector<Rational> row(cols, 0);
    for (const SparseTerm& term : rows[r]) row[term.col] = term.coef;
    acc.add_row(std::move(row));
  }
  return acc.rank() == cols - 2;
}

}  // namespace

std::vector<std::vector<Integer>> enumerate_vertex_rays(
    const MatchingSystem& sys, const EnumerateOptions& options) {
  const int cols = sys.cols();
  std::vector<Ray> rays(cols);
  for (int i = 0; i < cols; ++i) {
    rays[i].x.assign(cols, 0);
    rays[i].x[i] = 1;
    rays[i].zero = zero_set(rays[i].x);
  }

  IncrementalRank processed_rank(cols);

  for (size_t r = 0; r < sys.rows.size(); ++r) {
    const auto& row = sys.rows[r];
    std::vector<Integer> dot(rays.size(), 0);
    for (size_t i = 0; i < rays.size(); ++i)
      for (const SparseTerm& term : row) dot[i] += term.coef * rays[i].x[term.col];

    std::vector<int> zero_side, pos, neg;
    for (size_t i = 0; i < rays.size(); ++i) {
      int s = sgn(dot[i]);
      if (s == 0) zero_side.push_back(static_cast<int>(i));
      else if (s > 0) pos.push_back(static_cast<int>(i));
      else neg.push_back(static_cast<int>(i));
    }

    // Adjacency threshold in the cone before this row.
    const int need = cols - 2 - processed_rank.rank();

    std::vector<Ray> fresh_rays;
    for (int i : pos) {
      if (options.deadline && std::chrono::steady_clock::now() > *options.deadline)
        throw BudgetExceeded("time limit hit during vertex enumeration");
      for (int j : neg) {
        const Ray& u = rays[i];
        const Ray& w = rays[j];
        if (Bits::intersection_count(u.zero, w.zero) < need) continue;
        bool adjacent = true;
        for (size_t k = 0; k < rays.size() && adjacent; ++k) {
          if (static_cast<int>(k) == i || static_cast<int>(k) == j) continue;
          if (Bits::intersection_subset(u.zero, w.zero, rays[k].zero))
            adjacent = false;
        }
        if (options.cross_check_adjacency) {
          bool by_rank = adjacent_by_rank(sys.rows, static_cast<int>(r), cols,
                                          u.zero, w.zero);
          if (by_rank != adjacent)
            throw std::logic_error("adjacency tests disagree");
        }
        if (!adjacent) continue;
        Ray fresh;
        fresh.x.resize(cols);
        for (int c = 0; c < cols; ++c)
          fresh.x[c] = dot[i] * w.x[c] - dot[j] * u.x[c];
        make_primitive(fresh.x);
        fresh.zero = zero_set(fresh.x);
        fresh_rays.push_back(std::move(fresh));
        if (options.max_rays &&
            zero_side.size() + fresh_rays.size() > options.max_rays)
          throw BudgetExceeded("ray cap hit during vertex enumeration");
      }
    }

    std::vector<Ray> next;
    next.reserve(zero_side.size() + fresh_rays.size());
    for (int i : zero_side) next.push_back(std::move(rays[i]));
    for (Ray& fresh : fresh_rays) next.push_back(std::move(fresh));
    rays = std::move(next);
    {
      std::vector<Rational> dense(cols, 0);
      for (const SparseTerm& term : row) dense[term.col] = term.coef;
      processed_rank.add_row(std::move(dense));
    }
    if (options.max_rays && rays.size() > options.max_rays)
      throw BudgetExceeded("ray cap hit during vertex enumeration");
  }

  std::vector<std::vector<Integer>> out;
  out.reserve(rays.size());
  for (Ray& ray : rays) out.push_back(std::move(ray.x));
  std::sort(out.begin(), out.end(), lex_less);
  return out;
}

std::vector<std::vector<Rational>> normalize_to_sum_one(
    const std::vector<std::vector<Integer>>& rays) {
  std::vector<std::vector<Rational>> out;
  out.reserve(rays.size());
  for (const auto& ray : rays) {
    Integer sum = 0;
    for (const Integer& x : ray) sum += x;
    std::vector<Rational> q(ray.size());
    for (size_t i = 0; i < ray.size(); ++i) {
      q[i] = Rational(ray[i], sum == 0 ? Integer(1) : sum);
      q[i].canonicalize();
    }
    out.push_back(std::move(q));
  }
  return out;
}

}  // namespace vknot
