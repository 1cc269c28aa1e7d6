#pragma once

#include <chrono>
#include <optional>
#include <stdexcept>
#include <vector>

#include "vknot/normal.hpp"

namespace vknot {

struct BudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct EnumerateOptions {
  // Abort with BudgetExceeded when the clock passes this point.
  std::optional<std::chrono::steady_clock::time_point> deadline;
  // Abort when an intermediate ray set grows beyond this size (0 = no cap).
  size_t max_rays = 0;
  // Double-check every combinatorial adjacency decision against the
  // rank-based test (slow; for tests).
  bool cross_check_adjacency = false;
};

// Extreme rays of { x >= 0, Ax = 0 } as primitive integer vectors, sorted
// lexicographically.  Double description over the rows in their stored order.
std::vector<std::vector<Integer>> enumerate_vertex_rays(
    const MatchingSystem& sys, const EnumerateOptions& options = {});

// Scales each ray to sum 1.
std::vector<std::vector<Rational>> normalize_to_sum_one(
    const std::vector<std::vector<Integer>>& rays);

}  // namespace vknot
