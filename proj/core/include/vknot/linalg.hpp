#pragma once

#include <vector>

#include "vknot/arith.hpp"

namespace vknot {

// Exact rank of a dense rational matrix (destructive Gaussian elimination).
int matrix_rank(std::vector<std::vector<Rational>> rows);

int matrix_rank(const std::vector<std::vector<Integer>>& rows);

// Row-echelon accumulator for incremental rank queries.
class IncrementalRank {
 public:
  explicit IncrementalRank(int cols) : cols_(cols) {}

  // Returns true if the row increased the rank.
  bool add_row(std::vector<Rational> row);
  bool add_row(const std::vector<Integer>& row);

  int rank() const { return static_cast<int>(echelon_.size()); }
  int cols() const { return cols_; }

 private:
  int cols_;
  // Echelon rows with strictly increasing pivot columns.
  std::vector<std::vector<Rational>> echelon_;
  std::vector<int> pivot_;
};

}  // namespace vknot
