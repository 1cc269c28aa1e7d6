#include "vknot/linalg.hpp"

namespace vknot {

bool IncrementalRank::add_row(std::vector<Rational> row) {
  if (static_cast<int>(row.size()) != cols_) return false;
  for (size_t k = 0; k < echelon_.size(); ++k) {
    int p = pivot_[k];
    if (row[p] == 0) continue;
    Rational factor = row[p] / echelon_[k][p];
    for (int j = p; j < cols_; ++j) row[j] -= factor * echelon_[k][j];
  }
  int p = -1;
  for (int j = 0; j < cols_; ++j)
    if (row[j] != 0) {
      p = j;
      break;
    }
  if (p < 0) return false;
  // Keep pivot columns strictly increasing.
  size_t pos = 0;
  while (pos < pivot_.size() && pivot_[pos] < p) ++pos;
  echelon_.insert(echelon_.begin() + pos, std::move(row));
  pivot_.insert(pivot_.begin() + pos, p);
  return true;
}

bool IncrementalRank::add_row(const std::vector<Integer>& row) {
  std::vector<Rational> q(row.size());
  for (size_t i = 0; i < row.size(); ++i) q[i] = Rational(row[i]);
  return add_row(std::move(q));
}

int matrix_rank(std::vector<std::vector<Rational>> rows) {
  if (rows.empty()) return 0;
  IncrementalRank acc(static_cast<int>(rows[0].size()));
  for (auto& r : rows) acc.add_row(std::move(r));
  return acc.rank();
}

int matrix_rank(const std::vector<std::vector<Integer>>& rows) {
  if (rows.empty()) return 0;
  IncrementalRank acc(static_cast<int>(rows[0].size()));
  for (const auto& r : rows) acc.add_row(r);
  return acc.rank();
}

}  // namespace vknot
