#include "hybridlp/sparse_matrix.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace hybridlp {

SparseMatrix::SparseMatrix(int num_rows, int num_cols)
    : num_rows_(num_rows),
      num_cols_(num_cols),
      col_start_(num_cols + 1, 0),
      row_start_(num_rows + 1, 0) {
  if (num_rows < 0 || num_cols < 0) {
    throw std::invalid_argument("negative matrix dimension");
  }
}

SparseMatrix::SparseMatrix(int num_rows, int num_cols,
                           std::span<const Triplet> triplets)
    : SparseMatrix(num_rows, num_cols) {
  std::vector<Triplet> sorted(triplets.begin(), triplets.end());
  for (const Triplet& t : sorted) {
    if (t.row < 0 || t.row >= num_rows || t.col < 0 || t.col >= num_cols) {
      throw std::invalid_argument("triplet (" + std::to_string(t.row) + ", " +
                                  std::to_string(t.col) +
                                  ") outside matrix dimensions");
    }
  }
  std::sort(sorted.begin(), sorted.end(),
            [](const Triplet& a, const Triplet& b) {
              return a.col != b.col ? a.col < b.col : a.row < b.row;
            });

  // Merge duplicates in column-major order.
  std::vector<Triplet> merged;
  merged.reserve(sorted.size());
  for (const Triplet& t : sorted) {
    if (!merged.empty() && merged.back().row == t.row &&
        merged.back().col == t.col) {
      merged.back().value += t.value;
    } else {
      merged.push_back(t);
    }
  }
  std::erase_if(merged, [](const Triplet& t) { return t.value == 0.0; });

  col_entries_.reserve(merged.size());
  for (const Triplet& t : merged) {
    ++col_start_[t.col + 1];
    ++row_start_[t.row + 1];
    col_entries_.push_back({t.row, t.value});
  }
  for (int j = 0; j < num_cols; ++j) col_start_[j + 1] += col_start_[j];
  for (int i = 0; i < num_rows; ++i) row_start_[i + 1] += row_start_[i];

  // Column-major traversal yields rows sorted by column index.
  row_entries_.resize(merged.size());
  std::vector<int> fill(row_start_.begin(), row_start_.end() - 1);
  for (const Triplet& t : merged) {
    row_entries_[fill[t.row]++] = {t.col, t.value};
  }
}

SparseMatrix SparseMatrix::from_dense(
    const std::vector<std::vector<double>>& rows) {
  const int m = static_cast<int>(rows.size());
  const int n = m == 0 ? 0 : static_cast<int>(rows.front().size());
  std::vector<Triplet> triplets;
  for (int i = 0; i < m; ++i) {
    if (static_cast<int>(rows[i].size()) != n) {
      throw std::invalid_argument("ragged dense matrix");
    }
    for (int j = 0; j < n; ++j) {
      if (rows[i][j] != 0.0) triplets.push_back({i, j, rows[i][j]});
    }
  }
  return SparseMatrix(m, n, triplets);
}

double SparseMatrix::coefficient(int i, int j) const {
  for (const Entry& e : column(j)) {
    if (e.index == i) return e.value;
  }
  return 0.0;
}

void SparseMatrix::multiply(std::span<const double> x,
                            std::span<double> out) const {
  if (static_cast<int>(x.size()) != num_cols_ ||
      static_cast<int>(out.size()) != num_rows_) {
    throw std::invalid_argument("multiply: dimension mismatch");
  }
  for (int i = 0; i < num_rows_; ++i) {
    double sum = 0.0;
    for (const Entry& e : row(i)) sum += e.value * x[e.index];
    out[i] = sum;
  }
}

void SparseMatrix::multiply_transpose(std::span<const double> y,
                                      std::span<double> out) const {
  if (static_cast<int>(y.size()) != num_rows_ ||
      static_cast<int>(out.size()) != num_cols_) {
    throw std::invalid_argument("multiply_transpose: dimension mismatch");
  }
  for (int j = 0; j < num_cols_; ++j) {
    double sum = 0.0;
    for (const Entry& e : column(j)) sum += e.value * y[e.index];
    out[j] = sum;
  }
}

std::vector<double> SparseMatrix::multiply(std::span<const double> x) const {
  std::vector<double> out(num_rows_);
  multiply(x, out);
  return out;
}

std::vector<double> SparseMatrix::multiply_transpose(
    std::span<const double> y) const {
  std::vector<double> out(num_cols_);
  multiply_transpose(y, out);
  return out;
}

std::vector<SparseMatrix::Triplet> SparseMatrix::triplets() const {
  std::vector<Triplet> out;
  out.reserve(col_entries_.size());
  for (int j = 0; j < num_cols_; ++j) {
    for (const Entry& e : column(j)) out.push_back({e.index, j, e.value});
  }
  return out;
}

SparseMatrix SparseMatrix::scaled(std::span<const double> row_scale,
                                  std::span<const double> col_scale) const {
  if (static_cast<int>(row_scale.size()) != num_rows_ ||
      static_cast<int>(col_scale.size()) != num_cols_) {
    throw std::invalid_argument("scaled: dimension mismatch");
  }
  std::vector<Triplet> t = triplets();
  for (Triplet& e : t) e.value *= row_scale[e.row] * col_scale[e.col];
  return SparseMatrix(num_rows_, num_cols_, t);
}

std::vector<double> SparseMatrix::row_max_abs() const {
  std::vector<double> out(num_rows_, 0.0);
  for (int i = 0; i < num_rows_; ++i) {
    for (const Entry& e : row(i)) out[i] = std::max(out[i], std::abs(e.value));
  }
  return out;
}

std::vector<double> SparseMatrix::col_max_abs() const {
  std::vector<double> out(num_cols_, 0.0);
  for (int j = 0; j < num_cols_; ++j) {
    for (const Entry& e : column(j)) {
      out[j] = std::max(out[j], std::abs(e.value));
    }
  }
  return out;
}

}  // namespace hybridlp
