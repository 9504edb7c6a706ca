#ifndef HYBRIDLP_SPARSE_MATRIX_H_
#define HYBRIDLP_SPARSE_MATRIX_H_

#include <span>
#include <vector>

namespace hybridlp {

// Immutable sparse matrix stored in both compressed-column and
// compressed-row form, so A*x and A'*y are equally cheap.
class SparseMatrix {
 public:
  struct Triplet {
    int row;
    int col;
    double value;
  };

  // One stored nonzero; `index` is the row (column view) or the column (row
  // view).
  struct Entry {
    int index;
    double value;
  };

  SparseMatrix() = default;
  SparseMatrix(int num_rows, int num_cols);

  // Duplicate (row, col) pairs are summed; entries that sum to exactly zero
  // are dropped. Throws std::invalid_argument on out-of-range indices.
  SparseMatrix(int num_rows, int num_cols, std::span<const Triplet> triplets);

  static SparseMatrix from_dense(const std::vector<std::vector<double>>& rows);

  int num_rows() const { return num_rows_; }
  int num_cols() const { return num_cols_; }
  int num_nonzeros() const { return static_cast<int>(col_entries_.size()); }

  std::span<const Entry> column(int j) const {
    return {col_entries_.data() + col_start_[j],
            col_entries_.data() + col_start_[j + 1]};
  }
  std::span<const Entry> row(int i) const {
    return {row_entries_.data() + row_start_[i],
            row_entries_.data() + row_start_[i + 1]};
  }

  double coefficient(int i, int j) const;

  // out = A * x
  void multiply(std::span<const double> x, std::span<double> out) const;
  // out = A' * y
  void multiply_transpose(std::span<const double> y,
                          std::span<double> out) const;

  std::vector<double> multiply(std::span<const double> x) const;
  std::vector<double> multiply_transpose(std::span<const double> y) const;

  std::vector<Triplet> triplets() const;

  // R * A * C for diagonal R, C given as vectors.
  SparseMatrix scaled(std::span<const double> row_scale,
                      std::span<const double> col_scale) const;

  // Largest |a_ij| in each row / column (0 for empty ones).
  std::vector<double> row_max_abs() const;
  std::vector<double> col_max_abs() const;

 private:
  int num_rows_ = 0;
  int num_cols_ = 0;
  std::vector<int> col_start_ = {0};
  std::vector<Entry> col_entries_;
  std::vector<int> row_start_ = {0};
  std::vector<Entry> row_entries_;
};

}  // namespace hybridlp

#endif  // HYBRIDLP_SPARSE_MATRIX_H_
