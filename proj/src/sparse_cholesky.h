#ifndef HYBRIDLP_SRC_SPARSE_CHOLESKY_H_
#define HYBRIDLP_SRC_SPARSE_CHOLESKY_H_

#include <vector>

#include <Eigen/SparseCore>

namespace hybridlp {

// Up-looking sparse Cholesky of a symmetric positive semidefinite matrix with
// a fixed sparsity pattern. Pivots that collapse to (near) zero are replaced
// by a huge value, which zeroes the matching solution component instead of
// failing. Interior-point normal matrices become singular in exactly this way
// on degenerate problems.
class SparseCholesky {
 public:
  // `pattern` must contain every position that later matrices may use; the
  // diagonal is always included.
  explicit SparseCholesky(const Eigen::SparseMatrix<double>& pattern);

  // Factorizes `m` (both triangles stored, pattern within the analysed one)
  // plus shift * I. Returns false if a non-finite value shows up.
  bool factorize(const Eigen::SparseMatrix<double>& m, double shift);

  Eigen::VectorXd solve(const Eigen::VectorXd& rhs) const;

  int dropped_pivots() const { return dropped_; }

 private:
  int n_ = 0;
  std::vector<int> perm_;    // original index -> factor index
  std::vector<int> parent_;  // elimination tree
  std::vector<int> col_start_;
  std::vector<int> row_index_;
  std::vector<double> values_;
  int dropped_ = 0;
};

}  // namespace hybridlp

#endif  // HYBRIDLP_SRC_SPARSE_CHOLESKY_H_
