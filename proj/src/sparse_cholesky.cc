#include "sparse_cholesky.h"

#include <cmath>

#include <Eigen/OrderingMethods>

namespace hybridlp {
namespace {

using EigenSparse = Eigen::SparseMatrix<double>;

constexpr double kPivotTolerance = 1e-14;
constexpr double kHugePivot = 1e128;

// Upper triangle of P (M + shift I) P' in compressed columns.
EigenSparse permuted_upper(const EigenSparse& m, const std::vector<int>& perm,
                           double shift) {
  std::vector<Eigen::Triplet<double>> t;
  t.reserve(m.nonZeros() / 2 + m.rows());
  for (int j = 0; j < m.outerSize(); ++j) {
    for (EigenSparse::InnerIterator it(m, j); it; ++it) {
      const int r = perm[it.row()];
      const int c = perm[j];
      if (r <= c) t.emplace_back(r, c, it.value());
    }
  }
  for (int j = 0; j < m.rows(); ++j) t.emplace_back(perm[j], perm[j], shift);
  EigenSparse out(m.rows(), m.cols());
  out.setFromTriplets(t.begin(), t.end());
  out.makeCompressed();
  return out;
}

// Pattern of row k of L (without the diagonal) in s[top..n), topologically
// ordered. Returns top.
int ereach(const EigenSparse& c, int k, const std::vector<int>& parent,
           std::vector<int>& s, std::vector<char>& mark) {
  const int n = c.rows();
  int top = n;
  mark[k] = 1;
  for (EigenSparse::InnerIterator it(c, k); it; ++it) {
    int i = it.row();
    if (i > k) continue;
    int len = 0;
    for (; !mark[i]; i = parent[i]) {
      s[len++] = i;
      mark[i] = 1;
    }
    while (len > 0) s[--top] = s[--len];
  }
  for (int p = top; p < n; ++p) mark[s[p]] = 0;
  mark[k] = 0;
  return top;
}

}  // namespace

SparseCholesky::SparseCholesky(const EigenSparse& pattern) : n_(pattern.rows()) {
  EigenSparse identity(n_, n_);
  identity.setIdentity();
  const EigenSparse full = pattern.cwiseAbs() + identity;

  Eigen::PermutationMatrix<Eigen::Dynamic, Eigen::Dynamic, int> order;
  Eigen::AMDOrdering<int> amd;
  amd(full, order);
  const Eigen::PermutationMatrix<Eigen::Dynamic, Eigen::Dynamic, int> inverse =
      order.inverse();
  perm_.assign(inverse.indices().data(), inverse.indices().data() + n_);

  const EigenSparse c = permuted_upper(full, perm_, 0.0);
  parent_.assign(n_, -1);
  std::vector<int> ancestor(n_, -1);
  for (int k = 0; k < n_; ++k) {
    for (EigenSparse::InnerIterator it(c, k); it; ++it) {
      for (int i = it.row(); i != -1 && i < k;) {
        const int next = ancestor[i];
        ancestor[i] = k;
        if (next == -1) parent_[i] = k;
        i = next;
      }
    }
  }

  std::vector<int> counts(n_, 1);
  std::vector<int> s(n_);
  std::vector<char> mark(n_, 0);
  for (int k = 0; k < n_; ++k) {
    for (int p = ereach(c, k, parent_, s, mark); p < n_; ++p) ++counts[s[p]];
  }
  col_start_.assign(n_ + 1, 0);
  for (int j = 0; j < n_; ++j) col_start_[j + 1] = col_start_[j] + counts[j];
  row_index_.assign(col_start_[n_], 0);
  values_.assign(col_start_[n_], 0.0);
}

bool SparseCholesky::factorize(const EigenSparse& m, double shift) {
  const EigenSparse c = permuted_upper(m, perm_, shift);
  std::vector<int> next(col_start_.begin(), col_start_.end() - 1);
  std::vector<double> x(n_, 0.0);
  std::vector<int> s(n_);
  std::vector<char> mark(n_, 0);
  dropped_ = 0;
  for (int k = 0; k < n_; ++k) {
    const int top = ereach(c, k, parent_, s, mark);
    for (EigenSparse::InnerIterator it(c, k); it; ++it) {
      if (it.row() <= k) x[it.row()] = it.value();
    }
    const double diag = x[k];
    double d = diag;
    x[k] = 0.0;
    for (int t = top; t < n_; ++t) {
      const int i = s[t];
      const double lki = x[i] / values_[col_start_[i]];
      x[i] = 0.0;
      for (int p = col_start_[i] + 1; p < next[i]; ++p) {
        x[row_index_[p]] -= values_[p] * lki;
      }
      d -= lki * lki;
      const int p = next[i]++;
      row_index_[p] = k;
      values_[p] = lki;
    }
    if (!std::isfinite(d)) return false;
    if (!(d > kPivotTolerance * std::abs(diag))) {
      d = kHugePivot;
      ++dropped_;
    }
    const int p = next[k]++;
    row_index_[p] = k;
    values_[p] = std::sqrt(d);
  }
  return true;
}

Eigen::VectorXd SparseCholesky::solve(const Eigen::VectorXd& rhs) const {
  std::vector<double> y(n_);
  for (int j = 0; j < n_; ++j) y[perm_[j]] = rhs[j];
  for (int j = 0; j < n_; ++j) {
    y[j] /= values_[col_start_[j]];
    for (int p = col_start_[j] + 1; p < col_start_[j + 1]; ++p) {
      y[row_index_[p]] -= values_[p] * y[j];
    }
  }
  for (int j = n_ - 1; j >= 0; --j) {
    for (int p = col_start_[j] + 1; p < col_start_[j + 1]; ++p) {
      y[j] -= values_[p] * y[row_index_[p]];
    }
    y[j] /= values_[col_start_[j]];
  }
  Eigen::VectorXd out(n_);
  for (int j = 0; j < n_; ++j) out[j] = y[perm_[j]];
  return out;
}

}  // namespace hybridlp
