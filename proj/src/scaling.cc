#include "hybridlp/scaling.h"

#include <cmath>
#include <stdexcept>
#include <string>

namespace hybridlp {

ScalingInfo identity_scaling(int num_rows, int num_cols) {
  return {std::vector<double>(num_rows, 1.0), std::vector<double>(num_cols, 1.0),
          0};
}

StandardLp apply_scaling(const StandardLp& p, const ScalingInfo& s) {
  StandardLp out;
  out.a = p.a.scaled(s.row_scale, s.col_scale);
  out.b = p.b;
  for (int i = 0; i < p.num_rows(); ++i) out.b[i] *= s.row_scale[i];
  out.c = p.c;
  for (int j = 0; j < p.num_cols(); ++j) out.c[j] *= s.col_scale[j];
  out.objective_offset = p.objective_offset;
  out.provenance = p.provenance;
  return out;
}

ScaledLp ruiz_equilibrate(const StandardLp& p, int max_iters, double tol) {
  const int m = p.num_rows();
  const int n = p.num_cols();
  ScalingInfo info = identity_scaling(m, n);
  SparseMatrix current = p.a;
  const double lo = 1.0 / (1.0 + tol);
  const double hi = 1.0 + tol;

  for (int iter = 0; iter < max_iters; ++iter) {
    std::vector<double> row_norm = current.row_max_abs();
    std::vector<double> col_norm = current.col_max_abs();
    bool converged = true;
    for (int i = 0; i < m; ++i) {
      if (row_norm[i] == 0.0) {
        throw ModelError("row " + std::to_string(i) + " is empty", i);
      }
      converged = converged && row_norm[i] >= lo && row_norm[i] <= hi;
    }
    for (int j = 0; j < n; ++j) {
      if (col_norm[j] == 0.0) {
        throw ModelError("column " + std::to_string(j) + " is empty", m + j);
      }
      converged = converged && col_norm[j] >= lo && col_norm[j] <= hi;
    }
    if (converged) break;

    for (double& v : row_norm) v = 1.0 / std::sqrt(v);
    for (double& v : col_norm) v = 1.0 / std::sqrt(v);
    current = current.scaled(row_norm, col_norm);
    for (int i = 0; i < m; ++i) info.row_scale[i] *= row_norm[i];
    for (int j = 0; j < n; ++j) info.col_scale[j] *= col_norm[j];
    ++info.applied_iterations;
  }

  ScaledLp out;
  out.lp = apply_scaling(p, info);
  out.info = std::move(info);
  return out;
}

KktPoint unscale_point(const ScalingInfo& s, const KktPoint& scaled) {
  if (scaled.x.size() != s.col_scale.size() ||
      scaled.z.size() != s.col_scale.size() ||
      scaled.y.size() != s.row_scale.size()) {
    throw std::invalid_argument("unscale_point: dimension mismatch");
  }
  KktPoint out = scaled;
  for (size_t j = 0; j < out.x.size(); ++j) {
    out.x[j] *= s.col_scale[j];
    out.z[j] /= s.col_scale[j];
  }
  for (size_t i = 0; i < out.y.size(); ++i) out.y[i] *= s.row_scale[i];
  return out;
}

KktPoint scale_point(const ScalingInfo& s, const KktPoint& original) {
  if (original.x.size() != s.col_scale.size() ||
      original.z.size() != s.col_scale.size() ||
      original.y.size() != s.row_scale.size()) {
    throw std::invalid_argument("scale_point: dimension mismatch");
  }
  KktPoint out = original;
  for (size_t j = 0; j < out.x.size(); ++j) {
    out.x[j] /= s.col_scale[j];
    out.z[j] *= s.col_scale[j];
  }
  for (size_t i = 0; i < out.y.size(); ++i) out.y[i] /= s.row_scale[i];
  return out;
}

}  // namespace hybridlp
