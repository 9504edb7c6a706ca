#ifndef HYBRIDLP_SCALING_H_
#define HYBRIDLP_SCALING_H_

#include <vector>

#include "hybridlp/lp.h"

namespace hybridlp {

// Diagonal scalings with scaled A = R * A * C, b = R b, c = C c.
struct ScalingInfo {
  std::vector<double> row_scale;
  std::vector<double> col_scale;
  int applied_iterations = 0;
};

struct ScaledLp {
  StandardLp lp;
  ScalingInfo info;
};

ScalingInfo identity_scaling(int num_rows, int num_cols);

// Ruiz equilibration in the infinity norm: each pass divides every row and
// column by the square root of its current largest magnitude, until all
// norms lie in [1/(1+tol), 1+tol] or `max_iters` passes have run.
// Throws ModelError naming the first all-zero row (index) or column
// (index m + j, so rows and columns are distinguishable).
ScaledLp ruiz_equilibrate(const StandardLp& p, int max_iters = 20,
                          double tol = 1e-2);

// Applies given scale factors.
StandardLp apply_scaling(const StandardLp& p, const ScalingInfo& s);

// x = C x_s, y = R y_s, z = C^-1 z_s.
KktPoint unscale_point(const ScalingInfo& s, const KktPoint& scaled);
KktPoint scale_point(const ScalingInfo& s, const KktPoint& original);

}  // namespace hybridlp

#endif  // HYBRIDLP_SCALING_H_
