#include "hybridlp/lp.h"

#include <cmath>
#include <string>

namespace hybridlp {

void GeneralLp::validate() const {
  const int n = num_vars();
  const int m = num_rows();
  if (matrix.num_rows() != m || matrix.num_cols() != n) {
    throw ModelError("matrix is " + std::to_string(matrix.num_rows()) + "x" +
                     std::to_string(matrix.num_cols()) + ", expected " +
                     std::to_string(m) + "x" + std::to_string(n));
  }
  if (static_cast<int>(row_senses.size()) != m ||
      static_cast<int>(var_lower.size()) != n ||
      static_cast<int>(var_upper.size()) != n) {
    throw ModelError("row/variable attribute lengths disagree");
  }
  if (!col_names.empty() && static_cast<int>(col_names.size()) != n) {
    throw ModelError("column name count disagrees with variable count");
  }
  if (!row_names.empty() && static_cast<int>(row_names.size()) != m) {
    throw ModelError("row name count disagrees with row count");
  }
  if (!std::isfinite(objective_offset)) {
    throw ModelError("objective offset is not finite");
  }
  for (int j = 0; j < n; ++j) {
    if (!std::isfinite(col_costs[j])) {
      throw ModelError("cost of variable " + std::to_string(j) +
                           " is not finite",
                       j);
    }
    if (std::isnan(var_lower[j]) || std::isnan(var_upper[j]) ||
        var_lower[j] == kInfinity || var_upper[j] == -kInfinity) {
      throw ModelError("bounds of variable " + std::to_string(j) +
                           " are invalid",
                       j);
    }
    if (var_lower[j] > var_upper[j]) {
      throw ModelError("variable " + std::to_string(j) +
                           " has lower bound above upper bound",
                       j);
    }
  }
  for (int i = 0; i < m; ++i) {
    if (!std::isfinite(row_rhs[i])) {
      throw ModelError("rhs of row " + std::to_string(i) + " is not finite",
                       i);
    }
  }
  for (const auto& t : matrix.triplets()) {
    if (!std::isfinite(t.value)) {
      throw ModelError("matrix entry in column " + std::to_string(t.col) +
                           " is not finite",
                       t.col);
    }
  }
}

void GeneralLp::ensure_names() {
  if (static_cast<int>(col_names.size()) != num_vars()) {
    col_names.resize(num_vars());
    for (int j = 0; j < num_vars(); ++j) {
      if (col_names[j].empty()) col_names[j] = "C" + std::to_string(j);
    }
  }
  if (static_cast<int>(row_names.size()) != num_rows()) {
    row_names.resize(num_rows());
    for (int i = 0; i < num_rows(); ++i) {
      if (row_names[i].empty()) row_names[i] = "R" + std::to_string(i);
    }
  }
}

}  // namespace hybridlp
