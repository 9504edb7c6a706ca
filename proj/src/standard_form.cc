#include "hybridlp/standard_form.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hybridlp {

StandardLp to_standard_form(const GeneralLp& g) {
  g.validate();
  const int n = g.num_vars();
  const int m = g.num_rows();

  StandardLp s;
  StandardFormMap& map = s.provenance;
  map.general_vars = n;
  map.general_rows = m;
  map.var_first_column.resize(n);

  std::vector<double> b = g.row_rhs;
  std::vector<double> c;
  std::vector<SparseMatrix::Triplet> triplets;
  double offset = g.objective_offset;

  // Column of variable j in the standard model that carries its upper-bound
  // row coefficient.
  std::vector<int> bounded_column;

  for (int j = 0; j < n; ++j) {
    const double lower = g.var_lower[j];
    const double upper = g.var_upper[j];
    const double cost = g.col_costs[j];
    const int col = static_cast<int>(map.columns.size());
    map.var_first_column[j] = col;
    const auto entries = g.matrix.column(j);

    if (std::isfinite(lower)) {
      map.columns.push_back({ColumnKind::kShifted, j, lower});
      c.push_back(cost);
      offset += cost * lower;
      for (const auto& e : entries) {
        triplets.push_back({e.index, col, e.value});
        b[e.index] -= e.value * lower;
      }
      if (std::isfinite(upper)) {
        map.upper_bound_vars.push_back(j);
        bounded_column.push_back(col);
      }
    } else if (std::isfinite(upper)) {
      map.columns.push_back({ColumnKind::kMirrored, j, upper});
      c.push_back(-cost);
      offset += cost * upper;
      for (const auto& e : entries) {
        triplets.push_back({e.index, col, -e.value});
        b[e.index] -= e.value * upper;
      }
    } else {
      map.columns.push_back({ColumnKind::kSplitPositive, j, 0.0});
      map.columns.push_back({ColumnKind::kSplitNegative, j, 0.0});
      c.push_back(cost);
      c.push_back(-cost);
      for (const auto& e : entries) {
        triplets.push_back({e.index, col, e.value});
        triplets.push_back({e.index, col + 1, -e.value});
      }
    }
  }

  for (int i = 0; i < m; ++i) {
    if (g.row_senses[i] == RowSense::kEqual) continue;
    const int col = static_cast<int>(map.columns.size());
    map.columns.push_back({ColumnKind::kRowSlack, i, 0.0});
    c.push_back(0.0);
    triplets.push_back(
        {i, col, g.row_senses[i] == RowSense::kLessEqual ? 1.0 : -1.0});
  }

  const int num_bounded = static_cast<int>(map.upper_bound_vars.size());
  for (int k = 0; k < num_bounded; ++k) {
    const int j = map.upper_bound_vars[k];
    const int row = m + k;
    const int col = static_cast<int>(map.columns.size());
    map.columns.push_back({ColumnKind::kUpperBoundSlack, j, 0.0});
    c.push_back(0.0);
    triplets.push_back({row, bounded_column[k], 1.0});
    triplets.push_back({row, col, 1.0});
    b.push_back(g.var_upper[j] - g.var_lower[j]);
  }

  const int num_cols = static_cast<int>(map.columns.size());
  s.a = SparseMatrix(m + num_bounded, num_cols, triplets);
  s.b = std::move(b);
  s.c = std::move(c);
  s.objective_offset = offset;
  return s;
}

std::vector<double> recover_general_primal(const StandardLp& s,
                                           std::span<const double> x_std) {
  const StandardFormMap& map = s.provenance;
  if (static_cast<int>(x_std.size()) != s.num_cols()) {
    throw std::invalid_argument("recover_general_primal: dimension mismatch");
  }
  std::vector<double> x(map.general_vars, 0.0);
  for (int k = 0; k < s.num_cols(); ++k) {
    const StandardColumn& col = map.columns[k];
    switch (col.kind) {
      case ColumnKind::kShifted:
        x[col.source] = col.shift + x_std[k];
        break;
      case ColumnKind::kMirrored:
        x[col.source] = col.shift - x_std[k];
        break;
      case ColumnKind::kSplitPositive:
        x[col.source] += x_std[k];
        break;
      case ColumnKind::kSplitNegative:
        x[col.source] -= x_std[k];
        break;
      case ColumnKind::kRowSlack:
      case ColumnKind::kUpperBoundSlack:
        break;
    }
  }
  return x;
}

KktPoint recover_general_point(const GeneralLp& g, const StandardLp& s,
                               const KktPoint& standard_point) {
  if (static_cast<int>(standard_point.y.size()) != s.num_rows()) {
    throw std::invalid_argument("recover_general_point: dimension mismatch");
  }
  KktPoint out;
  out.x = recover_general_primal(s, standard_point.x);
  out.y.assign(standard_point.y.begin(),
               standard_point.y.begin() + s.provenance.general_rows);
  out.z = g.matrix.multiply_transpose(out.y);
  for (int j = 0; j < g.num_vars(); ++j) out.z[j] = g.col_costs[j] - out.z[j];
  return out;
}

KktPoint lift_general_point(const GeneralLp& g, const StandardLp& s,
                            std::span<const double> x,
                            std::span<const double> y) {
  const StandardFormMap& map = s.provenance;
  if (static_cast<int>(x.size()) != g.num_vars() ||
      static_cast<int>(y.size()) != g.num_rows() ||
      map.general_vars != g.num_vars() || map.general_rows != g.num_rows()) {
    throw std::invalid_argument("lift_general_point: dimension mismatch");
  }
  const std::vector<double> activity = g.matrix.multiply(x);
  std::vector<double> reduced = g.matrix.multiply_transpose(y);
  for (int j = 0; j < g.num_vars(); ++j) {
    reduced[j] = g.col_costs[j] - reduced[j];
  }

  KktPoint pt;
  pt.x.resize(s.num_cols());
  for (int k = 0; k < s.num_cols(); ++k) {
    const StandardColumn& col = map.columns[k];
    const int src = col.source;
    switch (col.kind) {
      case ColumnKind::kShifted:
        pt.x[k] = x[src] - col.shift;
        break;
      case ColumnKind::kMirrored:
        pt.x[k] = col.shift - x[src];
        break;
      case ColumnKind::kSplitPositive:
        pt.x[k] = std::max(x[src], 0.0);
        break;
      case ColumnKind::kSplitNegative:
        pt.x[k] = std::max(-x[src], 0.0);
        break;
      case ColumnKind::kRowSlack:
        pt.x[k] = g.row_senses[src] == RowSense::kLessEqual
                      ? std::max(g.row_rhs[src] - activity[src], 0.0)
                      : std::max(activity[src] - g.row_rhs[src], 0.0);
        break;
      case ColumnKind::kUpperBoundSlack:
        pt.x[k] = std::max(g.var_upper[src] - x[src], 0.0);
        break;
    }
  }

  pt.y.assign(y.begin(), y.end());
  for (int var : map.upper_bound_vars) {
    pt.y.push_back(std::min(reduced[var], 0.0));
  }

  pt.z = s.a.multiply_transpose(pt.y);
  for (int k = 0; k < s.num_cols(); ++k) {
    pt.z[k] = std::max(s.c[k] - pt.z[k], 0.0);
  }
  return pt;
}

double general_objective(const GeneralLp& g, std::span<const double> x) {
  double value = g.objective_offset;
  for (int j = 0; j < g.num_vars(); ++j) value += g.col_costs[j] * x[j];
  return value;
}

}  // namespace hybridlp
