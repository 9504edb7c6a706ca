#include "hybridlp/presolve.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hybridlp {
namespace {

constexpr double kFeasibilityTol = 1e-9;

bool within(double value, double lower, double upper) {
  const double tol = kFeasibilityTol * std::max(1.0, std::abs(value));
  return value >= lower - tol && value <= upper + tol;
}

class Presolver {
 public:
  explicit Presolver(const GeneralLp& g)
      : g_(g),
        rhs_(g.row_rhs),
        active_row_(g.num_rows(), true),
        active_col_(g.num_vars(), true),
        row_count_(g.num_rows(), 0),
        col_count_(g.num_vars(), 0) {
    for (int i = 0; i < g.num_rows(); ++i) {
      row_count_[i] = static_cast<int>(g.matrix.row(i).size());
    }
    for (int j = 0; j < g.num_vars(); ++j) {
      col_count_[j] = static_cast<int>(g.matrix.column(j).size());
    }
  }

  PresolveResult run();

 private:
  void fix(ReductionKind kind, int j, double value, int row = -1,
           double pivot = 0.0);
  bool drop_empty_rows();
  bool fix_variables();
  bool fix_empty_columns();
  bool eliminate_singleton_rows();

  const GeneralLp& g_;
  std::vector<double> rhs_;
  std::vector<bool> active_row_;
  std::vector<bool> active_col_;
  std::vector<int> row_count_;
  std::vector<int> col_count_;
  std::vector<Reduction> reductions_;
  PresolveVerdict verdict_ = PresolveVerdict::kReduced;
  std::string detail_;
};

void Presolver::fix(ReductionKind kind, int j, double value, int row,
                    double pivot) {
  Reduction r{kind, row, j, value, g_.col_costs[j], pivot, {}};
  for (const auto& e : g_.matrix.column(j)) {
    r.column.push_back(e);
    if (!active_row_[e.index]) continue;
    rhs_[e.index] -= e.value * value;
    --row_count_[e.index];
  }
  active_col_[j] = false;
  reductions_.push_back(std::move(r));
}

bool Presolver::fix_variables() {
  bool changed = false;
  for (int j = 0; j < g_.num_vars(); ++j) {
    if (!active_col_[j] || g_.var_lower[j] != g_.var_upper[j]) continue;
    fix(ReductionKind::kFixedVariable, j, g_.var_lower[j]);
    changed = true;
  }
  return changed;
}

bool Presolver::drop_empty_rows() {
  bool changed = false;
  for (int i = 0; i < g_.num_rows(); ++i) {
    if (!active_row_[i] || row_count_[i] != 0) continue;
    const double rhs = rhs_[i];
    const double tol = kFeasibilityTol * std::max(1.0, std::abs(g_.row_rhs[i]));
    bool ok = true;
    switch (g_.row_senses[i]) {
      case RowSense::kLessEqual:
        ok = rhs >= -tol;
        break;
      case RowSense::kGreaterEqual:
        ok = rhs <= tol;
        break;
      case RowSense::kEqual:
        ok = std::abs(rhs) <= tol;
        break;
    }
    if (!ok) {
      verdict_ = PresolveVerdict::kInfeasible;
      detail_ = "empty row " + std::to_string(i) + " has inconsistent rhs";
      return false;
    }
    active_row_[i] = false;
    for (const auto& e : g_.matrix.row(i)) {
      if (active_col_[e.index]) --col_count_[e.index];
    }
    reductions_.push_back({ReductionKind::kEmptyRow, i, -1, 0.0, 0.0, 0.0, {}});
    changed = true;
  }
  return changed;
}

bool Presolver::fix_empty_columns() {
  bool changed = false;
  for (int j = 0; j < g_.num_vars(); ++j) {
    if (!active_col_[j] || col_count_[j] != 0) continue;
    const double cost = g_.col_costs[j];
    const double lower = g_.var_lower[j];
    const double upper = g_.var_upper[j];
    double value = 0.0;
    if (cost > 0.0 || (cost == 0.0 && std::isfinite(lower))) {
      value = lower;
    } else if (cost < 0.0 || std::isfinite(upper)) {
      value = upper;
    }
    if (!std::isfinite(value)) {
      if (cost == 0.0) {
        value = 0.0;
      } else {
        verdict_ = PresolveVerdict::kUnbounded;
        detail_ = "empty column " + std::to_string(j) +
                  " improves the objective without limit";
        return false;
      }
    }
    fix(ReductionKind::kEmptyColumn, j, value);
    changed = true;
  }
  return changed;
}

bool Presolver::eliminate_singleton_rows() {
  bool changed = false;
  for (int i = 0; i < g_.num_rows(); ++i) {
    if (!active_row_[i] || row_count_[i] != 1 ||
        g_.row_senses[i] != RowSense::kEqual) {
      continue;
    }
    int j = -1;
    double pivot = 0.0;
    for (const auto& e : g_.matrix.row(i)) {
      if (active_col_[e.index]) {
        j = e.index;
        pivot = e.value;
      }
    }
    double value = rhs_[i] / pivot;
    if (!within(value, g_.var_lower[j], g_.var_upper[j])) {
      verdict_ = PresolveVerdict::kInfeasible;
      detail_ = "singleton row " + std::to_string(i) +
                " forces variable " + std::to_string(j) + " outside its bounds";
      return false;
    }
    value = std::clamp(value, g_.var_lower[j], g_.var_upper[j]);
    active_row_[i] = false;
    fix(ReductionKind::kSingletonRow, j, value, i, pivot);
    changed = true;
  }
  return changed;
}

PresolveResult Presolver::run() {
  bool changed = true;
  while (changed && verdict_ == PresolveVerdict::kReduced) {
    changed = false;
    changed |= fix_variables();
    changed |= drop_empty_rows();
    if (verdict_ != PresolveVerdict::kReduced) break;
    changed |= fix_empty_columns();
    if (verdict_ != PresolveVerdict::kReduced) break;
    changed |= eliminate_singleton_rows();
  }

  PresolveResult out;
  out.verdict = verdict_;
  out.detail = detail_;
  out.stack.original_vars = g_.num_vars();
  out.stack.original_rows = g_.num_rows();
  out.stack.reductions = std::move(reductions_);
  for (int j = 0; j < g_.num_vars(); ++j) {
    if (active_col_[j]) out.stack.kept_vars.push_back(j);
  }
  for (int i = 0; i < g_.num_rows(); ++i) {
    if (active_row_[i]) out.stack.kept_rows.push_back(i);
  }
  if (verdict_ != PresolveVerdict::kReduced) return out;

  out.reduced = replay_presolve(g_, out.stack);
  if (out.reduced.num_vars() == 0) out.verdict = PresolveVerdict::kSolved;
  return out;
}

}  // namespace

PresolveResult presolve(const GeneralLp& g) {
  g.validate();
  return Presolver(g).run();
}

PresolveStack identity_stack(const GeneralLp& g) {
  PresolveStack s;
  s.original_vars = g.num_vars();
  s.original_rows = g.num_rows();
  for (int j = 0; j < g.num_vars(); ++j) s.kept_vars.push_back(j);
  for (int i = 0; i < g.num_rows(); ++i) s.kept_rows.push_back(i);
  return s;
}

GeneralLp replay_presolve(const GeneralLp& original,
                          const PresolveStack& stack) {
  if (stack.original_vars != original.num_vars() ||
      stack.original_rows != original.num_rows()) {
    throw std::invalid_argument("presolve stack does not match the model");
  }
  std::vector<double> rhs = original.row_rhs;
  double offset = original.objective_offset;
  std::vector<bool> row_alive(original.num_rows(), true);
  for (const Reduction& r : stack.reductions) {
    if (r.kind == ReductionKind::kEmptyRow) {
      row_alive[r.row] = false;
      continue;
    }
    if (r.kind == ReductionKind::kSingletonRow) row_alive[r.row] = false;
    for (const auto& e : original.matrix.column(r.col)) {
      if (row_alive[e.index]) rhs[e.index] -= e.value * r.value;
    }
    offset += original.col_costs[r.col] * r.value;
  }

  std::vector<int> new_col(original.num_vars(), -1);
  std::vector<int> new_row(original.num_rows(), -1);
  for (size_t k = 0; k < stack.kept_vars.size(); ++k) {
    new_col[stack.kept_vars[k]] = static_cast<int>(k);
  }
  for (size_t k = 0; k < stack.kept_rows.size(); ++k) {
    new_row[stack.kept_rows[k]] = static_cast<int>(k);
  }

  GeneralLp out;
  out.name = original.name;
  out.maximize = original.maximize;
  out.objective_offset = offset;
  const bool named_cols = !original.col_names.empty();
  const bool named_rows = !original.row_names.empty();
  for (int j : stack.kept_vars) {
    out.col_costs.push_back(original.col_costs[j]);
    out.var_lower.push_back(original.var_lower[j]);
    out.var_upper.push_back(original.var_upper[j]);
    if (named_cols) out.col_names.push_back(original.col_names[j]);
  }
  for (int i : stack.kept_rows) {
    out.row_senses.push_back(original.row_senses[i]);
    out.row_rhs.push_back(rhs[i]);
    if (named_rows) out.row_names.push_back(original.row_names[i]);
  }
  std::vector<SparseMatrix::Triplet> triplets;
  for (const auto& t : original.matrix.triplets()) {
    if (new_row[t.row] >= 0 && new_col[t.col] >= 0) {
      triplets.push_back({new_row[t.row], new_col[t.col], t.value});
    }
  }
  out.matrix = SparseMatrix(static_cast<int>(stack.kept_rows.size()),
                            static_cast<int>(stack.kept_vars.size()), triplets);
  return out;
}

KktPoint postsolve(const PresolveStack& stack, const KktPoint& reduced_point) {
  const size_t nr = stack.kept_vars.size();
  const size_t mr = stack.kept_rows.size();
  if (reduced_point.x.size() != nr || reduced_point.z.size() != nr ||
      reduced_point.y.size() != mr) {
    throw std::invalid_argument(
        "postsolve: point does not match the reduced model");
  }
  KktPoint out;
  out.x.assign(stack.original_vars, 0.0);
  out.y.assign(stack.original_rows, 0.0);
  out.z.assign(stack.original_vars, 0.0);
  for (size_t k = 0; k < nr; ++k) {
    out.x[stack.kept_vars[k]] = reduced_point.x[k];
    out.z[stack.kept_vars[k]] = reduced_point.z[k];
  }
  for (size_t k = 0; k < mr; ++k) {
    out.y[stack.kept_rows[k]] = reduced_point.y[k];
  }

  auto reduced_cost = [&](const Reduction& r) {
    double value = r.cost;
    for (const auto& e : r.column) value -= e.value * out.y[e.index];
    return value;
  };

  for (auto it = stack.reductions.rbegin(); it != stack.reductions.rend();
       ++it) {
    const Reduction& r = *it;
    switch (r.kind) {
      case ReductionKind::kEmptyRow:
        out.y[r.row] = 0.0;
        break;
      case ReductionKind::kSingletonRow:
        out.x[r.col] = r.value;
        out.y[r.row] = 0.0;
        out.y[r.row] = reduced_cost(r) / r.pivot;
        break;
      case ReductionKind::kFixedVariable:
      case ReductionKind::kEmptyColumn:
        out.x[r.col] = r.value;
        break;
    }
  }
  // Duals of every row are final now, so the eliminated columns' reduced
  // costs can be evaluated.
  for (const Reduction& r : stack.reductions) {
    if (r.kind == ReductionKind::kEmptyRow) continue;
    out.z[r.col] = reduced_cost(r);
  }
  return out;
}

}  // namespace hybridlp
