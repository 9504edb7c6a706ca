#ifndef HYBRIDLP_LP_H_
#define HYBRIDLP_LP_H_

#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "hybridlp/sparse_matrix.h"

namespace hybridlp {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

enum class RowSense : char {
  kLessEqual = 'L',
  kGreaterEqual = 'G',
  kEqual = 'E',
};

// Raised for structurally invalid models; `index` names the offending
// variable or row when there is one (-1 otherwise).
class ModelError : public std::invalid_argument {
 public:
  ModelError(const std::string& what, int index = -1)
      : std::invalid_argument(what), index_(index) {}
  int index() const { return index_; }

 private:
  int index_;
};

// A user-facing LP with row senses and variable bounds:
//
//   min  c'x + offset
//   s.t. a_i x {<=, >=, =} rhs_i
//        lower <= x <= upper
//
// Costs are always stored in minimization form; `maximize` only records the
// sense the model was written in so objective values can be reported back.
struct GeneralLp {
  std::string name;
  bool maximize = false;
  double objective_offset = 0.0;
  std::vector<double> col_costs;
  SparseMatrix matrix;
  std::vector<RowSense> row_senses;
  std::vector<double> row_rhs;
  std::vector<double> var_lower;
  std::vector<double> var_upper;
  std::vector<std::string> col_names;
  std::vector<std::string> row_names;

  int num_vars() const { return static_cast<int>(col_costs.size()); }
  int num_rows() const { return static_cast<int>(row_rhs.size()); }

  // Throws ModelError when dimensions disagree, data is non-finite, or some
  // var_lower[j] > var_upper[j].
  void validate() const;

  // Fills missing names with C<j> / R<i>.
  void ensure_names();
};

// How a standard-form column relates to the general model it came from.
enum class ColumnKind {
  kShifted,         // x_j = shift + x_s
  kMirrored,        // x_j = shift - x_s   (only an upper bound)
  kSplitPositive,   // x_j = x_s(+) - x_s(-)
  kSplitNegative,
  kRowSlack,        // slack (<=) or surplus (>=) of general row `source`
  kUpperBoundSlack  // slack of the upper-bound row for variable `source`
};

struct StandardColumn {
  ColumnKind kind;
  int source;
  double shift = 0.0;
};

// Record of the general -> standard mapping. Rows [0, general_rows) are the
// general rows in order; row general_rows + k is the upper-bound row of
// variable upper_bound_vars[k].
struct StandardFormMap {
  int general_vars = 0;
  int general_rows = 0;
  std::vector<StandardColumn> columns;
  std::vector<int> upper_bound_vars;
  // Index of the first standard column of each general variable.
  std::vector<int> var_first_column;
};

// min c'x  s.t.  Ax = b, x >= 0.
struct StandardLp {
  SparseMatrix a;
  std::vector<double> b;
  std::vector<double> c;
  // Constant added to c'x to obtain the general objective (bound shifts and
  // the general model's own offset).
  double objective_offset = 0.0;
  StandardFormMap provenance;

  int num_rows() const { return a.num_rows(); }
  int num_cols() const { return a.num_cols(); }
};

// Primal x, duals y and reduced costs z.
struct KktPoint {
  std::vector<double> x;
  std::vector<double> y;
  std::vector<double> z;
};

struct Residuals {
  std::vector<double> r_p;  // b - A x
  std::vector<double> r_d;  // c - A'y - z
  double primal_obj = 0.0;  // c'x
  double dual_obj = 0.0;    // b'y
  double comp = 0.0;        // x'z
};

struct ViolationSummary {
  double primal_inf = 0.0;  // ||r_p||_inf
  double dual_inf = 0.0;    // ||r_d||_inf
  double rel_gap = 0.0;     // x'z / (1 + |c'x|)
  double max_violation = 0.0;
};

// Both sides of each relative termination inequality.
struct TerminationCheck {
  bool converged = false;
  double primal_residual = 0.0;  // ||r_p||_2
  double primal_bound = 0.0;     // eps (1 + ||b||_2)
  double dual_residual = 0.0;    // ||r_d||_2
  double dual_bound = 0.0;       // eps (1 + ||c||_2)
  double gap = 0.0;              // |c'x - b'y|
  double gap_bound = 0.0;        // eps (1 + |c'x| + |b'y|)
};

}  // namespace hybridlp

#endif  // HYBRIDLP_LP_H_
