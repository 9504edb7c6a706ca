#ifndef HYBRIDLP_PRESOLVE_H_
#define HYBRIDLP_PRESOLVE_H_

#include <string>
#include <vector>

#include "hybridlp/lp.h"

namespace hybridlp {

enum class ReductionKind {
  kFixedVariable,  // lower == upper
  kEmptyRow,
  kEmptyColumn,    // fixed at its best bound by cost sign
  kSingletonRow,   // equality row with one entry fixes its variable
};

// One reduction, in original-model indices. `column` holds the eliminated
// variable's original column so its reduced cost (and, for singleton rows,
// the row dual) can be recomputed.
struct Reduction {
  ReductionKind kind;
  int row = -1;
  int col = -1;
  double value = 0.0;
  double cost = 0.0;
  double pivot = 0.0;  // a_{row,col} for singleton rows
  std::vector<SparseMatrix::Entry> column;
};

struct PresolveStack {
  int original_vars = 0;
  int original_rows = 0;
  std::vector<Reduction> reductions;
  // Original index of each variable / row of the reduced model.
  std::vector<int> kept_vars;
  std::vector<int> kept_rows;
};

enum class PresolveVerdict {
  kReduced,     // reduced model still has variables
  kSolved,      // every variable eliminated
  kInfeasible,
  kUnbounded,
};

struct PresolveResult {
  PresolveVerdict verdict = PresolveVerdict::kReduced;
  GeneralLp reduced;
  PresolveStack stack;
  std::string detail;
};

// Removes fixed variables, empty rows, empty columns and singleton equality
// rows until none remain. The eliminated variables' objective contribution
// moves into the reduced model's objective_offset.
PresolveResult presolve(const GeneralLp& g);

// Stack with no reductions that keeps every row and variable.
PresolveStack identity_stack(const GeneralLp& g);

// Rebuilds the reduced model from the original and the stack alone.
GeneralLp replay_presolve(const GeneralLp& original, const PresolveStack& stack);

// Maps (x, y, z) of the reduced model back to the original one, undoing the
// reductions in reverse order. z on the original model is c - A'y; rows
// dropped as singletons get the dual that zeroes their variable's reduced
// cost, empty rows get y = 0.
KktPoint postsolve(const PresolveStack& stack, const KktPoint& reduced_point);

}  // namespace hybridlp

#endif  // HYBRIDLP_PRESOLVE_H_
