#ifndef HYBRIDLP_STANDARD_FORM_H_
#define HYBRIDLP_STANDARD_FORM_H_

#include <span>
#include <vector>

#include "hybridlp/lp.h"

namespace hybridlp {

// Converts to Ax = b, x >= 0. Column order: the column(s) of each general
// variable in order (a split variable gets two adjacent columns), then one
// slack per inequality row, then one slack per finite upper bound.
StandardLp to_standard_form(const GeneralLp& g);

// General-model primal values recovered from standard-form primal values.
std::vector<double> recover_general_primal(const StandardLp& s,
                                           std::span<const double> x_std);

// Maps a standard-form point back to (x, y, z) of the general model that
// produced it. z is recomputed as c - A'y on the general model.
KktPoint recover_general_point(const GeneralLp& g, const StandardLp& s,
                               const KktPoint& standard_point);

// Expresses a general-model (x, y) in the coordinates of `s`, the standard
// form of `g`. Slacks are recomputed from x and clipped at zero, so a violated
// inequality shows up in the primal residual. Standard reduced costs are
// max(0, c - A'y); the negative part is left in the dual residual.
KktPoint lift_general_point(const GeneralLp& g, const StandardLp& s,
                            std::span<const double> x,
                            std::span<const double> y);

// c'x + offset on the general model, in its own minimization form.
double general_objective(const GeneralLp& g, std::span<const double> x);

}  // namespace hybridlp

#endif  // HYBRIDLP_STANDARD_FORM_H_
