#ifndef HYBRIDLP_KKT_H_
#define HYBRIDLP_KKT_H_

#include <span>
#include <vector>

#include "hybridlp/lp.h"

namespace hybridlp {

// r_p = b - Ax, r_d = c - A'y - z, plus c'x, b'y, x'z.
// Throws std::invalid_argument on dimension mismatch.
Residuals residuals(const StandardLp& p, const KktPoint& pt);

// The three relative optimality tests in the 2-norm:
//   ||r_p|| <= eps (1 + ||b||),  ||r_d|| <= eps (1 + ||c||),
//   |c'x - b'y| <= eps (1 + |c'x| + |b'y|).
TerminationCheck check_relative_termination(const StandardLp& p,
                                            const KktPoint& pt,
                                            double eps_rel);
TerminationCheck check_relative_termination(const StandardLp& p,
                                            const Residuals& r,
                                            double eps_rel);

// Max of ||r_p||_inf, ||r_d||_inf and x'z / (1 + |c'x|). A negative x'z is
// reported as is.
ViolationSummary violation_summary(const StandardLp& p, const KktPoint& pt);
ViolationSummary violation_summary(const Residuals& r);

double norm_inf(std::span<const double> v);
double norm2(std::span<const double> v);
double dot(std::span<const double> a, std::span<const double> b);

}  // namespace hybridlp

#endif  // HYBRIDLP_KKT_H_
