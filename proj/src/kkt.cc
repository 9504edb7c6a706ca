#include "hybridlp/kkt.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hybridlp {

double norm_inf(std::span<const double> v) {
  double out = 0.0;
  for (double e : v) out = std::max(out, std::abs(e));
  return out;
}

double norm2(std::span<const double> v) {
  double sum = 0.0;
  for (double e : v) sum += e * e;
  return std::sqrt(sum);
}

double dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: size mismatch");
  double sum = 0.0;
  for (size_t i = 0; i < a.size(); ++i) sum += a[i] * b[i];
  return sum;
}

Residuals residuals(const StandardLp& p, const KktPoint& pt) {
  const int m = p.num_rows();
  const int n = p.num_cols();
  if (static_cast<int>(pt.x.size()) != n ||
      static_cast<int>(pt.z.size()) != n ||
      static_cast<int>(pt.y.size()) != m) {
    throw std::invalid_argument("residuals: point dimensions do not match LP");
  }
  Residuals r;
  r.r_p = p.a.multiply(pt.x);
  for (int i = 0; i < m; ++i) r.r_p[i] = p.b[i] - r.r_p[i];
  r.r_d = p.a.multiply_transpose(pt.y);
  for (int j = 0; j < n; ++j) r.r_d[j] = p.c[j] - r.r_d[j] - pt.z[j];
  r.primal_obj = dot(p.c, pt.x);
  r.dual_obj = dot(p.b, pt.y);
  r.comp = dot(pt.x, pt.z);
  return r;
}

TerminationCheck check_relative_termination(const StandardLp& p,
                                            const Residuals& r,
                                            double eps_rel) {
  if (!(eps_rel > 0.0)) {
    throw std::invalid_argument("eps_rel must be positive");
  }
  TerminationCheck t;
  t.primal_residual = norm2(r.r_p);
  t.primal_bound = eps_rel * (1.0 + norm2(p.b));
  t.dual_residual = norm2(r.r_d);
  t.dual_bound = eps_rel * (1.0 + norm2(p.c));
  t.gap = std::abs(r.primal_obj - r.dual_obj);
  t.gap_bound =
      eps_rel * (1.0 + std::abs(r.primal_obj) + std::abs(r.dual_obj));
  t.converged = t.primal_residual <= t.primal_bound &&
                t.dual_residual <= t.dual_bound && t.gap <= t.gap_bound;
  return t;
}

TerminationCheck check_relative_termination(const StandardLp& p,
                                            const KktPoint& pt,
                                            double eps_rel) {
  return check_relative_termination(p, residuals(p, pt), eps_rel);
}

ViolationSummary violation_summary(const Residuals& r) {
  ViolationSummary v;
  v.primal_inf = norm_inf(r.r_p);
  v.dual_inf = norm_inf(r.r_d);
  v.rel_gap = r.comp / (1.0 + std::abs(r.primal_obj));
  v.max_violation = std::max({v.primal_inf, v.dual_inf, v.rel_gap});
  return v;
}

ViolationSummary violation_summary(const StandardLp& p, const KktPoint& pt) {
  return violation_summary(residuals(p, pt));
}

}  // namespace hybridlp
