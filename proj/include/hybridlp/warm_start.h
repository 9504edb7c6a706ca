#ifndef HYBRIDLP_WARM_START_H_
#define HYBRIDLP_WARM_START_H_

#include <span>

#include "hybridlp/ipm.h"
#include "hybridlp/lp.h"

namespace hybridlp {

struct WarmStartParams {
  double mu_min = 1e-6;
  double alpha_min = 1e-6;
  double delta_max = 1e-4;
  double escalation_factor = 10.0;
  int max_escalations = 6;
};

// max(x'z / n, mu_min) with n = x.size().
double mu_target(std::span<const double> x, std::span<const double> z,
                 double mu_min);

// Builds an interior start from a first-order solution of the scaled model.
// For every j, x_j and z_j are floored at alpha_min; then the smaller of the
// two is moved toward mu / (other) first and the larger second, each move
// limited to +-delta_max around the value it starts from. Both are floored
// at alpha_min again at the end. y is passed through untouched.
KktPoint centered_start(const KktPoint& pt, const WarmStartParams& params);

// Same, with an explicit complementarity target.
KktPoint centered_start(const KktPoint& pt, const WarmStartParams& params,
                        double target);

struct WarmIpmResult {
  IpmResult ipm;
  int escalations = 0;
  double final_alpha_min = 0.0;
  int total_iterations = 0;
};

// Runs the IPM from centered_start(pdhg_point). Whenever it stalls, raises
// alpha_min by escalation_factor, floors the current iterate's x and z at
// the new value and resumes from there. Gives up with Stalled after
// max_escalations escalations.
WarmIpmResult run_warm_started_ipm(const StandardLp& scaled,
                                   const KktPoint& pdhg_point,
                                   const IpmParams& ipm_params,
                                   const WarmStartParams& params);

}  // namespace hybridlp

#endif  // HYBRIDLP_WARM_START_H_
