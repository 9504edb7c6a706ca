#include "hybridlp/warm_start.h"

#include <algorithm>
#include <chrono>
#include <stdexcept>

#include "hybridlp/kkt.h"

namespace hybridlp {
namespace {

double move_toward(double target, double value, double delta) {
  return std::min(std::max(target, value - delta), value + delta);
}

}  // namespace

double mu_target(std::span<const double> x, std::span<const double> z,
                 double mu_min) {
  if (x.empty() || x.size() != z.size()) {
    throw std::invalid_argument("mu_target: x and z must be nonempty, equal");
  }
  return std::max(dot(x, z) / static_cast<double>(x.size()), mu_min);
}

KktPoint centered_start(const KktPoint& pt, const WarmStartParams& params,
                        double target) {
  if (pt.x.size() != pt.z.size()) {
    throw std::invalid_argument("centered_start: x and z differ in length");
  }
  const double alpha = params.alpha_min;
  const double delta = params.delta_max;
  KktPoint out = pt;
  for (size_t j = 0; j < out.x.size(); ++j) {
    double x = std::max(pt.x[j], alpha);
    double z = std::max(pt.z[j], alpha);
    if (x < z) {
      x = move_toward(target / z, x, delta);
      z = move_toward(target / x, z, delta);
    } else {
      z = move_toward(target / x, z, delta);
      x = move_toward(target / z, x, delta);
    }
    out.x[j] = std::max(x, alpha);
    out.z[j] = std::max(z, alpha);
  }
  return out;
}

KktPoint centered_start(const KktPoint& pt, const WarmStartParams& params) {
  return centered_start(pt, params, mu_target(pt.x, pt.z, params.mu_min));
}

WarmIpmResult run_warm_started_ipm(const StandardLp& scaled,
                                   const KktPoint& pdhg_point,
                                   const IpmParams& ipm_params,
                                   const WarmStartParams& params) {
  if (!(params.escalation_factor > 1.0) || params.max_escalations < 0) {
    throw std::invalid_argument("invalid warm-start parameters");
  }
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();

  const KktPoint centered = centered_start(pdhg_point, params);
  IpmState state;
  state.x = centered.x;
  state.y = centered.y;
  state.z = centered.z;

  WarmIpmResult out;
  double alpha = params.alpha_min;
  IpmParams run_params = ipm_params;
  while (true) {
    const double used =
        std::chrono::duration<double>(Clock::now() - start).count();
    run_params.time_limit_s = ipm_params.time_limit_s - used;
    out.ipm = run_ipm(scaled, run_params, state);
    if (out.ipm.stats.status != SolveStatus::kStalled ||
        out.escalations == params.max_escalations) {
      break;
    }
    ++out.escalations;
    alpha *= params.escalation_factor;
    state = out.ipm.state;
    for (double& v : state.x) v = std::max(v, alpha);
    for (double& v : state.z) v = std::max(v, alpha);
  }
  out.final_alpha_min = alpha;
  out.total_iterations = out.ipm.state.iteration;
  out.ipm.stats.wall_seconds =
      std::chrono::duration<double>(Clock::now() - start).count();
  return out;
}

}  // namespace hybridlp
