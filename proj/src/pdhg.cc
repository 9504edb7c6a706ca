#include "hybridlp/pdhg.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>
#include <stdexcept>

#include "hybridlp/kkt.h"

namespace hybridlp {
namespace {

constexpr double kOpnormSafety = 1.05;
// A start vector nearly orthogonal to the top singular vector makes the
// estimate plateau at a smaller singular value before it climbs, so the
// relative-change test is only trusted after this many passes.
constexpr int kOpnormMinIterations = 50;
constexpr double kPrimalWeightMin = 1e-4;
constexpr double kPrimalWeightMax = 1e4;
// A restart is also forced once the current restart period exceeds this
// fraction of all iterations so far.
constexpr double kArtificialRestartFraction = 0.36;

struct Candidate {
  KktPoint point;
  Residuals residuals;
  double score = kInfinity;
  TerminationCheck check;
  bool average = false;
};

Candidate evaluate(const StandardLp& p, std::vector<double> x,
                   std::vector<double> y, double eps_rel, bool average) {
  Candidate c;
  c.point.z = extract_reduced_costs(p, y);
  c.point.x = std::move(x);
  c.point.y = std::move(y);
  c.residuals = residuals(p, c.point);
  c.check = check_relative_termination(p, c.residuals, eps_rel);
  c.score = violation_summary(c.residuals).max_violation;
  if (std::isnan(c.score)) c.score = kInfinity;
  c.average = average;
  return c;
}

bool better(const Candidate& a, const Candidate& b) {
  if (a.check.converged != b.check.converged) return a.check.converged;
  return a.score < b.score;
}

void restart_at(PdhgState& s, const StandardLp& p, const Candidate& target) {
  s.x = target.point.x;
  s.y = target.point.y;
  p.a.multiply_transpose(s.y, s.aty);
  std::fill(s.x_sum.begin(), s.x_sum.end(), 0.0);
  std::fill(s.y_sum.begin(), s.y_sum.end(), 0.0);
  s.weight_sum = 0.0;
  s.last_restart_iteration = s.iteration;
  s.restart_score = target.score;
}

// A larger weight shortens primal steps and lengthens dual ones, so a lagging
// primal residual lowers it. Damped by a fourth root.
void update_primal_weight(PdhgState& s, const StandardLp& p,
                          const Candidate& target) {
  const double primal =
      norm2(target.residuals.r_p) / (1.0 + norm2(p.b));
  const double dual = norm2(target.residuals.r_d) / (1.0 + norm2(p.c));
  if (!(primal > 0.0) || !(dual > 0.0) || !std::isfinite(primal) ||
      !std::isfinite(dual)) {
    return;
  }
  s.primal_weight = std::clamp(s.primal_weight * std::pow(dual / primal, 0.25),
                               kPrimalWeightMin, kPrimalWeightMax);
}

}  // namespace

std::vector<double> PdhgState::x_average() const {
  if (weight_sum == 0.0) return x;
  std::vector<double> out(x_sum);
  for (double& v : out) v /= weight_sum;
  return out;
}

std::vector<double> PdhgState::y_average() const {
  if (weight_sum == 0.0) return y;
  std::vector<double> out(y_sum);
  for (double& v : out) v /= weight_sum;
  return out;
}

double estimate_opnorm(const SparseMatrix& a, std::uint64_t seed) {
  if (a.num_nonzeros() == 0) {
    throw std::invalid_argument("estimate_opnorm: matrix has no nonzeros");
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> dist(0.0, 1.0);
  std::vector<double> v(a.num_cols());
  for (double& e : v) e = dist(rng);
  std::vector<double> av(a.num_rows());
  std::vector<double> atav(a.num_cols());

  double estimate = 0.0;
  for (int iter = 0; iter < 100; ++iter) {
    const double norm_v = norm2(v);
    for (double& e : v) e /= norm_v;
    a.multiply(v, av);
    const double next = norm2(av);
    a.multiply_transpose(av, atav);
    const bool settled =
        iter >= kOpnormMinIterations && std::abs(next - estimate) < 1e-4 * next;
    estimate = std::max(estimate, next);
    if (settled) break;
    if (norm2(atav) == 0.0) break;
    v.swap(atav);
  }
  return estimate;
}

PdhgState make_pdhg_state(const StandardLp& p, const PdhgParams& params,
                          double opnorm) {
  PdhgState s;
  s.x.assign(p.num_cols(), 0.0);
  s.y.assign(p.num_rows(), 0.0);
  s.aty.assign(p.num_cols(), 0.0);
  s.x_sum.assign(p.num_cols(), 0.0);
  s.y_sum.assign(p.num_rows(), 0.0);
  const double step = opnorm > 0.0 ? 1.0 / (kOpnormSafety * opnorm) : 1.0;
  s.tau = step;
  s.sigma = step;
  s.primal_weight = params.primal_weight_init;
  return s;
}

bool pdhg_step(PdhgState& s, const StandardLp& p) {
  const int n = p.num_cols();
  const int m = p.num_rows();
  const double primal_step = s.tau / s.primal_weight;
  const double dual_step = s.sigma * s.primal_weight;

  // Reuse x_sum storage order: compute x+ into a scratch, then the
  // extrapolation 2x+ - x.
  std::vector<double> x_next(n);
  std::vector<double> extrapolated(n);
  bool finite = true;
  for (int j = 0; j < n; ++j) {
    const double v =
        std::max(0.0, s.x[j] - primal_step * (p.c[j] - s.aty[j]));
    x_next[j] = v;
    extrapolated[j] = 2.0 * v - s.x[j];
    finite = finite && std::isfinite(v);
  }
  std::vector<double> ax(m);
  p.a.multiply(extrapolated, ax);
  for (int i = 0; i < m; ++i) {
    s.y[i] += dual_step * (p.b[i] - ax[i]);
    finite = finite && std::isfinite(s.y[i]);
  }
  s.x.swap(x_next);
  p.a.multiply_transpose(s.y, s.aty);

  for (int j = 0; j < n; ++j) s.x_sum[j] += s.x[j];
  for (int i = 0; i < m; ++i) s.y_sum[i] += s.y[i];
  s.weight_sum += 1.0;
  ++s.iteration;
  return finite;
}

std::vector<double> extract_reduced_costs(const StandardLp& p,
                                          std::span<const double> y) {
  std::vector<double> z = p.a.multiply_transpose(y);
  for (int j = 0; j < p.num_cols(); ++j) z[j] = std::max(0.0, p.c[j] - z[j]);
  return z;
}

PdhgResult run_pdhg(const StandardLp& p, const PdhgParams& params) {
  if (!(params.eps_rel > 0.0) || params.check_every < 1) {
    throw std::invalid_argument("run_pdhg: invalid parameters");
  }
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  auto elapsed = [&] {
    return std::chrono::duration<double>(Clock::now() - start).count();
  };

  PdhgResult result;
  PdhgState state = make_pdhg_state(
      p, params, p.a.num_nonzeros() > 0 ? estimate_opnorm(p.a, params.seed)
                                        : 0.0);
  Candidate best = evaluate(p, state.x, state.y, params.eps_rel, false);
  state.restart_score = best.score;
  int restarts = 0;

  auto finish = [&](SolveStatus status, Candidate& chosen) {
    result.point = std::move(chosen.point);
    result.stats.status = status;
    result.stats.iterations = state.iteration;
    result.stats.restarts = restarts;
    result.stats.wall_seconds = elapsed();
    result.stats.final_score = chosen.score;
    result.stats.returned_average = chosen.average;
    result.stats.final_check = chosen.check;
    return result;
  };

  if (best.check.converged) return finish(SolveStatus::kOptimal, best);
  if (params.time_limit_s <= 0.0) return finish(SolveStatus::kTimeLimit, best);

  while (true) {
    const bool finite = pdhg_step(state, p);
    if (!finite) return finish(SolveStatus::kNumericalFailure, best);

    const bool at_limit = state.iteration >= params.max_kkt_passes;
    if (state.iteration % params.check_every != 0 && !at_limit) continue;

    Candidate current = evaluate(p, state.x, state.y, params.eps_rel, false);
    Candidate average = evaluate(p, state.x_average(), state.y_average(),
                                 params.eps_rel, true);
    Candidate& candidate = better(average, current) ? average : current;
    if (candidate.check.converged) {
      return finish(SolveStatus::kOptimal, candidate);
    }
    if (better(candidate, best)) best = candidate;
    if (at_limit) return finish(SolveStatus::kIterationLimit, best);
    if (elapsed() >= params.time_limit_s) {
      return finish(SolveStatus::kTimeLimit, best);
    }

    const long period = state.iteration - state.last_restart_iteration;
    const bool sufficient =
        candidate.score <= params.restart_beta * state.restart_score;
    const bool artificial =
        period >= kArtificialRestartFraction * state.iteration;
    if (sufficient || artificial) {
      update_primal_weight(state, p, candidate);
      restart_at(state, p, candidate);
      ++restarts;
    }
  }
}

}  // namespace hybridlp
