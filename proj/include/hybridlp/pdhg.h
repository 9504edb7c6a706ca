#ifndef HYBRIDLP_PDHG_H_
#define HYBRIDLP_PDHG_H_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "hybridlp/lp.h"
#include "hybridlp/status.h"

namespace hybridlp {

struct PdhgParams {
  double eps_rel = 1e-4;
  // Iteration cap; each iteration costs one A*x and one A'*y.
  long max_kkt_passes = 2'000'000;
  double time_limit_s = 10000.0;
  int check_every = 64;
  double restart_beta = 0.2;
  double primal_weight_init = 1.0;
  // Start vector of the operator-norm power iteration.
  std::uint64_t seed = 0;
};

// Restarted PDHG iterate. The primal step is tau / primal_weight and the
// dual step sigma * primal_weight, so their product stays tau * sigma.
struct PdhgState {
  std::vector<double> x;
  std::vector<double> y;
  std::vector<double> aty;  // A' y, kept in sync with y
  std::vector<double> x_sum;
  std::vector<double> y_sum;
  double weight_sum = 0.0;
  double tau = 0.0;
  double sigma = 0.0;
  double primal_weight = 1.0;
  long iteration = 0;
  long last_restart_iteration = 0;
  double restart_score = kInfinity;

  std::vector<double> x_average() const;
  std::vector<double> y_average() const;
};

struct PdhgStats {
  SolveStatus status = SolveStatus::kError;
  long iterations = 0;
  int restarts = 0;
  double wall_seconds = 0.0;
  double final_score = kInfinity;
  bool returned_average = false;
  TerminationCheck final_check;
};

struct PdhgResult {
  KktPoint point;
  PdhgStats stats;
};

// Power iteration on A'A for the largest singular value. Stops when the
// estimate changes by less than 1e-4 relative or after 100 iterations. The
// returned value never exceeds ||A||_2; callers use 1.05x it as the bound.
// Throws std::invalid_argument for a matrix without nonzeros.
double estimate_opnorm(const SparseMatrix& a, std::uint64_t seed = 0);

// Zero start with tau = sigma = 1 / (1.05 * opnorm).
PdhgState make_pdhg_state(const StandardLp& p, const PdhgParams& params,
                          double opnorm);

// x+ = max(0, x - (tau/w)(c - A'y)),  y+ = y + (sigma w)(b - A(2x+ - x)).
// Adds the new iterate to the running average. Returns false if the new
// iterate has a non-finite entry.
bool pdhg_step(PdhgState& state, const StandardLp& p);

// z = max(0, c - A'y).
std::vector<double> extract_reduced_costs(const StandardLp& p,
                                          std::span<const double> y);

// Restarted, averaged PDHG until the relative termination test holds at
// params.eps_rel. On TimeLimit / IterationLimit / NumericalFailure the best
// point seen at a check is returned.
PdhgResult run_pdhg(const StandardLp& p, const PdhgParams& params);

}  // namespace hybridlp

#endif  // HYBRIDLP_PDHG_H_
