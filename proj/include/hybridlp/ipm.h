#ifndef HYBRIDLP_IPM_H_
#define HYBRIDLP_IPM_H_

#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "hybridlp/lp.h"
#include "hybridlp/status.h"

namespace hybridlp {

struct IpmParams {
  double eps_rel = 1e-8;
  int max_iters = 200;
  double step_fraction = 0.99;
  // A predictor-corrector step shorter than this counts as a stall.
  double min_step = 1e-6;
  double centering_power = 3.0;
  double time_limit_s = kInfinity;
};

struct IpmState {
  std::vector<double> x;
  std::vector<double> y;
  std::vector<double> z;
  int iteration = 0;
  double primal_step = 0.0;
  double dual_step = 0.0;

  double mu() const;
};

struct NewtonDirection {
  std::vector<double> dx;
  std::vector<double> dy;
  std::vector<double> dz;
};

class NumericalFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Factorizes A D A' (D diagonal, positive) with a sparse Cholesky and solves
// the primal-dual Newton system through it. When the factorization fails or
// the solve misses its backward-error target, a diagonal shift of 1e-10 is
// added and escalated tenfold up to 1e-6. Pivots that vanish relative to
// their diagonal drop the corresponding component of the solution.
class NormalEquationsSolver {
 public:
  explicit NormalEquationsSolver(const SparseMatrix& a);
  ~NormalEquationsSolver();
  NormalEquationsSolver(NormalEquationsSolver&&) noexcept;
  NormalEquationsSolver& operator=(NormalEquationsSolver&&) noexcept;

  // Throws NumericalFailure when no regularization level works.
  void factorize(std::span<const double> d);

  // Solves (A D A') v = rhs with iterative refinement.
  std::vector<double> solve(std::span<const double> rhs);

  // Newton step for
  //   A dx = rhs_p,  A'dy + dz = rhs_d,  Z dx + X dz = rhs_c
  // using the factorization of A (X/Z) A' (call factorize(x / z) first).
  NewtonDirection newton_direction(const StandardLp& p, const IpmState& s,
                                   std::span<const double> rhs_p,
                                   std::span<const double> rhs_d,
                                   std::span<const double> rhs_c);

  double regularization() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Mehrotra-type start: least-norm x, z = c, shifted to be positive, then
// floored at 1. y = 0.
IpmState cold_start_point(const StandardLp& p);

// One-shot Newton solve at `s` (factorizes A (X/Z) A').
NewtonDirection kkt_solve(const StandardLp& p, const IpmState& s,
                          std::span<const double> rhs_p,
                          std::span<const double> rhs_d,
                          std::span<const double> rhs_c);

struct StepReport {
  double primal_step = 0.0;
  double dual_step = 0.0;
  double sigma = 0.0;
  double mu_before = 0.0;
  double mu_after = 0.0;
  bool stalled = false;
};

// Largest alpha in [0, 1] with v + alpha * dv >= 0.
double max_step_to_boundary(std::span<const double> v,
                            std::span<const double> dv);

// Predictor, centering sigma = (mu_aff / mu)^centering_power, corrector,
// fraction-to-boundary steps. A step shorter than params.min_step is not
// taken; the report is flagged as stalled and `s` is left unchanged.
StepReport predictor_corrector_iteration(const StandardLp& p, IpmState& s,
                                         const IpmParams& params,
                                         NormalEquationsSolver& solver);

struct IpmStats {
  SolveStatus status = SolveStatus::kError;
  int iterations = 0;        // accepted iterations in this call
  int stall_iteration = -1;  // value of state.iteration at the stall
  double wall_seconds = 0.0;
  TerminationCheck final_check;
  // Per evaluated iterate (including the start): mu and scaled max violation.
  std::vector<double> mu_history;
  std::vector<double> violation_history;
};

struct IpmResult {
  IpmState state;
  KktPoint point;
  IpmStats stats;
};

// Infeasible primal-dual path following from `start` (or the cold start).
// Stops at the relative termination test, on a stall, at max_iters
// accepted iterations (counted by state.iteration), or at the time limit.
IpmResult run_ipm(const StandardLp& p, const IpmParams& params,
                  std::optional<IpmState> start = std::nullopt);

}  // namespace hybridlp

#endif  // HYBRIDLP_IPM_H_
