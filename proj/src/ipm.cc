#include "hybridlp/ipm.h"

#include <algorithm>
#include <chrono>
#include <cmath>

#include <Eigen/SparseCore>

#include "hybridlp/kkt.h"
#include "sparse_cholesky.h"

namespace hybridlp {
namespace {

using EigenSparse = Eigen::SparseMatrix<double>;
using EigenVector = Eigen::VectorXd;

constexpr int kPrimalRefinementPasses = 3;
constexpr double kFirstRegularization = 1e-10;
constexpr double kMaxRegularization = 1e-6;
constexpr double kBackwardErrorTarget = 1e-8;
constexpr int kRefinementSteps = 3;

EigenSparse to_eigen(const SparseMatrix& a) {
  std::vector<Eigen::Triplet<double>> t;
  t.reserve(a.num_nonzeros());
  for (const auto& e : a.triplets()) t.emplace_back(e.row, e.col, e.value);
  EigenSparse out(a.num_rows(), a.num_cols());
  out.setFromTriplets(t.begin(), t.end());
  return out;
}

double sparse_norm_inf(const EigenSparse& m) {
  EigenVector row_sums = EigenVector::Zero(m.rows());
  for (int k = 0; k < m.outerSize(); ++k) {
    for (EigenSparse::InnerIterator it(m, k); it; ++it) {
      row_sums[it.row()] += std::abs(it.value());
    }
  }
  return m.rows() == 0 ? 0.0 : row_sums.maxCoeff();
}

}  // namespace

struct NormalEquationsSolver::Impl {
  explicit Impl(const SparseMatrix& matrix)
      : a(to_eigen(matrix)),
        cholesky(EigenSparse(a.cwiseAbs() * a.cwiseAbs().transpose())) {}

  EigenSparse a;
  EigenSparse normal;  // A D A' without the shift
  double normal_norm = 0.0;
  double regularization = 0.0;  // shift currently factorized
  SparseCholesky cholesky;
  bool factorized = false;

  bool factorize_with(double shift) {
    regularization = shift;
    factorized = cholesky.factorize(normal, shift);
    return factorized;
  }

  bool refine(const EigenVector& rhs, EigenVector& v) {
    v = cholesky.solve(rhs);
    for (int step = 0; step <= kRefinementSteps; ++step) {
      const EigenVector r = rhs - normal * v;
      const double scale = normal_norm * v.lpNorm<Eigen::Infinity>() +
                           rhs.lpNorm<Eigen::Infinity>();
      const double err = r.lpNorm<Eigen::Infinity>();
      if (!std::isfinite(err)) return false;
      if (err <= kBackwardErrorTarget * scale || scale == 0.0) return true;
      if (step == kRefinementSteps) return false;
      v += cholesky.solve(r);
    }
    return false;
  }
};

NormalEquationsSolver::NormalEquationsSolver(const SparseMatrix& a)
    : impl_(std::make_unique<Impl>(a)) {}

NormalEquationsSolver::~NormalEquationsSolver() = default;
NormalEquationsSolver::NormalEquationsSolver(NormalEquationsSolver&&) noexcept =
    default;
NormalEquationsSolver& NormalEquationsSolver::operator=(
    NormalEquationsSolver&&) noexcept = default;

double NormalEquationsSolver::regularization() const {
  return impl_->regularization;
}

void NormalEquationsSolver::factorize(std::span<const double> d) {
  Impl& im = *impl_;
  if (static_cast<int>(d.size()) != im.a.cols()) {
    throw std::invalid_argument("factorize: scaling has wrong length");
  }
  Eigen::Map<const EigenVector> diag(d.data(), static_cast<int>(d.size()));
  const EigenSparse scaled = im.a * diag.asDiagonal();
  im.normal = (scaled * im.a.transpose()).pruned(0.0);
  im.normal_norm = sparse_norm_inf(im.normal);
  if (!std::isfinite(im.normal_norm)) {
    throw NumericalFailure("normal matrix has non-finite entries");
  }
  if (im.factorize_with(0.0)) return;
  for (double shift = kFirstRegularization; shift <= kMaxRegularization * 1.001;
       shift *= 10.0) {
    if (im.factorize_with(shift)) return;
  }
  throw NumericalFailure("normal equations could not be factorized");
}

std::vector<double> NormalEquationsSolver::solve(std::span<const double> rhs) {
  Impl& im = *impl_;
  if (!im.factorized) throw NumericalFailure("solve before factorize");
  const EigenVector b = Eigen::Map<const EigenVector>(
      rhs.data(), static_cast<int>(rhs.size()));
  EigenVector v;
  while (!(im.factorized && im.refine(b, v))) {
    const double next = im.regularization == 0.0 ? kFirstRegularization
                                                 : im.regularization * 10.0;
    if (next > kMaxRegularization * 1.001) {
      throw NumericalFailure("normal equations solve inaccurate");
    }
    im.factorize_with(next);
  }
  return {v.data(), v.data() + v.size()};
}

NewtonDirection NormalEquationsSolver::newton_direction(
    const StandardLp& p, const IpmState& s, std::span<const double> rhs_p,
    std::span<const double> rhs_d, std::span<const double> rhs_c) {
  const int n = p.num_cols();
  const int m = p.num_rows();
  // A dx = rhs_p with dx = D(A'dy - rhs_d) + rhs_c / z, D = x / z.
  std::vector<double> t(n);
  for (int j = 0; j < n; ++j) {
    t[j] = (s.x[j] / s.z[j]) * rhs_d[j] - rhs_c[j] / s.z[j];
  }
  std::vector<double> rhs = p.a.multiply(t);
  for (int i = 0; i < m; ++i) rhs[i] += rhs_p[i];

  NewtonDirection d;
  d.dy = solve(rhs);
  std::vector<double> aty = p.a.multiply_transpose(d.dy);
  d.dx.resize(n);
  d.dz.resize(n);
  for (int j = 0; j < n; ++j) {
    d.dx[j] = (s.x[j] / s.z[j]) * (aty[j] - rhs_d[j]) + rhs_c[j] / s.z[j];
    d.dz[j] = rhs_d[j] - aty[j];
  }

  // The normal-equations residual is small relative to |A D A'| |dy|, which
  // near the optimum can still leave A dx visibly off rhs_p. Refine on the
  // primal block; a correction through dy keeps the other two blocks exact.
  std::vector<double> miss(m);
  auto primal_miss = [&] {
    const std::vector<double> adx = p.a.multiply(d.dx);
    for (int i = 0; i < m; ++i) miss[i] = rhs_p[i] - adx[i];
    return norm_inf(miss);
  };
  double last = primal_miss();
  for (int pass = 0; pass < kPrimalRefinementPasses && last > 0.0; ++pass) {
    // No regularization escalation here: a miss the factorization cannot
    // resolve (dropped pivots) just ends the refinement.
    EigenVector ddy;
    if (!impl_->refine(Eigen::Map<const EigenVector>(miss.data(), m), ddy)) {
      break;
    }
    const std::vector<double> atddy = p.a.multiply_transpose(
        std::span<const double>(ddy.data(), static_cast<size_t>(m)));
    NewtonDirection trial = d;
    for (int i = 0; i < m; ++i) trial.dy[i] += ddy[i];
    for (int j = 0; j < n; ++j) {
      trial.dx[j] += (s.x[j] / s.z[j]) * atddy[j];
      trial.dz[j] -= atddy[j];
    }
    std::swap(d, trial);
    const double now = primal_miss();
    if (!(now < 0.5 * last)) {
      if (!(now < last)) std::swap(d, trial);
      break;
    }
    last = now;
  }
  return d;
}

double IpmState::mu() const {
  if (x.empty()) return 0.0;
  return dot(x, z) / static_cast<double>(x.size());
}

IpmState cold_start_point(const StandardLp& p) {
  const int n = p.num_cols();
  IpmState s;
  s.y.assign(p.num_rows(), 0.0);

  std::vector<double> x(n, 0.0);
  if (p.num_rows() > 0) {
    // Least-norm x is only a heuristic; an inconsistent or rank-deficient
    // system falls back to the all-ones start below.
    try {
      NormalEquationsSolver solver(p.a);
      solver.factorize(std::vector<double>(n, 1.0));
      x = p.a.multiply_transpose(solver.solve(p.b));
    } catch (const NumericalFailure&) {
      x.assign(n, 0.0);
    }
  }
  std::vector<double> z = p.c;

  const double min_x = n > 0 ? *std::min_element(x.begin(), x.end()) : 0.0;
  const double min_z = n > 0 ? *std::min_element(z.begin(), z.end()) : 0.0;
  const double shift_x = std::max(-1.5 * min_x, 0.0);
  const double shift_z = std::max(-1.5 * min_z, 0.0);
  for (double& v : x) v += shift_x;
  for (double& v : z) v += shift_z;

  const double xz = dot(x, z);
  double sum_x = 0.0;
  double sum_z = 0.0;
  for (int j = 0; j < n; ++j) {
    sum_x += x[j];
    sum_z += z[j];
  }
  const double center_x = sum_z > 0.0 ? 0.5 * xz / sum_z : 0.0;
  const double center_z = sum_x > 0.0 ? 0.5 * xz / sum_x : 0.0;
  for (int j = 0; j < n; ++j) {
    x[j] = std::max(x[j] + center_x, 1.0);
    z[j] = std::max(z[j] + center_z, 1.0);
  }
  s.x = std::move(x);
  s.z = std::move(z);
  return s;
}

NewtonDirection kkt_solve(const StandardLp& p, const IpmState& s,
                          std::span<const double> rhs_p,
                          std::span<const double> rhs_d,
                          std::span<const double> rhs_c) {
  const int n = p.num_cols();
  if (static_cast<int>(rhs_p.size()) != p.num_rows() ||
      static_cast<int>(rhs_d.size()) != n ||
      static_cast<int>(rhs_c.size()) != n) {
    throw std::invalid_argument("kkt_solve: dimension mismatch");
  }
  std::vector<double> d(n);
  for (int j = 0; j < n; ++j) d[j] = s.x[j] / s.z[j];
  NormalEquationsSolver solver(p.a);
  solver.factorize(d);
  return solver.newton_direction(p, s, rhs_p, rhs_d, rhs_c);
}

double max_step_to_boundary(std::span<const double> v,
                            std::span<const double> dv) {
  double alpha = 1.0;
  for (size_t j = 0; j < v.size(); ++j) {
    if (dv[j] < 0.0) alpha = std::min(alpha, -v[j] / dv[j]);
  }
  return alpha;
}

StepReport predictor_corrector_iteration(const StandardLp& p, IpmState& s,
                                         const IpmParams& params,
                                         NormalEquationsSolver& solver) {
  const int n = p.num_cols();
  const int m = p.num_rows();
  StepReport report;
  report.mu_before = s.mu();

  std::vector<double> rp = p.a.multiply(s.x);
  for (int i = 0; i < m; ++i) rp[i] = p.b[i] - rp[i];
  std::vector<double> rd = p.a.multiply_transpose(s.y);
  for (int j = 0; j < n; ++j) rd[j] = p.c[j] - rd[j] - s.z[j];

  std::vector<double> d(n);
  for (int j = 0; j < n; ++j) d[j] = s.x[j] / s.z[j];
  solver.factorize(d);

  std::vector<double> rc(n);
  for (int j = 0; j < n; ++j) rc[j] = -s.x[j] * s.z[j];
  const NewtonDirection affine = solver.newton_direction(p, s, rp, rd, rc);

  const double alpha_p_aff = max_step_to_boundary(s.x, affine.dx);
  const double alpha_d_aff = max_step_to_boundary(s.z, affine.dz);
  double mu_aff = 0.0;
  for (int j = 0; j < n; ++j) {
    mu_aff += (s.x[j] + alpha_p_aff * affine.dx[j]) *
              (s.z[j] + alpha_d_aff * affine.dz[j]);
  }
  mu_aff /= n;
  const double mu = report.mu_before;
  const double sigma =
      mu > 0.0 ? std::clamp(std::pow(std::max(mu_aff, 0.0) / mu,
                                     params.centering_power),
                            0.0, 1.0)
               : 0.0;
  report.sigma = sigma;

  for (int j = 0; j < n; ++j) {
    rc[j] = sigma * mu - s.x[j] * s.z[j] - affine.dx[j] * affine.dz[j];
  }
  const NewtonDirection dir = solver.newton_direction(p, s, rp, rd, rc);

  const double alpha_p =
      std::min(1.0, params.step_fraction * max_step_to_boundary(s.x, dir.dx));
  const double alpha_d =
      std::min(1.0, params.step_fraction * max_step_to_boundary(s.z, dir.dz));
  report.primal_step = alpha_p;
  report.dual_step = alpha_d;
  if (std::min(alpha_p, alpha_d) < params.min_step) {
    report.stalled = true;
    report.mu_after = mu;
    return report;
  }

  for (int j = 0; j < n; ++j) {
    s.x[j] += alpha_p * dir.dx[j];
    s.z[j] += alpha_d * dir.dz[j];
  }
  for (int i = 0; i < m; ++i) s.y[i] += alpha_d * dir.dy[i];
  s.primal_step = alpha_p;
  s.dual_step = alpha_d;
  ++s.iteration;
  report.mu_after = s.mu();
  return report;
}

IpmResult run_ipm(const StandardLp& p, const IpmParams& params,
                  std::optional<IpmState> start) {
  using Clock = std::chrono::steady_clock;
  const auto clock_start = Clock::now();
  auto elapsed = [&] {
    return std::chrono::duration<double>(Clock::now() - clock_start).count();
  };
  if (!(params.step_fraction > 0.0 && params.step_fraction < 1.0) ||
      !(params.min_step > 0.0) || !(params.eps_rel > 0.0)) {
    throw std::invalid_argument("run_ipm: invalid parameters");
  }

  IpmResult result;
  IpmState& s = result.state;
  const int n = p.num_cols();
  if (start) {
    s = std::move(*start);
    if (static_cast<int>(s.x.size()) != n ||
        static_cast<int>(s.z.size()) != n ||
        static_cast<int>(s.y.size()) != p.num_rows()) {
      throw std::invalid_argument("run_ipm: start point has wrong size");
    }
    for (int j = 0; j < n; ++j) {
      if (!(s.x[j] > 0.0) || !(s.z[j] > 0.0)) {
        throw std::invalid_argument("run_ipm: start point not interior");
      }
    }
  } else {
    s = cold_start_point(p);
  }

  NormalEquationsSolver solver(p.a);
  const int first_iteration = s.iteration;
  while (true) {
    KktPoint pt{s.x, s.y, s.z};
    for (double& v : pt.z) v = std::max(v, 0.0);
    const Residuals r = residuals(p, pt);
    result.stats.final_check = check_relative_termination(p, r, params.eps_rel);
    result.stats.mu_history.push_back(s.mu());
    result.stats.violation_history.push_back(
        violation_summary(r).max_violation);
    result.point = std::move(pt);

    if (result.stats.final_check.converged) {
      result.stats.status = SolveStatus::kOptimal;
      break;
    }
    if (s.iteration >= params.max_iters) {
      result.stats.status = SolveStatus::kIterationLimit;
      break;
    }
    if (elapsed() >= params.time_limit_s) {
      result.stats.status = SolveStatus::kTimeLimit;
      break;
    }
    StepReport step;
    try {
      step = predictor_corrector_iteration(p, s, params, solver);
    } catch (const NumericalFailure&) {
      result.stats.status = SolveStatus::kNumericalFailure;
      break;
    }
    if (step.stalled) {
      result.stats.status = SolveStatus::kStalled;
      result.stats.stall_iteration = s.iteration;
      break;
    }
  }
  result.stats.iterations = s.iteration - first_iteration;
  result.stats.wall_seconds = elapsed();
  return result;
}

}  // namespace hybridlp
