#include "hybridlp/solver.h"

#include <chrono>
#include <cmath>
#include <stdexcept>

#include "hybridlp/kkt.h"
#include "hybridlp/presolve.h"
#include "hybridlp/scaling.h"
#include "hybridlp/standard_form.h"

namespace hybridlp {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string_view method_name(Method m) {
  switch (m) {
    case Method::kPdhg:
      return "pdhg";
    case Method::kIpmCold:
      return "ipm-cold";
    case Method::kHybrid:
      return "hybrid";
  }
  return "unknown";
}

KktPoint zero_point(const StandardLp& p) {
  const auto m = static_cast<std::size_t>(p.a.num_rows());
  const auto n = static_cast<std::size_t>(p.a.num_cols());
  return {std::vector<double>(n, 0.0), std::vector<double>(m, 0.0),
          std::vector<double>(n, 0.0)};
}

// Result of running one method on the scaled standard-form model.
struct PhaseOutcome {
  SolveStatus status = SolveStatus::kError;
  std::string phase;
  KktPoint point;
};

PhaseOutcome run_method(const StandardLp& scaled, const SolveOptions& options,
                        double time_left, SolveReport& report) {
  PhaseOutcome out;
  if (options.method == Method::kIpmCold) {
    IpmParams ipm = options.ipm;
    ipm.time_limit_s = std::min(ipm.time_limit_s, time_left);
    IpmResult r = run_ipm(scaled, ipm);
    report.ipm_invoked = true;
    report.ipm_iterations = r.state.iteration;
    out.status = r.stats.status;
    out.phase = "ipm";
    out.point = std::move(r.point);
    return out;
  }

  const auto start = Clock::now();
  PdhgParams pdhg = options.pdhg;
  pdhg.time_limit_s = std::min(pdhg.time_limit_s, time_left);
  PdhgResult first = run_pdhg(scaled, pdhg);
  report.pdhg_iterations = first.stats.iterations;
  report.pdhg_restarts = first.stats.restarts;
  report.pdhg_violation = violation_summary(scaled, first.point).max_violation;
  out.status = first.stats.status;
  out.phase = "pdhg";
  out.point = std::move(first.point);
  if (options.method == Method::kPdhg || out.status != SolveStatus::kOptimal) {
    return out;
  }

  IpmParams ipm = options.ipm;
  ipm.time_limit_s = std::min(ipm.time_limit_s, time_left - seconds_since(start));
  WarmIpmResult warm = run_warm_started_ipm(scaled, out.point, ipm, options.warm);
  report.ipm_invoked = true;
  report.ipm_iterations = warm.total_iterations;
  report.escalations = warm.escalations;
  out.status = warm.ipm.stats.status;
  out.phase = "ipm";
  out.point = std::move(warm.ipm.point);
  return out;
}

}  // namespace

std::optional<SolveOptions> options_for_tag(std::string_view tag) {
  SolveOptions o;
  o.tag = std::string(tag);
  if (tag == "pdhg-1e4" || tag == "pdhg") {
    o.method = Method::kPdhg;
    o.pdhg.eps_rel = 1e-4;
  } else if (tag == "pdhg-1e6") {
    o.method = Method::kPdhg;
    o.pdhg.eps_rel = 1e-6;
  } else if (tag == "pdhg-1e8") {
    o.method = Method::kPdhg;
    o.pdhg.eps_rel = 1e-8;
  } else if (tag == "ipm-cold" || tag == "ipm") {
    o.method = Method::kIpmCold;
  } else if (tag == "hybrid") {
    o.method = Method::kHybrid;
    o.pdhg.eps_rel = 1e-4;
  } else if (tag == "hybrid-1e6") {
    o.method = Method::kHybrid;
    o.pdhg.eps_rel = 1e-6;
  } else {
    return std::nullopt;
  }
  return o;
}

ViolationSummary original_violation(const GeneralLp& g,
                                    std::span<const double> x,
                                    std::span<const double> y) {
  const StandardLp s = to_standard_form(g);
  return violation_summary(s, lift_general_point(g, s, x, y));
}

SolveReport solve(const GeneralLp& original, const SolveOptions& options) {
  const auto start = Clock::now();
  original.validate();

  SolveReport report;
  report.method =
      options.tag.empty() ? std::string(method_name(options.method)) : options.tag;

  PresolveResult pre;
  if (options.presolve) {
    pre = presolve(original);
  } else {
    pre.verdict = PresolveVerdict::kReduced;
    pre.stack = identity_stack(original);
    pre.reduced = original;
  }

  KktPoint reduced_point;
  SolveStatus status = SolveStatus::kOptimal;
  std::string phase;
  switch (pre.verdict) {
    case PresolveVerdict::kInfeasible:
    case PresolveVerdict::kUnbounded: {
      status = pre.verdict == PresolveVerdict::kInfeasible
                   ? SolveStatus::kInfeasible
                   : SolveStatus::kUnbounded;
      phase = "presolve";
      report.detail = pre.detail;
      // Report the origin of the original model so that callers always get
      // a point of the right size.
      pre.stack = identity_stack(original);
      const int n = original.num_vars();
      const int m = original.num_rows();
      std::vector<double> x(static_cast<std::size_t>(n), 0.0);
      for (int j = 0; j < n; ++j) {
        const double l = original.var_lower[static_cast<std::size_t>(j)];
        const double u = original.var_upper[static_cast<std::size_t>(j)];
        x[static_cast<std::size_t>(j)] =
            std::isfinite(l) ? l : (std::isfinite(u) ? u : 0.0);
      }
      reduced_point.x = std::move(x);
      reduced_point.y.assign(static_cast<std::size_t>(m), 0.0);
      reduced_point.z = original.col_costs;
      break;
    }
    case PresolveVerdict::kSolved:
      report.solved_by_presolve = true;
      reduced_point = postsolve(pre.stack, KktPoint{});
      pre.stack = identity_stack(original);
      break;
    case PresolveVerdict::kReduced: {
      const StandardLp standard = to_standard_form(pre.reduced);
      ScaledLp scaled{standard, identity_scaling(standard.a.num_rows(),
                                                 standard.a.num_cols())};
      if (options.scaling) {
        try {
          scaled = ruiz_equilibrate(standard, options.ruiz_iterations);
        } catch (const ModelError&) {
          // Empty rows or columns only survive with presolve disabled; the
          // solvers cope with them unscaled.
        }
      }
      PhaseOutcome outcome;
      try {
        outcome = run_method(scaled.lp, options,
                             options.time_limit_s - seconds_since(start),
                             report);
      } catch (const std::exception& e) {
        outcome.status = SolveStatus::kNumericalFailure;
        outcome.phase = report.ipm_invoked ? "ipm" : "pdhg";
        outcome.point = zero_point(scaled.lp);
        report.detail = e.what();
      }
      status = outcome.status;
      phase = outcome.phase;
      report.solver_violation = violation_summary(scaled.lp, outcome.point);
      const KktPoint unscaled = unscale_point(scaled.info, outcome.point);
      reduced_point = recover_general_point(pre.reduced, standard, unscaled);
      break;
    }
  }

  report.point = postsolve(pre.stack, reduced_point);
  report.status = status;
  report.phase = status == SolveStatus::kOptimal ? std::string() : phase;
  report.violation = original_violation(original, report.point.x, report.point.y);
  if (report.solved_by_presolve) report.solver_violation = report.violation;
  const double obj = general_objective(original, report.point.x);
  report.objective = original.maximize ? -obj : obj;
  report.wall_seconds = seconds_since(start);
  return report;
}

SolutionFile to_solution_file(const GeneralLp& original,
                              const SolveReport& report) {
  GeneralLp named = original;
  named.ensure_names();
  SolutionFile f;
  f.status = report.status;
  f.method = report.method;
  f.phase = report.phase;
  f.objective = report.objective;
  f.wall_seconds = report.wall_seconds;
  f.pdhg_iterations = report.pdhg_iterations;
  f.ipm_iterations = report.ipm_iterations;
  f.escalations = report.escalations;
  f.violation = report.violation;
  const auto fill = [](const std::vector<std::string>& names,
                       const std::vector<double>& values,
                       std::vector<NamedValue>& out) {
    out.reserve(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
      out.push_back({names[i], values[i]});
    }
  };
  fill(named.col_names, report.point.x, f.x);
  fill(named.row_names, report.point.y, f.y);
  fill(named.col_names, report.point.z, f.z);
  return f;
}

HybridResult hybrid_solve(const GeneralLp& original,
                          const PdhgParams& pdhg_params,
                          const IpmParams& ipm_params,
                          const WarmStartParams& warm_params) {
  SolveOptions o;
  o.method = Method::kHybrid;
  o.pdhg = pdhg_params;
  o.ipm = ipm_params;
  o.warm = warm_params;
  o.time_limit_s = pdhg_params.time_limit_s;
  HybridResult r;
  r.report = solve(original, o);
  r.solution = to_solution_file(original, r.report);
  r.stats = {r.report.pdhg_iterations, r.report.ipm_iterations,
             r.report.escalations, r.report.ipm_invoked};
  return r;
}

}  // namespace hybridlp
