#ifndef HYBRIDLP_SOLVER_H_
#define HYBRIDLP_SOLVER_H_

#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "hybridlp/ipm.h"
#include "hybridlp/lp.h"
#include "hybridlp/pdhg.h"
#include "hybridlp/solution_file.h"
#include "hybridlp/warm_start.h"

namespace hybridlp {

enum class Method {
  kPdhg,     // first-order only
  kIpmCold,  // interior point from its own start
  kHybrid,   // first-order, then warm-started interior point
};

struct SolveOptions {
  Method method = Method::kHybrid;
  std::string tag;  // name written to reports; defaults to the method name
  PdhgParams pdhg;
  IpmParams ipm;
  WarmStartParams warm;
  bool presolve = true;
  bool scaling = true;
  int ruiz_iterations = 20;
  double time_limit_s = 10000.0;
};

// Benchmark method tags: pdhg-1e4, pdhg-1e6, pdhg-1e8, ipm-cold, hybrid
// (first-order phase at 1e-4), hybrid-1e6. Returns nullopt for unknown tags.
std::optional<SolveOptions> options_for_tag(std::string_view tag);

struct SolveReport {
  SolveStatus status = SolveStatus::kError;
  std::string method;
  std::string phase;  // "presolve", "pdhg", "ipm" or "" on success
  std::string detail;
  // Point on the original model: x and z per variable, y per row.
  KktPoint point;
  double objective = 0.0;  // in the model's own sense, with its constant
  double wall_seconds = 0.0;
  long pdhg_iterations = 0;
  int pdhg_restarts = 0;
  int ipm_iterations = 0;
  int escalations = 0;
  bool ipm_invoked = false;
  bool solved_by_presolve = false;
  // On the standard form of the original model.
  ViolationSummary violation;
  // On the (presolved, scaled) model the last solver phase worked on.
  ViolationSummary solver_violation;
  // Scaled max violation of the first-order point (pdhg and hybrid only).
  std::optional<double> pdhg_violation;
};

// Max violation of a general-model (x, y) measured on the standard form of
// that model.
ViolationSummary original_violation(const GeneralLp& g,
                                    std::span<const double> x,
                                    std::span<const double> y);

// presolve -> standard form -> equilibrate -> method -> unscale -> postsolve,
// then the violation is measured on the original model. A point is always
// returned, even on failure statuses.
SolveReport solve(const GeneralLp& original, const SolveOptions& options);

struct HybridStats {
  long pdhg_iterations = 0;
  int ipm_iterations = 0;
  int escalations = 0;
  bool ipm_invoked = false;
};

struct HybridResult {
  SolutionFile solution;
  HybridStats stats;
  SolveReport report;
};

HybridResult hybrid_solve(const GeneralLp& original,
                          const PdhgParams& pdhg_params,
                          const IpmParams& ipm_params,
                          const WarmStartParams& warm_params);

// Names the point's entries after the model's columns and rows.
SolutionFile to_solution_file(const GeneralLp& original,
                              const SolveReport& report);

}  // namespace hybridlp

#endif  // HYBRIDLP_SOLVER_H_
