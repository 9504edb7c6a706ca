#ifndef HYBRIDLP_BENCHMARK_H_
#define HYBRIDLP_BENCHMARK_H_

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hybridlp/lp.h"
#include "hybridlp/solver.h"
#include "hybridlp/status.h"

namespace hybridlp {

// One (model, method) run. Violations are measured on the original model and
// are absent when the run produced no point worth measuring (Error rows).
struct ResultRecord {
  std::string model;
  std::string method;
  SolveStatus status = SolveStatus::kError;
  std::string phase;
  double wall_seconds = 0.0;
  long pdhg_iterations = 0;
  long ipm_iterations = 0;
  long escalations = 0;
  bool ipm_invoked = false;
  std::optional<ViolationSummary> violation;
  std::optional<double> pdhg_violation;  // scaled model, first-order point

  bool solved() const { return status == SolveStatus::kOptimal; }
};

ResultRecord make_record(const std::string& model, const SolveReport& report);

// nullopt for an empty input. Inputs must be nonnegative; a zero makes the
// mean zero.
std::optional<double> geometric_mean(std::span<const double> values);

// wall_seconds divided by the fastest run of any method on the same model.
// Times are floored at 1 microsecond so instant runs stay comparable.
std::vector<double> relative_runtimes(std::span<const ResultRecord> records);

inline constexpr double kMaxRuntimeRatio = 100.0;
inline constexpr double kMinViolation = 1e-12;
inline constexpr double kMaxViolation = 1e6;

struct MethodSummary {
  std::string method;
  int models = 0;
  int solved = 0;
  // Geometric means over the models this method solved. Violations are
  // floored at kMinViolation first so one exact solve cannot zero the mean.
  std::optional<double> relative_runtime;
  std::optional<double> max_violation;
  // Warm-started methods against ipm-cold, over models both solved.
  std::optional<double> ipm_iteration_ratio;
  std::optional<int> solved_within_10_ipm;
  // Share of warm starts (interior point actually launched) ending Optimal.
  std::optional<double> warm_success_rate;
};

struct SummaryTable {
  std::vector<MethodSummary> methods;
};

inline constexpr char kColdIpmTag[] = "ipm-cold";

SummaryTable summarize(std::span<const ResultRecord> records);
std::string format_summary(const SummaryTable& table);

// Sorts by (model, method) and writes one row per record.
void write_results_csv(std::ostream& out, std::vector<ResultRecord> records);
std::vector<ResultRecord> read_results_csv(std::istream& in);

struct ScatterPoint {
  std::string model;
  std::string method;
  double relative_runtime = 0.0;
  double max_violation = 0.0;
};

// Runtime ratios above 100 become 100; violations are clamped into
// [1e-12, 1e6]; unsolved runs are reported at 1e6.
std::vector<ScatterPoint> scatter_export(std::span<const ResultRecord> records);
void write_scatter_csv(std::ostream& out, std::span<const ScatterPoint> points);

struct BenchModel {
  std::string name;
  std::optional<GeneralLp> lp;  // empty when the model could not be read
  std::string error;
};

// Reads every *.mps file in `dir`, sorted by file name. Unreadable files
// produce a BenchModel without a model.
std::vector<BenchModel> load_models(const std::string& dir);

// Runs every method on every model with `threads` workers. Models that failed
// to load give Error rows. Output is sorted by (model, method).
std::vector<ResultRecord> run_benchmark(std::span<const BenchModel> models,
                                        std::span<const SolveOptions> methods,
                                        int threads);

// Worker count from HYBRIDLP_THREADS, defaulting to 1.
int thread_count_from_env();

}  // namespace hybridlp

#endif  // HYBRIDLP_BENCHMARK_H_
