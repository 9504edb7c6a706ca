#ifndef HYBRIDLP_STATUS_H_
#define HYBRIDLP_STATUS_H_

#include <optional>
#include <string>
#include <string_view>

namespace hybridlp {

// Outcome of a solve, shared by every solver phase and by solution files.
enum class SolveStatus {
  kOptimal,
  kTimeLimit,
  kStalled,
  kIterationLimit,
  kNumericalFailure,
  kInfeasible,
  kUnbounded,
  kError,
};

std::string_view status_name(SolveStatus status);
std::optional<SolveStatus> parse_status(std::string_view name);

// Process exit code used by the command-line tool for each status.
int status_exit_code(SolveStatus status);

}  // namespace hybridlp

#endif  // HYBRIDLP_STATUS_H_
