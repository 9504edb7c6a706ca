#include "hybridlp/status.h"

#include <array>
#include <utility>

namespace hybridlp {
namespace {

constexpr std::array<std::pair<SolveStatus, std::string_view>, 8> kNames = {{
    {SolveStatus::kOptimal, "Optimal"},
    {SolveStatus::kTimeLimit, "TimeLimit"},
    {SolveStatus::kStalled, "Stalled"},
    {SolveStatus::kIterationLimit, "IterationLimit"},
    {SolveStatus::kNumericalFailure, "NumericalFailure"},
    {SolveStatus::kInfeasible, "Infeasible"},
    {SolveStatus::kUnbounded, "Unbounded"},
    {SolveStatus::kError, "Error"},
}};

}  // namespace

std::string_view status_name(SolveStatus status) {
  for (const auto& [value, name] : kNames) {
    if (value == status) return name;
  }
  return "Error";
}

std::optional<SolveStatus> parse_status(std::string_view name) {
  for (const auto& [value, candidate] : kNames) {
    if (candidate == name) return value;
  }
  return std::nullopt;
}

int status_exit_code(SolveStatus status) {
  // 2 and 3 are reserved for usage and input errors.
  switch (status) {
    case SolveStatus::kOptimal:
      return 0;
    case SolveStatus::kTimeLimit:
      return 10;
    case SolveStatus::kStalled:
      return 11;
    case SolveStatus::kIterationLimit:
      return 12;
    case SolveStatus::kNumericalFailure:
      return 13;
    case SolveStatus::kInfeasible:
      return 14;
    case SolveStatus::kUnbounded:
      return 15;
    case SolveStatus::kError:
      return 1;
  }
  return 1;
}

}  // namespace hybridlp
