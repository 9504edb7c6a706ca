#ifndef HYBRIDLP_SOLUTION_FILE_H_
#define HYBRIDLP_SOLUTION_FILE_H_

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "hybridlp/lp.h"
#include "hybridlp/status.h"

namespace hybridlp {

struct NamedValue {
  std::string name;
  double value = 0.0;

  bool operator==(const NamedValue&) const = default;
};

// Everything a solve reports about one model. x and z are keyed by column
// name, y by row name, all on the original (user) model.
struct SolutionFile {
  SolveStatus status = SolveStatus::kError;
  std::string method;
  std::string phase;  // phase that produced a failure status, "" otherwise
  double objective = 0.0;
  double wall_seconds = 0.0;
  long pdhg_iterations = 0;
  long ipm_iterations = 0;
  long escalations = 0;
  std::optional<ViolationSummary> violation;
  std::vector<NamedValue> x;
  std::vector<NamedValue> y;
  std::vector<NamedValue> z;
};

bool operator==(const ViolationSummary& a, const ViolationSummary& b);
bool operator==(const SolutionFile& a, const SolutionFile& b);

class SolutionParseError : public std::runtime_error {
 public:
  SolutionParseError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// Text rendering with a fixed key order; see docs/solution_format.md.
// Reals use 17 significant digits, so parse_solution(write_solution(s)) == s.
std::string write_solution(const SolutionFile& s);
SolutionFile parse_solution(std::string_view text);

SolutionFile read_solution_file(const std::string& path);
void write_solution_file(const std::string& path, const SolutionFile& s);

// 17-significant-digit rendering shared by every text output.
std::string format_real(double value);

}  // namespace hybridlp

#endif  // HYBRIDLP_SOLUTION_FILE_H_
