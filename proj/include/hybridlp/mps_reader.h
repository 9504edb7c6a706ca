#ifndef HYBRIDLP_MPS_READER_H_
#define HYBRIDLP_MPS_READER_H_

#include <stdexcept>
#include <string>
#include <string_view>

#include "hybridlp/lp.h"

namespace hybridlp {

class MpsParseError : public std::runtime_error {
 public:
  MpsParseError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// Reads free-format MPS (fixed-format files are accepted as long as names
// contain no blanks). Sections must appear in the order NAME, OBJSENSE,
// ROWS, COLUMNS, RHS, RANGES, BOUNDS, ENDATA; the optional ones may be
// omitted.
//
// Conventions:
//  - exactly one N row, which is the objective; an RHS entry on it sets the
//    objective constant to minus that value;
//  - missing bounds mean [0, +inf); |bound| >= 1e30 is treated as infinite;
//    UP with a negative value on a variable whose lower bound is still 0
//    makes the lower bound -inf;
//  - a ranged row gets a companion row named "<row>_range" holding the other
//    side of the interval;
//  - integer markers are ignored (the model is read as a pure LP);
//  - OBJSENSE MAX negates the costs and the constant and sets `maximize`.
GeneralLp parse_mps(std::string_view text);
GeneralLp read_mps_file(const std::string& path);

}  // namespace hybridlp

#endif  // HYBRIDLP_MPS_READER_H_
