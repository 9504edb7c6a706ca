#ifndef HYBRIDLP_DESK_SUITE_H_
#define HYBRIDLP_DESK_SUITE_H_

#include <cstdint>
#include <string>
#include <vector>

#include "hybridlp/lp.h"

namespace hybridlp {

// A small test model with a known optimal objective (in the model's own
// sense, constant included).
struct DeskInstance {
  std::string name;
  GeneralLp lp;
  double optimal_objective = 0.0;
  std::vector<double> optimal_x;  // a known optimum; empty if not recorded
  std::vector<double> optimal_y;
};

// min x1 + 2 x2  s.t.  x1 + x2 = 1,  x >= 0.
DeskInstance lp1();
// min -x1 - x2  s.t.  x1 + 2 x2 <= 4,  3 x1 + x2 <= 6,  x >= 0.
DeskInstance lp2();
// min -x1 - x2  s.t.  x1 <= 1,  x2 <= 1,  x1 + x2 <= 2,  x >= 0.
// Three constraints meet at the optimal vertex.
DeskInstance degenerate_lp();
// min x1 + 3 x2  s.t.  x1 + x2 >= 1,  -x1 + x2 >= -3,  x1 free, x2 >= 0.
DeskInstance free_variable_lp();

// Random model built backwards from a chosen primal-dual pair satisfying the
// optimality conditions with strict complementarity. Mixes row senses and
// variable bound types.
DeskInstance random_kkt_lp(int rows, int cols, std::uint64_t seed);

// The four fixtures followed by 20 random instances with up to 200 columns.
std::vector<DeskInstance> desk_suite();

}  // namespace hybridlp

#endif  // HYBRIDLP_DESK_SUITE_H_
