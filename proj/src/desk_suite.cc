#include "hybridlp/desk_suite.h"

#include <algorithm>
#include <cmath>
#include <random>

#include <fmt/format.h>

namespace hybridlp {
namespace {

GeneralLp make_lp(std::string name, std::vector<double> costs,
                  const std::vector<std::vector<double>>& rows,
                  std::vector<RowSense> senses, std::vector<double> rhs) {
  GeneralLp g;
  g.name = std::move(name);
  const std::size_t n = costs.size();
  g.col_costs = std::move(costs);
  g.matrix = SparseMatrix::from_dense(rows);
  g.row_senses = std::move(senses);
  g.row_rhs = std::move(rhs);
  g.var_lower.assign(n, 0.0);
  g.var_upper.assign(n, kInfinity);
  g.ensure_names();
  return g;
}

}  // namespace

DeskInstance lp1() {
  return {"lp1",
          make_lp("lp1", {1, 2}, {{1, 1}}, {RowSense::kEqual}, {1}),
          1.0,
          {1, 0},
          {1}};
}

DeskInstance lp2() {
  return {"lp2",
          make_lp("lp2", {-1, -1}, {{1, 2}, {3, 1}},
                  {RowSense::kLessEqual, RowSense::kLessEqual}, {4, 6}),
          -2.8,
          {1.6, 1.2},
          {-0.4, -0.2}};
}

DeskInstance degenerate_lp() {
  return {"degenerate",
          make_lp("degenerate", {-1, -1}, {{1, 0}, {0, 1}, {1, 1}},
                  {RowSense::kLessEqual, RowSense::kLessEqual,
                   RowSense::kLessEqual},
                  {1, 1, 2}),
          -2.0,
          {1, 1},
          {}};
}

DeskInstance free_variable_lp() {
  DeskInstance d{"free",
                 make_lp("free", {1, 3}, {{1, 1}, {-1, 1}},
                         {RowSense::kGreaterEqual, RowSense::kGreaterEqual},
                         {1, -3}),
                 1.0,
                 {1, 0},
                 {1, 0}};
  d.lp.var_lower[0] = -kInfinity;
  return d;
}

DeskInstance random_kkt_lp(int rows, int cols, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const auto uniform = [&](double lo, double hi) {
    return lo + (hi - lo) * unit(rng);
  };
  const auto m = static_cast<std::size_t>(rows);
  const auto n = static_cast<std::size_t>(cols);

  // Sparse pattern with about five entries per column, at least two per row
  // and one per column.
  std::vector<std::vector<double>> dense(m, std::vector<double>(n, 0.0));
  const double density = std::min(1.0, 5.0 / static_cast<double>(rows));
  const auto entry = [&] {
    const double v = uniform(0.1, 1.0);
    return unit(rng) < 0.5 ? -v : v;
  };
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (unit(rng) < density) dense[i][j] = entry();
    }
  }
  std::uniform_int_distribution<std::size_t> pick_row(0, m - 1);
  std::uniform_int_distribution<std::size_t> pick_col(0, n - 1);
  for (std::size_t j = 0; j < n; ++j) {
    if (std::none_of(dense.begin(), dense.end(),
                     [j](const auto& r) { return r[j] != 0.0; })) {
      dense[pick_row(rng)][j] = entry();
    }
  }
  for (auto& r : dense) {
    while (std::count_if(r.begin(), r.end(),
                         [](double v) { return v != 0.0; }) < 2) {
      r[pick_col(rng)] = entry();
    }
  }

  GeneralLp g;
  g.name = fmt::format("rand{}x{}s{}", rows, cols, seed);
  g.var_lower.resize(n);
  g.var_upper.resize(n);
  std::vector<double> x(n);
  std::vector<double> d(n);  // reduced costs
  const double basic_share =
      std::clamp(0.6 * static_cast<double>(rows) / static_cast<double>(cols),
                 0.1, 0.6);
  for (std::size_t j = 0; j < n; ++j) {
    const double kind = unit(rng);
    double lo = 0.0;
    double up = kInfinity;
    if (kind < 0.6) {
      // nonnegative
    } else if (kind < 0.75) {
      lo = uniform(-2.0, 0.0);
      up = lo + uniform(1.0, 3.0);
    } else if (kind < 0.85) {
      lo = -kInfinity;
    } else if (kind < 0.95) {
      lo = uniform(-1.0, 1.0);
    } else {
      lo = -kInfinity;
      up = uniform(-1.0, 1.0);
    }
    g.var_lower[j] = lo;
    g.var_upper[j] = up;
    const bool free = !std::isfinite(lo) && !std::isfinite(up);
    if (free || unit(rng) < basic_share) {
      d[j] = 0.0;
      if (std::isfinite(lo) && std::isfinite(up)) {
        x[j] = lo + (up - lo) * uniform(0.2, 0.8);
      } else if (std::isfinite(lo)) {
        x[j] = lo + uniform(0.5, 3.0);
      } else if (std::isfinite(up)) {
        x[j] = up - uniform(0.5, 3.0);
      } else {
        x[j] = uniform(-3.0, 3.0);
      }
    } else {
      const bool at_upper =
          !std::isfinite(lo) || (std::isfinite(up) && unit(rng) < 0.5);
      x[j] = at_upper ? up : lo;
      d[j] = at_upper ? -uniform(0.5, 2.0) : uniform(0.5, 2.0);
    }
  }

  g.row_senses.resize(m);
  g.row_rhs.resize(m);
  std::vector<double> y(m);
  for (std::size_t i = 0; i < m; ++i) {
    double ax = 0.0;
    for (std::size_t j = 0; j < n; ++j) ax += dense[i][j] * x[j];
    const double kind = unit(rng);
    if (kind < 0.4) {
      g.row_senses[i] = RowSense::kEqual;
      y[i] = uniform(-2.0, 2.0);
      g.row_rhs[i] = ax;
      continue;
    }
    const bool le = kind < 0.7;
    g.row_senses[i] = le ? RowSense::kLessEqual : RowSense::kGreaterEqual;
    if (unit(rng) < 0.6) {
      y[i] = le ? -uniform(0.5, 2.0) : uniform(0.5, 2.0);
      g.row_rhs[i] = ax;
    } else {
      y[i] = 0.0;
      const double slack = uniform(0.5, 2.0);
      g.row_rhs[i] = le ? ax + slack : ax - slack;
    }
  }

  g.col_costs.resize(n);
  double objective = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    double aty = 0.0;
    for (std::size_t i = 0; i < m; ++i) aty += dense[i][j] * y[i];
    g.col_costs[j] = aty + d[j];
    objective += g.col_costs[j] * x[j];
  }
  g.matrix = SparseMatrix::from_dense(dense);
  g.ensure_names();
  DeskInstance out;
  out.name = g.name;
  out.lp = std::move(g);
  out.optimal_objective = objective;
  out.optimal_x = std::move(x);
  out.optimal_y = std::move(y);
  return out;
}

std::vector<DeskInstance> desk_suite() {
  std::vector<DeskInstance> suite{lp1(), lp2(), degenerate_lp(),
                                  free_variable_lp()};
  struct Shape {
    int rows;
    int cols;
  };
  constexpr Shape kShapes[] = {
      {8, 12},   {10, 20},  {15, 25},  {20, 30},   {25, 40},
      {30, 45},  {35, 60},  {40, 70},  {50, 80},   {60, 90},
      {70, 100}, {80, 110}, {90, 120}, {100, 130}, {110, 150},
      {120, 160}, {130, 170}, {150, 180}, {170, 190}, {200, 200}};
  std::uint64_t seed = 1;
  for (const Shape& s : kShapes) {
    suite.push_back(random_kkt_lp(s.rows, s.cols, seed++));
  }
  return suite;
}

}  // namespace hybridlp
