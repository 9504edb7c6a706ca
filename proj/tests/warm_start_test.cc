#include <algorithm>
#include <cmath>
#include <limits>

#include <gtest/gtest.h>

#include "hybridlp/desk_suite.h"
#include "hybridlp/pdhg.h"
#include "hybridlp/scaling.h"
#include "hybridlp/standard_form.h"
#include "hybridlp/warm_start.h"
#include "test_util.h"

namespace hybridlp {
namespace {

using testing::Gen;

KktPoint pair_point(double x, double z) { return {{x}, {}, {z}}; }

TEST(MuTargetTest, Examples) {
  const std::vector<double> zero = {0, 0};
  EXPECT_EQ(mu_target(zero, zero, 1e-6), 1e-6);
  EXPECT_EQ(mu_target(std::vector<double>{1, 1}, std::vector<double>{2, 0}, 1e-6), 1.0);
  EXPECT_EQ(mu_target(std::vector<double>{1e-3, 1e-3}, std::vector<double>{1e-3, 1e-3}, 1e-6),
            1e-6);
}

TEST(CenteredStartTest, SmallComponentRefloored) {
  const KktPoint out = centered_start(pair_point(0, 5), WarmStartParams{}, 1e-6);
  // The move lands at 1e-6 / 5 = 2e-7 and is floored back to alpha_min.
  EXPECT_EQ(out.x[0], 1e-6);
  EXPECT_EQ(out.z[0], 5.0);
}

TEST(CenteredStartTest, ClampBindsBothMoves) {
  const KktPoint out = centered_start(pair_point(3, 2), WarmStartParams{}, 1e-6);
  EXPECT_DOUBLE_EQ(out.z[0], 2 - 1e-4);
  EXPECT_DOUBLE_EQ(out.x[0], 3 - 1e-4);
}

TEST(CenteredStartTest, AlreadyCenteredPairIsFixed) {
  const KktPoint out = centered_start(pair_point(1e-3, 1e-3), WarmStartParams{}, 1e-6);
  EXPECT_DOUBLE_EQ(out.x[0], 1e-3);
  EXPECT_DOUBLE_EQ(out.z[0], 1e-3);
}

TEST(CenteredStartTest, DefaultTargetFromPoint) {
  const KktPoint pt{{1, 1}, {7}, {2, 0}};
  const KktPoint a = centered_start(pt, WarmStartParams{});
  const KktPoint b = centered_start(pt, WarmStartParams{}, 1.0);
  EXPECT_EQ(a.x, b.x);
  EXPECT_EQ(a.z, b.z);
}

// Coordinate-wise reference: floor, move the smaller then the larger toward
// target / other within +-delta of where each starts, floor again.
std::pair<double, double> reference_pair(double x, double z, double target,
                                         const WarmStartParams& w) {
  x = std::max(x, w.alpha_min);
  z = std::max(z, w.alpha_min);
  auto move = [&](double v, double other) {
    return std::min(std::max(target / other, v - w.delta_max), v + w.delta_max);
  };
  if (x < z) {
    x = move(x, z);
    z = move(z, x);
  } else {
    z = move(z, x);
    x = move(x, z);
  }
  return {std::max(x, w.alpha_min), std::max(z, w.alpha_min)};
}

double random_entry(Gen& g) {
  switch (g.integer(0, 3)) {
    case 0: return 0.0;
    case 1: return -g.magnitude(-8, 1);
    default: return g.magnitude(-9, 2);
  }
}

TEST(CenteredStartTest, RandomPairsSatisfyProperties) {
  Gen g(61);
  const WarmStartParams w;
  int unclamped = 0;
  for (int trial = 0; trial < 10000; ++trial) {
    const double x = random_entry(g);
    const double z = random_entry(g);
    const double target = g.coin() ? w.mu_min : g.magnitude(-9, 0);
    const KktPoint out = centered_start({{x}, {0.5}, {z}}, w, target);
    const double xo = out.x[0];
    const double zo = out.z[0];
    const auto [xr, zr] = reference_pair(x, z, target, w);
    ASSERT_EQ(xo, xr) << x << " " << z << " " << target;
    ASSERT_EQ(zo, zr) << x << " " << z << " " << target;

    EXPECT_GE(xo, w.alpha_min);
    EXPECT_GE(zo, w.alpha_min);
    // v +- delta rounds at the scale of v.
    const double ulp = 4 * std::numeric_limits<double>::epsilon();
    EXPECT_LE(std::abs(xo - std::max(x, w.alpha_min)), w.delta_max + ulp * (std::abs(x) + w.delta_max));
    EXPECT_LE(std::abs(zo - std::max(z, w.alpha_min)), w.delta_max + ulp * (std::abs(z) + w.delta_max));
    EXPECT_EQ(out.y, (std::vector<double>{0.5}));

    // With no clamp or floor binding the second move sets the product.
    const double xf = std::max(x, w.alpha_min);
    const double zf = std::max(z, w.alpha_min);
    const bool x_first = xf < zf;
    const double first_free = x_first ? target / zf : target / xf;
    const double first_start = x_first ? xf : zf;
    if (std::abs(first_free - first_start) < w.delta_max) {
      const double moved = first_free;
      const double second_free = target / moved;
      const double second_start = x_first ? zf : xf;
      if (std::abs(second_free - second_start) < w.delta_max &&
          second_free >= w.alpha_min && moved >= w.alpha_min) {
        EXPECT_NEAR(xo * zo, target, 4e-16 * target);
        ++unclamped;
      }
    }
  }
  EXPECT_GT(unclamped, 100);
}

TEST(CenteredStartTest, IdempotentOnCenteredOutput) {
  Gen g(62);
  const WarmStartParams w;
  for (int trial = 0; trial < 2000; ++trial) {
    const double target = g.magnitude(-6, -2);
    const int n = g.integer(1, 10);
    KktPoint pt;
    for (int j = 0; j < n; ++j) {
      // Both sides stay >= alpha_min when x is within [alpha, target/alpha].
      const double x = std::exp(g.uniform(std::log(w.alpha_min),
                                          std::log(target / w.alpha_min)));
      pt.x.push_back(x);
      pt.z.push_back(target / x);
    }
    pt.y = g.vec(3, -1, 1);
    const KktPoint out = centered_start(pt, w, target);
    for (int j = 0; j < n; ++j) {
      EXPECT_NEAR(out.x[j], pt.x[j], 1e-15 * pt.x[j]);
      EXPECT_NEAR(out.z[j], pt.z[j], 1e-15 * pt.z[j]);
    }
    const KktPoint again = centered_start(out, w, target);
    EXPECT_EQ(again.x, out.x);
    EXPECT_EQ(again.z, out.z);
    EXPECT_EQ(out.y, pt.y);
  }
}

ScaledLp scaled(const GeneralLp& g) { return ruiz_equilibrate(to_standard_form(g)); }

TEST(WarmIpmTest, DeskSuiteFromPdhgPoint) {
  for (const DeskInstance& d : desk_suite()) {
    const ScaledLp s = scaled(d.lp);
    const PdhgResult pdhg = run_pdhg(s.lp, PdhgParams{});
    ASSERT_EQ(pdhg.stats.status, SolveStatus::kOptimal) << d.name;
    const WarmIpmResult warm =
        run_warm_started_ipm(s.lp, pdhg.point, IpmParams{}, WarmStartParams{});
    EXPECT_EQ(warm.ipm.stats.status, SolveStatus::kOptimal) << d.name;
    EXPECT_LE(warm.escalations, WarmStartParams{}.max_escalations);
    EXPECT_EQ(warm.total_iterations, warm.ipm.state.iteration);
    const IpmResult cold = run_ipm(s.lp, IpmParams{});
    EXPECT_LE(warm.total_iterations, cold.stats.iterations) << d.name;
  }
}

TEST(WarmIpmTest, EscalationLoopIsBounded) {
  const ScaledLp s = scaled(lp2().lp);
  const PdhgResult pdhg = run_pdhg(s.lp, PdhgParams{});
  IpmParams always_stall;
  always_stall.min_step = 2.0;  // no step can be this long
  for (int cap : {0, 1, 3, 6}) {
    WarmStartParams w;
    w.max_escalations = cap;
    const WarmIpmResult r = run_warm_started_ipm(s.lp, pdhg.point, always_stall, w);
    EXPECT_EQ(r.ipm.stats.status, SolveStatus::kStalled);
    EXPECT_EQ(r.escalations, cap);
    EXPECT_DOUBLE_EQ(r.final_alpha_min, w.alpha_min * std::pow(10.0, cap));
    for (double v : r.ipm.state.x) EXPECT_GE(v, w.alpha_min);
  }
}

TEST(WarmIpmTest, BoundaryStartStallsThenRecovers) {
  // One complementary pair at zero and no centering moves: the start is
  // floored at alpha_min on both sides and the first step stalls.
  const ScaledLp s = scaled(lp2().lp);
  const PdhgResult pdhg = run_pdhg(s.lp, PdhgParams{});
  KktPoint pt = pdhg.point;
  pt.x[0] = 0;
  pt.z[0] = 0;
  WarmStartParams w;
  w.delta_max = 1e-300;
  const KktPoint start = centered_start(pt, w);
  EXPECT_EQ(start.x[0], w.alpha_min);
  EXPECT_EQ(start.z[0], w.alpha_min);
  const IpmResult plain = run_ipm(s.lp, IpmParams{}, IpmState{start.x, start.y, start.z});
  EXPECT_EQ(plain.stats.status, SolveStatus::kStalled);

  const WarmIpmResult r = run_warm_started_ipm(s.lp, pt, IpmParams{}, w);
  EXPECT_EQ(r.ipm.stats.status, SolveStatus::kOptimal);
  EXPECT_GE(r.escalations, 1);
  EXPECT_LE(r.escalations, w.max_escalations);
  EXPECT_DOUBLE_EQ(r.final_alpha_min, w.alpha_min * std::pow(10.0, r.escalations));
}

TEST(WarmIpmTest, RejectsBadParameters) {
  const ScaledLp s = scaled(lp1().lp);
  WarmStartParams w;
  w.escalation_factor = 1.0;
  EXPECT_THROW(run_warm_started_ipm(s.lp, {{1, 0}, {1}, {0, 1}}, IpmParams{}, w),
               std::invalid_argument);
}

}  // namespace
}  // namespace hybridlp
