// Runs the acceptance criteria over the desk suite and prints one PASS/FAIL
// line per criterion. Exit status is nonzero when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "hybridlp/benchmark.h"
#include "hybridlp/desk_suite.h"
#include "hybridlp/kkt.h"
#include "hybridlp/pdhg.h"
#include "hybridlp/presolve.h"
#include "hybridlp/scaling.h"
#include "hybridlp/solver.h"
#include "hybridlp/standard_form.h"
#include "hybridlp/warm_start.h"
#include "test_util.h"

namespace hybridlp {
namespace {

using testing::Dense;
using testing::Gen;

struct Outcome {
  bool pass = true;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Outcome criterion_1() {
  const auto t0 = std::chrono::steady_clock::now();
  const WarmStartParams w;
  bool ok = true;
  auto pair = [&](double x, double z) {
    return centered_start({{x}, {}, {z}}, w, 1e-6);
  };
  KktPoint a = pair(0, 5);
  ok = ok && a.x[0] == 1e-6 && a.z[0] == 5.0;
  KktPoint b = pair(3, 2);
  ok = ok && std::abs(b.z[0] - 1.9999) < 1e-15 && std::abs(b.x[0] - 2.9999) < 1e-15;
  KktPoint c = pair(1e-3, 1e-3);
  ok = ok && std::abs(c.x[0] - 1e-3) < 1e-18 && std::abs(c.z[0] - 1e-3) < 1e-18;
  const bool examples = ok;

  Gen g(1);
  int product_checks = 0;
  const double ulp = 4 * std::numeric_limits<double>::epsilon();
  for (int k = 0; k < 10000; ++k) {
    const double x = g.coin(0.2) ? 0.0 : g.magnitude(-9, 2);
    const double z = g.coin(0.2) ? 0.0 : g.magnitude(-9, 2);
    const double target = g.coin() ? w.mu_min : g.magnitude(-9, 0);
    const KktPoint out = centered_start({{x}, {}, {z}}, w, target);
    const double xf = std::max(x, w.alpha_min);
    const double zf = std::max(z, w.alpha_min);
    ok = ok && out.x[0] >= w.alpha_min && out.z[0] >= w.alpha_min;
    ok = ok && std::abs(out.x[0] - xf) <= w.delta_max + ulp * (xf + w.delta_max);
    ok = ok && std::abs(out.z[0] - zf) <= w.delta_max + ulp * (zf + w.delta_max);
    // Unclamped: both free moves stay inside the box and above the floor.
    const bool x_first = xf < zf;
    const double first = target / (x_first ? zf : xf);
    const double first_start = x_first ? xf : zf;
    const double second = target / first;
    const double second_start = x_first ? zf : xf;
    if (std::abs(first - first_start) < w.delta_max &&
        std::abs(second - second_start) < w.delta_max && first >= w.alpha_min &&
        second >= w.alpha_min) {
      ++product_checks;
      ok = ok && std::abs(out.x[0] * out.z[0] - target) <= 4e-16 * target;
    }
  }
  const double secs = seconds_since(t0);
  return {ok && secs < 1.0 && product_checks > 0,
          fmt::format("examples {}, 10^4 pairs ({} exact-product), {:.3f}s",
                      examples ? "exact" : "WRONG", product_checks, secs)};
}

Outcome criterion_2() {
  const auto t0 = std::chrono::steady_clock::now();
  Gen g(2);
  double worst = 0.0;
  for (int k = 0; k < 100; ++k) {
    const int m = g.integer(1, 8);
    const int n = g.integer(1, 8);
    const Dense a = g.dense(m, n, 0.6);
    StandardLp p;
    p.a = SparseMatrix::from_dense(a);
    p.b = g.vec(m, -5, 5);
    p.c = g.vec(n, -5, 5);
    const KktPoint pt{g.vec(n, 0, 5), g.vec(m, -5, 5), g.vec(n, 0, 5)};
    const Residuals r = residuals(p, pt);
    const std::vector<double> ax = testing::dense_multiply(a, pt.x);
    const std::vector<double> aty = testing::dense_multiply_transpose(a, pt.y);
    for (int i = 0; i < m; ++i) worst = std::max(worst, std::abs(r.r_p[i] - (p.b[i] - ax[i])));
    for (int j = 0; j < n; ++j) {
      worst = std::max(worst, std::abs(r.r_d[j] - (p.c[j] - aty[j] - pt.z[j])));
    }
  }
  const double secs = seconds_since(t0);
  return {worst <= 1e-12 && secs < 5.0,
          fmt::format("max entry difference {:.1e}, {:.3f}s", worst, secs)};
}

// Relative termination recomputed densely, independent of the library's
// residual code.
bool dense_termination(const StandardLp& p, const KktPoint& pt, double eps) {
  const Dense a = testing::to_dense(p.a);
  const std::vector<double> ax = testing::dense_multiply(a, pt.x);
  const std::vector<double> aty = testing::dense_multiply_transpose(a, pt.y);
  double rp = 0, rd = 0, nb = 0, nc = 0, cx = 0, by = 0;
  for (int i = 0; i < p.num_rows(); ++i) {
    rp += (p.b[i] - ax[i]) * (p.b[i] - ax[i]);
    nb += p.b[i] * p.b[i];
    by += p.b[i] * pt.y[i];
  }
  for (int j = 0; j < p.num_cols(); ++j) {
    const double d = p.c[j] - aty[j] - pt.z[j];
    rd += d * d;
    nc += p.c[j] * p.c[j];
    cx += p.c[j] * pt.x[j];
  }
  return std::sqrt(rp) <= eps * (1 + std::sqrt(nb)) &&
         std::sqrt(rd) <= eps * (1 + std::sqrt(nc)) &&
         std::abs(cx - by) <= eps * (1 + std::abs(cx) + std::abs(by));
}

Outcome criterion_3(const std::vector<DeskInstance>& suite) {
  int verified = 0;
  int ordered = 0;
  for (const DeskInstance& d : suite) {
    const ScaledLp s = ruiz_equilibrate(to_standard_form(d.lp));
    std::vector<long> its;
    for (double eps : {1e-4, 1e-6, 1e-8}) {
      PdhgParams params;
      params.eps_rel = eps;
      const PdhgResult r = run_pdhg(s.lp, params);
      its.push_back(r.stats.iterations);
      if (eps == 1e-4 && r.stats.status == SolveStatus::kOptimal &&
          dense_termination(s.lp, r.point, eps)) {
        ++verified;
      }
    }
    if (its[2] >= its[1] && its[1] >= its[0]) ++ordered;
  }
  const int n = static_cast<int>(suite.size());
  return {verified == n && ordered >= 0.9 * n,
          fmt::format("{}/{} verified at 1e-4, sweep ordered on {}/{}", verified, n, ordered,
                      n)};
}

Outcome criterion_4(const std::vector<DeskInstance>& suite) {
  int ok = 0;
  int worst_its = 0;
  double worst_violation = 0.0;
  for (const DeskInstance& d : suite) {
    const SolveReport r = solve(d.lp, *options_for_tag("ipm-cold"));
    worst_its = std::max(worst_its, r.ipm_iterations);
    worst_violation = std::max(worst_violation, r.violation.max_violation);
    if (r.status == SolveStatus::kOptimal && r.ipm_iterations <= 50 &&
        r.violation.max_violation <= 1e-7) {
      ++ok;
    }
  }
  const int n = static_cast<int>(suite.size());
  return {ok == n, fmt::format("{}/{} solved, max {} iterations, worst violation {:.1e}", ok,
                               n, worst_its, worst_violation)};
}

Outcome criterion_5(const std::vector<DeskInstance>& suite) {
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<double> ratios;
  for (const DeskInstance& d : suite) {
    const SolveReport first = solve(d.lp, *options_for_tag("pdhg-1e4"));
    if (first.status != SolveStatus::kOptimal) continue;
    const double v0 = first.violation.max_violation;
    if (v0 < 1e-6) continue;
    const SolveReport hybrid = solve(d.lp, *options_for_tag("hybrid"));
    ratios.push_back(hybrid.status == SolveStatus::kOptimal
                         ? hybrid.violation.max_violation / v0
                         : kInfinity);
  }
  const double secs = seconds_since(t0);
  if (ratios.empty()) return {false, "no instance with v0 >= 1e-6"};
  std::sort(ratios.begin(), ratios.end());
  const size_t k = ratios.size();
  const double median = k % 2 ? ratios[k / 2] : 0.5 * (ratios[k / 2 - 1] + ratios[k / 2]);
  return {median <= 1e-3 && secs < 300.0,
          fmt::format("{} instances, median hybrid/first-order violation {:.1e}, {:.1f}s", k,
                      median, secs)};
}

std::vector<ResultRecord> iteration_records(const std::vector<DeskInstance>& suite) {
  std::vector<ResultRecord> records;
  for (const DeskInstance& d : suite) {
    for (const char* tag : {"ipm-cold", "hybrid", "hybrid-1e6"}) {
      records.push_back(make_record(d.name, solve(d.lp, *options_for_tag(tag))));
    }
  }
  return records;
}

const MethodSummary* find_method(const SummaryTable& t, const std::string& name) {
  for (const MethodSummary& m : t.methods) {
    if (m.method == name) return &m;
  }
  return nullptr;
}

Outcome criterion_6(const SummaryTable& t) {
  const MethodSummary* h4 = find_method(t, "hybrid");
  const MethodSummary* h6 = find_method(t, "hybrid-1e6");
  if (!h4 || !h6 || !h4->ipm_iteration_ratio || !h6->ipm_iteration_ratio) {
    return {false, "ratio unavailable"};
  }
  return {*h4->ipm_iteration_ratio <= 0.8 && *h6->ipm_iteration_ratio <= 0.6,
          fmt::format("warm/cold {:.3f} from 1e-4, {:.3f} from 1e-6", *h4->ipm_iteration_ratio,
                      *h6->ipm_iteration_ratio)};
}

Outcome criterion_7(const std::vector<ResultRecord>& records) {
  int warm = 0;
  int fast = 0;
  for (const ResultRecord& r : records) {
    if (r.method.rfind("hybrid", 0) != 0 || !r.ipm_invoked) continue;
    ++warm;
    if (r.solved() && r.ipm_iterations <= 10) ++fast;
  }
  const double share = warm ? static_cast<double>(fast) / warm : 0.0;
  return {share >= 0.4,
          fmt::format("{}/{} warm-started solves in <= 10 IPM iterations ({:.0f}%)", fast, warm,
                      100 * share)};
}

Outcome criterion_8(const SummaryTable& t) {
  const ScaledLp s = ruiz_equilibrate(to_standard_form(lp2().lp));
  KktPoint pt = run_pdhg(s.lp, PdhgParams{}).point;
  pt.x[0] = 0;
  pt.z[0] = 0;
  WarmStartParams w;
  w.delta_max = 1e-300;
  const KktPoint start = centered_start(pt, w);
  const IpmResult first = run_ipm(s.lp, IpmParams{}, IpmState{start.x, start.y, start.z});
  const WarmIpmResult r = run_warm_started_ipm(s.lp, pt, IpmParams{}, w);
  const bool ok = first.stats.status == SolveStatus::kStalled && r.escalations >= 1 &&
                  r.escalations <= w.max_escalations &&
                  std::abs(r.final_alpha_min -
                           w.alpha_min * std::pow(w.escalation_factor, r.escalations)) <=
                      1e-12 * r.final_alpha_min &&
                  r.ipm.stats.status == SolveStatus::kOptimal;
  std::string rates;
  for (const char* m : {"hybrid", "hybrid-1e6"}) {
    const MethodSummary* s = find_method(t, m);
    if (s && s->warm_success_rate) {
      rates += fmt::format(", {} warm-start success {:.0f}%", m, 100 * *s->warm_success_rate);
    }
  }
  return {ok, fmt::format("boundary start stalled, {} escalation(s) to alpha {:.0e}, status {}{}",
                          r.escalations, r.final_alpha_min, status_name(r.ipm.stats.status),
                          rates)};
}

Outcome criterion_9(const std::vector<DeskInstance>& suite) {
  Gen g(9);
  bool ok = true;
  double worst_norm_gap = 0.0;
  for (const DeskInstance& d : suite) {
    const StandardLp p = to_standard_form(d.lp);
    const ScaledLp s = ruiz_equilibrate(p);
    for (double v : s.lp.a.row_max_abs()) ok = ok && v >= 0.5 && v <= 2.0;
    for (double v : s.lp.a.col_max_abs()) ok = ok && v >= 0.5 && v <= 2.0;
    for (int k = 0; k < 5; ++k) {
      const KktPoint pt{g.vec(p.num_cols(), 0, 3), g.vec(p.num_rows(), -3, 3),
                        g.vec(p.num_cols(), 0, 3)};
      const KktPoint back = unscale_point(s.info, scale_point(s.info, pt));
      ok = ok && testing::max_abs_diff(back.x, pt.x) <= 1e-13 &&
           testing::max_abs_diff(back.y, pt.y) <= 1e-13 &&
           testing::max_abs_diff(back.z, pt.z) <= 1e-13;
      const Residuals rs = residuals(s.lp, scale_point(s.info, pt));
      const Residuals ro = residuals(p, pt);
      for (int i = 0; i < p.num_rows(); ++i) {
        const double gap = std::abs(ro.r_p[i] - rs.r_p[i] / s.info.row_scale[i]);
        worst_norm_gap = std::max(worst_norm_gap, gap / (1 + std::abs(ro.r_p[i])));
      }
      for (int j = 0; j < p.num_cols(); ++j) {
        const double gap = std::abs(ro.r_d[j] - rs.r_d[j] / s.info.col_scale[j]);
        worst_norm_gap = std::max(worst_norm_gap, gap / (1 + std::abs(ro.r_d[j])));
      }
    }

    // Fix one variable at its known optimal value so presolve has work, then
    // push random reduced points through postsolve.
    GeneralLp g2 = d.lp;
    g2.var_lower[0] = g2.var_upper[0] = d.optimal_x[0];
    const PresolveResult pr = presolve(g2);
    if (pr.verdict != PresolveVerdict::kReduced) continue;
    for (int k = 0; k < 5; ++k) {
      const int n = pr.reduced.num_vars();
      const KktPoint reduced_pt{g.vec(n, 0, 3), g.vec(pr.reduced.num_rows(), -1, 1),
                                g.vec(n, 0, 1)};
      const KktPoint full = postsolve(pr.stack, reduced_pt);
      const std::vector<double> ax_full = g2.matrix.multiply(full.x);
      const std::vector<double> ax_red = pr.reduced.matrix.multiply(reduced_pt.x);
      for (size_t r = 0; r < pr.stack.kept_rows.size(); ++r) {
        const int i = pr.stack.kept_rows[r];
        const double full_miss = ax_full[i] - g2.row_rhs[i];
        const double red_miss = ax_red[r] - pr.reduced.row_rhs[r];
        ok = ok && std::abs(full_miss - red_miss) <= 1e-12 * (1 + std::abs(ax_full[i]));
      }
      ok = ok && full.x[0] == d.optimal_x[0];
    }
  }
  ok = ok && worst_norm_gap <= 1e-12;
  return {ok, fmt::format("{} fixtures, residual identity gap {:.1e}", suite.size(),
                          worst_norm_gap)};
}

Outcome criterion_10() {
  auto rec = [](const char* method, double seconds, double violation) {
    ResultRecord r;
    r.model = "synthetic";
    r.method = method;
    r.status = SolveStatus::kOptimal;
    r.wall_seconds = seconds;
    r.violation = ViolationSummary{violation, 0, 0, violation};
    return r;
  };
  const std::vector<ResultRecord> records = {rec("best", 1, 5e-5), rec("slow", 250, 3e-15)};
  const std::vector<ScatterPoint> pts = scatter_export(records);
  const bool ok = pts[0].relative_runtime == 1.0 && pts[0].max_violation == 5e-5 &&
                  pts[1].relative_runtime == 100.0 && pts[1].max_violation == 1e-12;
  return {ok, fmt::format("ratio 250 -> {}, violation 3e-15 -> {:g}", pts[1].relative_runtime,
                          pts[1].max_violation)};
}

}  // namespace
}  // namespace hybridlp

int main() {
  using namespace hybridlp;
  const std::vector<DeskInstance> suite = desk_suite();
  const std::vector<ResultRecord> records = iteration_records(suite);
  const SummaryTable table = summarize(records);

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"centered start unit suite", [] { return criterion_1(); }},
      {"residual oracle equivalence", [] { return criterion_2(); }},
      {"PDHG correctness", [&] { return criterion_3(suite); }},
      {"IPM correctness", [&] { return criterion_4(suite); }},
      {"hybrid accuracy lift", [&] { return criterion_5(suite); }},
      {"iteration-count reduction", [&] { return criterion_6(table); }},
      {"fast-convergence share", [&] { return criterion_7(records); }},
      {"robustness accounting", [&] { return criterion_8(table); }},
      {"transform round-trips", [&] { return criterion_9(suite); }},
      {"clamp rules", [] { return criterion_10(); }},
  };
  int failed = 0;
  for (size_t k = 0; k < criteria.size(); ++k) {
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::cout << fmt::format("{} {:>2} {}: {}\n", o.pass ? "PASS" : "FAIL", k + 1,
                             criteria[k].first, o.detail);
  }
  std::cout << '\n' << format_summary(table);
  return failed == 0 ? 0 : 1;
}
