// Command-line front end: solve, bench, check and scatter.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "hybridlp/benchmark.h"
#include "hybridlp/desk_suite.h"
#include "hybridlp/mps_reader.h"
#include "hybridlp/solution_file.h"
#include "hybridlp/solver.h"

namespace {

using namespace hybridlp;

constexpr int kUsageExit = 2;
constexpr int kInputExit = 3;
constexpr int kMismatchExit = 4;

struct SolveArgs {
  std::string model;
  std::string method = "hybrid";
  std::optional<double> eps_rel;
  double time_limit = 10000.0;
  std::string out;
  bool no_presolve = false;
  bool no_scaling = false;
  std::uint64_t seed = 0;
};

struct BenchArgs {
  std::string dir;
  bool desk = false;
  std::vector<std::string> methods = {"pdhg-1e4", "ipm-cold", "hybrid"};
  std::string out = "results.csv";
  std::string scatter;
  double time_limit = 10000.0;
};

struct CheckArgs {
  std::string model;
  std::string solution;
};

struct ScatterArgs {
  std::string results;
  std::string out = "scatter.csv";
};

std::optional<GeneralLp> load_model(const std::string& path) {
  try {
    return read_mps_file(path);
  } catch (const MpsParseError& e) {
    std::cerr << fmt::format("{}:{}: {}\n", path, e.line(), e.what());
  } catch (const std::exception& e) {
    std::cerr << path << ": " << e.what() << '\n';
  }
  return std::nullopt;
}

int run_solve(const SolveArgs& a) {
  std::optional<SolveOptions> options = options_for_tag(a.method);
  if (!options) {
    std::cerr << "unknown method '" << a.method << "'\n";
    return kUsageExit;
  }
  if (a.eps_rel) {
    if (!(*a.eps_rel > 0.0)) {
      std::cerr << "--eps-rel must be positive\n";
      return kUsageExit;
    }
    // For the hybrid the tolerance applies to the first-order phase; the
    // interior-point phase keeps its own.
    if (options->method == Method::kIpmCold) {
      options->ipm.eps_rel = *a.eps_rel;
    } else {
      options->pdhg.eps_rel = *a.eps_rel;
    }
  }
  options->time_limit_s = a.time_limit;
  options->presolve = !a.no_presolve;
  options->scaling = !a.no_scaling;
  options->pdhg.seed = a.seed;

  const std::optional<GeneralLp> model = load_model(a.model);
  if (!model) return kInputExit;
  const SolveReport report = solve(*model, *options);
  write_solution_file(a.out, to_solution_file(*model, report));
  std::cout << fmt::format(
      "status {}  objective {}  max violation {:.3e}  time {:.3f}s  "
      "pdhg {}  ipm {}\n",
      status_name(report.status), format_real(report.objective),
      report.violation.max_violation, report.wall_seconds,
      report.pdhg_iterations, report.ipm_iterations);
  return status_exit_code(report.status);
}

int run_bench(const BenchArgs& a) {
  if (a.desk == !a.dir.empty()) {
    std::cerr << "bench needs exactly one of <dir> or --desk\n";
    return kUsageExit;
  }
  std::vector<SolveOptions> methods;
  for (const std::string& tag : a.methods) {
    std::optional<SolveOptions> o = options_for_tag(tag);
    if (!o) {
      std::cerr << "unknown method '" << tag << "'\n";
      return kUsageExit;
    }
    o->time_limit_s = a.time_limit;
    methods.push_back(*o);
  }

  std::vector<BenchModel> models;
  if (a.desk) {
    for (DeskInstance& d : desk_suite()) {
      models.push_back({d.name, std::move(d.lp), {}});
    }
  } else {
    try {
      models = load_models(a.dir);
    } catch (const std::exception& e) {
      std::cerr << a.dir << ": " << e.what() << '\n';
      return kInputExit;
    }
  }
  for (const BenchModel& m : models) {
    if (!m.lp) std::cerr << m.name << ": " << m.error << '\n';
  }

  const std::vector<ResultRecord> records =
      run_benchmark(models, methods, thread_count_from_env());
  std::ofstream out(a.out);
  if (!out) {
    std::cerr << "cannot write " << a.out << '\n';
    return kInputExit;
  }
  write_results_csv(out, records);
  if (!a.scatter.empty()) {
    std::ofstream sc(a.scatter);
    write_scatter_csv(sc, scatter_export(records));
  }
  std::cout << format_summary(summarize(records));
  return 0;
}

int run_check(const CheckArgs& a) {
  std::optional<GeneralLp> model = load_model(a.model);
  if (!model) return kInputExit;
  model->ensure_names();
  SolutionFile sol;
  try {
    sol = read_solution_file(a.solution);
  } catch (const SolutionParseError& e) {
    std::cerr << fmt::format("{}:{}: {}\n", a.solution, e.line(), e.what());
    return kInputExit;
  } catch (const std::exception& e) {
    std::cerr << a.solution << ": " << e.what() << '\n';
    return kInputExit;
  }

  const auto by_name = [](const std::vector<std::string>& names,
                          const std::vector<NamedValue>& values,
                          const char* what) -> std::optional<std::vector<double>> {
    if (names.size() != values.size()) {
      std::cerr << fmt::format("solution has {} {} values, model has {}\n",
                               values.size(), what, names.size());
      return std::nullopt;
    }
    std::map<std::string, std::size_t> index;
    for (std::size_t k = 0; k < names.size(); ++k) index[names[k]] = k;
    std::vector<double> out(names.size());
    std::vector<bool> seen(names.size(), false);
    for (const NamedValue& v : values) {
      const auto it = index.find(v.name);
      if (it == index.end() || seen[it->second]) {
        std::cerr << fmt::format("solution {} '{}' does not match the model\n",
                                 what, v.name);
        return std::nullopt;
      }
      seen[it->second] = true;
      out[it->second] = v.value;
    }
    return out;
  };
  const auto x = by_name(model->col_names, sol.x, "x");
  const auto y = by_name(model->row_names, sol.y, "y");
  if (!x || !y) return kMismatchExit;

  const ViolationSummary v = original_violation(*model, *x, *y);
  std::cout << fmt::format("primal_inf {}\ndual_inf {}\nrel_gap {}\nmax_violation {}\n",
                           format_real(v.primal_inf), format_real(v.dual_inf),
                           format_real(v.rel_gap), format_real(v.max_violation));
  return 0;
}

int run_scatter(const ScatterArgs& a) {
  std::ifstream in(a.results);
  if (!in) {
    std::cerr << "cannot open " << a.results << '\n';
    return kInputExit;
  }
  std::vector<ResultRecord> records;
  try {
    records = read_results_csv(in);
  } catch (const std::exception& e) {
    std::cerr << a.results << ": " << e.what() << '\n';
    return kInputExit;
  }
  std::ofstream out(a.out);
  if (!out) {
    std::cerr << "cannot write " << a.out << '\n';
    return kInputExit;
  }
  write_scatter_csv(out, scatter_export(records));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Restarted PDHG, interior point, and PDHG-warm-started interior point LP solvers"};
  app.require_subcommand(1);

  SolveArgs solve_args;
  CLI::App* solve = app.add_subcommand("solve", "Solve one MPS model");
  solve->add_option("model", solve_args.model, "MPS file")->required();
  solve->add_option("--method", solve_args.method,
                    "pdhg-1e4, pdhg-1e6, pdhg-1e8, ipm-cold, hybrid, hybrid-1e6");
  solve->add_option("--eps-rel", solve_args.eps_rel,
                    "Relative tolerance (first-order phase for hybrid)");
  solve->add_option("--time-limit", solve_args.time_limit, "Seconds");
  solve->add_option("--out", solve_args.out, "Solution file")->required();
  solve->add_flag("--no-presolve", solve_args.no_presolve);
  solve->add_flag("--no-scaling", solve_args.no_scaling);
  solve->add_option("--seed", solve_args.seed, "Seed for the norm estimate");

  BenchArgs bench_args;
  CLI::App* bench = app.add_subcommand("bench", "Run methods over a model set");
  bench->add_option("dir", bench_args.dir, "Directory of .mps files");
  bench->add_flag("--desk", bench_args.desk, "Use the built-in desk suite");
  bench->add_option("--methods", bench_args.methods)->delimiter(',');
  bench->add_option("--out", bench_args.out, "Results CSV");
  bench->add_option("--scatter", bench_args.scatter, "Also write scatter CSV");
  bench->add_option("--time-limit", bench_args.time_limit, "Seconds per solve");

  CheckArgs check_args;
  CLI::App* check =
      app.add_subcommand("check", "Recompute violations of a solution file");
  check->add_option("model", check_args.model, "MPS file")->required();
  check->add_option("solution", check_args.solution, "Solution file")->required();

  ScatterArgs scatter_args;
  CLI::App* scatter =
      app.add_subcommand("scatter", "Runtime/violation pairs from results");
  scatter->add_option("results", scatter_args.results, "Results CSV")->required();
  scatter->add_option("--out", scatter_args.out, "Scatter CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsageExit;
  }

  try {
    if (*solve) return run_solve(solve_args);
    if (*bench) return run_bench(bench_args);
    if (*check) return run_check(check_args);
    return run_scatter(scatter_args);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return status_exit_code(SolveStatus::kError);
  }
}
