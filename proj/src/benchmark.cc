#include "hybridlp/benchmark.h"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <istream>
#include <map>
#include <ostream>
#include <stdexcept>
#include <thread>

#include <fmt/format.h>

#include "hybridlp/mps_reader.h"
#include "hybridlp/solution_file.h"

namespace hybridlp {
namespace {

constexpr double kMinSeconds = 1e-6;

constexpr std::string_view kCsvHeader =
    "model,method,status,phase,wall_seconds,pdhg_iterations,ipm_iterations,"
    "escalations,ipm_invoked,primal_inf,dual_inf,rel_gap,max_violation,"
    "pdhg_violation";

bool warm_started(std::string_view method) {
  return method.starts_with("hybrid");
}

bool uses_ipm(std::string_view method) {
  return warm_started(method) || method == kColdIpmTag;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    out.push_back(line.substr(start, comma - start));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

double parse_double(const std::string& s) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw std::runtime_error("bad number in results file: '" + s + "'");
  }
  return v;
}

long parse_long(const std::string& s) {
  long v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw std::runtime_error("bad integer in results file: '" + s + "'");
  }
  return v;
}

std::string optional_real(const std::optional<double>& v) {
  return v ? format_real(*v) : std::string();
}

void sort_records(std::vector<ResultRecord>& records) {
  std::stable_sort(records.begin(), records.end(),
                   [](const ResultRecord& a, const ResultRecord& b) {
                     return std::tie(a.model, a.method) <
                            std::tie(b.model, b.method);
                   });
}

}  // namespace

ResultRecord make_record(const std::string& model, const SolveReport& report) {
  ResultRecord r;
  r.model = model;
  r.method = report.method;
  r.status = report.status;
  r.phase = report.phase;
  r.wall_seconds = report.wall_seconds;
  r.pdhg_iterations = report.pdhg_iterations;
  r.ipm_iterations = report.ipm_iterations;
  r.escalations = report.escalations;
  r.ipm_invoked = report.ipm_invoked;
  r.violation = report.violation;
  r.pdhg_violation = report.pdhg_violation;
  return r;
}

std::optional<double> geometric_mean(std::span<const double> values) {
  if (values.empty()) return std::nullopt;
  double log_sum = 0.0;
  for (double v : values) {
    if (!(v >= 0.0)) throw std::invalid_argument("geometric mean of negative");
    log_sum += std::log(v);
  }
  return std::exp(log_sum / static_cast<double>(values.size()));
}

std::vector<double> relative_runtimes(std::span<const ResultRecord> records) {
  std::map<std::string, double> best;
  for (const ResultRecord& r : records) {
    const double t = std::max(r.wall_seconds, kMinSeconds);
    auto [it, inserted] = best.emplace(r.model, t);
    if (!inserted) it->second = std::min(it->second, t);
  }
  std::vector<double> out;
  out.reserve(records.size());
  for (const ResultRecord& r : records) {
    out.push_back(std::max(r.wall_seconds, kMinSeconds) / best.at(r.model));
  }
  return out;
}

SummaryTable summarize(std::span<const ResultRecord> records) {
  const std::vector<double> rel = relative_runtimes(records);
  std::vector<std::string> order;
  for (const ResultRecord& r : records) {
    if (std::find(order.begin(), order.end(), r.method) == order.end()) {
      order.push_back(r.method);
    }
  }
  std::sort(order.begin(), order.end());

  std::map<std::string, long> cold_iterations;
  for (const ResultRecord& r : records) {
    if (r.method == kColdIpmTag && r.solved() && r.ipm_invoked) {
      cold_iterations[r.model] = r.ipm_iterations;
    }
  }

  SummaryTable table;
  for (const std::string& method : order) {
    MethodSummary s;
    s.method = method;
    std::vector<double> runtimes;
    std::vector<double> violations;
    std::vector<double> ratios;
    int fast = 0;
    int launched = 0;
    int warm_ok = 0;
    for (std::size_t k = 0; k < records.size(); ++k) {
      const ResultRecord& r = records[k];
      if (r.method != method) continue;
      ++s.models;
      if (r.ipm_invoked) {
        ++launched;
        if (r.solved()) ++warm_ok;
      }
      if (!r.solved()) continue;
      ++s.solved;
      runtimes.push_back(rel[k]);
      if (r.violation) {
        violations.push_back(std::max(r.violation->max_violation, kMinViolation));
      }
      if (r.ipm_invoked && r.ipm_iterations <= 10) ++fast;
      const auto cold = cold_iterations.find(r.model);
      if (warm_started(method) && r.ipm_invoked &&
          cold != cold_iterations.end()) {
        ratios.push_back(
            static_cast<double>(std::max(1L, r.ipm_iterations)) /
            static_cast<double>(std::max(1L, cold->second)));
      }
    }
    s.relative_runtime = geometric_mean(runtimes);
    s.max_violation = geometric_mean(violations);
    if (uses_ipm(method)) s.solved_within_10_ipm = fast;
    if (warm_started(method)) {
      s.ipm_iteration_ratio = geometric_mean(ratios);
      if (launched > 0) {
        s.warm_success_rate = static_cast<double>(warm_ok) / launched;
      }
    }
    table.methods.push_back(std::move(s));
  }
  return table;
}

std::string format_summary(const SummaryTable& table) {
  struct Row {
    std::string label;
    std::vector<std::string> cells;
  };
  const auto real = [](const std::optional<double>& v, const char* spec) {
    return v ? fmt::format(fmt::runtime(spec), *v) : std::string("-");
  };
  std::vector<Row> rows = {{"Models solved", {}},
                           {"Relative runtime", {}},
                           {"Mean max violation", {}},
                           {"IPM iteration ratio", {}},
                           {"Solved in <= 10 IPM its", {}},
                           {"Warm-start success", {}}};
  std::vector<std::string> header;
  for (const MethodSummary& s : table.methods) {
    header.push_back(s.method);
    rows[0].cells.push_back(fmt::format("{}/{}", s.solved, s.models));
    rows[1].cells.push_back(real(s.relative_runtime, "{:.2f}"));
    rows[2].cells.push_back(real(s.max_violation, "{:.1e}"));
    rows[3].cells.push_back(real(s.ipm_iteration_ratio, "{:.2f}"));
    rows[4].cells.push_back(s.solved_within_10_ipm
                                ? std::to_string(*s.solved_within_10_ipm)
                                : std::string("-"));
    rows[5].cells.push_back(real(
        s.warm_success_rate ? std::optional<double>(*s.warm_success_rate * 100)
                            : std::nullopt,
        "{:.0f}%"));
  }
  std::size_t label_width = 0;
  for (const Row& r : rows) label_width = std::max(label_width, r.label.size());
  std::vector<std::size_t> widths(header.size());
  for (std::size_t c = 0; c < header.size(); ++c) {
    widths[c] = header[c].size();
    for (const Row& r : rows) widths[c] = std::max(widths[c], r.cells[c].size());
  }
  std::string out = fmt::format("{:<{}}", "", label_width);
  for (std::size_t c = 0; c < header.size(); ++c) {
    out += fmt::format("  {:>{}}", header[c], widths[c]);
  }
  out += '\n';
  for (const Row& r : rows) {
    out += fmt::format("{:<{}}", r.label, label_width);
    for (std::size_t c = 0; c < header.size(); ++c) {
      out += fmt::format("  {:>{}}", r.cells[c], widths[c]);
    }
    out += '\n';
  }
  return out;
}

void write_results_csv(std::ostream& out, std::vector<ResultRecord> records) {
  sort_records(records);
  out << kCsvHeader << '\n';
  for (const ResultRecord& r : records) {
    const auto v = r.violation;
    out << fmt::format(
        "{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n", r.model, r.method,
        status_name(r.status), r.phase, format_real(r.wall_seconds),
        r.pdhg_iterations, r.ipm_iterations, r.escalations,
        r.ipm_invoked ? 1 : 0,
        optional_real(v ? std::optional(v->primal_inf) : std::nullopt),
        optional_real(v ? std::optional(v->dual_inf) : std::nullopt),
        optional_real(v ? std::optional(v->rel_gap) : std::nullopt),
        optional_real(v ? std::optional(v->max_violation) : std::nullopt),
        optional_real(r.pdhg_violation));
  }
}

std::vector<ResultRecord> read_results_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) {
    throw std::runtime_error("results file has an unexpected header");
  }
  std::vector<ResultRecord> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const std::vector<std::string> f = split_csv(line);
    if (f.size() != 14) {
      throw std::runtime_error("results row has " + std::to_string(f.size()) +
                               " fields: " + line);
    }
    ResultRecord r;
    r.model = f[0];
    r.method = f[1];
    const auto status = parse_status(f[2]);
    if (!status) throw std::runtime_error("unknown status '" + f[2] + "'");
    r.status = *status;
    r.phase = f[3];
    r.wall_seconds = parse_double(f[4]);
    r.pdhg_iterations = parse_long(f[5]);
    r.ipm_iterations = parse_long(f[6]);
    r.escalations = parse_long(f[7]);
    r.ipm_invoked = parse_long(f[8]) != 0;
    if (!f[12].empty()) {
      r.violation = ViolationSummary{parse_double(f[9]), parse_double(f[10]),
                                     parse_double(f[11]), parse_double(f[12])};
    }
    if (!f[13].empty()) r.pdhg_violation = parse_double(f[13]);
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<ScatterPoint> scatter_export(std::span<const ResultRecord> records) {
  const std::vector<double> rel = relative_runtimes(records);
  std::vector<ScatterPoint> out;
  out.reserve(records.size());
  for (std::size_t k = 0; k < records.size(); ++k) {
    const ResultRecord& r = records[k];
    double violation = kMaxViolation;
    if (r.solved() && r.violation) {
      violation = std::clamp(r.violation->max_violation, kMinViolation,
                             kMaxViolation);
    }
    out.push_back({r.model, r.method, std::min(rel[k], kMaxRuntimeRatio),
                   violation});
  }
  return out;
}

void write_scatter_csv(std::ostream& out, std::span<const ScatterPoint> points) {
  out << "model,method,relative_runtime,max_violation\n";
  for (const ScatterPoint& p : points) {
    out << fmt::format("{},{},{},{}\n", p.model, p.method,
                       format_real(p.relative_runtime),
                       format_real(p.max_violation));
  }
}

std::vector<BenchModel> load_models(const std::string& dir) {
  namespace fs = std::filesystem;
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.is_regular_file() && e.path().extension() == ".mps") {
      files.push_back(e.path());
    }
  }
  std::sort(files.begin(), files.end());
  std::vector<BenchModel> out;
  for (const fs::path& f : files) {
    BenchModel m;
    m.name = f.stem().string();
    try {
      m.lp = read_mps_file(f.string());
    } catch (const std::exception& e) {
      m.error = e.what();
    }
    out.push_back(std::move(m));
  }
  return out;
}

std::vector<ResultRecord> run_benchmark(std::span<const BenchModel> models,
                                        std::span<const SolveOptions> methods,
                                        int threads) {
  const std::size_t jobs = models.size() * methods.size();
  std::vector<ResultRecord> out(jobs);
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t k = next++; k < jobs; k = next++) {
      const BenchModel& model = models[k / methods.size()];
      const SolveOptions& options = methods[k % methods.size()];
      ResultRecord& r = out[k];
      r.model = model.name;
      r.method = options.tag;
      if (!model.lp) {
        r.phase = "read";
        continue;
      }
      try {
        r = make_record(model.name, solve(*model.lp, options));
      } catch (const std::exception&) {
        r.status = SolveStatus::kError;
        r.phase = "solve";
      }
    }
  };
  const int n = std::max(1, std::min<int>(threads, static_cast<int>(jobs)));
  std::vector<std::thread> pool;
  for (int t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();
  sort_records(out);
  return out;
}

int thread_count_from_env() {
  const char* v = std::getenv("HYBRIDLP_THREADS");
  if (v == nullptr) return 1;
  int n = 0;
  const std::string_view s(v);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), n);
  if (ec != std::errc() || ptr != s.data() + s.size() || n < 1) return 1;
  return n;
}

}  // namespace hybridlp
