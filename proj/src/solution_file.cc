#include "hybridlp/solution_file.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

namespace hybridlp {
namespace {

constexpr std::string_view kMagic = "hybridlp-solution 1";

bool same_real(double a, double b) {
  return a == b || (std::isnan(a) && std::isnan(b));
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\r')) ++pos;
    size_t end = pos;
    while (end < line.size() && line[end] != ' ' && line[end] != '\r') ++end;
    if (end > pos) out.push_back(line.substr(pos, end - pos));
    pos = end;
  }
  return out;
}

class Reader {
 public:
  explicit Reader(std::string_view text) : text_(text) {}

  std::vector<std::string_view> next(std::string_view expected_key) {
    if (pos_ >= text_.size()) {
      fail("unexpected end of file, expected '" + std::string(expected_key) +
           "'");
    }
    size_t end = text_.find('\n', pos_);
    if (end == std::string_view::npos) end = text_.size();
    std::string_view line = text_.substr(pos_, end - pos_);
    pos_ = end + 1;
    ++line_;
    auto tok = split(line);
    if (!expected_key.empty() && (tok.empty() || tok[0] != expected_key)) {
      fail("expected '" + std::string(expected_key) + "'");
    }
    return tok;
  }

  double real(std::string_view token) const {
    double value = 0.0;
    auto [ptr, ec] =
        std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size()) {
      fail("invalid number '" + std::string(token) + "'");
    }
    return value;
  }

  long integer(std::string_view token) const {
    long value = 0;
    auto [ptr, ec] =
        std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size() || value < 0) {
      fail("invalid count '" + std::string(token) + "'");
    }
    return value;
  }

  std::vector<NamedValue> array(std::string_view key) {
    auto header = next(key);
    if (header.size() != 2) fail("array header needs a count");
    const long count = integer(header[1]);
    std::vector<NamedValue> out;
    out.reserve(count);
    for (long k = 0; k < count; ++k) {
      auto tok = next("");
      if (tok.size() != 2) fail("array entry needs a name and a value");
      out.push_back({std::string(tok[0]), real(tok[1])});
    }
    return out;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw SolutionParseError(line_, what);
  }

 private:
  std::string_view text_;
  size_t pos_ = 0;
  int line_ = 0;
};

void append_array(std::string& out, std::string_view key,
                  const std::vector<NamedValue>& values) {
  out += fmt::format("{} {}\n", key, values.size());
  for (const NamedValue& v : values) {
    out += fmt::format("{} {}\n", v.name, format_real(v.value));
  }
}

}  // namespace

std::string format_real(double value) { return fmt::format("{:.17g}", value); }

bool operator==(const ViolationSummary& a, const ViolationSummary& b) {
  return same_real(a.primal_inf, b.primal_inf) &&
         same_real(a.dual_inf, b.dual_inf) && same_real(a.rel_gap, b.rel_gap) &&
         same_real(a.max_violation, b.max_violation);
}

bool operator==(const SolutionFile& a, const SolutionFile& b) {
  auto same_values = [](const std::vector<NamedValue>& u,
                        const std::vector<NamedValue>& v) {
    if (u.size() != v.size()) return false;
    for (size_t k = 0; k < u.size(); ++k) {
      if (u[k].name != v[k].name || !same_real(u[k].value, v[k].value)) {
        return false;
      }
    }
    return true;
  };
  return a.status == b.status && a.method == b.method && a.phase == b.phase &&
         same_real(a.objective, b.objective) &&
         same_real(a.wall_seconds, b.wall_seconds) &&
         a.pdhg_iterations == b.pdhg_iterations &&
         a.ipm_iterations == b.ipm_iterations &&
         a.escalations == b.escalations && a.violation == b.violation &&
         same_values(a.x, b.x) && same_values(a.y, b.y) &&
         same_values(a.z, b.z);
}

std::string write_solution(const SolutionFile& s) {
  std::string out;
  out += kMagic;
  out += '\n';
  out += fmt::format("status {}\n", status_name(s.status));
  out += fmt::format("method {}\n", s.method.empty() ? "-" : s.method);
  out += fmt::format("phase {}\n", s.phase.empty() ? "-" : s.phase);
  out += fmt::format("objective {}\n", format_real(s.objective));
  out += fmt::format("wall_seconds {}\n", format_real(s.wall_seconds));
  out += fmt::format("iterations pdhg {} ipm {} escalations {}\n",
                     s.pdhg_iterations, s.ipm_iterations, s.escalations);
  if (s.violation) {
    out += fmt::format("violation {} {} {} {}\n",
                       format_real(s.violation->primal_inf),
                       format_real(s.violation->dual_inf),
                       format_real(s.violation->rel_gap),
                       format_real(s.violation->max_violation));
  } else {
    out += "violation none\n";
  }
  append_array(out, "x", s.x);
  append_array(out, "y", s.y);
  append_array(out, "z", s.z);
  out += "end\n";
  return out;
}

SolutionFile parse_solution(std::string_view text) {
  Reader in(text);
  SolutionFile s;
  {
    auto tok = in.next("hybridlp-solution");
    if (tok.size() != 2 || tok[1] != "1") in.fail("unsupported version");
  }
  {
    auto tok = in.next("status");
    if (tok.size() != 2) in.fail("status needs a value");
    auto status = parse_status(tok[1]);
    if (!status) in.fail("unknown status '" + std::string(tok[1]) + "'");
    s.status = *status;
  }
  auto word = [&](std::string_view key) {
    auto tok = in.next(key);
    if (tok.size() != 2) in.fail(std::string(key) + " needs a value");
    return tok[1] == "-" ? std::string() : std::string(tok[1]);
  };
  s.method = word("method");
  s.phase = word("phase");
  {
    auto tok = in.next("objective");
    if (tok.size() != 2) in.fail("objective needs a value");
    s.objective = in.real(tok[1]);
  }
  {
    auto tok = in.next("wall_seconds");
    if (tok.size() != 2) in.fail("wall_seconds needs a value");
    s.wall_seconds = in.real(tok[1]);
  }
  {
    auto tok = in.next("iterations");
    if (tok.size() != 7 || tok[1] != "pdhg" || tok[3] != "ipm" ||
        tok[5] != "escalations") {
      in.fail("malformed iterations line");
    }
    s.pdhg_iterations = in.integer(tok[2]);
    s.ipm_iterations = in.integer(tok[4]);
    s.escalations = in.integer(tok[6]);
  }
  {
    auto tok = in.next("violation");
    if (tok.size() == 2 && tok[1] == "none") {
      s.violation.reset();
    } else if (tok.size() == 5) {
      s.violation = ViolationSummary{in.real(tok[1]), in.real(tok[2]),
                                     in.real(tok[3]), in.real(tok[4])};
    } else {
      in.fail("malformed violation line");
    }
  }
  s.x = in.array("x");
  s.y = in.array("y");
  s.z = in.array("z");
  in.next("end");
  if (s.status == SolveStatus::kOptimal && !s.violation) {
    in.fail("Optimal solution without violation summary");
  }
  return s;
}

SolutionFile read_solution_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_solution(buffer.str());
}

void write_solution_file(const std::string& path, const SolutionFile& s) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << write_solution(s);
  if (!out) throw std::runtime_error("failed writing " + path);
}

}  // namespace hybridlp
