#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include <gtest/gtest.h>

#include "hybridlp/desk_suite.h"
#include "hybridlp/mps_reader.h"
#include "hybridlp/solution_file.h"
#include "hybridlp/solver.h"
#include "test_util.h"

namespace hybridlp {
namespace {

using testing::Gen;

std::string read_text(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string fixture_path(const std::string& name) {
  return std::string(HYBRIDLP_TEST_DATA) + "/" + name + ".mps";
}

void expect_same_model(const GeneralLp& a, const GeneralLp& b) {
  EXPECT_EQ(a.col_costs, b.col_costs);
  EXPECT_EQ(testing::to_dense(a.matrix), testing::to_dense(b.matrix));
  EXPECT_EQ(a.row_senses, b.row_senses);
  EXPECT_EQ(a.row_rhs, b.row_rhs);
  EXPECT_EQ(a.var_lower, b.var_lower);
  EXPECT_EQ(a.var_upper, b.var_upper);
  EXPECT_EQ(a.objective_offset, b.objective_offset);
  EXPECT_EQ(a.maximize, b.maximize);
}

int error_line(std::string_view text) {
  try {
    parse_mps(text);
  } catch (const MpsParseError& e) {
    return e.line();
  }
  return -1;
}

TEST(MpsReaderTest, Lp1FromString) {
  const GeneralLp g = parse_mps(
      "NAME LP1\n"
      "ROWS\n N obj\n E c1\n"
      "COLUMNS\n x1 obj 1 c1 1\n x2 obj 2 c1 1\n"
      "RHS\n rhs c1 1\n"
      "ENDATA\n");
  EXPECT_EQ(g.num_vars(), 2);
  EXPECT_EQ(g.num_rows(), 1);
  EXPECT_EQ(g.row_senses[0], RowSense::kEqual);
  EXPECT_EQ(g.row_rhs[0], 1.0);
  EXPECT_EQ(g.col_costs, (std::vector<double>{1, 2}));
  EXPECT_EQ(g.col_names, (std::vector<std::string>{"x1", "x2"}));
  EXPECT_EQ(g.var_lower, (std::vector<double>{0, 0}));
  EXPECT_EQ(g.var_upper, (std::vector<double>{kInfinity, kInfinity}));
}

TEST(MpsReaderTest, FixturesMatchBuiltInModels) {
  expect_same_model(read_mps_file(fixture_path("lp1")), lp1().lp);
  expect_same_model(read_mps_file(fixture_path("lp2")), lp2().lp);
  expect_same_model(read_mps_file(fixture_path("degenerate")), degenerate_lp().lp);
  expect_same_model(read_mps_file(fixture_path("free")), free_variable_lp().lp);
}

TEST(MpsReaderTest, EmptyColumnsSection) {
  const GeneralLp g = parse_mps("NAME E\nROWS\n N obj\n L r\nCOLUMNS\nENDATA\n");
  EXPECT_EQ(g.num_vars(), 0);
  EXPECT_EQ(g.num_rows(), 1);
  EXPECT_EQ(g.matrix.num_nonzeros(), 0);
}

TEST(MpsReaderTest, FreeBound) {
  const GeneralLp g = read_mps_file(fixture_path("free"));
  EXPECT_EQ(g.var_lower[0], -kInfinity);
  EXPECT_EQ(g.var_upper[0], kInfinity);
}

// Independent reading of the bound-type table, applied to a sequence of
// bound records on one column starting from [0, inf).
std::pair<double, double> oracle_bounds(
    const std::vector<std::pair<std::string, double>>& records) {
  double lo = 0.0;
  double up = kInfinity;
  for (const auto& [type, v] : records) {
    if (type == "UP") {
      up = v;
      if (v < 0 && lo == 0) lo = -kInfinity;
    } else if (type == "LO") {
      lo = v;
    } else if (type == "FX") {
      lo = up = v;
    } else if (type == "FR") {
      lo = -kInfinity;
      up = kInfinity;
    } else if (type == "MI") {
      lo = -kInfinity;
    } else if (type == "PL") {
      up = kInfinity;
    } else if (type == "BV") {
      lo = 0;
      up = 1;
    }
  }
  return {lo, up};
}

TEST(MpsReaderTest, BoundTypesAgreeWithOracle) {
  const std::vector<std::string> types = {"UP", "LO", "FX", "FR", "MI", "PL", "BV"};
  Gen g(11);
  int checked = 0;
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<std::pair<std::string, double>> recs;
    std::string bounds;
    const int count = g.integer(1, 3);
    for (int k = 0; k < count; ++k) {
      const std::string t = types[g.integer(0, types.size() - 1)];
      const double v = std::round(g.uniform(-5, 5) * 4) / 4;
      recs.emplace_back(t, v);
      bounds += " " + t + " BND x1";
      if (t == "UP" || t == "LO" || t == "FX") bounds += " " + std::to_string(v);
      bounds += "\n";
    }
    const auto [lo, up] = oracle_bounds(recs);
    const std::string text = "NAME B\nROWS\n N obj\n L r\nCOLUMNS\n x1 obj 1 r 1\n"
                             "RHS\n rhs r 1\nBOUNDS\n" + bounds + "ENDATA\n";
    if (lo > up) {
      EXPECT_THROW(parse_mps(text), MpsParseError);
      continue;
    }
    const GeneralLp parsed = parse_mps(text);
    EXPECT_EQ(parsed.var_lower[0], lo) << bounds;
    EXPECT_EQ(parsed.var_upper[0], up) << bounds;
    ++checked;
  }
  EXPECT_GT(checked, 300);
}

TEST(MpsReaderTest, InfiniteBoundMagnitude) {
  const GeneralLp g = parse_mps(
      "NAME B\nROWS\n N obj\n L r\nCOLUMNS\n x obj 1 r 1\nRHS\n rhs r 1\n"
      "BOUNDS\n LO b x -1e30\n UP b x 1e31\nENDATA\n");
  EXPECT_EQ(g.var_lower[0], -kInfinity);
  EXPECT_EQ(g.var_upper[0], kInfinity);
}

TEST(MpsReaderTest, DuplicateEntriesAreSummed) {
  const GeneralLp g = parse_mps(
      "NAME D\nROWS\n N obj\n E r\nCOLUMNS\n x obj 1 r 1\n x r 2\n"
      "RHS\n rhs r 3\nENDATA\n");
  EXPECT_EQ(g.matrix.coefficient(0, 0), 3.0);
}

TEST(MpsReaderTest, RangesBecomeTwoSidedRows) {
  const GeneralLp g = parse_mps(
      "NAME R\nROWS\n N obj\n L a\n G b\n E c\n E d\n"
      "COLUMNS\n x obj 1 a 1\n x b 1 c 1\n x d 1\n"
      "RHS\n rhs a 10 b 2\n rhs c 5 d 5\n"
      "RANGES\n rng a 4 b -3\n rng c 2 d -2\n"
      "ENDATA\n");
  // a in [6, 10], b in [2, 5], c in [5, 7], d in [3, 5]
  ASSERT_EQ(g.num_rows(), 8);
  const std::map<std::string, std::pair<RowSense, double>> expected = {
      {"a", {RowSense::kGreaterEqual, 6}},  {"a_range", {RowSense::kLessEqual, 10}},
      {"b", {RowSense::kGreaterEqual, 2}},  {"b_range", {RowSense::kLessEqual, 5}},
      {"c", {RowSense::kGreaterEqual, 5}},  {"c_range", {RowSense::kLessEqual, 7}},
      {"d", {RowSense::kGreaterEqual, 3}},  {"d_range", {RowSense::kLessEqual, 5}}};
  for (int i = 0; i < g.num_rows(); ++i) {
    const auto it = expected.find(g.row_names[i]);
    ASSERT_NE(it, expected.end()) << g.row_names[i];
    EXPECT_EQ(g.row_senses[i], it->second.first) << g.row_names[i];
    EXPECT_EQ(g.row_rhs[i], it->second.second) << g.row_names[i];
    EXPECT_EQ(g.matrix.coefficient(i, 0), 1.0);
  }
}

TEST(MpsReaderTest, ObjectiveSenseAndConstant) {
  const GeneralLp g = parse_mps(
      "NAME M\nOBJSENSE\n    MAX\nROWS\n N obj\n L r\n"
      "COLUMNS\n x obj 3 r 1\nRHS\n rhs r 4 obj -2\nENDATA\n");
  EXPECT_TRUE(g.maximize);
  EXPECT_EQ(g.col_costs[0], -3.0);
  // The RHS on the objective row is minus the constant: max 3x + 2.
  EXPECT_EQ(g.objective_offset, -2.0);
  SolveOptions o = *options_for_tag("ipm-cold");
  const SolveReport r = solve(g, o);
  ASSERT_EQ(r.status, SolveStatus::kOptimal);
  EXPECT_NEAR(r.objective, 14.0, 1e-6);
}

TEST(MpsReaderTest, ErrorsCarryLineNumbers) {
  EXPECT_EQ(error_line("NAME X\nROWS\n N obj\nFOO\nENDATA\n"), 4);
  EXPECT_EQ(error_line("NAME X\nROWS\n N obj\n L r\nCOLUMNS\n x obj 1 q 1\n"
                       "ENDATA\n"),
            6);
  EXPECT_EQ(error_line("NAME X\nROWS\n N obj\n N obj2\nENDATA\n"), 4);
  EXPECT_GT(error_line("NAME X\nROWS\n N obj\n L r\nCOLUMNS\n x obj 1 r 1\n"),
            0);
  EXPECT_GT(error_line("NAME X\nROWS\n L r\nCOLUMNS\n x r 1\nENDATA\n"), 0);
  EXPECT_EQ(error_line("NAME X\nROWS\n N obj\n L r\nCOLUMNS\n x obj abc\n"
                       "ENDATA\n"),
            6);
}

// Splits a file into its header-led sections.
std::vector<std::string> sections(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] != ' ') out.emplace_back();
    out.back() += line + "\n";
  }
  return out;
}

TEST(MpsReaderTest, ShuffledSectionsAreRejected) {
  Gen g(5);
  for (const char* name : {"lp1", "lp2", "degenerate", "free"}) {
    const std::vector<std::string> blocks = sections(read_text(fixture_path(name)));
    ASSERT_GE(blocks.size(), 5u);
    // Keep ENDATA last so the failure is about order, not truncation.
    std::vector<std::string> body(blocks.begin(), blocks.end() - 1);
    for (int trial = 0; trial < 50; ++trial) {
      std::vector<std::string> shuffled = body;
      std::shuffle(shuffled.begin(), shuffled.end(), g.engine());
      if (shuffled == body) continue;
      std::string text;
      for (const auto& b : shuffled) text += b;
      text += blocks.back();
      EXPECT_THROW(parse_mps(text), MpsParseError) << text;
    }
  }
}

SolutionFile sample_solution() {
  SolutionFile s;
  s.status = SolveStatus::kOptimal;
  s.method = "hybrid";
  s.objective = 1.0 / 3.0;
  s.wall_seconds = 0.125;
  s.pdhg_iterations = 640;
  s.ipm_iterations = 4;
  s.escalations = 1;
  s.violation = ViolationSummary{1e-9, 2e-10, 3.0000000000000001e-11, 1e-9};
  s.x = {{"X1", 0.1}, {"X2", -1e-300}};
  s.y = {{"R1", std::nextafter(1.0, 2.0)}};
  s.z = {{"X1", 0.0}, {"X2", 5e22}};
  return s;
}

TEST(SolutionFileTest, RoundTripIsExact) {
  const SolutionFile s = sample_solution();
  const std::string text = write_solution(s);
  EXPECT_NE(text.find("status Optimal"), std::string::npos);
  const SolutionFile back = parse_solution(text);
  EXPECT_EQ(back, s);
  EXPECT_EQ(write_solution(back), text);
}

TEST(SolutionFileTest, StalledKeepsArraysAndViolation) {
  SolutionFile s = sample_solution();
  s.status = SolveStatus::kStalled;
  s.phase = "ipm";
  const SolutionFile back = parse_solution(write_solution(s));
  EXPECT_EQ(back.status, SolveStatus::kStalled);
  EXPECT_EQ(back.phase, "ipm");
  ASSERT_TRUE(back.violation.has_value());
  EXPECT_EQ(back.x.size(), 2u);
}

TEST(SolutionFileTest, OptimalWithoutViolationIsRejected) {
  SolutionFile s = sample_solution();
  s.violation.reset();
  EXPECT_THROW(parse_solution(write_solution(s)), SolutionParseError);
}

TEST(SolutionFileTest, TruncatedFileIsRejected) {
  const std::string text = write_solution(sample_solution());
  for (std::size_t cut = 0; cut + 4 < text.size(); cut += 7) {
    EXPECT_THROW(parse_solution(text.substr(0, cut)), SolutionParseError) << cut;
  }
}

TEST(SolutionFileTest, SeventeenDigits) {
  EXPECT_EQ(format_real(0.1), "0.10000000000000001");
  EXPECT_EQ(std::stod(format_real(1.0 / 3.0)), 1.0 / 3.0);
}

TEST(SolutionFileTest, SolvedFixturesRoundTrip) {
  for (const char* name : {"lp1", "lp2", "degenerate", "free"}) {
    const GeneralLp g = read_mps_file(fixture_path(name));
    const SolutionFile s = to_solution_file(g, solve(g, *options_for_tag("hybrid")));
    const SolutionFile once = parse_solution(write_solution(s));
    EXPECT_EQ(once, s) << name;
    EXPECT_EQ(parse_solution(write_solution(once)), once) << name;
  }
}

}  // namespace
}  // namespace hybridlp
