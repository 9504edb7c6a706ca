#include "hybridlp/mps_reader.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <unordered_map>
#include <vector>

namespace hybridlp {
namespace {

constexpr double kMpsInfinity = 1e30;

enum class Section {
  kNone,
  kName,
  kObjSense,
  kRows,
  kColumns,
  kRhs,
  kRanges,
  kBounds,
  kEndData,
};

std::optional<Section> section_from_keyword(std::string_view word) {
  static const std::map<std::string_view, Section> kSections = {
      {"NAME", Section::kName},       {"OBJSENSE", Section::kObjSense},
      {"ROWS", Section::kRows},       {"COLUMNS", Section::kColumns},
      {"RHS", Section::kRhs},         {"RANGES", Section::kRanges},
      {"BOUNDS", Section::kBounds},   {"ENDATA", Section::kEndData},
  };
  auto it = kSections.find(word);
  if (it == kSections.end()) return std::nullopt;
  return it->second;
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t' ||
                                 line[pos] == '\r')) {
      ++pos;
    }
    size_t end = pos;
    while (end < line.size() && line[end] != ' ' && line[end] != '\t' &&
           line[end] != '\r') {
      ++end;
    }
    if (end > pos) out.push_back(line.substr(pos, end - pos));
    pos = end;
  }
  return out;
}

std::optional<double> to_number(std::string_view token) {
  double value = 0.0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) return std::nullopt;
  return value;
}

class MpsParser {
 public:
  GeneralLp parse(std::string_view text);

 private:
  double number(std::string_view token) const {
    auto value = to_number(token);
    if (!value) fail("invalid number '" + std::string(token) + "'");
    return *value;
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw MpsParseError(line_, what);
  }
  // Returns -1 for the objective row.
  int row_index(std::string_view name) const {
    if (name == objective_name_) return -1;
    auto it = rows_.find(std::string(name));
    if (it == rows_.end()) {
      fail("reference to undeclared row '" + std::string(name) + "'");
    }
    return it->second;
  }
  int column_index(std::string_view name) const {
    auto it = cols_.find(std::string(name));
    if (it == cols_.end()) {
      fail("reference to undeclared column '" + std::string(name) + "'");
    }
    return it->second;
  }

  void rows_line(const std::vector<std::string_view>& tok);
  void columns_line(const std::vector<std::string_view>& tok);
  void rhs_line(const std::vector<std::string_view>& tok);
  void ranges_line(const std::vector<std::string_view>& tok);
  void bounds_line(const std::vector<std::string_view>& tok);
  void objsense_line(std::string_view word);
  void apply_ranges(GeneralLp& lp);

  int line_ = 0;
  std::string objective_name_;
  bool have_objective_ = false;
  bool maximize_ = false;
  std::unordered_map<std::string, int> rows_;
  std::unordered_map<std::string, int> cols_;
  GeneralLp lp_;
  std::vector<SparseMatrix::Triplet> triplets_;
  double objective_rhs_ = 0.0;
  std::vector<std::optional<double>> ranges_;
};

void MpsParser::objsense_line(std::string_view word) {
  if (word == "MAX" || word == "MAXIMIZE") {
    maximize_ = true;
  } else if (word == "MIN" || word == "MINIMIZE") {
    maximize_ = false;
  } else {
    fail("unknown objective sense '" + std::string(word) + "'");
  }
}

void MpsParser::rows_line(const std::vector<std::string_view>& tok) {
  if (tok.size() != 2) fail("ROWS entry needs a type and a name");
  const std::string name(tok[1]);
  if (rows_.contains(name) || (have_objective_ && name == objective_name_)) {
    fail("duplicate row '" + name + "'");
  }
  const std::string_view type = tok[0];
  if (type == "N") {
    if (have_objective_) fail("more than one N row");
    have_objective_ = true;
    objective_name_ = name;
    return;
  }
  RowSense sense;
  if (type == "L") {
    sense = RowSense::kLessEqual;
  } else if (type == "G") {
    sense = RowSense::kGreaterEqual;
  } else if (type == "E") {
    sense = RowSense::kEqual;
  } else {
    fail("unknown row type '" + std::string(type) + "'");
  }
  rows_.emplace(name, lp_.num_rows());
  lp_.row_names.push_back(name);
  lp_.row_senses.push_back(sense);
  lp_.row_rhs.push_back(0.0);
}

void MpsParser::columns_line(const std::vector<std::string_view>& tok) {
  if (tok.size() >= 2 && tok[1] == "'MARKER'") return;
  if (tok.size() != 3 && tok.size() != 5) {
    fail("COLUMNS entry needs a column and one or two (row, value) pairs");
  }
  const std::string name(tok[0]);
  auto [it, inserted] = cols_.emplace(name, lp_.num_vars());
  if (inserted) {
    lp_.col_names.push_back(name);
    lp_.col_costs.push_back(0.0);
    lp_.var_lower.push_back(0.0);
    lp_.var_upper.push_back(kInfinity);
  }
  const int col = it->second;
  for (size_t k = 1; k + 1 < tok.size(); k += 2) {
    const int row = row_index(tok[k]);
    const double value = number(tok[k + 1]);
    if (row < 0) {
      lp_.col_costs[col] += value;
    } else {
      triplets_.push_back({row, col, value});
    }
  }
}

void MpsParser::rhs_line(const std::vector<std::string_view>& tok) {
  // [set name] row value [row value]
  const size_t first = tok.size() % 2 == 1 ? 1 : 0;
  if (tok.size() < 2 || tok.size() > 5) fail("malformed RHS entry");
  for (size_t k = first; k + 1 < tok.size(); k += 2) {
    const int row = row_index(tok[k]);
    const double value = number(tok[k + 1]);
    if (row < 0) {
      objective_rhs_ = value;
    } else {
      lp_.row_rhs[row] = value;
    }
  }
}

void MpsParser::ranges_line(const std::vector<std::string_view>& tok) {
  const size_t first = tok.size() % 2 == 1 ? 1 : 0;
  if (tok.size() < 2 || tok.size() > 5) fail("malformed RANGES entry");
  for (size_t k = first; k + 1 < tok.size(); k += 2) {
    const int row = row_index(tok[k]);
    if (row < 0) fail("RANGES entry on the objective row");
    ranges_[row] = number(tok[k + 1]);
  }
}

void MpsParser::bounds_line(const std::vector<std::string_view>& tok) {
  if (tok.size() < 2) fail("malformed BOUNDS entry");
  const std::string_view type = tok[0];
  const bool takes_value = !(type == "FR" || type == "MI" || type == "PL" ||
                             type == "BV");
  std::string_view col_name;
  std::optional<double> value;
  if (takes_value) {
    if (tok.size() == 4) {
      col_name = tok[2];
      value = number(tok[3]);
    } else if (tok.size() == 3) {
      col_name = tok[1];
      value = number(tok[2]);
    } else {
      fail("bound type " + std::string(type) + " needs a value");
    }
  } else if (tok.size() == 2) {
    col_name = tok[1];
  } else if (tok.size() == 3 && !cols_.contains(std::string(tok[2])) &&
             cols_.contains(std::string(tok[1]))) {
    col_name = tok[1];
  } else if (tok.size() == 3 || tok.size() == 4) {
    col_name = tok[2];
  } else {
    fail("malformed BOUNDS entry");
  }
  const int j = column_index(col_name);
  double& lower = lp_.var_lower[j];
  double& upper = lp_.var_upper[j];
  auto clip = [](double v) {
    if (v >= kMpsInfinity) return kInfinity;
    if (v <= -kMpsInfinity) return -kInfinity;
    return v;
  };
  if (type == "UP" || type == "UI") {
    upper = clip(*value);
    if (*value < 0.0 && lower == 0.0) lower = -kInfinity;
  } else if (type == "LO" || type == "LI") {
    lower = clip(*value);
  } else if (type == "FX") {
    lower = upper = *value;
  } else if (type == "FR") {
    lower = -kInfinity;
    upper = kInfinity;
  } else if (type == "MI") {
    lower = -kInfinity;
  } else if (type == "PL") {
    upper = kInfinity;
  } else if (type == "BV") {
    lower = 0.0;
    upper = 1.0;
  } else {
    fail("unsupported bound type '" + std::string(type) + "'");
  }
}

void MpsParser::apply_ranges(GeneralLp& lp) {
  const int m = lp.num_rows();
  for (int i = 0; i < m; ++i) {
    if (!ranges_[i]) continue;
    const double r = *ranges_[i];
    const double rhs = lp.row_rhs[i];
    double lo = rhs;
    double hi = rhs;
    switch (lp.row_senses[i]) {
      case RowSense::kLessEqual:
        lo = rhs - std::abs(r);
        break;
      case RowSense::kGreaterEqual:
        hi = rhs + std::abs(r);
        break;
      case RowSense::kEqual:
        (r >= 0.0 ? hi : lo) = rhs + r;
        break;
    }
    if (lo == hi) continue;
    lp.row_senses[i] = RowSense::kGreaterEqual;
    lp.row_rhs[i] = lo;
    lp.row_senses.push_back(RowSense::kLessEqual);
    lp.row_rhs.push_back(hi);
    lp.row_names.push_back(lp.row_names[i] + "_range");
    for (const auto& e : lp.matrix.row(i)) {
      triplets_.push_back({lp.num_rows() - 1, e.index, e.value});
    }
  }
}

GeneralLp MpsParser::parse(std::string_view text) {
  Section section = Section::kNone;
  bool finished = false;
  size_t pos = 0;
  while (pos <= text.size() && !finished) {
    size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_;
    if (line.empty() || line[0] == '*') continue;
    const std::vector<std::string_view> tok = split(line);
    if (tok.empty()) continue;

    const bool header = line[0] != ' ' && line[0] != '\t';
    if (header) {
      auto next = section_from_keyword(tok[0]);
      if (!next) fail("unknown section '" + std::string(tok[0]) + "'");
      if (*next <= section) {
        fail("section " + std::string(tok[0]) + " out of order");
      }
      if (*next >= Section::kColumns && section < Section::kRows) {
        fail("section " + std::string(tok[0]) + " before ROWS");
      }
      section = *next;
      if (section == Section::kName) {
        if (tok.size() > 1) {
          const size_t start = line.find(tok[1]);
          lp_.name = std::string(split(line.substr(start)).front());
        }
      } else if (section == Section::kObjSense) {
        if (tok.size() > 1) objsense_line(tok[1]);
      } else if (section == Section::kRows) {
        if (tok.size() > 1) fail("unexpected data on ROWS header");
      } else if (section == Section::kRanges) {
        ranges_.assign(lp_.num_rows(), std::nullopt);
      } else if (section == Section::kEndData) {
        finished = true;
      }
      continue;
    }

    switch (section) {
      case Section::kNone:
        fail("data before any section header");
      case Section::kName:
        fail("unexpected data in NAME section");
      case Section::kObjSense:
        objsense_line(tok[0]);
        break;
      case Section::kRows:
        rows_line(tok);
        break;
      case Section::kColumns:
        columns_line(tok);
        break;
      case Section::kRhs:
        rhs_line(tok);
        break;
      case Section::kRanges:
        ranges_line(tok);
        break;
      case Section::kBounds:
        bounds_line(tok);
        break;
      case Section::kEndData:
        break;
    }
  }
  if (!finished) fail("missing ENDATA");
  if (!have_objective_) fail("no N (objective) row");

  lp_.matrix = SparseMatrix(lp_.num_rows(), lp_.num_vars(), triplets_);
  if (ranges_.size() == static_cast<size_t>(lp_.num_rows())) {
    apply_ranges(lp_);
    lp_.matrix = SparseMatrix(lp_.num_rows(), lp_.num_vars(), triplets_);
  }
  lp_.objective_offset = -objective_rhs_;
  lp_.maximize = maximize_;
  if (maximize_) {
    for (double& c : lp_.col_costs) c = -c;
    lp_.objective_offset = -lp_.objective_offset;
  }
  try {
    lp_.validate();
  } catch (const ModelError& e) {
    fail(e.what());
  }
  return std::move(lp_);
}

}  // namespace

GeneralLp parse_mps(std::string_view text) { return MpsParser().parse(text); }

GeneralLp read_mps_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_mps(buffer.str());
}

}  // namespace hybridlp
