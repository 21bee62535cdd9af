#include "mereoml/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_set>

#include "mereoml/error.hpp"

namespace mereoml {

namespace {

std::string with_locus(std::string message, std::size_t row, std::size_t column) {
  if (row == 0 && column == 0) return message;
  std::ostringstream out;
  out << message << " (";
  if (row != 0) out << "row " << row;
  if (row != 0 && column != 0) out << ", ";
  if (column != 0) out << "column " << column;
  out << ")";
  return out.str();
}

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  s = s.substr(first, last - first + 1);
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = s.substr(1, s.size() - 2);
  return std::string(s);
}

std::vector<std::string> split_commas(const std::string& line) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    cells.push_back(trim(std::string_view(line).substr(start, comma == std::string::npos ? std::string::npos : comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return cells;
}

std::optional<double> parse_number(const std::string& token) {
  double value = 0.0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  if (first != last && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || first == last) return std::nullopt;
  return value;
}

}  // namespace

DataError::DataError(Kind kind, std::string message, std::size_t row, std::size_t column)
    : Error(with_locus(std::move(message), row, column)), kind_(kind), row_(row), column_(column) {}

ParseError::ParseError(std::string message, std::size_t position, std::size_t line)
    : Error(message + " at line " + std::to_string(line) + ", column " + std::to_string(position)),
      position_(position),
      line_(line) {}

// ---------------------------------------------------------------------------
// InformationSystem

InformationSystem::InformationSystem(std::vector<std::string> features,
                                     const std::vector<std::vector<std::string>>& rows)
    : features_(std::move(features)), num_objects_(rows.size()) {
  std::unordered_set<std::string> seen;
  for (std::size_t f = 0; f < features_.size(); ++f) {
    if (!seen.insert(features_[f]).second) {
      throw DataError(DataError::Kind::DuplicateFeature, "duplicate feature '" + features_[f] + "'", 1,
                      f + 1);
    }
  }
  const std::size_t nf = features_.size();
  domains_.resize(nf);
  for (std::size_t f = 0; f < nf; ++f) {
    std::set<std::string> tokens;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != nf) {
        throw DataError(DataError::Kind::RaggedRow,
                        "row has " + std::to_string(rows[i].size()) + " cells, expected " + std::to_string(nf),
                        i + 2);
      }
      tokens.insert(rows[i][f]);
    }
    domains_[f].assign(tokens.begin(), tokens.end());
  }
  cells_.resize(num_objects_ * nf);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t f = 0; f < nf; ++f) {
      const auto& dom = domains_[f];
      cells_[i * nf + f] = static_cast<int>(std::lower_bound(dom.begin(), dom.end(), rows[i][f]) - dom.begin());
    }
  }
}

std::optional<std::size_t> InformationSystem::feature_index(std::string_view name) const {
  const auto it = std::find(features_.begin(), features_.end(), name);
  if (it == features_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - features_.begin());
}

void InformationSystem::check_object(ObjectId x) const {
  if (x >= num_objects_) {
    throw DataError(DataError::Kind::UnknownObject,
                    "unknown object id " + std::to_string(x) + " (universe has " + std::to_string(num_objects_) +
                        " objects)");
  }
}

int InformationSystem::code(ObjectId x, std::size_t feature) const {
  check_object(x);
  return cells_[x * features_.size() + feature];
}

const std::string& InformationSystem::value(ObjectId x, std::size_t feature) const {
  return domains_.at(feature).at(static_cast<std::size_t>(code(x, feature)));
}

std::span<const int> InformationSystem::row(ObjectId x) const {
  check_object(x);
  return {cells_.data() + x * features_.size(), features_.size()};
}

std::optional<int> InformationSystem::code_of(std::size_t feature, std::string_view token) const {
  const auto& dom = domains_.at(feature);
  const auto it = std::lower_bound(dom.begin(), dom.end(), token);
  if (it == dom.end() || *it != token) return std::nullopt;
  return static_cast<int>(it - dom.begin());
}

std::vector<int> InformationSystem::encode(const std::vector<std::string>& tokens) const {
  if (tokens.size() != features_.size()) {
    throw DataError(DataError::Kind::RaggedRow, "row has " + std::to_string(tokens.size()) +
                                                    " cells, expected " + std::to_string(features_.size()));
  }
  std::vector<int> out(tokens.size());
  for (std::size_t f = 0; f < tokens.size(); ++f) out[f] = code_of(f, tokens[f]).value_or(-1);
  return out;
}

InformationSystem InformationSystem::select(std::span<const ObjectId> ids) const {
  InformationSystem out;
  out.features_ = features_;
  out.domains_ = domains_;
  out.num_objects_ = ids.size();
  out.cells_.reserve(ids.size() * features_.size());
  for (const ObjectId x : ids) {
    const auto r = row(x);
    out.cells_.insert(out.cells_.end(), r.begin(), r.end());
  }
  return out;
}

InformationSystem InformationSystem::project(std::span<const std::size_t> feature_ids) const {
  InformationSystem out;
  out.num_objects_ = num_objects_;
  for (const auto f : feature_ids) {
    out.features_.push_back(features_.at(f));
    out.domains_.push_back(domains_.at(f));
  }
  out.cells_.reserve(num_objects_ * feature_ids.size());
  for (ObjectId x = 0; x < num_objects_; ++x) {
    for (const auto f : feature_ids) out.cells_.push_back(cells_[x * features_.size() + f]);
  }
  return out;
}

InformationSystem InformationSystem::with_column(std::string name, const std::vector<std::string>& tokens) const {
  if (tokens.size() != num_objects_) {
    throw DataError(DataError::Kind::RaggedRow, "column '" + name + "' has " + std::to_string(tokens.size()) +
                                                    " cells, expected " + std::to_string(num_objects_));
  }
  auto rows = this->tokens();
  for (std::size_t i = 0; i < rows.size(); ++i) rows[i].push_back(tokens[i]);
  auto names = features_;
  names.push_back(std::move(name));
  return InformationSystem(std::move(names), rows);
}

std::vector<std::vector<std::string>> InformationSystem::tokens() const {
  std::vector<std::vector<std::string>> rows(num_objects_);
  for (ObjectId x = 0; x < num_objects_; ++x) {
    rows[x].reserve(features_.size());
    for (std::size_t f = 0; f < features_.size(); ++f) rows[x].push_back(value(x, f));
  }
  return rows;
}

// ---------------------------------------------------------------------------
// DecisionSystem

DecisionSystem::DecisionSystem(InformationSystem conditions, std::string decision_name,
                               const std::vector<std::string>& decisions)
    : conditions_(std::move(conditions)), decision_name_(std::move(decision_name)) {
  if (conditions_.feature_index(decision_name_)) {
    throw DataError(DataError::Kind::DuplicateFeature,
                    "decision '" + decision_name_ + "' is also a conditional feature");
  }
  if (decisions.size() != conditions_.num_objects()) {
    throw DataError(DataError::Kind::RaggedRow, "decision column has " + std::to_string(decisions.size()) +
                                                    " cells, expected " +
                                                    std::to_string(conditions_.num_objects()));
  }
  std::set<std::string> values(decisions.begin(), decisions.end());
  decision_values_.assign(values.begin(), values.end());
  decisions_.reserve(decisions.size());
  for (const auto& v : decisions) {
    decisions_.push_back(static_cast<int>(
        std::lower_bound(decision_values_.begin(), decision_values_.end(), v) - decision_values_.begin()));
  }
}

DecisionSystem DecisionSystem::select(std::span<const ObjectId> ids) const {
  DecisionSystem out;
  out.conditions_ = conditions_.select(ids);
  out.decision_name_ = decision_name_;
  out.decision_values_ = decision_values_;
  out.decisions_.reserve(ids.size());
  for (const auto x : ids) out.decisions_.push_back(decisions_.at(x));
  return out;
}

InformationSystem DecisionSystem::with_decision() const {
  std::vector<std::string> tokens;
  tokens.reserve(decisions_.size());
  for (const int d : decisions_) tokens.push_back(decision_values_[static_cast<std::size_t>(d)]);
  return conditions_.with_column(decision_name_, tokens);
}

// ---------------------------------------------------------------------------
// CSV ingestion

CsvTable parse_csv(std::istream& in, const CsvOptions& options) {
  CsvTable table;
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    auto cells = split_commas(line);
    if (!have_header) {
      std::unordered_set<std::string> seen;
      for (std::size_t c = 0; c < cells.size(); ++c) {
        if (cells[c].empty()) {
          throw DataError(DataError::Kind::MissingValue, "empty header cell", line_no, c + 1);
        }
        if (!seen.insert(cells[c]).second) {
          throw DataError(DataError::Kind::DuplicateFeature, "duplicate header '" + cells[c] + "'", line_no, c + 1);
        }
      }
      table.header = std::move(cells);
      have_header = true;
      continue;
    }
    if (cells.size() != table.header.size()) {
      throw DataError(DataError::Kind::RaggedRow,
                      "row has " + std::to_string(cells.size()) + " cells, expected " +
                          std::to_string(table.header.size()),
                      line_no);
    }
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (options.na_token && cells[c] == *options.na_token) {
        cells[c] = std::string(kMissingToken);
      } else if (cells[c].empty() || cells[c] == "?") {
        throw DataError(DataError::Kind::MissingValue, "missing value in '" + table.header[c] + "'", line_no,
                        c + 1);
      }
    }
    table.rows.push_back(std::move(cells));
  }
  if (!have_header) throw DataError(DataError::Kind::EmptyTable, "no header row");
  return table;
}

CsvTable read_csv(const std::string& path, const CsvOptions& options) {
  std::ifstream in(path);
  if (!in) throw DataError(DataError::Kind::Io, "cannot open '" + path + "'");
  return parse_csv(in, options);
}

InformationSystem to_information_system(const CsvTable& table) {
  return InformationSystem(table.header, table.rows);
}

DecisionSystem to_decision_system(const CsvTable& table, std::string_view decision_column) {
  const auto it = std::find(table.header.begin(), table.header.end(), decision_column);
  if (it == table.header.end()) {
    throw DataError(DataError::Kind::MissingDecision,
                    "decision column '" + std::string(decision_column) + "' not in header", 1);
  }
  const auto d = static_cast<std::size_t>(it - table.header.begin());
  std::vector<std::string> features;
  for (std::size_t c = 0; c < table.header.size(); ++c) {
    if (c != d) features.push_back(table.header[c]);
  }
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> decisions;
  rows.reserve(table.rows.size());
  for (const auto& r : table.rows) {
    std::vector<std::string> conditional;
    conditional.reserve(features.size());
    for (std::size_t c = 0; c < r.size(); ++c) {
      if (c != d) conditional.push_back(r[c]);
    }
    rows.push_back(std::move(conditional));
    decisions.push_back(r[d]);
  }
  return DecisionSystem(InformationSystem(std::move(features), rows), std::string(decision_column), decisions);
}

InformationSystem load_information_system(const std::string& path, const CsvOptions& options) {
  return to_information_system(read_csv(path, options));
}

DecisionSystem load_decision_system(const std::string& path, std::string_view decision_column,
                                    const CsvOptions& options) {
  return to_decision_system(read_csv(path, options), decision_column);
}

// ---------------------------------------------------------------------------
// Discretization

std::vector<DiscretizeSpec> parse_discretize_specs(std::string_view text) {
  std::vector<DiscretizeSpec> specs;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const auto item = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    if (!item.empty()) {
      const auto colon = item.rfind(':');
      if (colon == std::string_view::npos || colon == 0) {
        throw DataError(DataError::Kind::InvalidArgument, "expected col:bins, got '" + std::string(item) + "'");
      }
      int bins = 0;
      const auto digits = item.substr(colon + 1);
      const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), bins);
      if (ec != std::errc() || ptr != digits.data() + digits.size() || bins < 1) {
        throw DataError(DataError::Kind::InvalidArgument, "bad bin count in '" + std::string(item) + "'");
      }
      specs.push_back({std::string(item.substr(0, colon)), bins});
    }
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return specs;
}

InformationSystem discretize(const InformationSystem& system, std::span<const std::string> columns, int bins) {
  std::vector<DiscretizeSpec> specs;
  for (const auto& c : columns) specs.push_back({c, bins});
  return discretize(system, specs);
}

InformationSystem discretize(const InformationSystem& system, std::span<const DiscretizeSpec> specs) {
  auto rows = system.tokens();
  const std::size_t n = rows.size();
  for (const auto& spec : specs) {
    if (spec.bins < 1) throw DataError(DataError::Kind::InvalidArgument, "bins must be >= 1");
    const auto f = system.feature_index(spec.column);
    if (!f) throw DataError(DataError::Kind::UnknownFeature, "unknown column '" + spec.column + "'");
    std::vector<double> values(n);
    for (std::size_t i = 0; i < n; ++i) {
      const auto v = parse_number(rows[i][*f]);
      if (!v) {
        throw DataError(DataError::Kind::NonNumeric, "non-numeric cell '" + rows[i][*f] + "' in '" + spec.column + "'",
                        i + 2, *f + 1);
      }
      values[i] = *v;
    }
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    std::vector<std::size_t> bin(n);
    std::size_t first_rank = 0;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == 0 || values[order[r]] != values[order[r - 1]]) first_rank = r;
      bin[order[r]] = first_rank * static_cast<std::size_t>(spec.bins) / n;
    }
    for (std::size_t i = 0; i < n; ++i) rows[i][*f] = "B" + std::to_string(bin[i]);
  }
  return InformationSystem(system.features(), rows);
}

DecisionSystem discretize(const DecisionSystem& system, std::span<const DiscretizeSpec> specs) {
  std::vector<std::string> decisions;
  decisions.reserve(system.num_objects());
  for (ObjectId x = 0; x < system.num_objects(); ++x) decisions.push_back(system.decision_value(x));
  return DecisionSystem(discretize(system.conditions(), specs), system.decision_name(), decisions);
}

// ---------------------------------------------------------------------------
// DIS / IND

FeatureSet dis(ObjectId x, ObjectId y, const InformationSystem& system) {
  const auto a = system.row(x);
  const auto b = system.row(y);
  FeatureSet out;
  for (std::size_t f = 0; f < a.size(); ++f) {
    if (a[f] != b[f]) out.push_back(f);
  }
  return out;
}

std::size_t dis_count(std::span<const int> a, std::span<const int> b) {
  std::size_t count = 0;
  for (std::size_t f = 0; f < a.size(); ++f) count += a[f] != b[f] ? 1 : 0;
  return count;
}

Degree ind_fraction(std::span<const int> a, std::span<const int> b) {
  if (a.empty()) throw PreconditionError("ind_fraction needs at least one feature");
  return static_cast<double>(a.size() - dis_count(a, b)) / static_cast<double>(a.size());
}

Degree ind_fraction(ObjectId x, ObjectId y, const InformationSystem& system) {
  return ind_fraction(system.row(x), system.row(y));
}

Rational ind_fraction_exact(ObjectId x, ObjectId y, const InformationSystem& system) {
  const auto nf = static_cast<std::int64_t>(system.num_features());
  if (nf == 0) throw PreconditionError("ind_fraction needs at least one feature");
  return Rational(nf - static_cast<std::int64_t>(dis_count(system.row(x), system.row(y))), nf);
}

}  // namespace mereoml
