#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mereoml/types.hpp"

namespace mereoml {

/// Indices into InformationSystem::features(), ascending.
using FeatureSet = std::vector<std::size_t>;

/// Objects x features table of discrete value tokens (U, F, V).
///
/// Values are stored as per-feature codes; code order equals ascending token
/// order, so "lowest code" and "first token in ascending order" coincide.
/// Subsystems built with select() share the parent dictionaries, which keeps
/// codes comparable between a training part and held-out objects.
class InformationSystem {
 public:
  InformationSystem() = default;

  /// Builds the table from value tokens; rows must all have |features| cells.
  InformationSystem(std::vector<std::string> features,
                    const std::vector<std::vector<std::string>>& rows);

  std::size_t num_objects() const noexcept { return num_objects_; }
  std::size_t num_features() const noexcept { return features_.size(); }

  const std::vector<std::string>& features() const noexcept { return features_; }
  std::optional<std::size_t> feature_index(std::string_view name) const;

  int code(ObjectId x, std::size_t feature) const;
  const std::string& value(ObjectId x, std::size_t feature) const;
  std::span<const int> row(ObjectId x) const;

  /// Observed tokens of a feature, ascending; index == code.
  const std::vector<std::string>& domain(std::size_t feature) const { return domains_.at(feature); }
  std::optional<int> code_of(std::size_t feature, std::string_view token) const;

  /// Encodes a row of tokens with this system's dictionaries. Unseen tokens
  /// map to -1, which differs from every stored code.
  std::vector<int> encode(const std::vector<std::string>& tokens) const;

  /// Rows `ids` (in the given order) as a new system with shared dictionaries.
  InformationSystem select(std::span<const ObjectId> ids) const;

  /// Keeps only the listed feature columns, in the given order.
  InformationSystem project(std::span<const std::size_t> feature_ids) const;

  /// Appends a column. The column must have one token per object.
  InformationSystem with_column(std::string name, const std::vector<std::string>& tokens) const;

  std::vector<std::vector<std::string>> tokens() const;

 private:
  void check_object(ObjectId x) const;

  std::vector<std::string> features_;
  std::vector<std::vector<std::string>> domains_;
  std::vector<int> cells_;  // row-major, num_objects_ x num_features
  std::size_t num_objects_ = 0;
};

/// Decision system (U, F, V, d, V_d): conditional features plus a
/// distinguished decision feature kept outside F.
class DecisionSystem {
 public:
  DecisionSystem() = default;
  DecisionSystem(InformationSystem conditions, std::string decision_name,
                 const std::vector<std::string>& decisions);

  const InformationSystem& conditions() const noexcept { return conditions_; }
  const std::string& decision_name() const noexcept { return decision_name_; }

  std::size_t num_objects() const noexcept { return conditions_.num_objects(); }
  std::size_t num_features() const noexcept { return conditions_.num_features(); }

  int decision(ObjectId x) const { return decisions_.at(x); }
  const std::string& decision_value(ObjectId x) const { return decision_values_.at(decisions_.at(x)); }
  /// V_d, ascending; index == decision code.
  const std::vector<std::string>& decision_values() const noexcept { return decision_values_; }
  const std::vector<int>& decisions() const noexcept { return decisions_; }

  DecisionSystem select(std::span<const ObjectId> ids) const;

  /// The full table F u {d}, with d as the last column.
  InformationSystem with_decision() const;

 private:
  InformationSystem conditions_;
  std::string decision_name_;
  std::vector<std::string> decision_values_;
  std::vector<int> decisions_;
};

struct CsvOptions {
  /// Cells equal to this token are kept as the distinguished value
  /// kMissingToken instead of being rejected.
  std::optional<std::string> na_token;
};

inline constexpr std::string_view kMissingToken = "<na>";

/// Raw header + body of a CSV file, validated for shape and missing cells.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

CsvTable parse_csv(std::istream& in, const CsvOptions& options = {});
CsvTable read_csv(const std::string& path, const CsvOptions& options = {});

InformationSystem to_information_system(const CsvTable& table);
DecisionSystem to_decision_system(const CsvTable& table, std::string_view decision_column);

InformationSystem load_information_system(const std::string& path, const CsvOptions& options = {});
DecisionSystem load_decision_system(const std::string& path, std::string_view decision_column,
                                    const CsvOptions& options = {});

struct DiscretizeSpec {
  std::string column;
  int bins = 1;
};

/// Parses "col:bins,col:bins".
std::vector<DiscretizeSpec> parse_discretize_specs(std::string_view text);

/// Equal-frequency binning of numeric columns into labels B0..B{bins-1}.
/// A value's bin is floor(rank * bins / n) of its lowest sorted rank, so tied
/// values always share the lower bin.
InformationSystem discretize(const InformationSystem& system, std::span<const std::string> columns,
                             int bins);
InformationSystem discretize(const InformationSystem& system, std::span<const DiscretizeSpec> specs);
DecisionSystem discretize(const DecisionSystem& system, std::span<const DiscretizeSpec> specs);

/// Dis(x, y) = {f in F : f(x) != f(y)}.
FeatureSet dis(ObjectId x, ObjectId y, const InformationSystem& system);
std::size_t dis_count(std::span<const int> a, std::span<const int> b);

/// |F \ Dis(x, y)| / |F|.
Degree ind_fraction(ObjectId x, ObjectId y, const InformationSystem& system);
Degree ind_fraction(std::span<const int> a, std::span<const int> b);
Rational ind_fraction_exact(ObjectId x, ObjectId y, const InformationSystem& system);

}  // namespace mereoml
