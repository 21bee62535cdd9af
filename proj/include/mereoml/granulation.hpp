#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mereoml/dataset.hpp"
#include "mereoml/rough_inclusion.hpp"
#include "mereoml/types.hpp"

namespace mereoml {

/// g(center, radius) = {y : rs*(y, center) >= radius}, members ascending.
struct Granule {
  ObjectId center = 0;
  Degree radius = 0.0;
  std::vector<ObjectId> members;

  bool contains(ObjectId y) const;
};

Granule granule(ObjectId center, Degree radius, const RoughInclusion& inclusion, const InformationSystem& system);

/// {1/|F|, 2/|F|, ..., 1}.
std::vector<Degree> radius_grid(std::size_t num_features);

/// One granule per object, in object order.
std::vector<Granule> all_granules(Degree radius, const RoughInclusion& inclusion, const InformationSystem& system);

struct Covering {
  std::vector<Granule> granules;
  std::size_t universe_size = 0;

  bool covers_universe() const;
  /// No granule can be dropped without uncovering some object.
  bool is_irreducible() const;
};

/// Greedy cover (largest number of still-uncovered members first; ties by
/// larger granule, then lower center id) followed by a reverse pass dropping
/// granules whose members are all covered elsewhere.
Covering irreducible_covering(std::span<const Granule> granules, std::size_t universe_size);

enum class VotingStrategy { MajorityVote };

/// Covering granules with majority-voted values for every f in F u {d}.
/// Vote ties go to the lowest code, i.e. the first token in ascending order.
struct GranularReflection {
  Covering covering;
  VotingStrategy strategy = VotingStrategy::MajorityVote;
  std::vector<std::vector<int>> rows;  // one per granule, conditional codes
  std::vector<int> decisions;          // one per granule

  std::size_t size() const noexcept { return rows.size(); }
};

GranularReflection granular_mirror(const Covering& covering, const DecisionSystem& system,
                                   VotingStrategy strategy = VotingStrategy::MajorityVote);

/// Decision of the mirrored row with the highest ind_fraction to `row`. Ties
/// go to the majority decision among the tied rows, then to the lowest
/// granule index.
int classify(const GranularReflection& reflection, std::span<const int> row);

struct RadiusResult {
  Degree radius = 0.0;
  double accuracy = 0.0;
  double coverage = 0.0;
  double granules = 0.0;   // mean covering size over folds
  double reduction = 0.0;  // mean |C| / |U_train| over folds
};

struct DeciderReport {
  std::string inclusion;
  std::size_t folds = 0;
  std::uint64_t seed = 0;
  std::size_t objects = 0;
  std::vector<RadiusResult> per_radius;
  Degree best_radius = 0.0;

  const RadiusResult& best() const;
};

struct DeciderOptions {
  std::size_t folds = 5;
  std::uint64_t seed = 0;
  /// Empty means the full grid {1/|F|, ..., 1}.
  std::vector<Degree> radii;
  RoughInclusion inclusion = RoughInclusion::lukasiewicz();
};

/// Stratified k-fold assignment: each decision class is shuffled with the
/// seeded generator and dealt round-robin. Returns the fold of each object.
std::vector<std::size_t> stratified_folds(const DecisionSystem& system, std::size_t folds, std::uint64_t seed);

/// Granular decider evaluated by stratified cross-validation; granulation is
/// built from the training part of each fold only. Accuracy is pooled over
/// all held-out objects. The best radius maximizes accuracy, ties to the
/// smaller covering and then to the smaller radius.
DeciderReport run_decider(const DecisionSystem& system, const DeciderOptions& options);

/// Builds the reflection of a whole decision system at one radius.
GranularReflection granulate(const DecisionSystem& system, Degree radius, const RoughInclusion& inclusion);

}  // namespace mereoml
