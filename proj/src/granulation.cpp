#include "mereoml/granulation.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <random>
#include <tuple>

#include "mereoml/error.hpp"

namespace mereoml {

namespace {

/// Pairwise rs*(y, x) for all objects, row-major by y.
class DegreeMatrix {
 public:
  DegreeMatrix(const RoughInclusion& inclusion, const InformationSystem& system) : n_(system.num_objects()) {
    degrees_.resize(n_ * n_);
    for (ObjectId y = 0; y < n_; ++y) {
      for (ObjectId x = 0; x < n_; ++x) degrees_[y * n_ + x] = inclusion.degree(y, x, system);
    }
  }

  Granule granule(ObjectId center, Degree radius) const {
    Granule g{center, radius, {}};
    for (ObjectId y = 0; y < n_; ++y) {
      if (degrees_[y * n_ + center] >= radius - kDegreeTolerance) g.members.push_back(y);
    }
    return g;
  }

  std::vector<Granule> all(Degree radius) const {
    std::vector<Granule> out;
    out.reserve(n_);
    for (ObjectId x = 0; x < n_; ++x) out.push_back(granule(x, radius));
    return out;
  }

 private:
  std::size_t n_;
  std::vector<Degree> degrees_;
};

int vote(const std::vector<int>& counts) {
  // max_element returns the first maximum, i.e. the lowest code.
  return static_cast<int>(std::max_element(counts.begin(), counts.end()) - counts.begin());
}

}  // namespace

bool Granule::contains(ObjectId y) const { return std::binary_search(members.begin(), members.end(), y); }

Granule granule(ObjectId center, Degree radius, const RoughInclusion& inclusion, const InformationSystem& system) {
  if (radius < 0.0 || radius > 1.0) throw PreconditionError("granule radius must lie in [0, 1]");
  Granule g{center, radius, {}};
  for (ObjectId y = 0; y < system.num_objects(); ++y) {
    if (inclusion.holds(y, center, radius, system)) g.members.push_back(y);
  }
  return g;
}

std::vector<Degree> radius_grid(std::size_t num_features) {
  if (num_features == 0) throw PreconditionError("radius grid needs at least one feature");
  std::vector<Degree> grid;
  for (std::size_t k = 1; k <= num_features; ++k) {
    grid.push_back(static_cast<double>(k) / static_cast<double>(num_features));
  }
  return grid;
}

std::vector<Granule> all_granules(Degree radius, const RoughInclusion& inclusion, const InformationSystem& system) {
  if (radius < 0.0 || radius > 1.0) throw PreconditionError("granule radius must lie in [0, 1]");
  return DegreeMatrix(inclusion, system).all(radius);
}

bool Covering::covers_universe() const {
  std::vector<char> covered(universe_size, 0);
  for (const auto& g : granules) {
    for (const auto y : g.members) covered.at(y) = 1;
  }
  return std::all_of(covered.begin(), covered.end(), [](char c) { return c != 0; });
}

bool Covering::is_irreducible() const {
  std::vector<int> count(universe_size, 0);
  for (const auto& g : granules) {
    for (const auto y : g.members) ++count.at(y);
  }
  return std::all_of(granules.begin(), granules.end(), [&](const Granule& g) {
    return std::any_of(g.members.begin(), g.members.end(), [&](ObjectId y) { return count[y] == 1; });
  });
}

Covering irreducible_covering(std::span<const Granule> granules, std::size_t universe_size) {
  std::vector<char> covered(universe_size, 0);
  std::size_t remaining = universe_size;

  // (gain, size, -center, -index): lexicographically largest is selected.
  using Key = std::tuple<std::size_t, std::size_t, std::int64_t, std::int64_t>;
  auto key_of = [&](std::size_t i, std::size_t gain) {
    return Key{gain, granules[i].members.size(), -static_cast<std::int64_t>(granules[i].center),
               -static_cast<std::int64_t>(i)};
  };
  std::priority_queue<Key> queue;
  for (std::size_t i = 0; i < granules.size(); ++i) {
    for (const auto y : granules[i].members) {
      if (y >= universe_size) throw PreconditionError("granule member outside the universe");
    }
    queue.push(key_of(i, granules[i].members.size()));
  }

  std::vector<std::size_t> chosen;
  while (remaining > 0 && !queue.empty()) {
    const Key top = queue.top();
    queue.pop();
    const auto i = static_cast<std::size_t>(-std::get<3>(top));
    std::size_t gain = 0;
    for (const auto y : granules[i].members) gain += covered[y] ? 0 : 1;
    if (gain == 0) continue;
    const Key fresh = key_of(i, gain);
    if (!queue.empty() && fresh < queue.top()) {
      queue.push(fresh);
      continue;
    }
    chosen.push_back(i);
    for (const auto y : granules[i].members) {
      if (!covered[y]) {
        covered[y] = 1;
        --remaining;
      }
    }
  }
  if (remaining > 0) throw PreconditionError("granules do not cover the universe");

  std::vector<int> count(universe_size, 0);
  for (const auto i : chosen) {
    for (const auto y : granules[i].members) ++count[y];
  }
  std::vector<char> keep(chosen.size(), 1);
  for (std::size_t k = chosen.size(); k-- > 0;) {
    const auto& members = granules[chosen[k]].members;
    const bool redundant = std::all_of(members.begin(), members.end(), [&](ObjectId y) { return count[y] >= 2; });
    if (redundant) {
      keep[k] = 0;
      for (const auto y : members) --count[y];
    }
  }

  Covering out;
  out.universe_size = universe_size;
  for (std::size_t k = 0; k < chosen.size(); ++k) {
    if (keep[k]) out.granules.push_back(granules[chosen[k]]);
  }
  return out;
}

GranularReflection granular_mirror(const Covering& covering, const DecisionSystem& system, VotingStrategy strategy) {
  const auto& table = system.conditions();
  GranularReflection out;
  out.covering = covering;
  out.strategy = strategy;
  for (const auto& g : covering.granules) {
    if (g.members.empty()) throw PreconditionError("cannot mirror an empty granule");
    std::vector<int> row(table.num_features());
    for (std::size_t f = 0; f < table.num_features(); ++f) {
      std::vector<int> counts(table.domain(f).size(), 0);
      for (const auto y : g.members) ++counts[static_cast<std::size_t>(table.code(y, f))];
      row[f] = vote(counts);
    }
    std::vector<int> counts(system.decision_values().size(), 0);
    for (const auto y : g.members) ++counts[static_cast<std::size_t>(system.decision(y))];
    out.rows.push_back(std::move(row));
    out.decisions.push_back(vote(counts));
  }
  return out;
}

int classify(const GranularReflection& reflection, std::span<const int> row) {
  if (reflection.rows.empty()) throw PreconditionError("cannot classify with an empty reflection");
  std::size_t best = 0;
  std::vector<std::size_t> tied;
  for (std::size_t i = 0; i < reflection.rows.size(); ++i) {
    const auto& mirrored = reflection.rows[i];
    if (mirrored.size() != row.size()) throw PreconditionError("row width differs from the reflection");
    const std::size_t agree = row.size() - dis_count(mirrored, row);
    if (tied.empty() || agree > best) {
      best = agree;
      tied.assign(1, i);
    } else if (agree == best) {
      tied.push_back(i);
    }
  }
  std::map<int, std::size_t> votes;
  for (const auto i : tied) ++votes[reflection.decisions[i]];
  std::size_t top = 0;
  for (const auto& [decision, n] : votes) top = std::max(top, n);
  for (const auto i : tied) {
    if (votes[reflection.decisions[i]] == top) return reflection.decisions[i];
  }
  return reflection.decisions[tied.front()];
}

const RadiusResult& DeciderReport::best() const {
  for (const auto& r : per_radius) {
    if (r.radius == best_radius) return r;
  }
  throw PreconditionError("report has no result for its best radius");
}

std::vector<std::size_t> stratified_folds(const DecisionSystem& system, std::size_t folds, std::uint64_t seed) {
  if (folds < 2) throw FoldError("cross-validation needs at least 2 folds");
  const std::size_t n = system.num_objects();
  if (folds > n) {
    throw FoldError("cannot split " + std::to_string(n) + " objects into " + std::to_string(folds) + " folds");
  }
  std::mt19937_64 rng(seed);
  std::vector<std::size_t> fold_of(n, 0);
  std::size_t dealt = 0;
  for (int d = 0; d < static_cast<int>(system.decision_values().size()); ++d) {
    std::vector<ObjectId> members;
    for (ObjectId x = 0; x < n; ++x) {
      if (system.decision(x) == d) members.push_back(x);
    }
    std::shuffle(members.begin(), members.end(), rng);
    for (const auto x : members) fold_of[x] = dealt++ % folds;
  }
  return fold_of;
}

DeciderReport run_decider(const DecisionSystem& system, const DeciderOptions& options) {
  const auto fold_of = stratified_folds(system, options.folds, options.seed);
  const auto radii = options.radii.empty() ? radius_grid(system.num_features()) : options.radii;
  for (const auto r : radii) {
    if (r < 0.0 || r > 1.0) throw PreconditionError("radius outside [0, 1]");
  }

  std::vector<std::size_t> correct(radii.size(), 0);
  std::vector<std::size_t> answered(radii.size(), 0);
  std::vector<double> granule_sum(radii.size(), 0.0);
  std::vector<double> reduction_sum(radii.size(), 0.0);

  for (std::size_t fold = 0; fold < options.folds; ++fold) {
    std::vector<ObjectId> train;
    std::vector<ObjectId> test;
    for (ObjectId x = 0; x < system.num_objects(); ++x) (fold_of[x] == fold ? test : train).push_back(x);
    if (train.empty() || test.empty()) throw FoldError("fold " + std::to_string(fold) + " is empty");

    const auto training = system.select(train);
    const DegreeMatrix degrees(options.inclusion, training.conditions());
    for (std::size_t k = 0; k < radii.size(); ++k) {
      const auto granules = degrees.all(radii[k]);
      const auto reflection = granular_mirror(irreducible_covering(granules, train.size()), training);
      for (const auto x : test) {
        ++answered[k];
        if (classify(reflection, system.conditions().row(x)) == system.decision(x)) ++correct[k];
      }
      granule_sum[k] += static_cast<double>(reflection.size());
      reduction_sum[k] += static_cast<double>(reflection.size()) / static_cast<double>(train.size());
    }
  }

  DeciderReport report;
  report.inclusion = options.inclusion.name();
  report.folds = options.folds;
  report.seed = options.seed;
  report.objects = system.num_objects();
  const double n = static_cast<double>(system.num_objects());
  const double folds = static_cast<double>(options.folds);
  for (std::size_t k = 0; k < radii.size(); ++k) {
    report.per_radius.push_back({radii[k], static_cast<double>(correct[k]) / n,
                                 static_cast<double>(answered[k]) / n, granule_sum[k] / folds,
                                 reduction_sum[k] / folds});
  }
  const auto best = std::min_element(report.per_radius.begin(), report.per_radius.end(),
                                     [](const RadiusResult& a, const RadiusResult& b) {
                                       return std::tuple(-a.accuracy, a.granules, a.radius) <
                                              std::tuple(-b.accuracy, b.granules, b.radius);
                                     });
  report.best_radius = best->radius;
  return report;
}

GranularReflection granulate(const DecisionSystem& system, Degree radius, const RoughInclusion& inclusion) {
  const auto granules = all_granules(radius, inclusion, system.conditions());
  return granular_mirror(irreducible_covering(granules, system.num_objects()), system);
}

}  // namespace mereoml
