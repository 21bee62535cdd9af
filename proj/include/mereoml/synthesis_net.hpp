#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "mereoml/dataset.hpp"
#include "mereoml/formula.hpp"
#include "mereoml/granulation.hpp"
#include "mereoml/rough_inclusion.hpp"
#include "mereoml/types.hpp"

namespace mereoml {

/// Values of one entity, aligned with its agent's feature list.
using Tuple = std::vector<std::string>;

/// A granular agent: its own features, a nonempty target list and exponential
/// inclusion weights over its features.
struct Agent {
  std::string id;
  std::vector<std::string> features;
  std::vector<Tuple> targets;
  FeatureWeights weights = FeatureWeights::uniform(1);

  /// Uniform weights over `features`. Throws WiringError on empty targets,
  /// duplicate features or ragged target rows.
  static Agent make(std::string id, std::vector<std::string> features, std::vector<Tuple> targets);
  static Agent make(std::string id, std::vector<std::string> features, std::vector<Tuple> targets,
                    FeatureWeights weights);
};

/// exp(-(sum of weights over differing features)^2) on value tuples.
Degree agent_degree(const Agent& agent, const Tuple& a, const Tuple& b);

/// x_b x_c ...: one part per producer, laid out in the consumer's feature
/// order. Throws WiringError on an arity mismatch, overlapping producer
/// features or features the consumer does not carry.
Tuple fuse_entities(const Agent& consumer, std::span<const Agent> producers, std::span<const Tuple> parts);

/// L(r_b, r_c).
Degree fuse_degrees(Degree r_b, Degree r_c);

/// Cartesian product of two systems over disjoint features. Object
/// i * |U_c| + j is the concatenation of b-object i and c-object j.
InformationSystem product_system(const InformationSystem& b, const InformationSystem& c);

/// {x_b x_c : x_b in g_b, x_c in g_c} over product_system(b, c), centered at
/// the fused centers with radius L(r_b, r_c).
Granule fuse_granules(const Granule& g_b, const Granule& g_c, const InformationSystem& c);

/// phi_b & phi_c.
Formula fuse_formulas(const Formula& phi_b, const Formula& phi_c);

struct TargetChoice {
  std::size_t index = 0;
  Degree degree = 0.0;
};

/// Nearest target by the agent's exponential inclusion; ties go to the
/// lowest target index.
TargetChoice classify_to_target(const Agent& agent, const Tuple& entity);

/// Layered agents. Each consumer of layer i+1 lists producers in layer i;
/// its features are the concatenation of its producers' features.
class Network {
 public:
  struct Node {
    Agent agent;
    /// Indices into the previous layer; empty on layer 0.
    std::vector<std::size_t> producers;
  };

  /// Validates the coordination rules and throws WiringError on violation.
  /// A consumer without targets gets the Cartesian product of its producers'
  /// targets; explicit consumer targets must contain every such fusion.
  /// Consumer weights are reset to uniform over the consumer's features.
  explicit Network(std::vector<std::vector<Node>> layers);

  const std::vector<std::vector<Node>>& layers() const noexcept { return layers_; }
  std::size_t depth() const noexcept { return layers_.size(); }
  const Agent& output() const { return layers_.back().front().agent; }

  /// Producers of (layer, index) as agents.
  std::vector<Agent> producers_of(std::size_t layer, std::size_t index) const;

 private:
  std::vector<std::vector<Node>> layers_;
};

/// Unfilled producer lists mean "every agent of the previous layer".
///
/// {"layers": [[{"id": "a", "features": ["f"], "targets": [["0"]],
///               "weights": [1.0], "producers": ["x"]}, ...], ...]}
Network parse_network(std::istream& in);
Network load_network(const std::string& path);

struct TraceStep {
  std::string agent;
  Tuple entity;
  std::size_t target = 0;
  Tuple target_values;
  Degree degree = 0.0;
  /// Fold of L over the producers' degrees, and their max; 0 on layer 0.
  Degree lukasiewicz_bound = 0.0;
  Degree max_bound = 0.0;
  bool meets_lukasiewicz_bound = true;
  bool meets_max_bound = true;
};

struct DegreeTrace {
  std::vector<std::vector<TraceStep>> layers;

  const TraceStep& output() const { return layers.back().front(); }
  /// Every consumer reached at least L of its producers' degrees.
  bool lukasiewicz_bounds_hold() const;
};

/// Classifies every layer-0 input to its nearest target and pushes the
/// fused entities forward, classifying again at each layer. Entities travel
/// unchanged between agents.
DegreeTrace propagate(const Network& network, std::span<const Tuple> inputs);

}  // namespace mereoml
