#include "mereoml/synthesis_net.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>

#include <nlohmann/json.hpp>

#include "mereoml/error.hpp"

namespace mereoml {

namespace {

void check_agent(const Agent& a) {
  if (a.features.empty()) throw WiringError("agent '" + a.id + "' has no features");
  std::set<std::string> seen;
  for (const auto& f : a.features) {
    if (!seen.insert(f).second) throw WiringError("agent '" + a.id + "' repeats feature '" + f + "'");
  }
  if (a.targets.empty()) throw WiringError("agent '" + a.id + "' has no targets");
  for (const auto& t : a.targets) {
    if (t.size() != a.features.size()) throw WiringError("agent '" + a.id + "' has a target of the wrong width");
  }
  if (a.weights.size() != a.features.size()) throw WiringError("agent '" + a.id + "' has the wrong number of weights");
}

/// Every combination of one target per producer, first producer slowest.
std::vector<std::vector<const Tuple*>> target_products(std::span<const Agent> producers) {
  std::vector<std::vector<const Tuple*>> out{{}};
  for (const auto& p : producers) {
    std::vector<std::vector<const Tuple*>> next;
    next.reserve(out.size() * p.targets.size());
    for (const auto& prefix : out) {
      for (const auto& t : p.targets) {
        auto combo = prefix;
        combo.push_back(&t);
        next.push_back(std::move(combo));
      }
    }
    out = std::move(next);
  }
  return out;
}

Tuple fuse_pointers(const Agent& consumer, std::span<const Agent> producers, const std::vector<const Tuple*>& parts) {
  std::vector<Tuple> values;
  values.reserve(parts.size());
  for (const auto* p : parts) values.push_back(*p);
  return fuse_entities(consumer, producers, values);
}

}  // namespace

Agent Agent::make(std::string id, std::vector<std::string> features, std::vector<Tuple> targets) {
  if (features.empty()) throw WiringError("agent '" + id + "' has no features");
  auto weights = FeatureWeights::uniform(features.size());
  return make(std::move(id), std::move(features), std::move(targets), std::move(weights));
}

Agent Agent::make(std::string id, std::vector<std::string> features, std::vector<Tuple> targets,
                  FeatureWeights weights) {
  Agent a{std::move(id), std::move(features), std::move(targets), std::move(weights)};
  check_agent(a);
  return a;
}

Degree agent_degree(const Agent& agent, const Tuple& a, const Tuple& b) {
  if (a.size() != agent.features.size() || b.size() != agent.features.size()) {
    throw PreconditionError("entity width differs from agent '" + agent.id + "'");
  }
  double distance = 0.0;
  for (std::size_t f = 0; f < a.size(); ++f) {
    if (a[f] != b[f]) distance += agent.weights[f];
  }
  return std::exp(-distance * distance);
}

Tuple fuse_entities(const Agent& consumer, std::span<const Agent> producers, std::span<const Tuple> parts) {
  if (parts.size() != producers.size()) {
    throw WiringError("agent '" + consumer.id + "' expects " + std::to_string(producers.size()) + " parts, got " +
                      std::to_string(parts.size()));
  }
  std::map<std::string, const std::string*> owner;
  for (std::size_t p = 0; p < producers.size(); ++p) {
    if (parts[p].size() != producers[p].features.size()) {
      throw WiringError("part " + std::to_string(p) + " does not match producer '" + producers[p].id + "'");
    }
    for (std::size_t f = 0; f < parts[p].size(); ++f) {
      if (!owner.emplace(producers[p].features[f], &parts[p][f]).second) {
        throw WiringError("feature '" + producers[p].features[f] + "' is owned by two producers");
      }
    }
  }
  if (owner.size() != consumer.features.size()) {
    throw WiringError("agent '" + consumer.id + "' features are not the union of its producers' features");
  }
  Tuple out;
  out.reserve(consumer.features.size());
  for (const auto& f : consumer.features) {
    const auto it = owner.find(f);
    if (it == owner.end()) throw WiringError("no producer of agent '" + consumer.id + "' owns feature '" + f + "'");
    out.push_back(*it->second);
  }
  return out;
}

Degree fuse_degrees(Degree r_b, Degree r_c) { return t_lukasiewicz(r_b, r_c); }

InformationSystem product_system(const InformationSystem& b, const InformationSystem& c) {
  auto features = b.features();
  for (const auto& f : c.features()) {
    if (b.feature_index(f)) throw WiringError("feature '" + f + "' appears in both factors");
    features.push_back(f);
  }
  const auto rows_b = b.tokens();
  const auto rows_c = c.tokens();
  std::vector<std::vector<std::string>> rows;
  rows.reserve(rows_b.size() * rows_c.size());
  for (const auto& rb : rows_b) {
    for (const auto& rc : rows_c) {
      auto row = rb;
      row.insert(row.end(), rc.begin(), rc.end());
      rows.push_back(std::move(row));
    }
  }
  return InformationSystem(std::move(features), rows);
}

Granule fuse_granules(const Granule& g_b, const Granule& g_c, const InformationSystem& c) {
  const auto nc = static_cast<ObjectId>(c.num_objects());
  Granule out;
  out.center = g_b.center * nc + g_c.center;
  out.radius = fuse_degrees(g_b.radius, g_c.radius);
  out.members.reserve(g_b.members.size() * g_c.members.size());
  for (const auto xb : g_b.members) {
    for (const auto xc : g_c.members) out.members.push_back(xb * nc + xc);
  }
  return out;
}

Formula fuse_formulas(const Formula& phi_b, const Formula& phi_c) { return Formula::conjunction(phi_b, phi_c); }

TargetChoice classify_to_target(const Agent& agent, const Tuple& entity) {
  TargetChoice best{0, -1.0};
  for (std::size_t i = 0; i < agent.targets.size(); ++i) {
    const Degree d = agent_degree(agent, entity, agent.targets[i]);
    if (d > best.degree) best = {i, d};
  }
  return best;
}

Network::Network(std::vector<std::vector<Node>> layers) : layers_(std::move(layers)) {
  if (layers_.empty()) throw WiringError("network has no layers");
  std::set<std::string> ids;
  for (std::size_t i = 0; i < layers_.size(); ++i) {
    if (layers_[i].empty()) throw WiringError("layer " + std::to_string(i) + " is empty");
    for (std::size_t k = 0; k < layers_[i].size(); ++k) {
      auto& node = layers_[i][k];
      if (!ids.insert(node.agent.id).second) throw WiringError("agent id '" + node.agent.id + "' is repeated");
      if (i == 0) {
        if (!node.producers.empty()) throw WiringError("input agent '" + node.agent.id + "' has producers");
        check_agent(node.agent);
        continue;
      }
      if (node.producers.empty()) throw WiringError("agent '" + node.agent.id + "' has no producers");
      std::set<std::size_t> distinct(node.producers.begin(), node.producers.end());
      if (distinct.size() != node.producers.size()) {
        throw WiringError("agent '" + node.agent.id + "' lists a producer twice");
      }
      for (const auto p : node.producers) {
        if (p >= layers_[i - 1].size()) throw WiringError("agent '" + node.agent.id + "' names a missing producer");
      }
      const auto producers = producers_of(i, k);
      if (node.agent.features.empty()) {
        for (const auto& p : producers) {
          node.agent.features.insert(node.agent.features.end(), p.features.begin(), p.features.end());
        }
      }
      if (node.agent.features.empty()) throw WiringError("agent '" + node.agent.id + "' has no features");
      node.agent.weights = FeatureWeights::uniform(node.agent.features.size());

      std::vector<Tuple> fused;
      for (const auto& combo : target_products(producers)) fused.push_back(fuse_pointers(node.agent, producers, combo));
      if (node.agent.targets.empty()) {
        node.agent.targets = std::move(fused);
      } else {
        for (const auto& t : fused) {
          if (std::find(node.agent.targets.begin(), node.agent.targets.end(), t) == node.agent.targets.end()) {
            throw WiringError("agent '" + node.agent.id + "' lacks a fusion of its producers' targets");
          }
        }
      }
      check_agent(node.agent);
    }
  }
  if (layers_.back().size() != 1) throw WiringError("the output layer must hold exactly one agent");
}

std::vector<Agent> Network::producers_of(std::size_t layer, std::size_t index) const {
  std::vector<Agent> out;
  if (layer == 0) return out;
  for (const auto p : layers_.at(layer).at(index).producers) out.push_back(layers_[layer - 1].at(p).agent);
  return out;
}

Network parse_network(std::istream& in) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("network file is not valid JSON: ") + e.what(), e.byte);
  }
  try {
    const auto& layers = doc.at("layers");
    if (!layers.is_array()) throw WiringError("'layers' must be an array");
    std::vector<std::vector<Network::Node>> nodes;
    for (std::size_t i = 0; i < layers.size(); ++i) {
      std::vector<Network::Node> layer;
      for (const auto& a : layers[i]) {
        Network::Node node;
        node.agent.id = a.at("id").get<std::string>();
        node.agent.features = a.value("features", std::vector<std::string>{});
        node.agent.targets = a.value("targets", std::vector<Tuple>{});
        if (a.contains("weights")) {
          node.agent.weights = FeatureWeights(a.at("weights").get<std::vector<double>>());
        } else if (!node.agent.features.empty()) {
          node.agent.weights = FeatureWeights::uniform(node.agent.features.size());
        }
        if (i > 0) {
          if (a.contains("producers")) {
            for (const auto& name : a.at("producers")) {
              const auto id = name.get<std::string>();
              const auto& prev = nodes[i - 1];
              const auto it = std::find_if(prev.begin(), prev.end(),
                                           [&](const Network::Node& n) { return n.agent.id == id; });
              if (it == prev.end()) throw WiringError("agent '" + node.agent.id + "' names unknown producer '" + id + "'");
              node.producers.push_back(static_cast<std::size_t>(it - prev.begin()));
            }
          } else {
            for (std::size_t p = 0; p < nodes[i - 1].size(); ++p) node.producers.push_back(p);
          }
        } else if (a.contains("producers") && !a.at("producers").empty()) {
          throw WiringError("input agent '" + node.agent.id + "' has producers");
        }
        layer.push_back(std::move(node));
      }
      nodes.push_back(std::move(layer));
    }
    return Network(std::move(nodes));
  } catch (const nlohmann::json::exception& e) {
    throw WiringError(std::string("malformed network file: ") + e.what());
  }
}

Network load_network(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError(DataError::Kind::Io, "cannot open network file '" + path + "'");
  return parse_network(in);
}

bool DegreeTrace::lukasiewicz_bounds_hold() const {
  for (const auto& layer : layers) {
    for (const auto& step : layer) {
      if (!step.meets_lukasiewicz_bound) return false;
    }
  }
  return true;
}

DegreeTrace propagate(const Network& network, std::span<const Tuple> inputs) {
  const auto& layers = network.layers();
  if (inputs.size() != layers.front().size()) {
    throw WiringError("network takes " + std::to_string(layers.front().size()) + " inputs, got " +
                      std::to_string(inputs.size()));
  }
  DegreeTrace trace;
  std::vector<Tuple> entities(inputs.begin(), inputs.end());
  for (std::size_t i = 0; i < layers.size(); ++i) {
    std::vector<TraceStep> steps;
    std::vector<Tuple> next;
    for (std::size_t k = 0; k < layers[i].size(); ++k) {
      const auto& node = layers[i][k];
      TraceStep step;
      step.agent = node.agent.id;
      if (i == 0) {
        step.entity = entities[k];
      } else {
        const auto producers = network.producers_of(i, k);
        std::vector<Tuple> parts;
        step.lukasiewicz_bound = 1.0;
        for (const auto p : node.producers) {
          parts.push_back(entities[p]);
          const Degree r = trace.layers[i - 1][p].degree;
          step.lukasiewicz_bound = fuse_degrees(step.lukasiewicz_bound, r);
          step.max_bound = std::max(step.max_bound, r);
        }
        step.entity = fuse_entities(node.agent, producers, parts);
      }
      const auto choice = classify_to_target(node.agent, step.entity);
      step.target = choice.index;
      step.target_values = node.agent.targets[choice.index];
      step.degree = choice.degree;
      if (i > 0) {
        step.meets_lukasiewicz_bound = step.degree >= step.lukasiewicz_bound - kDegreeTolerance;
        step.meets_max_bound = step.degree >= step.max_bound - kDegreeTolerance;
      }
      next.push_back(step.entity);
      steps.push_back(std::move(step));
    }
    entities = std::move(next);
    trace.layers.push_back(std::move(steps));
  }
  return trace;
}

}  // namespace mereoml
