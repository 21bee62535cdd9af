// Command-line front end: one subcommand per pipeline, JSON on stdout,
// diagnostics on stderr. Exit 0 on success, 1 on usage errors, 2 on data errors.

#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "CLI11.hpp"
#include "mereoml/dataset.hpp"
#include "mereoml/error.hpp"
#include "mereoml/formation.hpp"
#include "mereoml/formula.hpp"
#include "mereoml/granulation.hpp"
#include "mereoml/intensional_logic.hpp"
#include "mereoml/navigation.hpp"
#include "mereoml/rough_inclusion.hpp"
#include "mereoml/synthesis_net.hpp"

using nlohmann::json;
using namespace mereoml;

namespace {

constexpr int kUsageError = 1;
constexpr int kDataError = 2;

/// Thrown for argument values CLI11 cannot validate on its own.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct TableArgs {
  std::string csv;
  std::string decision;
  std::optional<std::string> na_token;
  std::string discretize;

  void add_to(CLI::App* cmd, bool decision_required) {
    cmd->add_option("csv", csv, "CSV decision table with a header row")->required();
    auto* d = cmd->add_option("--decision", decision, "Decision column");
    if (decision_required) d->required();
    cmd->add_option("--na-token", na_token, "Cell token to keep as a missing value instead of rejecting it");
    cmd->add_option("--discretize", discretize, "Equal-frequency binning, e.g. A2:5,A3:5");
  }

  CsvOptions csv_options() const { return {na_token}; }

  DecisionSystem decision_system() const {
    auto system = load_decision_system(csv, decision, csv_options());
    if (discretize.empty()) return system;
    const auto specs = parse_discretize_specs(discretize);
    return mereoml::discretize(system, specs);
  }

  InformationSystem information_system() const {
    auto system = load_information_system(csv, csv_options());
    if (discretize.empty()) return system;
    const auto specs = parse_discretize_specs(discretize);
    return mereoml::discretize(system, specs);
  }
};

RoughInclusion make_inclusion(const std::string& name, std::size_t features) {
  if (name == "lukasiewicz") return RoughInclusion::lukasiewicz();
  if (name == "exp") return RoughInclusion::exponential(features);
  throw UsageError("unknown inclusion '" + name + "' (expected lukasiewicz or exp)");
}

std::vector<Degree> parse_radii(const std::string& text) {
  std::vector<Degree> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      const double r = std::stod(item, &used);
      if (used != item.size() || r < 0.0 || r > 1.0) throw std::invalid_argument(item);
      out.push_back(r);
    } catch (const std::logic_error&) {
      throw UsageError("radius '" + item + "' is not a number in [0, 1]");
    }
  }
  return out;
}

void emit(const json& doc) { std::cout << doc.dump(2) << '\n'; }

json load_report(const TableArgs& args) {
  json doc;
  if (args.decision.empty()) {
    const auto system = args.information_system();
    doc["objects"] = system.num_objects();
    doc["features"] = json::array();
    for (std::size_t f = 0; f < system.num_features(); ++f) {
      doc["features"].push_back({{"name", system.features()[f]}, {"values", system.domain(f).size()}});
    }
    return doc;
  }
  const auto system = args.decision_system();
  const auto& table = system.conditions();
  doc["objects"] = system.num_objects();
  doc["features"] = json::array();
  for (std::size_t f = 0; f < table.num_features(); ++f) {
    doc["features"].push_back({{"name", table.features()[f]}, {"values", table.domain(f).size()}});
  }
  json classes = json::object();
  std::vector<std::size_t> counts(system.decision_values().size(), 0);
  for (const int d : system.decisions()) ++counts[static_cast<std::size_t>(d)];
  for (std::size_t d = 0; d < counts.size(); ++d) classes[system.decision_values()[d]] = counts[d];
  doc["decision"] = {{"name", system.decision_name()}, {"classes", classes}};
  return doc;
}

json decider_json(const DeciderReport& report) {
  json doc;
  doc["inclusion"] = report.inclusion;
  doc["folds"] = report.folds;
  doc["seed"] = report.seed;
  doc["objects"] = report.objects;
  doc["per_radius"] = json::array();
  for (const auto& r : report.per_radius) {
    doc["per_radius"].push_back({{"radius", r.radius},
                                 {"accuracy", r.accuracy},
                                 {"coverage", r.coverage},
                                 {"granules", r.granules},
                                 {"reduction", r.reduction}});
  }
  doc["best_radius"] = report.best_radius;
  return doc;
}

void write_reflection_csv(std::ostream& out, const GranularReflection& reflection, const DecisionSystem& system) {
  const auto& table = system.conditions();
  out << "granule,center,size";
  for (const auto& f : table.features()) out << ',' << f;
  out << ',' << system.decision_name() << '\n';
  for (std::size_t g = 0; g < reflection.size(); ++g) {
    const auto& granule = reflection.covering.granules[g];
    out << g << ',' << granule.center << ',' << granule.members.size();
    for (std::size_t f = 0; f < table.num_features(); ++f) {
      out << ',' << table.domain(f)[static_cast<std::size_t>(reflection.rows[g][f])];
    }
    out << ',' << system.decision_values()[static_cast<std::size_t>(reflection.decisions[g])] << '\n';
  }
}

std::string rational_text(const Rational& r) {
  return r.denominator() == 1 ? std::to_string(r.numerator())
                              : std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

Tuple split_row(const std::string& text) {
  Tuple out;
  std::stringstream in(text);
  std::string cell;
  while (std::getline(in, cell, ',')) out.push_back(cell);
  if (!text.empty() && text.back() == ',') out.emplace_back();
  return out;
}

json tuple_json(const Tuple& t) { return json(t); }

json trace_json(const DegreeTrace& trace) {
  json doc;
  doc["layers"] = json::array();
  for (const auto& layer : trace.layers) {
    json steps = json::array();
    for (const auto& s : layer) {
      json step{{"agent", s.agent},
                {"entity", tuple_json(s.entity)},
                {"target", s.target},
                {"target_values", tuple_json(s.target_values)},
                {"degree", s.degree}};
      if (&layer != &trace.layers.front()) {
        step["lukasiewicz_bound"] = s.lukasiewicz_bound;
        step["max_bound"] = s.max_bound;
        step["meets_lukasiewicz_bound"] = s.meets_lukasiewicz_bound;
        step["meets_max_bound"] = s.meets_max_bound;
      }
      steps.push_back(std::move(step));
    }
    doc["layers"].push_back(std::move(steps));
  }
  const auto& out = trace.output();
  doc["output"] = {{"agent", out.agent}, {"target", out.target}, {"target_values", tuple_json(out.target_values)},
                   {"degree", out.degree}};
  doc["lukasiewicz_bounds_hold"] = trace.lukasiewicz_bounds_hold();
  return doc;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError(DataError::Kind::Io, "cannot open '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw DataError(DataError::Kind::Io, "cannot write '" + path + "'");
  out << content;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rough mereology toolkit: granular classification, intensional logic, agent networks and "
               "formation navigation"};
  app.name("mereoml");
  app.require_subcommand(1);

  TableArgs load_args;
  auto* load = app.add_subcommand("load", "Load a CSV table and print its shape");
  load_args.add_to(load, false);

  TableArgs classify_args;
  std::string inclusion = "lukasiewicz";
  std::size_t folds = 5;
  std::uint64_t seed = 0;
  std::string radii;
  auto* classify_cmd = app.add_subcommand("classify", "Cross-validated granular decider");
  classify_args.add_to(classify_cmd, true);
  classify_cmd->add_option("--inclusion", inclusion, "lukasiewicz or exp")->capture_default_str();
  classify_cmd->add_option("--folds", folds, "Number of stratified folds")->capture_default_str();
  classify_cmd->add_option("--seed", seed, "Seed of the fold shuffle")->required();
  classify_cmd->add_option("--radii", radii, "Comma-separated radii; default is the full grid");

  TableArgs granulate_args;
  double radius = 1.0;
  std::string granulate_inclusion = "lukasiewicz";
  std::string granulate_out;
  auto* granulate_cmd = app.add_subcommand("granulate", "Granular reflection of a whole table as CSV");
  granulate_args.add_to(granulate_cmd, true);
  granulate_cmd->add_option("--radius", radius, "Granule radius in [0, 1]")->required()->check(CLI::Range(0.0, 1.0));
  granulate_cmd->add_option("--inclusion", granulate_inclusion, "lukasiewicz or exp")->capture_default_str();
  granulate_cmd->add_option("--out", granulate_out, "Output file; stdout when omitted");

  TableArgs logic_args;
  std::string granules_from = "1,lukasiewicz";
  std::string formula_text;
  std::string mode_name = "nul";
  auto* logic_cmd = app.add_subcommand("logic", "Evaluate a formula on the granules of a covering");
  logic_args.add_to(logic_cmd, true);
  logic_cmd->add_option("--granules-from", granules_from, "radius,inclusion of the covering")->capture_default_str();
  logic_cmd->add_option("--eval", formula_text, "Formula, e.g. \"A1=1 & A8=t -> A15=1\"")->required();
  logic_cmd->add_option("--mode", mode_name, "nu3 or nul")->capture_default_str()->check(CLI::IsMember({"nu3", "nul"}));

  std::string net_file;
  std::vector<std::string> net_inputs;
  auto* net_cmd = app.add_subcommand("net", "Propagate inputs through a network of granular agents");
  net_cmd->add_option("netfile", net_file, "Network JSON")->required();
  net_cmd->add_option("--input", net_inputs, "Comma-separated values, one per input agent")->required();

  std::string world_file;
  std::string formation_file;
  std::size_t steps = 1000;
  std::string traj_out;
  std::string svg_out;
  auto* sim_cmd = app.add_subcommand("sim", "Navigate a robot formation through a world");
  sim_cmd->add_option("world", world_file, "World description")->required();
  sim_cmd->add_option("formation", formation_file, "Formation script")->required();
  sim_cmd->add_option("--steps", steps, "Step budget")->capture_default_str();
  sim_cmd->add_option("--out", traj_out, "Trajectory CSV");
  sim_cmd->add_option("--svg", svg_out, "Trajectory SVG");

  if (argc <= 1) {
    std::cerr << app.help();
    return kUsageError;
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsageError;
  }

  try {
    if (*load) {
      emit(load_report(load_args));
    } else if (*classify_cmd) {
      const auto system = classify_args.decision_system();
      DeciderOptions options;
      options.folds = folds;
      options.seed = seed;
      options.radii = parse_radii(radii);
      options.inclusion = make_inclusion(inclusion, system.num_features());
      emit(decider_json(run_decider(system, options)));
    } else if (*granulate_cmd) {
      const auto system = granulate_args.decision_system();
      const auto reflection =
          granulate(system, radius, make_inclusion(granulate_inclusion, system.num_features()));
      std::ostringstream csv;
      write_reflection_csv(csv, reflection, system);
      if (granulate_out.empty()) {
        std::cout << csv.str();
      } else {
        write_file(granulate_out, csv.str());
      }
    } else if (*logic_cmd) {
      const auto comma = granules_from.find(',');
      if (comma == std::string::npos) throw UsageError("--granules-from expects radius,inclusion");
      const auto radius_list = parse_radii(granules_from.substr(0, comma));
      if (radius_list.size() != 1) throw UsageError("--granules-from expects a single radius");
      const auto system = logic_args.decision_system();
      const auto full = system.with_decision();
      const auto phi = parse_formula(formula_text, full, true);
      const auto covering = irreducible_covering(
          all_granules(radius_list.front(), make_inclusion(granules_from.substr(comma + 1), system.num_features()),
                       system.conditions()),
          system.num_objects());
      const auto granules = GranuleSet::from_covering(covering);
      const auto mode = mode_name == "nu3" ? NuMode::Nu3 : NuMode::NuL;
      json doc;
      doc["formula"] = to_string(phi);
      doc["mode"] = mode_name;
      doc["radius"] = radius_list.front();
      doc["granules"] = json::array();
      for (std::size_t g = 0; g < granules.size(); ++g) {
        const auto& set = granules.granules()[g];
        const auto degree = extension(set, phi, mode, full);
        doc["granules"].push_back({{"center", covering.granules[g].center},
                                   {"size", set.count()},
                                   {"degree", rational_text(degree)},
                                   {"degree_value", to_double(degree)},
                                   {"true", is_true_at(set, phi, full)},
                                   {"collapse", rational_text(collapse_value(set, phi, full))}});
      }
      doc["valid"] = is_valid(granules, phi, full);
      emit(doc);
    } else if (*net_cmd) {
      const auto network = load_network(net_file);
      std::vector<Tuple> inputs;
      for (const auto& text : net_inputs) inputs.push_back(split_row(text));
      emit(trace_json(propagate(network, inputs)));
    } else if (*sim_cmd) {
      const auto world = load_world(world_file);
      std::set<int> ids;
      for (const auto& [id, r] : world.robots) ids.insert(id);
      const auto formation = parse_formation(read_file(formation_file), ids);
      const auto log = navigate(world, formation, steps);
      if (!traj_out.empty()) {
        std::ostringstream csv;
        write_trajectory_csv(csv, log);
        write_file(traj_out, csv.str());
      }
      if (!svg_out.empty()) {
        std::ostringstream svg;
        write_trajectory_svg(svg, world, log);
        write_file(svg_out, svg.str());
      }
      const auto& last = log.final_frame();
      emit({{"status", to_string(log.status)},
            {"steps", last.step},
            {"final_violations", last.violations},
            {"obstacle_overlaps", obstacle_overlaps(world, log)},
            {"leader_potential", last.robots.front().potential}});
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kDataError;
  }
  return 0;
}
