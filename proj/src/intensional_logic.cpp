#include "mereoml/intensional_logic.hpp"

#include <algorithm>

#include "mereoml/error.hpp"

namespace mereoml {

namespace {

void require_same_universe(const ObjectSet& g, const InformationSystem& system) {
  if (g.size() != system.num_objects()) throw PreconditionError("granule and system universes differ");
}

}  // namespace

Rational nu(NuMode mode, const ObjectSet& x, const ObjectSet& y) {
  if (x.size() != y.size()) throw PreconditionError("nu needs sets over the same universe");
  if (x.is_subset_of(y)) return Rational(1);
  if (!x.intersects(y)) return Rational(0);
  if (mode == NuMode::Nu3) return Rational(1, 2);
  return Rational(static_cast<std::int64_t>((x & y).count()), static_cast<std::int64_t>(x.count()));
}

GranuleSet::GranuleSet(std::size_t universe_size, std::vector<ObjectSet> granules)
    : universe_size_(universe_size), granules_(std::move(granules)) {
  for (const auto& g : granules_) {
    if (g.size() != universe_size_) throw PreconditionError("granule over a different universe");
    if (g.none()) throw PreconditionError("granule sets exclude empty granules");
  }
}

GranuleSet GranuleSet::from_covering(const Covering& covering) {
  std::vector<ObjectSet> granules;
  for (const auto& g : covering.granules) granules.push_back(make_object_set(covering.universe_size, g.members));
  return GranuleSet(covering.universe_size, std::move(granules));
}

ObjectSet GranuleSet::union_of() const {
  ObjectSet out(universe_size_);
  for (const auto& g : granules_) out |= g;
  return out;
}

Rational extension(const ObjectSet& g, const Formula& phi, NuMode mode, const InformationSystem& system) {
  require_same_universe(g, system);
  return nu(mode, g, meaning(phi, system));
}

bool is_true_at(const ObjectSet& g, const Formula& phi, const InformationSystem& system) {
  require_same_universe(g, system);
  return g.is_subset_of(meaning(phi, system));
}

bool is_false_at(const ObjectSet& g, const Formula& phi, NuMode mode, const InformationSystem& system) {
  return extension(g, phi, mode, system) == Rational(0);
}

bool is_valid(const GranuleSet& granules, const Formula& phi, const InformationSystem& system) {
  if (granules.universe_size() != system.num_objects()) {
    throw PreconditionError("granule set and system universes differ");
  }
  return granules.union_of().is_subset_of(meaning(phi, system));
}

bool graded_truth(const ObjectSet& g, const Formula& phi, NuMode mode, Rational r, const InformationSystem& system) {
  return extension(g, phi, mode, system) >= r;
}

Rational luk_not(const Rational& v) { return Rational(1) - v; }

Rational luk_implies(const Rational& v, const Rational& w) { return std::min(Rational(1), Rational(1) - v + w); }

namespace {

bool has_implication(const Formula& phi) {
  switch (phi.op()) {
    case Formula::Op::Atom:
      return false;
    case Formula::Op::Implies:
      return true;
    case Formula::Op::Not:
      return has_implication(phi.lhs());
    default:
      return has_implication(phi.lhs()) || has_implication(phi.rhs());
  }
}

}  // namespace

Rational collapse_value(const ObjectSet& g, const Formula& phi, const InformationSystem& system) {
  switch (phi.op()) {
    case Formula::Op::Not:
      return luk_not(collapse_value(g, phi.lhs(), system));
    case Formula::Op::Implies:
      return luk_implies(collapse_value(g, phi.lhs(), system), collapse_value(g, phi.rhs(), system));
    case Formula::Op::Atom:
      return extension(g, phi, NuMode::NuL, system);
    case Formula::Op::And:
    case Formula::Op::Or:
      if (!has_implication(phi)) return extension(g, phi, NuMode::NuL, system);
      if (phi.op() == Formula::Op::And) {
        return std::min(collapse_value(g, phi.lhs(), system), collapse_value(g, phi.rhs(), system));
      }
      return std::max(collapse_value(g, phi.lhs(), system), collapse_value(g, phi.rhs(), system));
  }
  return Rational(0);
}

bool RuleAudit::forward_directions_hold() const {
  if (true_at_g && collapse_rule != Rational(1)) return false;
  if (true_at_g && collapse_antecedent > collapse_consequent) return false;
  if (collapse_rule < Rational(1) && true_at_g) return false;
  return true;
}

RuleAudit rule_audit(const ObjectSet& g, const Formula& antecedent, const Formula& consequent, NuMode mode,
                     const InformationSystem& system) {
  const auto rule = Formula::implication(antecedent, consequent);
  RuleAudit audit;
  audit.true_at_g = is_true_at(g, rule, system);
  audit.extension_of_rule = extension(g, rule, mode, system);
  audit.collapse_antecedent = collapse_value(g, antecedent, system);
  audit.collapse_consequent = collapse_value(g, consequent, system);
  audit.collapse_rule = luk_implies(audit.collapse_antecedent, audit.collapse_consequent);
  return audit;
}

}  // namespace mereoml
