#pragma once

#include <vector>

#include "mereoml/dataset.hpp"
#include "mereoml/formula.hpp"
#include "mereoml/granulation.hpp"
#include "mereoml/types.hpp"

namespace mereoml {

/// Satisfaction relation between a granule and a meaning.
///   Nu3: 1 if X is inside Y, 0 if they are disjoint, 1/2 otherwise.
///   NuL: |X n Y| / |X|, the maximal r with 1 - |X \ Y| / |X| >= r.
enum class NuMode { Nu3, NuL };

/// Maximal satisfaction degree. Both modes give 1 on an empty X.
Rational nu(NuMode mode, const ObjectSet& x, const ObjectSet& y);

/// Nonempty granules over one universe.
class GranuleSet {
 public:
  GranuleSet(std::size_t universe_size, std::vector<ObjectSet> granules);
  static GranuleSet from_covering(const Covering& covering);

  std::size_t universe_size() const noexcept { return universe_size_; }
  const std::vector<ObjectSet>& granules() const noexcept { return granules_; }
  std::size_t size() const noexcept { return granules_.size(); }
  ObjectSet union_of() const;

 private:
  std::size_t universe_size_;
  std::vector<ObjectSet> granules_;
};

/// Im(g, [phi]) = nu(g, [phi]).
Rational extension(const ObjectSet& g, const Formula& phi, NuMode mode, const InformationSystem& system);

/// g is inside [phi].
bool is_true_at(const ObjectSet& g, const Formula& phi, const InformationSystem& system);
/// The only degree phi reaches at g is 0.
bool is_false_at(const ObjectSet& g, const Formula& phi, NuMode mode, const InformationSystem& system);
/// Cls(G) is inside [phi].
bool is_valid(const GranuleSet& granules, const Formula& phi, const InformationSystem& system);

/// extension(g, phi, mode) >= r.
bool graded_truth(const ObjectSet& g, const Formula& phi, NuMode mode, Rational r, const InformationSystem& system);

/// Value of the propositional skeleton of phi at g. Implication-free
/// subformulas take their NuL extension at g (for an atom, the fraction of g
/// inside it). Negation maps v to 1 - v and implication is the Lukasiewicz
/// residuum min(1, 1 - v + w), so (!phi)* = !(phi*) and
/// (phi -> psi)* = phi* -> psi*. A conjunction or disjunction that has an
/// implication below it takes min or max of its operands.
Rational collapse_value(const ObjectSet& g, const Formula& phi, const InformationSystem& system);

/// Lukasiewicz connectives on exact degrees.
Rational luk_not(const Rational& v);
Rational luk_implies(const Rational& v, const Rational& w);

struct RuleAudit {
  bool true_at_g = false;
  Rational extension_of_rule;
  Rational collapse_antecedent;
  Rational collapse_consequent;
  Rational collapse_rule;

  /// The provable directions linking rule truth to the collapse:
  /// true_at_g implies collapse_rule == 1 and collapse_antecedent <= collapse_consequent;
  /// collapse_rule < 1 implies !true_at_g.
  bool forward_directions_hold() const;
};

RuleAudit rule_audit(const ObjectSet& g, const Formula& antecedent, const Formula& consequent, NuMode mode,
                     const InformationSystem& system);

}  // namespace mereoml
