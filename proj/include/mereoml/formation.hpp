#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "mereoml/mereogeometry.hpp"

namespace mereoml {

/// `roomba 3`: a robot kind tag and its id.
struct RobotRef {
  std::string kind;
  int id = 0;

  friend bool operator==(const RobotRef&, const RobotRef&) = default;
};

/// Between(r, a, b):    rect(r) inside extent(rect(a), rect(b)).
/// NotBetween(r, a, b): its negation.
/// MaxDist(delta, m, Between(r, a, b)): the Between holds and the centroid of
///   m is within delta of the centroids of both a and b.
struct FormationConstraint {
  enum class Kind { Between, NotBetween, MaxDist };

  Kind kind = Kind::Between;
  RobotRef r;
  RobotRef a;
  RobotRef b;
  double delta = 0.0;  // MaxDist only
  RobotRef anchor;     // MaxDist only

  friend bool operator==(const FormationConstraint&, const FormationConstraint&) = default;
};

struct Formation {
  std::string name;
  std::vector<FormationConstraint> constraints;

  std::set<int> robot_ids() const;

  friend bool operator==(const Formation&, const Formation&) = default;
};

/// formation  := "(" name "(set" clause* ")" ")"
/// clause     := between | notbetween | maxdist
/// between    := "(between" robot robot robot ")"
/// notbetween := "(not-between" robot robot robot ")"
/// maxdist    := "(max-dist" number robot between ")"
/// robot      := ident integer
///
/// Throws ParseError carrying line and column. With `known_ids`, robots
/// outside it are rejected; delta must be positive.
Formation parse_formation(std::string_view text, const std::optional<std::set<int>>& known_ids = std::nullopt);

/// One line, single spaces; numbers in shortest round-trip form.
std::string to_string(const Formation& formation);

struct Violation {
  std::size_t constraint = 0;  // index into Formation::constraints
  std::string message;
};

/// Containment and distance comparisons carry a 1e-9 slack so that poses
/// built from repeated grid steps do not fail on rounding.
std::vector<Violation> check_formation(const Formation& formation, const std::map<int, Rect>& poses);

}  // namespace mereoml
