#pragma once

#include <cstddef>
#include <iosfwd>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "mereoml/formation.hpp"
#include "mereoml/mereogeometry.hpp"

namespace mereoml {

struct World {
  Rect bounds;
  double cell = 0.05;
  std::vector<Rect> obstacles;
  Rect goal;
  std::map<int, Rect> robots;  // starting poses
};

/// Line-based world description; '#' starts a comment.
///
///   bounds   x1 y1 x2 y2
///   cell     size
///   obstacle x1 y1 x2 y2      (any number)
///   goal     x1 y1 x2 y2
///   robot    id x1 y1 x2 y2   (any number)
///
/// Throws ParseError on malformed lines and DataError when the goal or a
/// robot leaves the bounds, the goal meets an obstacle or a robot starts
/// inside one.
World parse_world(std::istream& in);
World load_world(const std::string& path);

inline constexpr double kInfinitePotential = std::numeric_limits<double>::infinity();

/// Potential on the lattice of points (bounds.x1 + i * cell, bounds.y1 + j * cell).
/// Footprints are given relative to the lattice point. A point is blocked
/// when `body` placed there leaves the bounds or overlaps an obstacle; goal
/// points are unblocked points where `probe` overlaps the goal. Values are
/// 4-neighbor path lengths to the nearest goal point; blocked and cut-off
/// points are infinite.
class PotentialField {
 public:
  PotentialField(const World& world, const Rect& body, const Rect& probe);

  std::size_t nx() const noexcept { return nx_; }
  std::size_t ny() const noexcept { return ny_; }
  double at(std::size_t i, std::size_t j) const { return values_.at(j * nx_ + i); }
  /// Value at the lattice point nearest to (x, y); infinite outside the lattice.
  double value(double x, double y) const;
  double value(const Rect& r) const { return value(r.cx(), r.cy()); }

 private:
  double x0_;
  double y0_;
  double cell_;
  std::size_t nx_;
  std::size_t ny_;
  std::vector<double> values_;
};

/// Field for single robots: the footprint is the largest robot half-extent.
PotentialField build_potential(const World& world);

enum class NavigationStatus { GoalReached, StepBudget, Deadlock, Unreachable };
std::string to_string(NavigationStatus status);

struct RobotPose {
  int id = 0;
  Rect rect;
  double potential = 0.0;
};

struct Frame {
  std::size_t step = 0;
  std::vector<RobotPose> robots;  // ascending id
  std::size_t violations = 0;
  bool repair = false;  // the leader held still to let the formation recover
};

struct TrajectoryLog {
  NavigationStatus status = NavigationStatus::StepBudget;
  std::vector<Frame> frames;  // frame 0 is the start

  const Frame& final_frame() const { return frames.back(); }
};

/// Leader (lowest id) descends a field built for the whole formation's
/// bounding envelope, one lattice step per step, and holds still while the
/// formation has violations. Each follower in id order then takes, among its
/// 9 moves, one minimizing (violations, distance to its starting slot
/// relative to the leader, own potential), never overlapping an obstacle,
/// another robot or the bounds. Stops when the leader overlaps the
/// goal with no violations, after `max_steps`, or after 5 steps in which no
/// robot moved.
TrajectoryLog navigate(const World& world, const Formation& formation, std::size_t max_steps);

/// Robot/obstacle pairs with positive-area overlap, summed over all frames.
std::size_t obstacle_overlaps(const World& world, const TrajectoryLog& log);

/// step,robot,x1,y1,x2,y2,potential,violations
void write_trajectory_csv(std::ostream& out, const TrajectoryLog& log);
void write_trajectory_svg(std::ostream& out, const World& world, const TrajectoryLog& log);

}  // namespace mereoml
