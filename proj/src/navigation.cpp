#include "mereoml/navigation.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <deque>
#include <fstream>
#include <sstream>
#include <tuple>

#include "mereoml/error.hpp"

namespace mereoml {

namespace {

constexpr double kSlack = 1e-9;
// Touching rectangles can report a rounding-sized positive area.
constexpr double kAreaEpsilon = 1e-12;

bool meets(const Rect& a, const Rect& b) { return intersection_area(a, b) > kAreaEpsilon; }

bool hits_obstacle(const World& world, const Rect& r) {
  return std::any_of(world.obstacles.begin(), world.obstacles.end(), [&](const Rect& o) { return meets(r, o); });
}

Rect relative_to(const Rect& r, double x, double y) { return r.translated(-x, -y); }

/// Shortest text of v rounded to 1e-9, so lattice coordinates print cleanly.
std::string number(double v) {
  if (std::isinf(v)) return "inf";
  v = std::round(v * 1e9) / 1e9;
  if (v == 0.0) v = 0.0;  // no "-0"
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

}  // namespace

World parse_world(std::istream& in) {
  World w;
  bool have_bounds = false;
  bool have_goal = false;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string key;
    if (!(fields >> key)) continue;
    auto read_rect = [&]() {
      double v[4];
      for (double& x : v) {
        if (!(fields >> x)) throw ParseError("'" + key + "' needs four coordinates", 1, line_no);
      }
      if (!(v[0] < v[2]) || !(v[1] < v[3])) throw ParseError("'" + key + "' rectangle has no area", 1, line_no);
      return Rect{v[0], v[1], v[2], v[3]};
    };
    if (key == "bounds") {
      w.bounds = read_rect();
      have_bounds = true;
    } else if (key == "cell") {
      if (!(fields >> w.cell) || !(w.cell > 0.0)) throw ParseError("'cell' needs a positive size", 1, line_no);
    } else if (key == "obstacle") {
      w.obstacles.push_back(read_rect());
    } else if (key == "goal") {
      w.goal = read_rect();
      have_goal = true;
    } else if (key == "robot") {
      int id = 0;
      if (!(fields >> id)) throw ParseError("'robot' needs an integer id", 1, line_no);
      if (!w.robots.emplace(id, read_rect()).second) {
        throw DataError(DataError::Kind::DuplicateObject, "robot " + std::to_string(id) + " is listed twice", line_no);
      }
    } else {
      throw ParseError("unknown world entry '" + key + "'", 1, line_no);
    }
    std::string extra;
    if (fields >> extra) throw ParseError("unexpected '" + extra + "'", 1, line_no);
  }
  if (!have_bounds) throw DataError(DataError::Kind::InvalidArgument, "world has no bounds");
  if (!have_goal) throw DataError(DataError::Kind::InvalidArgument, "world has no goal");
  if (!contains(w.bounds, w.goal, kSlack)) throw DataError(DataError::Kind::InvalidArgument, "goal leaves the bounds");
  if (hits_obstacle(w, w.goal)) throw DataError(DataError::Kind::InvalidArgument, "goal overlaps an obstacle");
  for (const auto& [id, r] : w.robots) {
    if (!contains(w.bounds, r, kSlack) || hits_obstacle(w, r)) {
      throw DataError(DataError::Kind::InvalidArgument, "robot " + std::to_string(id) + " does not start in free space");
    }
  }
  return w;
}

World load_world(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError(DataError::Kind::Io, "cannot open world file '" + path + "'");
  return parse_world(in);
}

PotentialField::PotentialField(const World& world, const Rect& body, const Rect& probe)
    : x0_(world.bounds.x1), y0_(world.bounds.y1), cell_(world.cell) {
  if (!(cell_ > 0.0)) throw PreconditionError("cell size must be positive");
  nx_ = static_cast<std::size_t>(std::llround(world.bounds.width() / cell_)) + 1;
  ny_ = static_cast<std::size_t>(std::llround(world.bounds.height() / cell_)) + 1;
  values_.assign(nx_ * ny_, kInfinitePotential);

  std::vector<char> blocked(nx_ * ny_, 0);
  std::deque<std::size_t> frontier;
  for (std::size_t j = 0; j < ny_; ++j) {
    for (std::size_t i = 0; i < nx_; ++i) {
      const double x = x0_ + static_cast<double>(i) * cell_;
      const double y = y0_ + static_cast<double>(j) * cell_;
      const Rect placed = body.translated(x, y);
      const std::size_t k = j * nx_ + i;
      if (!contains(world.bounds, placed, kSlack) || hits_obstacle(world, placed)) {
        blocked[k] = 1;
      } else if (meets(probe.translated(x, y), world.goal)) {
        values_[k] = 0.0;
        frontier.push_back(k);
      }
    }
  }
  while (!frontier.empty()) {
    const std::size_t k = frontier.front();
    frontier.pop_front();
    const std::size_t i = k % nx_;
    const std::size_t j = k / nx_;
    const std::array<std::pair<long, long>, 4> steps{{{1, 0}, {-1, 0}, {0, 1}, {0, -1}}};
    for (const auto& [di, dj] : steps) {
      const long ni = static_cast<long>(i) + di;
      const long nj = static_cast<long>(j) + dj;
      if (ni < 0 || nj < 0 || ni >= static_cast<long>(nx_) || nj >= static_cast<long>(ny_)) continue;
      const std::size_t n = static_cast<std::size_t>(nj) * nx_ + static_cast<std::size_t>(ni);
      if (blocked[n] || values_[n] != kInfinitePotential) continue;
      values_[n] = values_[k] + 1.0;
      frontier.push_back(n);
    }
  }
}

double PotentialField::value(double x, double y) const {
  const long i = std::lround((x - x0_) / cell_);
  const long j = std::lround((y - y0_) / cell_);
  if (i < 0 || j < 0 || i >= static_cast<long>(nx_) || j >= static_cast<long>(ny_)) return kInfinitePotential;
  return values_[static_cast<std::size_t>(j) * nx_ + static_cast<std::size_t>(i)];
}

PotentialField build_potential(const World& world) {
  double hw = 0.0;
  double hh = 0.0;
  for (const auto& [id, r] : world.robots) {
    hw = std::max(hw, 0.5 * r.width());
    hh = std::max(hh, 0.5 * r.height());
  }
  const Rect body{-hw, -hh, hw, hh};
  return PotentialField(world, body, body);
}

std::string to_string(NavigationStatus status) {
  switch (status) {
    case NavigationStatus::GoalReached:
      return "goal_reached";
    case NavigationStatus::StepBudget:
      return "step_budget";
    case NavigationStatus::Deadlock:
      return "deadlock";
    case NavigationStatus::Unreachable:
      return "unreachable";
  }
  return "unknown";
}

TrajectoryLog navigate(const World& world, const Formation& formation, std::size_t max_steps) {
  if (world.robots.empty()) throw PreconditionError("world has no robots");
  for (const int id : formation.robot_ids()) {
    if (world.robots.count(id) == 0) {
      throw DataError(DataError::Kind::UnknownObject, "formation names robot " + std::to_string(id) +
                                                          " which the world does not place");
    }
  }

  std::vector<int> ids;
  for (const auto& [id, r] : world.robots) ids.push_back(id);
  const int leader = ids.front();
  const Rect& leader_start = world.robots.at(leader);

  Rect envelope = leader_start;
  for (const auto& [id, r] : world.robots) envelope = extent(envelope, r);
  const PotentialField leader_field(world, relative_to(envelope, leader_start.cx(), leader_start.cy()),
                                    relative_to(leader_start, leader_start.cx(), leader_start.cy()));
  std::map<int, PotentialField> fields;
  for (const auto& [id, r] : world.robots) {
    if (id == leader) continue;
    const Rect body = relative_to(r, r.cx(), r.cy());
    fields.emplace(id, PotentialField(world, body, body));
  }

  // Integer lattice offsets from the start keep poses free of drift.
  std::map<int, std::pair<long, long>> offset;
  for (const int id : ids) offset[id] = {0, 0};
  auto pose = [&](int id, long dx, long dy) {
    const auto& [ox, oy] = offset.at(id);
    return world.robots.at(id).translated(static_cast<double>(ox + dx) * world.cell,
                                          static_cast<double>(oy + dy) * world.cell);
  };
  auto poses = [&]() {
    std::map<int, Rect> out;
    for (const int id : ids) out[id] = pose(id, 0, 0);
    return out;
  };
  auto potential = [&](int id, const Rect& r) {
    return id == leader ? leader_field.value(r) : fields.at(id).value(r);
  };
  auto free_for = [&](int id, const Rect& r, const std::map<int, Rect>& current) {
    if (!contains(world.bounds, r, kSlack) || hits_obstacle(world, r)) return false;
    return std::none_of(current.begin(), current.end(),
                        [&](const auto& entry) { return entry.first != id && meets(r, entry.second); });
  };
  auto frame = [&](std::size_t step, bool repair) {
    Frame f;
    f.step = step;
    f.repair = repair;
    const auto current = poses();
    for (const int id : ids) f.robots.push_back({id, current.at(id), potential(id, current.at(id))});
    f.violations = check_formation(formation, current).size();
    return f;
  };

  TrajectoryLog log;
  log.frames.push_back(frame(0, false));
  if (leader_field.value(leader_start) == kInfinitePotential) {
    log.status = NavigationStatus::Unreachable;
    return log;
  }
  auto at_goal = [&](const Frame& f) { return f.violations == 0 && meets(f.robots.front().rect, world.goal); };
  if (at_goal(log.frames.back())) {
    log.status = NavigationStatus::GoalReached;
    return log;
  }

  // Stay first, so ties keep a robot where it is.
  constexpr std::array<std::pair<long, long>, 9> kMoves{
      {{0, 0}, {1, 0}, {-1, 0}, {0, 1}, {0, -1}, {1, 1}, {1, -1}, {-1, 1}, {-1, -1}}};

  std::size_t stalled = 0;
  log.status = NavigationStatus::StepBudget;
  for (std::size_t step = 1; step <= max_steps; ++step) {
    bool moved = false;
    const bool repair = !check_formation(formation, poses()).empty();

    if (!repair) {
      const auto current = poses();
      double best = potential(leader, current.at(leader));
      std::pair<long, long> choice{0, 0};
      for (const auto& [dx, dy] : kMoves) {
        const Rect r = pose(leader, dx, dy);
        const double v = potential(leader, r);
        if (v < best && free_for(leader, r, current)) {
          best = v;
          choice = {dx, dy};
        }
      }
      if (choice != std::pair<long, long>{0, 0}) {
        offset[leader].first += choice.first;
        offset[leader].second += choice.second;
        moved = true;
      }
    }

    for (const int id : ids) {
      if (id == leader) continue;
      auto current = poses();
      // (violations, lattice steps from the slot the robot held relative to
      // the leader at the start, own potential)
      using Key = std::tuple<std::size_t, long, double>;
      Key best{static_cast<std::size_t>(-1), 0, kInfinitePotential};
      std::pair<long, long> choice{0, 0};
      for (const auto& [dx, dy] : kMoves) {
        const Rect r = pose(id, dx, dy);
        if (!free_for(id, r, current)) continue;
        auto trial = current;
        trial[id] = r;
        const auto& [lx, ly] = offset.at(leader);
        const auto& [ox, oy] = offset.at(id);
        const long slot_distance = std::max(std::labs(ox + dx - lx), std::labs(oy + dy - ly));
        const Key key{check_formation(formation, trial).size(), slot_distance, potential(id, r)};
        if (key < best) {
          best = key;
          choice = {dx, dy};
        }
      }
      if (choice != std::pair<long, long>{0, 0}) {
        offset[id].first += choice.first;
        offset[id].second += choice.second;
        moved = true;
      }
    }

    log.frames.push_back(frame(step, repair));
    if (at_goal(log.frames.back())) {
      log.status = NavigationStatus::GoalReached;
      break;
    }
    stalled = moved ? 0 : stalled + 1;
    if (stalled >= 5) {
      log.status = NavigationStatus::Deadlock;
      break;
    }
  }
  return log;
}

std::size_t obstacle_overlaps(const World& world, const TrajectoryLog& log) {
  std::size_t count = 0;
  for (const auto& f : log.frames) {
    for (const auto& r : f.robots) {
      for (const auto& o : world.obstacles) count += meets(r.rect, o) ? 1 : 0;
    }
  }
  return count;
}

void write_trajectory_csv(std::ostream& out, const TrajectoryLog& log) {
  out << "step,robot,x1,y1,x2,y2,potential,violations\n";
  for (const auto& f : log.frames) {
    for (const auto& r : f.robots) {
      out << f.step << ',' << r.id << ',' << number(r.rect.x1) << ',' << number(r.rect.y1) << ','
          << number(r.rect.x2) << ',' << number(r.rect.y2) << ',' << number(r.potential) << ',' << f.violations
          << '\n';
    }
  }
}

void write_trajectory_svg(std::ostream& out, const World& world, const TrajectoryLog& log) {
  constexpr double kScale = 100.0;
  const auto& b = world.bounds;
  auto sx = [&](double x) { return number((x - b.x1) * kScale); };
  auto sy = [&](double y) { return number((b.y2 - y) * kScale); };
  auto rect = [&](const Rect& r, const std::string& style) {
    out << "  <rect x=\"" << sx(r.x1) << "\" y=\"" << sy(r.y2) << "\" width=\"" << number(r.width() * kScale)
        << "\" height=\"" << number(r.height() * kScale) << "\" " << style << "/>\n";
  };
  static const std::array<const char*, 6> kColors{"#1f77b4", "#d62728", "#9467bd", "#ff7f0e", "#17becf", "#8c564b"};

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << number(b.width() * kScale) << "\" height=\""
      << number(b.height() * kScale) << "\">\n";
  rect(b, "fill=\"white\" stroke=\"black\"");
  for (const auto& o : world.obstacles) rect(o, "fill=\"grey\"");
  rect(world.goal, "fill=\"green\" fill-opacity=\"0.5\"");
  if (!log.frames.empty()) {
    const auto& last = log.final_frame();
    for (std::size_t k = 0; k < last.robots.size(); ++k) {
      const char* color = kColors[k % kColors.size()];
      out << "  <polyline fill=\"none\" stroke=\"" << color << "\" points=\"";
      for (std::size_t s = 0; s < log.frames.size(); ++s) {
        const auto& r = log.frames[s].robots[k].rect;
        out << (s == 0 ? "" : " ") << sx(r.cx()) << ',' << sy(r.cy());
      }
      out << "\"/>\n";
      rect(last.robots[k].rect, std::string("fill=\"none\" stroke=\"") + color + "\"");
    }
  }
  out << "</svg>\n";
}

}  // namespace mereoml
