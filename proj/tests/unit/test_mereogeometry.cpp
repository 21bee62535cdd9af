#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "mereoml/error.hpp"
#include "mereoml/formation.hpp"
#include "mereoml/mereogeometry.hpp"
#include "mereoml/navigation.hpp"

using namespace mereoml;

namespace {

const Rect kUnit{0, 0, 1, 1};
const Rect kRight{2, 0, 3, 1};

std::pair<std::size_t, std::size_t> parse_error_at(std::string_view text,
                                                   const std::optional<std::set<int>>& ids = std::nullopt) {
  try {
    parse_formation(text, ids);
  } catch (const ParseError& e) {
    return {e.line(), e.position()};
  }
  ADD_FAILURE() << "parsed: " << text;
  return {0, 0};
}

World world_of(const std::string& text) {
  std::istringstream in(text);
  return parse_world(in);
}

}  // namespace

TEST(Rect, Validation) {
  EXPECT_THROW(Rect::make(1, 0, 1, 2), PreconditionError);
  EXPECT_THROW(Rect::make(0, 2, 1, 1), PreconditionError);
  EXPECT_EQ(Rect::make(0, 0, 2, 1).area(), 2.0);
}

TEST(AreaInclusion, Examples) {
  EXPECT_DOUBLE_EQ(area_inclusion(Rect{0.2, 0.2, 0.5, 0.5}, kUnit), 1.0);
  EXPECT_DOUBLE_EQ(area_inclusion(kUnit, kRight), 0.0);
  EXPECT_DOUBLE_EQ(area_inclusion(Rect{0, 0, 2, 1}, Rect{1, 0, 3, 1}), 0.5);
  EXPECT_DOUBLE_EQ(area_inclusion(kUnit, Rect{1, 0, 2, 1}), 0.0);
}

TEST(Rho, Examples) {
  EXPECT_DOUBLE_EQ(rho(kUnit, kUnit), 2.0);
  EXPECT_DOUBLE_EQ(rho(kUnit, kRight), 0.0);
  EXPECT_DOUBLE_EQ(rho(Rect{0, 0, 2, 1}, Rect{1, 0, 3, 1}), 1.0);
  EXPECT_DOUBLE_EQ(rho_normalized(Rect{0, 0, 2, 1}, Rect{1, 0, 3, 1}), 0.5);
  EXPECT_LT(rho(kUnit, Rect{0, 0, 1, 2}), 2.0);
}

TEST(Rnear, Examples) {
  const Rect half{0.5, 0, 1.5, 1};
  EXPECT_TRUE(rnear(kUnit, kUnit, kRight));
  EXPECT_TRUE(rnear(kUnit, kUnit, half));
  EXPECT_FALSE(rnear(kUnit, kRight, half));
  EXPECT_TRUE(rnear(kUnit, kRight, Rect{5, 5, 6, 6}));
}

TEST(Rbtw, Examples) {
  const std::vector<Rect> only{kUnit};
  EXPECT_TRUE(rbtw(kUnit, kRight, Rect{5, 5, 6, 6}, only));
  const std::vector<Rect> several{kUnit, kRight, Rect{1, 0, 2, 1}};
  EXPECT_TRUE(rbtw(kUnit, kUnit, kRight, several));
  EXPECT_THROW(rbtw(Rect{9, 9, 10, 10}, kUnit, kRight, several), PreconditionError);
}

TEST(Extent, Examples) {
  EXPECT_EQ(extent(kUnit, kRight), (Rect{0, 0, 3, 1}));
  EXPECT_EQ(extent(kUnit, Rect{0.2, 0.2, 0.4, 0.4}), kUnit);
  const auto e = extent(kUnit, kRight);
  EXPECT_EQ(extent(kUnit, e), e);
}

TEST(BetweenExtent, Examples) {
  EXPECT_TRUE(between_extent(Rect{1, 0, 2, 1}, kUnit, kRight));
  EXPECT_FALSE(between_extent(Rect{1, 0.5, 2, 1.5}, kUnit, kRight));
  EXPECT_TRUE(between_extent(extent(kUnit, kRight), kUnit, kRight));
  EXPECT_TRUE(between_extent(Rect{1, 0, 2, 1 + 1e-12}, kUnit, kRight, 1e-9));
}

TEST(Formation, ParsesTheCrossClauses) {
  const auto f = parse_formation(
      "(cross (set (max-dist 0.25 roomba 0 (between roomba 0 roomba 1 roomba 2))\n"
      "            (not-between roomba 4 roomba 1 roomba 2)))");
  EXPECT_EQ(f.name, "cross");
  ASSERT_EQ(f.constraints.size(), 2u);
  const auto& m = f.constraints[0];
  EXPECT_EQ(m.kind, FormationConstraint::Kind::MaxDist);
  EXPECT_DOUBLE_EQ(m.delta, 0.25);
  EXPECT_EQ(m.anchor, (RobotRef{"roomba", 0}));
  EXPECT_EQ(m.r, (RobotRef{"roomba", 0}));
  EXPECT_EQ(m.a, (RobotRef{"roomba", 1}));
  EXPECT_EQ(m.b, (RobotRef{"roomba", 2}));
  EXPECT_EQ(f.constraints[1].kind, FormationConstraint::Kind::NotBetween);
  EXPECT_EQ(f.constraints[1].r.id, 4);
  EXPECT_EQ(f.robot_ids(), (std::set<int>{0, 1, 2, 4}));
  EXPECT_TRUE(parse_formation("(cross (set))").constraints.empty());
}

TEST(Formation, RoundTrip) {
  const char* text =
      "(cross (set (max-dist 0.25 roomba 0 (between roomba 0 roomba 1 roomba 2)) (not-between roomba 3 roomba 1 "
      "roomba 2) (between bot 7 bot 8 bot 9)))";
  const auto f = parse_formation(text);
  EXPECT_EQ(to_string(f), text);
  EXPECT_EQ(parse_formation(to_string(f)), f);
}

TEST(Formation, ErrorsCarryPositions) {
  const std::set<int> five{0, 1, 2, 3, 4};
  EXPECT_EQ(parse_error_at("(cross (set (between roomba 9 roomba 1 roomba 2)))", five), (std::pair<std::size_t, std::size_t>{1, 29}));
  EXPECT_EQ(parse_error_at("(cross (set\n  (max-dist 0 roomba 0 (between roomba 0 roomba 1 roomba 2))))").first, 2u);
  EXPECT_EQ(parse_error_at("(cross (set (max-dist -1 roomba 0 (between roomba 0 roomba 1 roomba 2))))").first, 1u);
  EXPECT_EQ(parse_error_at("(cross (set (around roomba 0)))"), (std::pair<std::size_t, std::size_t>{1, 14}));
  EXPECT_EQ(parse_error_at("(cross (set)").first, 1u);
  EXPECT_EQ(parse_error_at("").first, 1u);
  EXPECT_EQ(parse_error_at("(cross (set (between roomba x roomba 1 roomba 2)))").first, 1u);
}

TEST(CheckFormation, Examples) {
  const auto between = parse_formation("(f (set (between roomba 0 roomba 1 roomba 2)))");
  std::map<int, Rect> poses{{1, Rect{0, 0, 0.2, 0.2}}, {0, Rect{0.2, 0, 0.4, 0.2}}, {2, Rect{0.4, 0, 0.6, 0.2}}};
  EXPECT_TRUE(check_formation(between, poses).empty());
  poses[0] = Rect{0.2, 0.1, 0.4, 0.3};
  const auto v = check_formation(between, poses);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].constraint, 0u);

  const auto not_between = parse_formation("(f (set (not-between roomba 0 roomba 1 roomba 2)))");
  EXPECT_TRUE(check_formation(not_between, poses).empty());

  // Between holds but the neighbours sit 0.30 from the anchor.
  const auto far = parse_formation("(f (set (max-dist 0.25 roomba 0 (between roomba 0 roomba 1 roomba 2))))");
  const std::map<int, Rect> wide{{1, Rect{0, 0, 0.2, 0.2}}, {0, Rect{0.3, 0, 0.5, 0.2}}, {2, Rect{0.6, 0, 0.8, 0.2}}};
  EXPECT_TRUE(check_formation(between, wide).empty());
  EXPECT_EQ(check_formation(far, wide).size(), 1u);
  const auto loose = parse_formation("(f (set (max-dist 0.35 roomba 0 (between roomba 0 roomba 1 roomba 2))))");
  EXPECT_TRUE(check_formation(loose, wide).empty());
  EXPECT_THROW(check_formation(far, std::map<int, Rect>{{0, kUnit}}), PreconditionError);
}

TEST(PotentialField, EmptyWorldIsManhattanDistance) {
  const auto w = world_of("bounds 0 0 2 2\ncell 0.5\ngoal 1.6 1.6 1.9 1.9\nrobot 0 0.4 0.4 0.6 0.6\n");
  const PotentialField f(w, Rect{-0.1, -0.1, 0.1, 0.1}, Rect{-0.2, -0.2, 0.2, 0.2});
  ASSERT_EQ(f.nx(), 5u);
  ASSERT_EQ(f.ny(), 5u);
  EXPECT_EQ(f.at(3, 3), 0.0);
  EXPECT_EQ(f.at(1, 1), 4.0);
  EXPECT_EQ(f.at(1, 3), 2.0);
  EXPECT_EQ(f.at(0, 0), kInfinitePotential);
  EXPECT_EQ(f.value(0.5, 0.55), 4.0);
  EXPECT_EQ(f.value(-3.0, 0.5), kInfinitePotential);
}

TEST(PotentialField, ObstaclesAreInfiniteAndDetoured) {
  const auto w = world_of(
      "bounds 0 0 2 2\ncell 0.5\nobstacle 0.9 0.9 1.1 1.1\ngoal 1.6 1.6 1.9 1.9\nrobot 0 0.4 0.4 0.6 0.6\n");
  const PotentialField f(w, Rect{-0.1, -0.1, 0.1, 0.1}, Rect{-0.2, -0.2, 0.2, 0.2});
  EXPECT_EQ(f.at(2, 2), kInfinitePotential);
  EXPECT_EQ(f.at(1, 1), 4.0);
  EXPECT_EQ(f.at(2, 1), 3.0);
}

TEST(World, ParseErrors) {
  EXPECT_THROW(world_of("bounds 0 0 2\n"), ParseError);
  EXPECT_THROW(world_of("bounds 0 0 2 2\nteleport 1\n"), ParseError);
  EXPECT_THROW(world_of("bounds 0 0 2 2\ngoal 1 1 3 3\nrobot 0 0 0 0.1 0.1\n"), DataError);
  EXPECT_THROW(world_of("bounds 0 0 2 2\nobstacle 0 0 1 1\ngoal 1.5 1.5 1.9 1.9\nrobot 0 0.2 0.2 0.4 0.4\n"),
               DataError);
  try {
    world_of("# header\nbounds 0 0 2 2\ncell x\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
}

TEST(Navigate, SingleRobotDescends) {
  const auto w = world_of("bounds 0 0 3 3\ncell 0.1\ngoal 2.5 2.5 2.9 2.9\nrobot 0 0.2 0.2 0.4 0.4\n");
  const auto log = navigate(w, parse_formation("(solo (set))"), 1000);
  EXPECT_EQ(log.status, NavigationStatus::GoalReached);
  for (std::size_t i = 1; i < log.frames.size(); ++i) {
    EXPECT_LT(log.frames[i].robots[0].potential, log.frames[i - 1].robots[0].potential);
  }
  EXPECT_TRUE(overlaps(log.final_frame().robots[0].rect, w.goal));
  EXPECT_EQ(obstacle_overlaps(w, log), 0u);
}

TEST(Navigate, WalledOffGoalIsUnreachable) {
  const auto w = world_of(
      "bounds 0 0 3 3\ncell 0.1\nobstacle 1.4 0 1.6 3\ngoal 2.5 2.5 2.9 2.9\nrobot 0 0.2 0.2 0.4 0.4\n");
  const auto log = navigate(w, parse_formation("(solo (set))"), 1000);
  EXPECT_EQ(log.status, NavigationStatus::Unreachable);
  EXPECT_EQ(log.frames.size(), 1u);
}

TEST(Navigate, CorridorCrossReachesTheGoalSafely) {
  const auto w = load_world(MEREOML_DATA_DIR "/corridor.world");
  std::ostringstream text;
  text << std::ifstream(MEREOML_DATA_DIR "/cross.frm").rdbuf();
  const auto f = parse_formation(text.str(), std::set<int>{0, 1, 2, 3, 4});
  const auto log = navigate(w, f, 1000);
  EXPECT_EQ(log.status, NavigationStatus::GoalReached);
  EXPECT_EQ(log.final_frame().violations, 0u);
  EXPECT_EQ(obstacle_overlaps(w, log), 0u);
  for (const auto& frame : log.frames) {
    for (std::size_t i = 0; i < frame.robots.size(); ++i) {
      ASSERT_TRUE(contains(w.bounds, frame.robots[i].rect, 1e-9));
      for (std::size_t j = i + 1; j < frame.robots.size(); ++j) {
        ASSERT_FALSE(overlaps(frame.robots[i].rect, frame.robots[j].rect)) << "step " << frame.step;
      }
    }
  }
  std::ostringstream a, b;
  write_trajectory_csv(a, log);
  write_trajectory_csv(b, navigate(w, f, 1000));
  EXPECT_EQ(a.str(), b.str());
  EXPECT_EQ(a.str().substr(0, a.str().find('\n')), "step,robot,x1,y1,x2,y2,potential,violations");
}

TEST(Rbtw, ExtentIsNotBetweenOverAGridFamily) {
  // w = [0,2]x[0,1] is nearer to the extent than either end rectangle:
  // rho(z, w) = 5/3 against rho(z, x) = rho(z, y) = 4/3.
  const Rect z = extent(kUnit, kRight);
  const Rect w{0, 0, 2, 1};
  EXPECT_NEAR(rho(z, w), 5.0 / 3.0, 1e-12);
  EXPECT_NEAR(rho(z, kUnit), 4.0 / 3.0, 1e-12);
  const std::vector<Rect> family{z, kUnit, kRight, w};
  EXPECT_FALSE(rbtw(z, kUnit, kRight, family));
  const std::vector<Rect> ends{z, kUnit, kRight};
  EXPECT_TRUE(rbtw(z, kUnit, kRight, ends));
  EXPECT_TRUE(between_extent(z, kUnit, kRight));
}
