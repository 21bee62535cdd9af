#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "mereoml/error.hpp"
#include "mereoml/granulation.hpp"
#include "oracles.hpp"

using namespace mereoml;

namespace {

std::vector<ObjectId> members_of(std::uint64_t mask, std::size_t n) {
  std::vector<ObjectId> out;
  for (std::size_t y = 0; y < n; ++y) {
    if (mask >> y & 1u) out.push_back(y);
  }
  return out;
}

bool subset(const Granule& a, const Granule& b) {
  return std::includes(b.members.begin(), b.members.end(), a.members.begin(), a.members.end());
}

DecisionSystem toy(const oracle::Table& rows, const std::vector<std::string>& decisions) {
  return DecisionSystem(oracle::system_of(rows), "d", decisions);
}

}  // namespace

TEST(Granule, ThreeObjectExample) {
  const auto t = oracle::system_of({{"1", "0"}, {"1", "1"}, {"0", "1"}});
  const auto g = granule(0, 0.5, RoughInclusion::lukasiewicz(), t);
  EXPECT_EQ(g.members, (std::vector<ObjectId>{0, 1}));
  EXPECT_EQ(granule(0, 0.0, RoughInclusion::lukasiewicz(), t).members.size(), 3u);
  EXPECT_EQ(granule(1, 1.0, RoughInclusion::lukasiewicz(), t).members, (std::vector<ObjectId>{1}));
}

TEST(Granule, RadiusGrid) {
  const auto grid = radius_grid(3);
  ASSERT_EQ(grid.size(), 3u);
  EXPECT_DOUBLE_EQ(grid[0], 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(grid[1], 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(grid[2], 1.0);
}

TEST(Covering, Examples) {
  const std::vector<Granule> three{{0, 0.5, {0, 1}}, {1, 0.5, {1, 2}}, {2, 0.5, {0, 1, 2}}};
  const auto c = irreducible_covering(three, 3);
  ASSERT_EQ(c.granules.size(), 1u);
  EXPECT_EQ(c.granules[0].members, (std::vector<ObjectId>{0, 1, 2}));

  const std::vector<Granule> singles{{0, 1.0, {0}}, {1, 1.0, {1}}, {2, 1.0, {2}}};
  EXPECT_EQ(irreducible_covering(singles, 3).granules.size(), 3u);
}

TEST(Mirror, MajorityAndTies) {
  const auto system = toy({{"A", "x"}, {"A", "y"}, {"B", "y"}, {"B", "x"}}, {"no", "yes", "yes", "no"});
  const std::vector<Granule> g{{0, 0.0, {0, 1, 2}}, {3, 0.0, {2, 3}}};
  const Covering c{g, 4};
  const auto m = granular_mirror(c, system);
  ASSERT_EQ(m.size(), 2u);
  const auto& t = system.conditions();
  EXPECT_EQ(t.domain(0).at(m.rows[0][0]), "A");
  EXPECT_EQ(t.domain(1).at(m.rows[0][1]), "y");
  EXPECT_EQ(system.decision_values()[m.decisions[0]], "yes");
  // (B, B), (x, y) and (no, yes): ties go to the first token in order.
  EXPECT_EQ(t.domain(0).at(m.rows[1][0]), "B");
  EXPECT_EQ(t.domain(1).at(m.rows[1][1]), "x");
  EXPECT_EQ(system.decision_values()[m.decisions[1]], "no");
}

TEST(Classify, NearestRow) {
  GranularReflection r;
  r.rows = {{0, 0, 0}, {1, 1, 0}};
  r.decisions = {0, 1};
  const std::vector<int> probe{0, 0, 1};
  EXPECT_EQ(classify(r, probe), 0);
  const std::vector<int> exact{1, 1, 0};
  EXPECT_EQ(classify(r, exact), 1);
  GranularReflection one;
  one.rows = {{1, 1, 1}};
  one.decisions = {1};
  EXPECT_EQ(classify(one, probe), 1);
}

TEST(Decider, RadiusZeroGivesTheMajorityRate) {
  oracle::Table rows;
  std::vector<std::string> d;
  for (int i = 0; i < 10; ++i) {
    rows.push_back({std::to_string(i % 3), std::to_string(i % 2)});
    d.push_back(i < 7 ? "yes" : "no");
  }
  DeciderOptions o;
  o.seed = 4;
  o.radii = {0.0};
  const auto report = run_decider(toy(rows, d), o);
  ASSERT_EQ(report.per_radius.size(), 1u);
  EXPECT_DOUBLE_EQ(report.best().accuracy, 0.7);
  EXPECT_DOUBLE_EQ(report.best().coverage, 1.0);
  EXPECT_DOUBLE_EQ(report.best().granules, 1.0);
}

TEST(Decider, FullRadiusOnDistinctRowsIsNearestNeighbour) {
  std::mt19937_64 rng(21);
  const auto rows = oracle::random_table(rng, 40, 6, 4);
  std::vector<std::string> d;
  for (const auto& row : rows) d.push_back(row[0] == row[1] ? "a" : "b");
  const auto system = toy(rows, d);
  const auto refl = granulate(system, 1.0, RoughInclusion::lukasiewicz());
  for (ObjectId x = 0; x < 40; ++x) {
    const auto code = system.conditions().row(x);
    EXPECT_EQ(classify(refl, code), system.decision(x));
  }
}

TEST(Decider, DeterministicAndValidated) {
  std::mt19937_64 rng(8);
  const auto rows = oracle::random_table(rng, 60, 5, 3);
  std::vector<std::string> d;
  for (const auto& row : rows) d.push_back(row[2] < row[3] ? "p" : "q");
  const auto system = toy(rows, d);
  DeciderOptions o;
  o.seed = 99;
  const auto a = run_decider(system, o);
  const auto b = run_decider(system, o);
  ASSERT_EQ(a.per_radius.size(), 5u);
  for (std::size_t i = 0; i < a.per_radius.size(); ++i) {
    EXPECT_EQ(a.per_radius[i].accuracy, b.per_radius[i].accuracy);
    EXPECT_EQ(a.per_radius[i].granules, b.per_radius[i].granules);
    EXPECT_LE(a.per_radius[i].reduction, 1.0);
  }
  EXPECT_EQ(a.best_radius, b.best_radius);
  o.folds = 1;
  EXPECT_THROW(run_decider(system, o), FoldError);
  o.folds = 61;
  EXPECT_THROW(run_decider(system, o), FoldError);
}

TEST(Folds, StratifiedAndBalanced) {
  oracle::Table rows(23, {"0"});
  std::vector<std::string> d;
  for (int i = 0; i < 23; ++i) d.push_back(i % 4 == 0 ? "rare" : "common");
  const auto f = stratified_folds(toy(rows, d), 5, 3);
  std::vector<int> per(5, 0);
  for (auto k : f) ++per.at(k);
  EXPECT_LE(*std::max_element(per.begin(), per.end()) - *std::min_element(per.begin(), per.end()), 1);
}

// Set-level properties of granules against the integer oracle.
class GranuleProperties : public ::testing::TestWithParam<int> {};

TEST_P(GranuleProperties, MatchOracleAndNest) {
  std::mt19937_64 rng(GetParam());
  std::uniform_int_distribution<std::size_t> objects(2, 12);
  std::uniform_int_distribution<std::size_t> features(1, 4);
  const std::size_t n = objects(rng);
  const std::size_t k = features(rng);
  const auto table = oracle::random_table(rng, n, k, 2 + GetParam() % 2);
  const auto system = oracle::system_of(table);
  const auto luk = RoughInclusion::lukasiewicz();

  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t r = 0; r <= k; ++r) {
      const double radius = static_cast<double>(r) / static_cast<double>(k);
      const auto g = granule(x, radius, luk, system);
      ASSERT_EQ(g.members, members_of(oracle::granule_mask(table, x, r, k), n));
      ASSERT_TRUE(g.contains(x));
      if (r > 0) {
        const auto wider = granule(x, static_cast<double>(r - 1) / static_cast<double>(k), luk, system);
        ASSERT_TRUE(subset(g, wider));
      }
      for (const auto y : g.members) {
        for (std::size_t s = 0; s <= k; ++s) {
          const auto gy = granule(y, static_cast<double>(s) / static_cast<double>(k), luk, system);
          const auto fused = granule(x, static_cast<double>(oracle::luk_num(r, s, k)) / static_cast<double>(k), luk, system);
          ASSERT_TRUE(subset(gy, fused)) << "x=" << x << " y=" << y << " r=" << r << " s=" << s;
        }
      }
    }
  }

  for (std::size_t r = 1; r <= k; ++r) {
    const auto all = all_granules(static_cast<double>(r) / static_cast<double>(k), luk, system);
    ASSERT_EQ(all.size(), n);
    const auto c = irreducible_covering(all, n);
    ASSERT_TRUE(c.covers_universe());
    ASSERT_TRUE(c.is_irreducible());
  }
}

TEST_P(GranuleProperties, ExponentialWitness) {
  std::mt19937_64 rng(1000 + GetParam());
  const auto table = oracle::random_table(rng, 12, 4, 2);
  const auto system = oracle::system_of(table);
  const auto e = RoughInclusion::exponential(4);
  for (const double r : {0.3, 0.6, 0.9}) {
    for (const double s : {0.4, 0.8}) {
      for (ObjectId z = 0; z < 12; ++z) {
        const auto gz = granule(z, s, e, system);
        for (const auto y : gz.members) {
          const auto gy = granule(y, r, e, system);
          for (const auto x : gy.members) {
            const auto gx = granule(x, 1.0, e, system);
            // t = 1 is forced by alpha(r, t) >= r. The second containment
            // then holds exactly when x itself reaches g(z, s).
            ASSERT_TRUE(subset(gx, gy));
            ASSERT_EQ(subset(gx, gz), gz.contains(x));
            ASSERT_TRUE(granule(z, exp_compose(r, s), e, system).contains(x));
          }
        }
      }
    }
  }
}

TEST(ExponentialGranules, SecondContainmentCanFail) {
  // x=(1,1,0,0) in g(y,0.9) for y=(1,1,1,0); y in g(z,0.9) for z=(1,1,1,1);
  // x is two features from z, so exp(-1/4) < 0.9 keeps it out of g(z,0.9).
  const auto t = oracle::system_of({{"1", "1", "0", "0"}, {"1", "1", "1", "0"}, {"1", "1", "1", "1"}});
  const auto e = RoughInclusion::exponential(4);
  EXPECT_TRUE(granule(1, 0.9, e, t).contains(0));
  EXPECT_TRUE(granule(2, 0.9, e, t).contains(1));
  for (const double tt : {1.0, 0.99, 0.5, 0.01}) EXPECT_FALSE(subset(granule(0, tt, e, t), granule(2, 0.9, e, t)));
}

INSTANTIATE_TEST_SUITE_P(Tables, GranuleProperties, ::testing::Range(0, 40));
