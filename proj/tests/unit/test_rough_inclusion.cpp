#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "mereoml/error.hpp"
#include "mereoml/rough_inclusion.hpp"
#include "oracles.hpp"

using namespace mereoml;

TEST(WeightRatio, Examples) {
  const auto c = Carrier::make(4);
  const auto w = WeightFn::uniform(4);
  EXPECT_DOUBLE_EQ(rs_star_weight(c->entity(0b0001), c->entity(0b0011), w), 1.0);
  EXPECT_DOUBLE_EQ(rs_star_weight(c->entity(0b0001), c->entity(0b0010), w), 0.0);
  EXPECT_DOUBLE_EQ(rs_star_weight(c->entity(0b0011), c->entity(0b0110), w), 0.5);
  EXPECT_THROW(rs_star_weight(MaybeEntity{}, c->entity(1), w), PreconditionError);
}

TEST(WeightRatio, PropertiesExhaustive) {
  const auto c = Carrier::make(5);
  const WeightFn w({1.0, 2.0, 0.5, 3.0, 1.5});
  const auto all = c->all_entities();
  for (const auto& x : all) {
    for (const auto& y : all) {
      const Degree d = rs_star_weight(x, y, w);
      ASSERT_GE(d, 0.0);
      ASSERT_LE(d, 1.0 + 1e-12);
      const bool one = std::abs(d - 1.0) < 1e-12;
      ASSERT_EQ(one, subst(x, y));
      ASSERT_EQ(one, is_valid_implication(x, y));
      if (!(y == c->universe())) {
        ASSERT_NEAR(rs_star_weight(x, *complement(y), w), 1.0 - d, 1e-12);
      }
      if (one) {
        for (const auto& z : all) {
          ASSERT_GE(rs_star_weight(z, y, w), rs_star_weight(z, x, w) - 1e-12);
        }
      }
    }
  }
}

TEST(TNorm, LukasiewiczExamples) {
  EXPECT_DOUBLE_EQ(t_lukasiewicz(1.0, 0.37), 0.37);
  EXPECT_NEAR(t_lukasiewicz(0.7, 0.5), 0.2, 1e-15);
  EXPECT_NEAR(residuum_lukasiewicz(0.7, 0.5), 0.8, 1e-15);
  EXPECT_DOUBLE_EQ(residuum(TNorm::Lukasiewicz, 0.3, 0.6), 1.0);
}

TEST(TNorm, ResidualInclusionExamples) {
  EXPECT_DOUBLE_EQ(rs_star_residual(0.3, 0.9), 1.0);
  EXPECT_NEAR(rs_star_residual(0.9, 0.3), 0.4, 1e-15);
  EXPECT_DOUBLE_EQ(rs_star_residual(1.0, 0.0), 0.0);
  EXPECT_THROW(rs_star_residual(1.2, 0.0), PreconditionError);
}

TEST(TNorm, AdjointnessOnGrid) {
  for (const auto t : {TNorm::Lukasiewicz, TNorm::Product, TNorm::Minimum}) {
    for (int i = 0; i <= 100; ++i) {
      for (int j = 0; j <= 100; j += 5) {
        for (int k = 0; k <= 100; k += 5) {
          const double a = i / 100.0;
          const double b = j / 100.0;
          const double c = k / 100.0;
          ASSERT_EQ(t_norm(t, a, c) <= b + 1e-12, c <= residuum(t, a, b) + 1e-12) << a << ' ' << b << ' ' << c;
        }
      }
    }
  }
}

TEST(Archimedean, Examples) {
  const auto gen = ArchimedeanGenerator::lukasiewicz();
  EXPECT_DOUBLE_EQ(rs_star_archimedean(0.4, 0.4, gen), 1.0);
  EXPECT_NEAR(rs_star_archimedean(0.2, 0.9, gen), 0.3, 1e-15);
  EXPECT_DOUBLE_EQ(rs_star_archimedean(0.0, 1.0, gen), 0.0);
  EXPECT_NEAR(gen.t_norm(0.7, 0.5), t_lukasiewicz(0.7, 0.5), 1e-15);
}

TEST(InformationSystemInclusion, Examples) {
  const InformationSystem t({"a", "b", "c"}, {{"1", "0", "1"}, {"1", "1", "1"}, {"1", "0", "1"}});
  EXPECT_DOUBLE_EQ(rs_star_is(0, 2, t), 1.0);
  EXPECT_DOUBLE_EQ(rs_star_is(0, 1, t), 2.0 / 3.0);
  std::mt19937_64 rng(3);
  const auto table = oracle::random_table(rng, 60, 6, 3);
  const auto system = oracle::system_of(table);
  std::uniform_int_distribution<ObjectId> pick(0, 59);
  for (int i = 0; i < 1000; ++i) {
    const auto x = pick(rng);
    const auto y = pick(rng);
    ASSERT_EQ(rs_star_is(x, y, system), ind_fraction(x, y, system));
  }
}

TEST(ExponentialInclusion, Examples) {
  const InformationSystem t({"a", "b", "c"}, {{"1", "0", "1"}, {"1", "1", "1"}, {"0", "1", "0"}});
  const auto fw = FeatureWeights::uniform(3);
  EXPECT_DOUBLE_EQ(rs_star_exp(0, 0, t, fw), 1.0);
  EXPECT_NEAR(rs_star_exp(0, 1, t, fw), 0.894839, 1e-6);
  const InformationSystem u({"a", "b", "c"}, {{"0", "0", "0"}, {"1", "1", "1"}});
  EXPECT_NEAR(rs_star_exp(0, 1, u, fw), 0.367879, 1e-6);
}

TEST(ExponentialInclusion, IdentityAndSymmetry) {
  std::mt19937_64 rng(5);
  const auto table = oracle::random_table(rng, 25, 4, 2);
  const auto system = oracle::system_of(table);
  const FeatureWeights fw({0.1, 0.4, 0.2, 0.3});
  for (ObjectId x = 0; x < 25; ++x) {
    for (ObjectId y = 0; y < 25; ++y) {
      const Degree d = rs_star_exp(x, y, system, fw);
      ASSERT_NEAR(d, oracle::exp_degree(table[x], table[y], fw.values()), 1e-15);
      ASSERT_EQ(d, rs_star_exp(y, x, system, fw));
      ASSERT_EQ(d == 1.0, dis(x, y, system).empty());
      if (d == 1.0) {
        for (ObjectId z = 0; z < 25; ++z) ASSERT_EQ(rs_star_exp(x, z, system, fw), rs_star_exp(y, z, system, fw));
      }
    }
  }
}

TEST(ExpCompose, Examples) {
  EXPECT_NEAR(exp_compose(1.0, 0.42), 0.42, 1e-15);
  EXPECT_NEAR(exp_compose(std::exp(-1.0), std::exp(-1.0)), 0.018316, 1e-6);
  EXPECT_THROW(exp_compose(0.0, 0.5), DegreeUnderflow);
}

TEST(ExpCompose, ShapeOnGrid) {
  for (int i = 1; i <= 40; ++i) {
    for (int j = 1; j <= 40; ++j) {
      const double r = i / 40.0;
      const double s = j / 40.0;
      const double a = exp_compose(r, s);
      ASSERT_NEAR(a, oracle::alpha_rootlog(r, s), 1e-12);
      ASSERT_NEAR(a, exp_compose(s, r), 1e-15);
      ASSERT_LE(a, std::min(r, s) + 1e-15);
      if (i < 40) ASSERT_LE(a, exp_compose((i + 1) / 40.0, s) + 1e-15);
    }
  }
}

TEST(Transitivity, LukasiewiczInclusionExhaustive) {
  std::mt19937_64 rng(9);
  const auto table = oracle::random_table(rng, 18, 4, 2);
  const auto system = oracle::system_of(table);
  for (ObjectId x = 0; x < 18; ++x) {
    for (ObjectId y = 0; y < 18; ++y) {
      ASSERT_EQ(rs_star_is(x, y, system), rs_star_is(y, x, system));
      for (ObjectId z = 0; z < 18; ++z) {
        ASSERT_GE(rs_star_is(x, z, system) + 1e-12, t_lukasiewicz(rs_star_is(x, y, system), rs_star_is(y, z, system)));
      }
    }
  }
}

TEST(FuzzySimilarity, Examples) {
  const auto c = Carrier::make(4);
  const auto w = WeightFn::uniform(4);
  const auto rs = [&](const Entity& x, const Entity& y) { return rs_star_weight(x, y, w); };
  const auto x = c->entity(0b0011);
  const auto y = c->entity(0b0010);
  EXPECT_DOUBLE_EQ(fuzzy_similarity(rs, x, x), 1.0);
  EXPECT_DOUBLE_EQ(fuzzy_similarity(rs, x, y), 0.5);
  EXPECT_DOUBLE_EQ(fuzzy_similarity(rs, x, y), fuzzy_similarity(rs, y, x));

  const InformationSystem t({"a", "b", "c"}, {{"1", "0", "1"}, {"1", "1", "1"}});
  const auto is = [&](ObjectId p, ObjectId q) { return rs_star_is(p, q, t); };
  EXPECT_DOUBLE_EQ(fuzzy_similarity(is, ObjectId{0}, ObjectId{1}), rs_star_is(0, 1, t));
}

TEST(RoughInclusion, Dispatch) {
  const InformationSystem t({"a", "b", "c"}, {{"1", "0", "1"}, {"1", "1", "1"}});
  EXPECT_EQ(RoughInclusion::lukasiewicz().name(), "lukasiewicz");
  EXPECT_EQ(RoughInclusion::exponential(3).name(), "exp");
  EXPECT_DOUBLE_EQ(RoughInclusion::lukasiewicz().degree(0, 1, t), 2.0 / 3.0);
  EXPECT_NEAR(RoughInclusion::exponential(3).degree(0, 1, t), std::exp(-1.0 / 9.0), 1e-15);
  EXPECT_TRUE(RoughInclusion::lukasiewicz().holds(0, 1, 2.0 / 3.0, t));
  EXPECT_FALSE(RoughInclusion::lukasiewicz().holds(0, 1, 0.7, t));
}
