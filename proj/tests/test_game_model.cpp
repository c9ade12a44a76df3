#include <gtest/gtest.h>

#include <random>

#include "oracle.hpp"
#include "percept/percept.hpp"

using namespace percept;

namespace {

std::vector<double> w(const Belief& b) { return {b.weights().begin(), b.weights().end()}; }

bool any_contains(const std::vector<std::string>& errors, const std::string& needle) {
  for (const auto& e : errors)
    if (e.find(needle) != std::string::npos) return true;
  return false;
}

SingleGameSpec zero_penalty_game() {
  SingleGameSpec s;
  s.types = {"x", "y"};
  s.actions = {"A", "B"};
  s.prior = {0.3, 0.7};
  s.utility = UtilityModel::additive({{2, 0}, {0, 1}}, {PenaltySpec::zero(), PenaltySpec::zero()});
  return s;
}

}  // namespace

TEST(Validate, BlogIsValidAndContinuous) {
  const auto r = validate(fixtures::blog());
  EXPECT_TRUE(r.ok());
  EXPECT_TRUE(r.continuous);
  ASSERT_EQ(r.lipschitz.size(), 1u);
  EXPECT_EQ(r.lipschitz[0].size(), 2u);
  EXPECT_EQ(*r.lipschitz[0][0], 2.0);
}

TEST(Validate, PriorSumError) {
  auto s = fixtures::blog();
  s.prior = {0.6, 0.5};
  const auto r = validate(s);
  ASSERT_FALSE(r.ok());
  EXPECT_TRUE(any_contains(r.errors, "/prior"));
  EXPECT_TRUE(any_contains(r.errors, "1.1"));
  EXPECT_THROW(PerceptionGame{s}, ValidationError);
}

TEST(Validate, DiscontinuousNeedsOverride) {
  auto s = fixtures::counterexample_lsc();
  EXPECT_TRUE(validate(s).ok());
  EXPECT_FALSE(validate(s).continuous);
  s.allow_discontinuous = false;
  const auto r = validate(s);
  ASSERT_FALSE(r.ok());
  EXPECT_TRUE(any_contains(r.errors, "allow_discontinuous"));
}

TEST(Validate, DimensionAndLabelErrors) {
  auto s = fixtures::blog();
  s.types = {"l", "l"};
  EXPECT_TRUE(any_contains(validate(s).errors, "/types"));
  // Utility shapes are only checked once the labels are sound.
  s = fixtures::blog();
  s.utility.v.pop_back();
  s.utility.penalties.push_back(PenaltySpec::zero());
  const auto r = validate(s);
  EXPECT_TRUE(any_contains(r.errors, "/utility"));
  EXPECT_GE(r.errors.size(), 2u);
}

TEST(Validate, UnsortedKnots) {
  auto s = fixtures::blog();
  s.utility.penalties[0] = PenaltySpec::piecewise({{0.0, 1}, {0.6, 0}, {0.4, 1}, {1.0, 1}});
  EXPECT_TRUE(any_contains(validate(s).errors, "/utility/penalties/0/knots"));
}

TEST(ClassifyPrivacy, Blog) {
  const PerceptionGame g(fixtures::blog());
  for (const auto& c : classify_privacy(g)) {
    EXPECT_EQ(c.upper, Concern::kYes);
    EXPECT_EQ(c.lower, Concern::kYes);
  }
  // Cross-check by grid: the prior maximizes and the Dirac point minimizes every u(t, a, .).
  const SimplexGrid grid(200, 2);
  for (std::size_t t = 0; t < 2; ++t)
    for (std::size_t a = 0; a < 2; ++a) {
      auto f = [&](const Belief& mu) { return g.utility(t, a, mu); };
      EXPECT_NEAR(optimize_over_simplex(f, 2, OptimizeMode::kMax, grid).value, g.utility(t, a, g.prior()), 1e-12);
      EXPECT_NEAR(optimize_over_simplex(f, 2, OptimizeMode::kMin, grid).value, g.utility(t, a, dirac(t, 2)), 1e-12);
    }
}

TEST(ClassifyPrivacy, ZeroPenaltyHasBoth) {
  const PerceptionGame g(zero_penalty_game());
  for (const auto& c : classify_privacy(g)) {
    EXPECT_EQ(c.upper, Concern::kYes);
    EXPECT_EQ(c.lower, Concern::kYes);
  }
}

TEST(ClassifyPrivacy, ExposureIsLowerOnly) {
  auto s = fixtures::blog();
  s.utility.penalties = {PenaltySpec::exposure(1.0), PenaltySpec::exposure(1.0)};
  const PerceptionGame g(s);
  for (const auto& c : classify_privacy(g)) {
    EXPECT_EQ(c.upper, Concern::kNo);
    EXPECT_EQ(c.lower, Concern::kYes);
  }
}

TEST(ClassifyPrivacy, CatalogPropertiesAcrossWeights) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 60; ++i) {
    const std::size_t n = 2 + i % 3, m = 2 + i % 2;
    const auto tv = oracle::random_game(rng, n, m, oracle::Game::Kind::kTv);
    EXPECT_TRUE(has_upper_privacy(classify_privacy(PerceptionGame(tv.spec()))));
    const auto ex = oracle::random_game(rng, n, m, oracle::Game::Kind::kExposure);
    EXPECT_TRUE(has_lower_privacy(classify_privacy(PerceptionGame(ex.spec()))));
  }
}

TEST(UtilityRange, BlogExamples) {
  const PerceptionGame g(fixtures::blog());
  const auto lL = utility_range(g, 0, 0);
  EXPECT_DOUBLE_EQ(lL.min, 0.0);
  EXPECT_DOUBLE_EQ(lL.max, 1.0);
  EXPECT_EQ(w(lL.argmax), (std::vector<double>{0.5, 0.5}));
  EXPECT_DOUBLE_EQ(std::abs(lL.argmin[0] - 0.5), 0.5);
  EXPECT_EQ(lL.certification, Certification::kExact);
  EXPECT_EQ(*lL.error_bound, 0.0);
  const auto lR = utility_range(g, 0, 1);
  EXPECT_DOUBLE_EQ(lR.min, -1.0);
  EXPECT_DOUBLE_EQ(lR.max, 0.0);
}

TEST(UtilityRange, ZeroPenaltyIsPoint) {
  const PerceptionGame g(zero_penalty_game());
  for (std::size_t t = 0; t < 2; ++t)
    for (std::size_t a = 0; a < 2; ++a) {
      const auto r = utility_range(g, t, a);
      EXPECT_EQ(r.min, g.material(t, a));
      EXPECT_EQ(r.max, g.material(t, a));
    }
}

TEST(UtilityRange, ContainsPriorValueAndShiftsByV) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 80; ++i) {
    const auto kind = static_cast<oracle::Game::Kind>(i % 3);
    const auto og = oracle::random_game(rng, 2 + i % 3, 2 + i % 3, kind);
    const PerceptionGame g(og.spec());
    for (std::size_t t = 0; t < g.type_count(); ++t) {
      const auto r0 = utility_range(g, t, 0);
      for (std::size_t a = 0; a < g.action_count(); ++a) {
        const auto r = utility_range(g, t, a);
        const double at_prior = g.utility(t, a, g.prior());
        EXPECT_LE(r.min, at_prior + 1e-12);
        EXPECT_GE(r.max, at_prior - 1e-12);
        EXPECT_NEAR(r.max - r.min, r0.max - r0.min, 1e-12);
        EXPECT_NEAR(r.max - g.material(t, a), r0.max - g.material(t, 0), 1e-12);
        // The closed form agrees with the oracle's dense probe within its resolution.
        const auto ex = oracle::extremes(og, t, a);
        EXPECT_LE(r.min, ex.min + 1e-12);
        EXPECT_GE(r.max, ex.max - 1e-12);
        EXPECT_NEAR(r.min, ex.min, og.weight[t] * 2.0 / 30 + 1e-12);
        EXPECT_NEAR(r.max, ex.max, og.weight[t] * 2.0 / 30 + 1e-12);
      }
    }
  }
}

TEST(Factorization, LabelsAndMarginals) {
  Factorization f;
  f.outcome = {"o1", "o2"};
  f.privacy = {"c", "i"};
  EXPECT_EQ(f.type_labels(), (std::vector<std::string>{"o1:c", "o1:i", "o2:c", "o2:i"}));
  EXPECT_EQ(f.outcome_of(2), 1u);
  EXPECT_EQ(f.privacy_of(3), 1u);
  EXPECT_EQ(f.type_index(1, 0), 2u);
  const auto proj = f.outcome_projection();
  EXPECT_EQ(proj.marginal(Belief({0.1, 0.2, 0.3, 0.4})), (std::vector<double>{0.1 + 0.2, 0.3 + 0.4}));
}

TEST(Factorization, MajorityFixtureValidates) {
  const PerceptionGame g(fixtures::majority_default(0.3));
  ASSERT_TRUE(g.factorization().has_value());
  EXPECT_EQ(g.type_count(), 4u);
  // The concerned type's penalty reads only the outcome marginal.
  const double a = g.penalty(0, Belief({0.7, 0.0, 0.3, 0.0}));
  const double b = g.penalty(0, Belief({0.2, 0.5, 0.1, 0.2}));
  EXPECT_NEAR(a, b, 1e-12);
  EXPECT_NEAR(a, 3.0 * 0.2, 1e-12);
  EXPECT_EQ(g.penalty(1, Belief({1, 0, 0, 0})), 0.0);
}

TEST(Tabulated, InterpolatesAndIsGridCertified) {
  SingleGameSpec s;
  s.types = {"l", "r"};
  s.actions = {"L", "R"};
  s.prior = {0.5, 0.5};
  s.utility.kind = UtilityKind::kTabulatedGrid;
  s.utility.table_resolution = 4;
  const SimplexGrid grid(4, 2);
  for (std::size_t t = 0; t < 2; ++t)
    for (std::size_t a = 0; a < 2; ++a) {
      std::vector<double> values;
      for (const auto& p : grid.points()) values.push_back((t == a ? 1.0 : 0.0) - 2.0 * std::abs(p[0] - 0.5));
      s.utility.tables.push_back(values);
    }
  const PerceptionGame g(s);
  EXPECT_FALSE(g.analytic());
  EXPECT_NEAR(g.utility(0, 0, Belief({0.6, 0.4})), 0.8, 1e-12);
  EXPECT_NEAR(g.utility(0, 0, Belief({0.5, 0.5})), 1.0, 1e-12);
  const auto r = utility_range(g, 0, 0);
  EXPECT_EQ(r.certification, Certification::kGridCertified);
  EXPECT_FALSE(r.error_bound.has_value());
  EXPECT_NEAR(r.max, 1.0, 1e-12);
  EXPECT_NEAR(r.min, 0.0, 1e-12);
  const auto c = classify_privacy(g);
  EXPECT_EQ(c[0].upper, Concern::kGridCertified);
  EXPECT_EQ(c[0].lower, Concern::kGridCertified);

  s.utility.tables.pop_back();
  EXPECT_FALSE(validate(s).ok());
}

TEST(TwoPlayer, FixtureValidates) {
  const TwoPlayerPerceptionGame g(fixtures::two_player());
  EXPECT_TRUE(g.continuous());
  EXPECT_TRUE(g.analytic());
  // Bayesian payoffs minus w(0.5) = 0 at the prior.
  const Belief half({0.5, 0.5});
  EXPECT_DOUBLE_EQ(g.utility(0, 0, 0, 0, 0, half), 5.0);
  EXPECT_NEAR(g.utility(0, 1, 0, 1, 0, dirac(1, 2)), 4.0 - 1.1, 1e-12);
}

TEST(TwoPlayer, BeliefRowsChecked) {
  auto s = fixtures::two_player();
  s.players[0].beliefs[1] = {0.7, 0.7};
  EXPECT_THROW(TwoPlayerPerceptionGame{s}, ValidationError);
}

TEST(Bayesian, PayoffCountChecked) {
  auto s = fixtures::two_player_bayesian();
  s.players[1].payoffs.pop_back();
  const auto r = validate(s);
  ASSERT_FALSE(r.ok());
  EXPECT_TRUE(any_contains(r.errors, "/players/1/payoffs"));
}
