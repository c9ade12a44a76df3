#include <gtest/gtest.h>

#include <random>

#include "oracle.hpp"
#include "percept/percept.hpp"

using namespace percept;

namespace {

// Two outcome types, a concerned and an indifferent privacy type, a_o = o.
SingleGameSpec two_by_two(const std::vector<std::vector<double>>& v, const PenaltySpec& concerned, double alpha = 0.5) {
  SingleGameSpec s;
  Factorization f;
  f.outcome = {"l", "r"};
  f.privacy = {"c", "i"};
  f.indifferent = "i";
  f.optimal_actions = {"L", "R"};
  s.types = f.type_labels();
  s.actions = {"L", "R"};
  s.prior = {0.5 * (1 - alpha), 0.5 * alpha, 0.5 * (1 - alpha), 0.5 * alpha};
  auto pen = concerned;
  pen.marginal_over_outcome = pen.kind != PenaltyKind::kZero;
  s.utility = UtilityModel::additive({v[0], v[0], v[1], v[1]}, {pen, PenaltySpec::zero(), pen, PenaltySpec::zero()});
  s.factorization = f;
  return s;
}

SeparableGame separable(const SingleGameSpec& s) { return SeparableGame(PerceptionGame(s)); }

}  // namespace

TEST(SeparableGame, RejectsNonSeparableGames) {
  EXPECT_THROW(separable(fixtures::blog()), std::invalid_argument);
  auto s = two_by_two({{2, 0}, {0, 2}}, PenaltySpec::tv_to_prior(1.0));
  s.utility.v[2] = 5;  // l:i differs from l:c
  EXPECT_THROW(separable(s), std::invalid_argument);
  s = two_by_two({{2, 0}, {0, 2}}, PenaltySpec::tv_to_prior(1.0));
  s.utility.penalties[1] = PenaltySpec::exposure(1.0);
  EXPECT_THROW(separable(s), std::invalid_argument);
  s = two_by_two({{2, 0}, {0, 2}}, PenaltySpec::tv_to_prior(1.0));
  s.factorization->optimal_actions = {"L", "L"};
  EXPECT_THROW(separable(s), std::invalid_argument);
}

TEST(SeparableGame, AlphaAndBound) {
  const auto sg = separable(fixtures::majority_default(0.3));
  EXPECT_NEAR(sg.alpha(), 0.3, 1e-15);
  EXPECT_NEAR(sg.analytic_alpha_bound(), 0.5, 1e-15);
  const auto moved = sg.with_alpha(0.8);
  EXPECT_NEAR(moved.alpha(), 0.8, 1e-15);
  EXPECT_NEAR(moved.game().prior()[1], 0.4, 1e-15);
  EXPECT_NEAR(moved.game().prior()[0], 0.1, 1e-15);
}

TEST(Assumption2, DiagonalGapTwoWithBoundedPenalty) {
  EXPECT_TRUE(check_assumption2(separable(two_by_two({{2, 0}, {0, 2}}, PenaltySpec::tv_to_prior(1.0)))).holds);
  EXPECT_TRUE(check_assumption2(separable(two_by_two({{2, 0}, {0, 2}}, PenaltySpec::exposure(1.0)))).holds);
}

TEST(Assumption2, ZeroPenaltyStrictOptima) {
  EXPECT_TRUE(check_assumption2(separable(two_by_two({{1, 0}, {0, 1}}, PenaltySpec::zero()))).holds);
}

TEST(Assumption2, TiedMaterialWithExposureFails) {
  const auto r = check_assumption2(separable(two_by_two({{1, 1}, {0, 1}}, PenaltySpec::exposure(1.0))));
  EXPECT_FALSE(r.holds);
  ASSERT_FALSE(r.violations.empty());
  // l:c against both r types.
  EXPECT_EQ(r.violations[0].type, 0u);
  EXPECT_EQ(r.violations[0].other, 2u);
  EXPECT_DOUBLE_EQ(r.violations[0].material_gap, 0.0);
  EXPECT_DOUBLE_EQ(r.violations[0].exposure_gap, 1.0);
}

TEST(Separating, SatisfyingSpecAccepted) {
  const auto eq = build_separating_equilibrium(separable(two_by_two({{2, 0}, {0, 2}}, PenaltySpec::tv_to_prior(1.0))));
  EXPECT_TRUE(eq.verification.accepted());
  EXPECT_EQ(*eq.strategy.pure_action(0), 0u);
  EXPECT_EQ(*eq.strategy.pure_action(3), 1u);
}

TEST(Separating, ZeroPenaltyPaysMaterialOptimum) {
  const auto eq = build_separating_equilibrium(separable(two_by_two({{3, 1}, {0, 2}}, PenaltySpec::zero())));
  ASSERT_TRUE(eq.verification.accepted());
  EXPECT_EQ(eq.verification.report.payoff, (std::vector<double>{3, 3, 2, 2}));
}

TEST(Separating, BlogWithWeightHalf) {
  // The blog game as a separable game whose indifferent types carry no mass.
  const auto sg = separable(two_by_two({{1, 0}, {0, 1}}, PenaltySpec::tv_to_prior(0.5), 0.0));
  ASSERT_TRUE(check_assumption2(sg).holds);
  const auto eq = build_separating_equilibrium(sg);
  EXPECT_TRUE(eq.verification.accepted());
  bool found = false;
  for (const auto& e : enumerate_pure_equilibria(sg.game())) found = found || e.strategy == eq.strategy;
  EXPECT_TRUE(found);
  // Brute force on the flat blog game agrees that separation survives.
  const oracle::Game og{{0.5, 0.5}, {{1, 0}, {0, 1}}, {oracle::Game::Kind::kTv, oracle::Game::Kind::kTv}, {0.5, 0.5}};
  EXPECT_TRUE(oracle::is_pure_equilibrium(og, {0, 1}));
}

TEST(Separating, ThrowsWhenAssumptionFails) {
  EXPECT_THROW(build_separating_equilibrium(separable(two_by_two({{1, 1}, {0, 1}}, PenaltySpec::exposure(1.0)))),
               AssumptionError);
}

TEST(Separating, RandomSpecsVerify) {
  std::mt19937_64 rng(55);
  int checked = 0;
  for (int i = 0; i < 400 && checked < 60; ++i) {
    const auto sg = separable(oracle::random_separable(rng));
    if (!check_assumption2(sg).holds) continue;
    ++checked;
    const auto eq = build_separating_equilibrium(sg);
    EXPECT_TRUE(eq.verification.accepted()) << "instance " << i;
  }
  EXPECT_EQ(checked, 60);
}

TEST(Scan, MajorityFamilyPoints) {
  const auto family = separable(fixtures::majority_default());
  const auto r = scan_alpha(family, {0.0, 0.95, 1.0});
  ASSERT_EQ(r.points.size(), 3u);
  EXPECT_TRUE(r.points[0].pooling_present);
  EXPECT_TRUE(r.points[0].separation_present);
  EXPECT_FALSE(r.points[0].separation_unique);
  EXPECT_TRUE(r.points[1].separation_unique);
  EXPECT_TRUE(r.points[2].separation_unique);
  ASSERT_TRUE(r.alpha_hat.has_value());
  EXPECT_EQ(*r.alpha_hat, 0.95);
  EXPECT_TRUE(pooling_check(family.with_alpha(0.0).game(), PoolingMode::kUpper).exists);
}

TEST(Scan, DefaultGridThreshold) {
  const auto family = separable(fixtures::majority_default());
  ScanOptions options;
  options.mixed_step = 0.1;
  const auto r = scan_alpha(family, default_alpha_grid(), nullptr, options);
  ASSERT_EQ(r.points.size(), 21u);
  EXPECT_TRUE(r.monotonicity_violations.empty());
  ASSERT_TRUE(r.alpha_hat.has_value());
  // Engine output, frozen: uniqueness starts at 0.55 against the bound 0.5.
  EXPECT_NEAR(*r.alpha_hat, 0.55, 1e-12);
  for (const auto& p : r.points) {
    EXPECT_NEAR(p.analytic_bound, 0.5, 1e-12);
    if (p.alpha > p.analytic_bound + 1e-12) EXPECT_TRUE(p.separation_present) << p.alpha;
    if (p.alpha >= *r.alpha_hat) {
      ASSERT_TRUE(p.mixed_additional.has_value());
      EXPECT_EQ(*p.mixed_additional, 0u) << p.alpha;
    } else {
      EXPECT_FALSE(p.mixed_additional.has_value());
    }
  }
}

TEST(Welfare, BlogLegislationDominates) {
  const auto w = welfare_report(PerceptionGame(fixtures::blog()));
  ASSERT_EQ(w.legislation.size(), 1u);
  EXPECT_EQ(w.legislation[0].payoff, (std::vector<double>{1, 1}));
  EXPECT_DOUBLE_EQ(w.legislation[0].total, 1.0);
  ASSERT_EQ(w.equilibria.size(), 3u);
  EXPECT_EQ(w.equilibria[0].label, "l->L, r->L");
  EXPECT_LE(w.max_equilibrium_advantage(), 1e-9);
}

TEST(Welfare, ZeroPenaltyLegislationEqualsSeparation) {
  const auto w = welfare_report(PerceptionGame(fixtures::blog(0.0)));
  ASSERT_EQ(w.equilibria.size(), 1u);
  EXPECT_EQ(w.equilibria[0].payoff, w.legislation[0].payoff);
}

TEST(Welfare, TwoPlayerReversal) {
  const auto w = welfare_report(TwoPlayerPerceptionGame(fixtures::two_player()));
  EXPECT_EQ(w.type_labels, (std::vector<std::string>{"u", "d", "l", "r"}));
  std::optional<std::size_t> baseline;
  for (std::size_t i = 0; i < w.legislation.size(); ++i)
    if (w.legislation[i].payoff == std::vector<double>{2.5, 2.5, 2.5, 2.5}) baseline = i;
  ASSERT_TRUE(baseline.has_value());
  bool found = false;
  for (const auto& e : w.equilibria)
    if (e.payoff == std::vector<double>{5, 3, 5, 3}) {
      found = true;
      for (std::size_t t = 0; t < 4; ++t) EXPECT_GT(e.payoff[t], w.legislation[*baseline].payoff[t]);
    }
  EXPECT_TRUE(found);
}

TEST(Welfare, RandomUpperPrivacyNeverFavorsEquilibrium) {
  std::mt19937_64 rng(77);
  for (int i = 0; i < 40; ++i) {
    const auto og = oracle::random_game(rng, 2 + i % 2, 2 + i % 3, oracle::Game::Kind::kTv);
    EXPECT_LE(welfare_report(PerceptionGame(og.spec())).max_equilibrium_advantage(), 1e-9);
  }
}

TEST(Counterexample, LowerSemicontinuousPureGains) {
  const PerceptionGame g(fixtures::counterexample_lsc());
  const auto r = counterexample_check(g, 0.05, {0.1});
  ASSERT_EQ(r.pure_gains.size(), 4u);
  for (double x : r.pure_gains) EXPECT_GE(x, 1.0 - 1e-9);
  EXPECT_NEAR(r.pure_min_gain, 1.0, 1e-12);
  EXPECT_EQ(r.mixed_examined, 21u * 21u);
  // Engine output, frozen: the step grid contains a profile with gain 0.05,
  // l -> L and r mixing 0.95 / 0.05.
  EXPECT_NEAR(r.mixed_min_gain, 0.05, 1e-9);
  ASSERT_EQ(r.verdicts.size(), 1u);
  EXPECT_FALSE(r.verdicts[0].no_equilibrium);
}

TEST(Counterexample, UpperSemicontinuousPureGains) {
  const PerceptionGame g(fixtures::counterexample_usc());
  const auto r = counterexample_check(g, 0.05, {0.1, 0.01});
  for (double x : r.pure_gains) EXPECT_GE(x, 1.0 - 1e-9);
  ASSERT_EQ(r.verdicts.size(), 2u);
  EXPECT_TRUE(r.verdicts[1].no_equilibrium);
}

TEST(Counterexample, RefusesContinuousGames) {
  EXPECT_THROW(counterexample_check(PerceptionGame(fixtures::blog()), 0.05, {0.1}), std::invalid_argument);
}
