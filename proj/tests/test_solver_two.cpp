#include <gtest/gtest.h>

#include <random>
#include <set>

#include "oracle.hpp"
#include "percept/percept.hpp"

using namespace percept;

namespace {

const Belief kHalf({0.5, 0.5});

using Profile = std::array<std::vector<std::size_t>, 2>;

Profile profile_of(const TwoPlayerStrategy& s) {
  Profile p;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t t = 0; t < s.players[i].type_count(); ++t) p[i].push_back(*s.players[i].pure_action(t));
  return p;
}

// All-U / all-L with both players expecting exposure after a deviation.
TwoPlayerPerception example_perception(const TwoPlayerPerceptionGame& g) {
  auto tau = TwoPlayerPerception::sized(g);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t opp = 0; opp < 2; ++opp) {
      tau.set_all_own(i, opp, 0, kHalf);
      tau.set_all_own(i, opp, 1, dirac(1, 2));
    }
  return tau;
}

}  // namespace

TEST(ExpectedUtility2p, ExampleValues) {
  const TwoPlayerPerceptionGame g(fixtures::two_player());
  const auto sigma = pure_profile_2p(g, {0, 0}, {0, 0});
  const auto tau = example_perception(g);
  EXPECT_DOUBLE_EQ(expected_utility_2p(g, 0, 0, sigma, tau), 5.0);
  EXPECT_DOUBLE_EQ(expected_utility_2p(g, 0, 1, sigma, tau), 3.0);
  EXPECT_DOUBLE_EQ(expected_utility_2p(g, 1, 0, sigma, tau), 5.0);
  EXPECT_DOUBLE_EQ(expected_utility_2p(g, 1, 1, sigma, tau), 3.0);
}

TEST(ExpectedUtility2p, ReducesToSinglePlayer) {
  const PerceptionGame single(fixtures::blog());
  const auto g = embed_single_player(single);
  const Strategy mix({{0.3, 0.7}, {1.0, 0.0}});
  TwoPlayerStrategy sigma{{mix, Strategy::pure({0}, 1)}};
  auto tau = TwoPlayerPerception::sized(g);
  const std::vector<Belief> row{Belief({0.2, 0.8}), kHalf};
  for (std::size_t t = 0; t < 2; ++t)
    for (std::size_t a = 0; a < 2; ++a) tau.set(0, t, 0, a, row[a]);
  for (std::size_t t = 0; t < 2; ++t)
    EXPECT_NEAR(expected_utility_2p(g, 0, t, sigma, tau), expected_utility(single, t, mix.row(t), row), 1e-15);
}

TEST(IsConsistent2p, Examples) {
  const TwoPlayerPerceptionGame g(fixtures::two_player());
  const auto sigma = pure_profile_2p(g, {0, 0}, {0, 0});
  auto tau = example_perception(g);
  EXPECT_TRUE(is_consistent_2p(g, sigma, tau).consistent);
  tau.set(0, 0, 0, 0, Belief({0.9, 0.1}));
  const auto r = is_consistent_2p(g, sigma, tau);
  EXPECT_FALSE(r.consistent);
  ASSERT_EQ(r.violations.size(), 1u);
  EXPECT_EQ(r.violations[0].player, 0u);
  EXPECT_EQ(r.violations[0].own, 0u);
  EXPECT_EQ(r.violations[0].opp, 0u);
  EXPECT_EQ(r.violations[0].action, 0u);
}

TEST(IsConsistent2p, SubjectiveBeliefsGiveDifferentPosteriors) {
  auto s = fixtures::two_player();
  s.players[1].beliefs = {{0.8, 0.2}, {0.3, 0.7}};
  const TwoPlayerPerceptionGame g(s);
  const Strategy p1({{0.5, 0.5}, {1.0, 0.0}});
  TwoPlayerStrategy sigma{{p1, Strategy::pure({0, 0}, 2)}};
  const auto after_l = posterior_2p(g, sigma, 0, 0, 0);
  const auto after_r = posterior_2p(g, sigma, 0, 1, 0);
  EXPECT_NEAR((*after_l)[0], 0.4 / (0.4 + 0.2), 1e-15);
  EXPECT_NEAR((*after_r)[0], 0.15 / (0.15 + 0.7), 1e-15);
  auto tau = TwoPlayerPerception::sized(g);
  tau.set_all_own(0, 0, 0, *after_l);
  tau.set_all_own(0, 1, 0, *after_r);
  tau.set_all_own(0, 0, 1, dirac(0, 2));
  tau.set_all_own(0, 1, 1, dirac(0, 2));
  tau.set_all_own(1, 0, 0, Belief({0.5, 0.5}));
  tau.set_all_own(1, 1, 0, Belief({0.5, 0.5}));
  EXPECT_TRUE(is_consistent_2p(g, sigma, tau).consistent);
  tau.set_all_own(0, 1, 0, *after_l);
  EXPECT_FALSE(is_consistent_2p(g, sigma, tau).consistent);
}

TEST(Verify2p, ExampleAccepted) {
  const TwoPlayerPerceptionGame g(fixtures::two_player());
  const auto v = verify_equilibrium_2p(g, pure_profile_2p(g, {0, 0}, {0, 0}), example_perception(g));
  ASSERT_TRUE(v.accepted());
  EXPECT_EQ(v.report.payoff[0], (std::vector<double>{5, 3}));
  EXPECT_EQ(v.report.payoff[1], (std::vector<double>{5, 3}));
  // Type d deviating to D gets 4 - 1.1.
  EXPECT_NEAR(v.report.margin[0][1], 0.1, 1e-12);
  EXPECT_NEAR(v.report.margin[1][1], 0.1, 1e-12);
  // U stays the best reply for d.
  EXPECT_EQ(v.report.best_deviation[0][1], 0u);
}

TEST(Verify2p, WeakPenaltyRejected) {
  const TwoPlayerPerceptionGame g(fixtures::two_player(0.1, 0.5 / 1.1));
  const auto v = verify_equilibrium_2p(g, pure_profile_2p(g, {0, 0}, {0, 0}), example_perception(g));
  ASSERT_FALSE(v.accepted());
  EXPECT_EQ(v.rejection->player, 0u);
  EXPECT_EQ(v.rejection->type, 1u);
  EXPECT_EQ(*v.rejection->action, 1u);
  EXPECT_NEAR(v.report.deviation_gain[0][1], 0.5, 1e-12);
}

TEST(Enumerate2p, ExampleIncludesHighWelfareProfile) {
  const TwoPlayerPerceptionGame g(fixtures::two_player());
  const auto eqs = enumerate_pure_equilibria_2p(g);
  bool found = false;
  for (const auto& e : eqs) {
    EXPECT_TRUE(verify_equilibrium_2p(g, e.strategy, e.perception).accepted());
    if (profile_of(e.strategy) == Profile{{{0, 0}, {0, 0}}}) {
      found = true;
      EXPECT_EQ(e.payoff[0], (std::vector<double>{5, 3}));
      EXPECT_EQ(e.payoff[1], (std::vector<double>{5, 3}));
    }
  }
  EXPECT_TRUE(found);
  // Engine output, frozen: five pure perception equilibria including all-D / all-R.
  ASSERT_EQ(eqs.size(), 5u);
  EXPECT_EQ(profile_of(eqs.back().strategy), (Profile{{{1, 1}, {1, 1}}}));
  EXPECT_EQ(eqs.back().payoff[0], (std::vector<double>{0, 1}));
}

TEST(Enumerate2p, ZeroPenaltyMatchesBne) {
  const TwoPlayerPerceptionGame g(fixtures::two_player(0.1, 1.0, false));
  std::vector<Profile> perception, bne;
  for (const auto& e : enumerate_pure_equilibria_2p(g)) perception.push_back(profile_of(e.strategy));
  for (const auto& b : enumerate_pure_bne(BayesianGame(fixtures::two_player_bayesian()))) bne.push_back(b.actions);
  EXPECT_EQ(perception, bne);
}

TEST(Bne, CoordinationFixture) {
  const auto bnes = enumerate_pure_bne(BayesianGame(fixtures::two_player_bayesian()));
  std::vector<BneProfile> undominated;
  for (const auto& b : bnes)
    if (b.undominated) undominated.push_back(b);
  ASSERT_EQ(undominated.size(), 1u);
  EXPECT_EQ(undominated[0].actions, (Profile{{{0, 1}, {0, 1}}}));
  EXPECT_EQ(undominated[0].payoff[0], (std::vector<double>{2.5, 2.5}));
  EXPECT_EQ(undominated[0].payoff[1], (std::vector<double>{2.5, 2.5}));
  // The second pure profile relies on weakly dominated actions.
  ASSERT_EQ(bnes.size(), 2u);
  EXPECT_FALSE(bnes[1].undominated);
  EXPECT_EQ(bnes[1].actions, (Profile{{{1, 1}, {1, 1}}}));
}

TEST(Bne, DominantActions) {
  BayesianGameSpec s;
  for (auto& p : s.players) {
    p.types = {"only"};
    p.actions = {"x", "y"};
    p.beliefs = {{1.0}};
  }
  s.players[0].payoffs = {1, 1, 0, 0};  // x dominates
  s.players[1].payoffs = {0, 0, 2, 2};  // y dominates
  const auto bnes = enumerate_pure_bne(BayesianGame(s));
  ASSERT_EQ(bnes.size(), 1u);
  EXPECT_EQ(bnes[0].actions, (Profile{{{0}, {1}}}));
  EXPECT_TRUE(bnes[0].undominated);
}

TEST(Bne, IndifferentSecondPlayer) {
  auto s = fixtures::two_player_bayesian();
  std::fill(s.players[1].payoffs.begin(), s.players[1].payoffs.end(), 0.0);
  const BayesianGame g(s);
  const auto bnes = enumerate_pure_bne(g);
  // Reference: for each player-2 profile, every player-1 profile of interim best replies.
  std::vector<Profile> expected;
  for (std::size_t p2 = 0; p2 < 4; ++p2) {
    const std::vector<std::size_t> b{p2 / 2, p2 % 2};
    for (std::size_t p1 = 0; p1 < 4; ++p1) {
      const std::vector<std::size_t> a{p1 / 2, p1 % 2};
      bool ok = true;
      for (std::size_t t = 0; t < 2; ++t)
        for (std::size_t alt = 0; alt < 2; ++alt)
          if (bne_action_payoff(g, 0, t, alt, b) > bne_action_payoff(g, 0, t, a[t], b) + 1e-9) ok = false;
      if (ok) expected.push_back(Profile{a, b});
    }
  }
  std::set<Profile> got, want(expected.begin(), expected.end());
  for (const auto& x : bnes) got.insert(x.actions);
  EXPECT_EQ(got, want);
  std::set<std::vector<std::size_t>> p2_covered;
  for (const auto& x : bnes) p2_covered.insert(x.actions[1]);
  EXPECT_EQ(p2_covered.size(), 4u);
}

TEST(Legislation2p, FixesPerceptionAtObserverBelief) {
  const TwoPlayerPerceptionGame g(fixtures::two_player());
  const auto leg = legislation_game(g);
  const BayesianGame base(fixtures::two_player_bayesian());
  // w(0.5) = 0, so the legislation game is the underlying Bayesian game.
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t own = 0; own < 2; ++own)
      for (std::size_t opp = 0; opp < 2; ++opp)
        for (std::size_t a = 0; a < 2; ++a)
          for (std::size_t b = 0; b < 2; ++b) EXPECT_EQ(leg.payoff(i, own, opp, a, b), base.payoff(i, own, opp, a, b));
}

TEST(Reduction, EmbeddingMatchesSinglePlayer) {
  std::mt19937_64 rng(404);
  for (int i = 0; i < 40; ++i) {
    const auto og = oracle::random_game(rng, 2 + i % 2, 2 + i % 3, static_cast<oracle::Game::Kind>(i % 3));
    const PerceptionGame single(og.spec());
    const auto embedded = embed_single_player(single);
    const auto a = enumerate_pure_equilibria(single);
    const auto b = enumerate_pure_equilibria_2p(embedded);
    ASSERT_EQ(a.size(), b.size()) << "instance " << i;
    for (std::size_t k = 0; k < a.size(); ++k) {
      EXPECT_EQ(a[k].strategy, b[k].strategy.players[0]);
      EXPECT_EQ(a[k].payoff, b[k].payoff[0]);
      EXPECT_TRUE(verify_equilibrium_2p(embedded, b[k].strategy, b[k].perception).accepted());
    }
  }
}
