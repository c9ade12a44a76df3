#pragma once

// Two-player perception games with subjective type beliefs, and pure
// Bayesian Nash equilibria of the underlying Bayesian game.

#include <array>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "percept/game_model.hpp"
#include "percept/solver_single.hpp"

namespace percept {

struct TwoPlayerStrategy {
  std::array<Strategy, 2> players;

  bool is_pure() const { return players[0].is_pure() && players[1].is_pure(); }
  friend bool operator==(const TwoPlayerStrategy&, const TwoPlayerStrategy&) = default;
};

/// tau_i(own, opp, a): what player i of type `own` expects an opponent of type
/// `opp` to believe about i's type after seeing action `a`.
class TwoPlayerPerception {
 public:
  TwoPlayerPerception() = default;

  static TwoPlayerPerception sized(const TwoPlayerPerceptionGame& game) {
    TwoPlayerPerception p;
    for (std::size_t i = 0; i < 2; ++i) {
      const std::size_t own = game.types(i).size(), opp = game.types(1 - i).size(), m = game.actions(i).size();
      p.rows_[i].assign(own, std::vector<std::vector<Belief>>(opp, std::vector<Belief>(m, Belief::uniform(own))));
    }
    return p;
  }

  const Belief& at(std::size_t i, std::size_t own, std::size_t opp, std::size_t a) const { return rows_[i][own][opp][a]; }
  void set(std::size_t i, std::size_t own, std::size_t opp, std::size_t a, Belief b) { rows_[i][own][opp][a] = std::move(b); }
  /// Sets the entry for every own type of player i.
  void set_all_own(std::size_t i, std::size_t opp, std::size_t a, const Belief& b) {
    for (auto& row : rows_[i]) row[opp][a] = b;
  }

 private:
  std::array<std::vector<std::vector<std::vector<Belief>>>, 2> rows_;
};

/// Actions of player i that opponent type `opp` expects with positive probability.
inline std::vector<bool> on_path_actions_2p(const TwoPlayerPerceptionGame& game, const TwoPlayerStrategy& sigma, std::size_t i,
                                            std::size_t opp) {
  const Belief& observer = game.belief(1 - i, opp);
  std::vector<bool> on(game.actions(i).size(), false);
  for (std::size_t t = 0; t < game.types(i).size(); ++t) {
    if (!observer.in_support(t)) continue;
    for (std::size_t a = 0; a < on.size(); ++a)
      if (sigma.players[i].prob(t, a) > 0.0) on[a] = true;
  }
  return on;
}

/// Opponent type `opp`'s posterior over player i's type after action `a`, if on path.
inline std::optional<Belief> posterior_2p(const TwoPlayerPerceptionGame& game, const TwoPlayerStrategy& sigma, std::size_t i,
                                          std::size_t opp, std::size_t a) {
  if (!on_path_actions_2p(game, sigma, i, opp)[a]) return std::nullopt;
  const Belief& observer = game.belief(1 - i, opp);
  std::vector<double> joint(game.types(i).size());
  for (std::size_t t = 0; t < joint.size(); ++t) joint[t] = observer[t] * sigma.players[i].prob(t, a);
  return Belief::normalized(std::move(joint));
}

/// Interim payoff of player i at type `own` from pure action `a`.
inline double action_payoff_2p(const TwoPlayerPerceptionGame& game, std::size_t i, std::size_t own, std::size_t a,
                               const TwoPlayerStrategy& sigma, const TwoPlayerPerception& tau) {
  const Belief& belief = game.belief(i, own);
  const Strategy& other = sigma.players[1 - i];
  double total = 0.0;
  for (std::size_t opp = 0; opp < belief.size(); ++opp) {
    if (belief[opp] == 0.0) continue;
    const Belief& mu = tau.at(i, own, opp, a);
    for (std::size_t b = 0; b < other.action_count(); ++b)
      if (other.prob(opp, b) > 0.0) total += belief[opp] * other.prob(opp, b) * game.utility(i, own, opp, a, b, mu);
  }
  return total;
}

/// U_i(sigma)(own): the triple sum over own actions, opponent types and opponent actions.
inline double expected_utility_2p(const TwoPlayerPerceptionGame& game, std::size_t i, std::size_t own,
                                  const TwoPlayerStrategy& sigma, const TwoPlayerPerception& tau) {
  double total = 0.0;
  for (std::size_t a = 0; a < game.actions(i).size(); ++a) {
    const double p = sigma.players[i].prob(own, a);
    if (p > 0.0) total += p * action_payoff_2p(game, i, own, a, sigma, tau);
  }
  return total;
}

struct ConsistencyViolation2p {
  std::size_t player = 0;
  std::size_t own = 0;
  std::size_t opp = 0;
  std::size_t action = 0;
  double deviation = 0.0;
};

struct ConsistencyResult2p {
  bool consistent = true;
  std::vector<ConsistencyViolation2p> violations;
};

inline ConsistencyResult2p is_consistent_2p(const TwoPlayerPerceptionGame& game, const TwoPlayerStrategy& sigma,
                                            const TwoPlayerPerception& tau, double tol = kTolerance) {
  ConsistencyResult2p out;
  for (std::size_t i = 0; i < 2; ++i) {
    const std::size_t n_own = game.types(i).size();
    for (std::size_t opp = 0; opp < game.types(1 - i).size(); ++opp)
      for (std::size_t a = 0; a < game.actions(i).size(); ++a) {
        const auto post = posterior_2p(game, sigma, i, opp, a);
        if (!post) continue;
        for (std::size_t own = 0; own < n_own; ++own) {
          double worst = 0.0;
          for (std::size_t s = 0; s < n_own; ++s) worst = std::max(worst, std::abs(tau.at(i, own, opp, a)[s] - (*post)[s]));
          if (worst > tol) out.violations.push_back({i, own, opp, a, worst});
        }
      }
  }
  out.consistent = out.violations.empty();
  return out;
}

struct TwoPlayerReport {
  TwoPlayerStrategy strategy;
  TwoPlayerPerception perception;
  std::array<std::vector<double>, 2> payoff;
  std::array<std::vector<double>, 2> deviation_gain;
  /// payoff - best action outside the support; +inf when the support is everything.
  std::array<std::vector<double>, 2> margin;
  std::array<std::vector<std::size_t>, 2> best_deviation;
  Certification certification = Certification::kExact;

  double max_gain() const {
    double g = -std::numeric_limits<double>::infinity();
    for (const auto& v : deviation_gain)
      for (double x : v) g = std::max(g, x);
    return g;
  }
};

struct Rejection2p {
  std::string reason;
  std::size_t player = 0;
  std::size_t type = 0;
  std::optional<std::size_t> action;
};

struct VerificationResult2p {
  TwoPlayerReport report;
  std::optional<Rejection2p> rejection;
  bool accepted() const { return !rejection.has_value(); }
};

namespace detail {

inline void fill_payoffs_2p(const TwoPlayerPerceptionGame& game, TwoPlayerReport& r) {
  for (std::size_t i = 0; i < 2; ++i) {
    const std::size_t n = game.types(i).size(), m = game.actions(i).size();
    r.payoff[i].assign(n, 0.0);
    r.deviation_gain[i].assign(n, 0.0);
    r.margin[i].assign(n, std::numeric_limits<double>::infinity());
    r.best_deviation[i].assign(n, 0);
    for (std::size_t t = 0; t < n; ++t) {
      double u = 0.0, best = -std::numeric_limits<double>::infinity();
      std::vector<double> value(m);
      for (std::size_t a = 0; a < m; ++a) {
        value[a] = action_payoff_2p(game, i, t, a, r.strategy, r.perception);
        u += r.strategy.players[i].prob(t, a) * value[a];
        if (value[a] > best) {
          best = value[a];
          r.best_deviation[i][t] = a;
        }
      }
      for (std::size_t a = 0; a < m; ++a)
        if (r.strategy.players[i].prob(t, a) == 0.0) r.margin[i][t] = std::min(r.margin[i][t], u - value[a]);
      r.payoff[i][t] = u;
      r.deviation_gain[i][t] = best - u;
    }
  }
}

}  // namespace detail

inline VerificationResult2p verify_equilibrium_2p(const TwoPlayerPerceptionGame& game, const TwoPlayerStrategy& sigma,
                                                  const TwoPlayerPerception& tau, double tol = kTolerance) {
  VerificationResult2p out;
  out.report.strategy = sigma;
  out.report.perception = tau;
  out.report.certification = game.analytic() ? Certification::kExact : Certification::kGridCertified;
  detail::fill_payoffs_2p(game, out.report);
  const auto consistency = is_consistent_2p(game, sigma, tau, tol);
  if (!consistency.consistent) {
    const auto& v = consistency.violations.front();
    out.rejection = Rejection2p{"player " + std::to_string(v.player + 1) + " perception at type '" +
                                    game.types(v.player)[v.own] + "' (observer '" + game.types(1 - v.player)[v.opp] +
                                    "', action '" + game.actions(v.player)[v.action] + "') differs from the Bayes posterior",
                                v.player, v.own, v.action};
    return out;
  }
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t t = 0; t < game.types(i).size(); ++t)
      if (out.report.deviation_gain[i][t] > tol) {
        const std::size_t a = out.report.best_deviation[i][t];
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.12g", out.report.deviation_gain[i][t]);
        out.rejection = Rejection2p{"player " + std::to_string(i + 1) + " type '" + game.types(i)[t] + "' gains " + buf +
                                        " by deviating to '" + game.actions(i)[a] + "'",
                                    i, t, a};
        return out;
      }
  return out;
}

/// Perception least favorable to deviations, as in the single-player assessment:
/// each off-path entry is minimized independently over the simplex.
inline TwoPlayerReport assess_profile_2p(const TwoPlayerPerceptionGame& game, const TwoPlayerStrategy& sigma,
                                         const SimplexGrid* grid = nullptr) {
  TwoPlayerReport r;
  r.strategy = sigma;
  r.perception = TwoPlayerPerception::sized(game);
  for (std::size_t i = 0; i < 2; ++i) {
    const Strategy& other = sigma.players[1 - i];
    for (std::size_t opp = 0; opp < game.types(1 - i).size(); ++opp) {
      const auto on = on_path_actions_2p(game, sigma, i, opp);
      for (std::size_t a = 0; a < on.size(); ++a) {
        if (on[a]) {
          r.perception.set_all_own(i, opp, a, *posterior_2p(game, sigma, i, opp, a));
          continue;
        }
        for (std::size_t own = 0; own < game.types(i).size(); ++own) {
          const auto range = game.utility_range(i, own, opp, a, other.row(opp), grid);
          r.certification = combine(r.certification, range.certification);
          const bool own_play = sigma.players[i].prob(own, a) > 0.0;
          r.perception.set(i, own, opp, a, own_play ? range.argmax : range.argmin);
        }
      }
    }
  }
  detail::fill_payoffs_2p(game, r);
  return r;
}

/// Pure profile from per-player action lists.
inline TwoPlayerStrategy pure_profile_2p(const TwoPlayerPerceptionGame& game, const std::vector<std::size_t>& p1,
                                         const std::vector<std::size_t>& p2) {
  return TwoPlayerStrategy{{Strategy::pure(p1, game.actions(0).size()), Strategy::pure(p2, game.actions(1).size())}};
}

namespace detail {

/// Odometer over pure profiles of both players: player 1's types first, most significant first.
template <class Visit>
void for_each_pure_profile_2p(std::size_t n1, std::size_t m1, std::size_t n2, std::size_t m2, Visit&& visit) {
  std::vector<std::size_t> digits(n1 + n2, 0);
  auto radix = [&](std::size_t pos) { return pos < n1 ? m1 : m2; };
  while (true) {
    visit(std::vector<std::size_t>(digits.begin(), digits.begin() + static_cast<std::ptrdiff_t>(n1)),
          std::vector<std::size_t>(digits.begin() + static_cast<std::ptrdiff_t>(n1), digits.end()));
    std::size_t pos = digits.size();
    bool done = true;
    while (pos > 0) {
      --pos;
      if (++digits[pos] < radix(pos)) {
        done = false;
        break;
      }
      digits[pos] = 0;
    }
    if (done) return;
  }
}

}  // namespace detail

inline std::vector<TwoPlayerReport> enumerate_pure_equilibria_2p(const TwoPlayerPerceptionGame& game,
                                                                 const SimplexGrid* grid = nullptr, double tol = kTolerance) {
  std::vector<TwoPlayerReport> out;
  detail::for_each_pure_profile_2p(game.types(0).size(), game.actions(0).size(), game.types(1).size(), game.actions(1).size(),
                                   [&](const std::vector<std::size_t>& p1, const std::vector<std::size_t>& p2) {
                                     auto r = assess_profile_2p(game, pure_profile_2p(game, p1, p2), grid);
                                     if (r.max_gain() <= tol) out.push_back(std::move(r));
                                   });
  return out;
}

// ---------------------------------------------------------------------------
// Bayesian Nash equilibria

struct BneProfile {
  std::array<std::vector<std::size_t>, 2> actions;
  std::array<std::vector<double>, 2> payoff;
  /// No type plays an interim weakly dominated action.
  bool undominated = true;
};

inline double bne_action_payoff(const BayesianGame& game, std::size_t i, std::size_t own, std::size_t a,
                                const std::vector<std::size_t>& other) {
  const Belief& belief = game.belief(i, own);
  double total = 0.0;
  for (std::size_t opp = 0; opp < belief.size(); ++opp)
    if (belief[opp] > 0.0) total += belief[opp] * game.payoff(i, own, opp, a, other[opp]);
  return total;
}

/// Whether some other action does at least as well against every opponent
/// type in the support and every opponent action, and strictly better once.
inline bool weakly_dominated(const BayesianGame& game, std::size_t i, std::size_t own, std::size_t a, double tol = kTolerance) {
  const Belief& belief = game.belief(i, own);
  for (std::size_t alt = 0; alt < game.action_count(i); ++alt) {
    if (alt == a) continue;
    bool weak = true, strict = false;
    for (std::size_t opp = 0; opp < belief.size() && weak; ++opp) {
      if (!(belief[opp] > 0.0)) continue;
      for (std::size_t b = 0; b < game.action_count(1 - i); ++b) {
        const double diff = game.payoff(i, own, opp, alt, b) - game.payoff(i, own, opp, a, b);
        if (diff < -tol) weak = false;
        if (diff > tol) strict = true;
      }
    }
    if (weak && strict) return true;
  }
  return false;
}

/// Every pure type-contingent profile in which each type best-replies in interim expectation.
inline std::vector<BneProfile> enumerate_pure_bne(const BayesianGame& game, double tol = kTolerance) {
  std::vector<BneProfile> out;
  detail::for_each_pure_profile_2p(game.type_count(0), game.action_count(0), game.type_count(1), game.action_count(1),
                                   [&](const std::vector<std::size_t>& p1, const std::vector<std::size_t>& p2) {
                                     BneProfile prof{{p1, p2}, {}};
                                     for (std::size_t i = 0; i < 2; ++i) {
                                       const auto& own = prof.actions[i];
                                       const auto& other = prof.actions[1 - i];
                                       for (std::size_t t = 0; t < own.size(); ++t) {
                                         const double u = bne_action_payoff(game, i, t, own[t], other);
                                         for (std::size_t a = 0; a < game.action_count(i); ++a)
                                           if (bne_action_payoff(game, i, t, a, other) > u + tol) return;
                                         prof.payoff[i].push_back(u);
                                         if (weakly_dominated(game, i, t, own[t], tol)) prof.undominated = false;
                                       }
                                     }
                                     out.push_back(std::move(prof));
                                   });
  return out;
}

/// The Bayesian game obtained by fixing every perception at the observer's prior
/// belief: the outcome when actions are not observed.
inline BayesianGame legislation_game(const TwoPlayerPerceptionGame& game) {
  BayesianGameSpec spec;
  for (std::size_t i = 0; i < 2; ++i) {
    auto& p = spec.players[i];
    p.types = game.types(i).labels();
    p.actions = game.actions(i).labels();
    p.beliefs = game.spec().players[i].beliefs;
    for (std::size_t own = 0; own < game.types(i).size(); ++own)
      for (std::size_t opp = 0; opp < game.types(1 - i).size(); ++opp)
        for (std::size_t a = 0; a < game.actions(i).size(); ++a)
          for (std::size_t b = 0; b < game.actions(1 - i).size(); ++b)
            p.payoffs.push_back(game.utility(i, own, opp, a, b, game.belief(1 - i, opp)));
  }
  return BayesianGame(std::move(spec));
}

/// Embeds a single-player game as player 1 facing a passive observer with one type and one action.
inline TwoPlayerPerceptionGame embed_single_player(const PerceptionGame& game) {
  const auto& s = game.spec();
  TwoPlayerSpec spec;
  spec.allow_discontinuous = s.allow_discontinuous;
  auto& p1 = spec.players[0];
  p1.types = s.types;
  p1.actions = s.actions;
  p1.beliefs.assign(s.types.size(), std::vector<double>{1.0});
  p1.utility = s.utility;
  for (const auto& pen : p1.utility.penalties)
    if (pen.marginal_over_outcome) throw std::invalid_argument("embed_single_player: outcome-marginal penalties are not supported");
  auto& p2 = spec.players[1];
  p2.types = {"observer"};
  p2.actions = {"observe"};
  p2.beliefs = {s.prior};
  p2.utility.v.assign(s.types.size() * s.actions.size(), 0.0);
  p2.utility.penalties = {PenaltySpec::zero()};
  return TwoPlayerPerceptionGame(std::move(spec));
}

}  // namespace percept
