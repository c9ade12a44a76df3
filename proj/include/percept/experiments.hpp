#pragma once

// Separable games and the separating construction, the majority-threshold
// scan, welfare comparisons against unobserved actions, discontinuity
// counterexamples, and the bundled example games.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "percept/game_model.hpp"
#include "percept/solver_single.hpp"
#include "percept/solver_two.hpp"

namespace percept {

// ---------------------------------------------------------------------------
// Bundled games

namespace fixtures {

/// Two types, two blogs, indicator material utility and a 2|p - 0.5| privacy cost.
inline SingleGameSpec blog(double penalty_weight = 2.0) {
  SingleGameSpec s;
  s.types = {"l", "r"};
  s.actions = {"L", "R"};
  s.prior = {0.5, 0.5};
  s.utility = UtilityModel::additive({{1, 0}, {0, 1}},
                                     {PenaltySpec::tv_to_prior(penalty_weight), PenaltySpec::tv_to_prior(penalty_weight)});
  return s;
}

/// Two-player game built on a 2x2 Bayesian game with independent uniform types.
///
/// The privacy cost reads the probability of the first own type and is
/// piecewise linear through (0, 1+eps), (0.5, 0), (1, 1+eps), scaled by `weight`.
inline TwoPlayerSpec two_player(double eps = 0.1, double weight = 1.0, bool with_privacy_cost = true) {
  // payoff[t1][t2][a1][a2] = {player 1, player 2}
  const double table[2][2][2][2][2] = {
      {{{{5, 5}, {0, 0}}, {{0, 0}, {0, 0}}},   // (u, l)
       {{{5, 3}, {0, 4}}, {{0, 0}, {0, 1}}}},  // (u, r)
      {{{{3, 5}, {0, 0}}, {{4, 0}, {1, 0}}},   // (d, l)
       {{{3, 3}, {0, 4}}, {{4, 0}, {1, 1}}}},  // (d, r)
  };
  TwoPlayerSpec s;
  s.players[0].types = {"u", "d"};
  s.players[0].actions = {"U", "D"};
  s.players[1].types = {"l", "r"};
  s.players[1].actions = {"L", "R"};
  for (auto& p : s.players) p.beliefs = {{0.5, 0.5}, {0.5, 0.5}};
  for (int own = 0; own < 2; ++own)
    for (int opp = 0; opp < 2; ++opp)
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
          s.players[0].utility.v.push_back(table[own][opp][a][b][0]);
          s.players[1].utility.v.push_back(table[opp][own][b][a][1]);
        }
  const PenaltySpec cost = with_privacy_cost
                               ? PenaltySpec::piecewise({{0.0, 1.0 + eps}, {0.5, 0.0}, {1.0, 1.0 + eps}}, weight)
                               : PenaltySpec::zero();
  for (auto& p : s.players) p.utility.penalties = {cost, cost};
  return s;
}

/// The underlying Bayesian game of `two_player`.
inline BayesianGameSpec two_player_bayesian() {
  const auto pg = two_player(0.1, 1.0, false);
  BayesianGameSpec s;
  for (std::size_t i = 0; i < 2; ++i) {
    s.players[i].types = pg.players[i].types;
    s.players[i].actions = pg.players[i].actions;
    s.players[i].beliefs = pg.players[i].beliefs;
    s.players[i].payoffs = pg.players[i].utility.v;
  }
  return s;
}

/// Blog game with a cost of 2 exactly at p = 0.5 for both types, at p = 1 for
/// type r and at p = 0 for type l, where p is the probability of type r.
inline SingleGameSpec counterexample_lsc() {
  SingleGameSpec s;
  s.types = {"l", "r"};
  s.actions = {"L", "R"};
  s.prior = {0.5, 0.5};
  auto l = PenaltySpec::step({{0.0, 0.0, true, true, 2.0}, {0.5, 0.5, true, true, 2.0}});
  auto r = PenaltySpec::step({{0.5, 0.5, true, true, 2.0}, {1.0, 1.0, true, true, 2.0}});
  l.event = r.event = {"r"};
  s.utility = UtilityModel::additive({{1, 0}, {0, 1}}, {l, r});
  s.allow_discontinuous = true;
  return s;
}

/// Upper-semicontinuous variant: the cost applies on open bands of width `band`.
inline SingleGameSpec counterexample_usc(double band = 0.05) {
  SingleGameSpec s = counterexample_lsc();
  const StepPiece middle{0.5 - band, 0.5 + band, false, false, 2.0};
  auto l = PenaltySpec::step({{0.0, band, true, false, 2.0}, middle});
  auto r = PenaltySpec::step({middle, {1.0 - band, 1.0, false, true, 2.0}});
  l.event = r.event = {"r"};
  s.utility.penalties = {l, r};
  return s;
}

/// Two outcome types, two actions, a concerned privacy type with a tv cost of
/// weight 3 on the outcome marginal, and an indifferent privacy type holding
/// prior mass `alpha`.
inline SingleGameSpec majority_default(double alpha = 0.5) {
  SingleGameSpec s;
  Factorization f;
  f.outcome = {"o1", "o2"};
  f.privacy = {"concerned", "indifferent"};
  f.indifferent = "indifferent";
  f.optimal_actions = {"a1", "a2"};
  s.types = f.type_labels();
  s.actions = {"a1", "a2"};
  s.prior = {0.5 * (1.0 - alpha), 0.5 * alpha, 0.5 * (1.0 - alpha), 0.5 * alpha};
  auto concerned = PenaltySpec::tv_to_prior(3.0);
  concerned.marginal_over_outcome = true;
  s.utility = UtilityModel::additive({{1, 0}, {1, 0}, {0, 1}, {0, 1}},
                                     {concerned, PenaltySpec::zero(), concerned, PenaltySpec::zero()});
  s.factorization = f;
  return s;
}

}  // namespace fixtures

// ---------------------------------------------------------------------------
// Separable games

class AssumptionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A perception game with T = T_o x T_p, material utility depending only on the
/// outcome type, penalties reading only the outcome marginal, distinct optimal
/// actions per outcome type and an indifferent privacy type.
class SeparableGame {
 public:
  explicit SeparableGame(PerceptionGame game) : game_(std::move(game)) {
    if (!game_.factorization()) throw std::invalid_argument("separable game needs a type factorization");
    if (!game_.analytic()) throw std::invalid_argument("separable game needs an additive utility");
    const auto& f = *game_.factorization();
    const auto indifferent = f.indifferent_index();
    if (!indifferent) throw std::invalid_argument("separable game needs an indifferent privacy type");
    indifferent_ = *indifferent;
    if (f.optimal_actions.size() != f.outcome.size()) throw std::invalid_argument("separable game needs optimal actions per outcome type");
    for (const auto& label : f.optimal_actions) optimal_by_outcome_.push_back(game_.actions().at(label));
    for (std::size_t i = 0; i < optimal_by_outcome_.size(); ++i)
      for (std::size_t j = i + 1; j < optimal_by_outcome_.size(); ++j)
        if (optimal_by_outcome_[i] == optimal_by_outcome_[j])
          throw std::invalid_argument("optimal actions of distinct outcome types must differ");

    const std::size_t n = game_.type_count(), m = game_.action_count();
    for (std::size_t t = 0; t < n; ++t) {
      const std::size_t rep = f.type_index(f.outcome_of(t), 0);
      for (std::size_t a = 0; a < m; ++a)
        if (game_.material(t, a) != game_.material(rep, a))
          throw std::invalid_argument("material utility of '" + game_.types()[t] + "' depends on the privacy type");
      const std::size_t at = optimal_action(t);
      for (std::size_t a = 0; a < m; ++a)
        if (game_.material(t, a) > game_.material(t, at) + kTolerance)
          throw std::invalid_argument("declared optimal action of '" + game_.types()[t] + "' is not a maximizer");
      const auto& pen = game_.spec().utility.penalties[t];
      const bool zero = pen.kind == PenaltyKind::kZero || pen.weight == 0.0;
      if (f.privacy_of(t) == indifferent_ && !zero)
        throw std::invalid_argument("indifferent type '" + game_.types()[t] + "' must have a zero penalty");
      if (!zero && !pen.marginal_over_outcome)
        throw std::invalid_argument("penalty of '" + game_.types()[t] + "' must read only the outcome marginal");
    }
  }

  const PerceptionGame& game() const { return game_; }
  const Factorization& factorization() const { return *game_.factorization(); }
  std::size_t indifferent() const { return indifferent_; }

  /// a_t, the material optimum of type t.
  std::size_t optimal_action(std::size_t t) const { return optimal_by_outcome_[factorization().outcome_of(t)]; }

  /// Prior mass of the indifferent privacy type.
  double alpha() const {
    double a = 0.0;
    for (std::size_t t = 0; t < game_.type_count(); ++t)
      if (factorization().privacy_of(t) == indifferent_) a += game_.prior()[t];
    return a;
  }

  /// Same game with the indifferent mass set to `alpha`.
  ///
  /// The outcome marginal q and the distribution r over concerned privacy
  /// types are read off the current prior; the new prior is alpha * q(o) on
  /// indifferent types and (1 - alpha) * q(o) * r(p) on the others.
  SeparableGame with_alpha(double alpha) const {
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw std::invalid_argument("alpha must lie in [0, 1]");
    const auto& f = factorization();
    const std::size_t no = f.outcome.size(), np = f.privacy.size();
    std::vector<double> q(no, 0.0), r(np, 0.0);
    double concerned_mass = 0.0;
    for (std::size_t t = 0; t < game_.type_count(); ++t) {
      q[f.outcome_of(t)] += game_.prior()[t];
      if (f.privacy_of(t) != indifferent_) {
        r[f.privacy_of(t)] += game_.prior()[t];
        concerned_mass += game_.prior()[t];
      }
    }
    for (std::size_t p = 0; p < np; ++p) {
      if (p == indifferent_) continue;
      r[p] = concerned_mass > 0.0 ? r[p] / concerned_mass : 1.0 / static_cast<double>(np - 1);
    }
    SingleGameSpec spec = game_.spec();
    double total = 0.0;
    for (std::size_t o = 0; o < no; ++o)
      for (std::size_t p = 0; p < np; ++p) {
        const double w = p == indifferent_ ? alpha * q[o] : (1.0 - alpha) * q[o] * r[p];
        spec.prior[f.type_index(o, p)] = w;
        total += w;
      }
    for (double& w : spec.prior) w /= total;
    return SeparableGame(PerceptionGame(std::move(spec)));
  }

  /// The separating profile sigma(t) = a_t.
  Strategy separating_strategy() const {
    std::vector<std::size_t> actions(game_.type_count());
    for (std::size_t t = 0; t < actions.size(); ++t) actions[t] = optimal_action(t);
    return Strategy::pure(actions, game_.action_count());
  }

  /// max over actions of 1 - P(T_a), with T_a the types whose optimum is a.
  double analytic_alpha_bound() const {
    double bound = 0.0;
    for (std::size_t a = 0; a < game_.action_count(); ++a) {
      double mass = 0.0;
      for (std::size_t t = 0; t < game_.type_count(); ++t)
        if (optimal_action(t) == a) mass += game_.prior()[t];
      bound = std::max(bound, 1.0 - mass);
    }
    return bound;
  }

 private:
  PerceptionGame game_;
  std::size_t indifferent_ = 0;
  std::vector<std::size_t> optimal_by_outcome_;
};

struct Assumption2Violation {
  std::size_t type = 0;
  std::size_t other = 0;
  /// v(t, a_t) - v(t, a_t')
  double material_gap = 0.0;
  /// w(t, chi(t)) - w(t, chi(t'))
  double exposure_gap = 0.0;
};

struct Assumption2Result {
  bool holds = true;
  std::vector<Assumption2Violation> violations;
};

/// For each pair with different outcome types: v(t,a_t) - v(t,a_t') > w(t,chi(t)) - w(t,chi(t')).
inline Assumption2Result check_assumption2(const SeparableGame& sg) {
  const auto& g = sg.game();
  const auto& f = sg.factorization();
  const std::size_t n = g.type_count();
  Assumption2Result out;
  for (std::size_t t = 0; t < n; ++t)
    for (std::size_t s = 0; s < n; ++s) {
      if (f.outcome_of(t) == f.outcome_of(s)) continue;
      const double material = g.material(t, sg.optimal_action(t)) - g.material(t, sg.optimal_action(s));
      const double exposure = g.penalty(t, dirac(t, n)) - g.penalty(t, dirac(s, n));
      if (!(material > exposure)) out.violations.push_back({t, s, material, exposure});
    }
  out.holds = out.violations.empty();
  return out;
}

struct SeparatingEquilibrium {
  Strategy strategy;
  PerceptionMap perception;
  VerificationResult verification;
};

/// Separating profile with perceptions conditioned on each action's optimizers.
///
/// tau_t(a) is the prior restricted to {t' : a_t' = a} for actions that are
/// somebody's optimum, and chi(t) for the remaining actions. Throws
/// AssumptionError when the game violates the exposure bound above.
inline SeparatingEquilibrium build_separating_equilibrium(const SeparableGame& sg, double tol = kTolerance) {
  const auto check = check_assumption2(sg);
  if (!check.holds) {
    const auto& v = check.violations.front();
    throw AssumptionError("separating construction needs v(t,a_t) - v(t,a_t') > w(t,chi(t)) - w(t,chi(t')); fails for ('" +
                          sg.game().types()[v.type] + "', '" + sg.game().types()[v.other] + "')");
  }
  const auto& g = sg.game();
  const std::size_t n = g.type_count(), m = g.action_count();
  std::vector<std::vector<Belief>> rows(n, std::vector<Belief>(m));
  for (std::size_t a = 0; a < m; ++a) {
    std::vector<double> mass(n, 0.0);
    std::optional<std::size_t> first;
    for (std::size_t t = 0; t < n; ++t)
      if (sg.optimal_action(t) == a) {
        mass[t] = g.prior()[t];
        if (!first) first = t;
      }
    const double total = std::accumulate(mass.begin(), mass.end(), 0.0);
    for (std::size_t t = 0; t < n; ++t) {
      if (!first) rows[t][a] = dirac(t, n);
      else if (total > 0.0) rows[t][a] = Belief::normalized(mass);
      else rows[t][a] = dirac(*first, n);
    }
  }
  SeparatingEquilibrium out{sg.separating_strategy(), PerceptionMap(std::move(rows)), {}};
  out.verification = verify_equilibrium(g, out.strategy, out.perception, tol);
  return out;
}

// ---------------------------------------------------------------------------
// Majority-threshold scan

struct ScanPoint {
  double alpha = 0.0;
  std::vector<Strategy> equilibria;
  bool separation_present = false;
  bool separation_unique = false;
  bool pooling_present = false;
  double analytic_bound = 1.0;
  /// Grid-mixed corroboration, when run: candidates other than separation.
  std::optional<std::size_t> mixed_additional;
  std::optional<std::size_t> mixed_examined;
};

struct ScanResult {
  std::vector<ScanPoint> points;
  /// Smallest scanned alpha from which separation is the unique pure equilibrium at every larger scanned alpha.
  std::optional<double> alpha_hat;
  /// Scanned alphas where uniqueness fails after it held at a smaller alpha.
  std::vector<double> monotonicity_violations;
  std::optional<double> mixed_step;
};

inline std::vector<double> default_alpha_grid(int points = 21) {
  std::vector<double> out;
  for (int i = 0; i < points; ++i) out.push_back(static_cast<double>(i) / (points - 1));
  return out;
}

struct ScanOptions {
  /// When set, run the grid-mixed search at this step for every alpha >= alpha_hat.
  std::optional<double> mixed_step;
  double tol = kTolerance;
  std::uint64_t seed = 0;
};

inline ScanResult scan_alpha(const SeparableGame& family, const std::vector<double>& alphas, const SimplexGrid* grid = nullptr,
                             const ScanOptions& options = {}) {
  ScanResult out;
  out.mixed_step = options.mixed_step;
  std::vector<double> sorted = alphas;
  std::sort(sorted.begin(), sorted.end());
  std::vector<SeparableGame> games;
  for (double alpha : sorted) {
    games.push_back(family.with_alpha(alpha));
    const auto& sg = games.back();
    ScanPoint point;
    point.alpha = alpha;
    point.analytic_bound = sg.analytic_alpha_bound();
    const Strategy separating = sg.separating_strategy();
    for (auto& r : enumerate_pure_equilibria(sg.game(), grid, options.tol)) {
      if (r.strategy == separating) point.separation_present = true;
      if (full_pooling_action(sg.game(), r.strategy)) point.pooling_present = true;
      point.equilibria.push_back(std::move(r.strategy));
    }
    point.separation_unique = point.separation_present && point.equilibria.size() == 1;
    out.points.push_back(std::move(point));
  }
  bool seen_unique = false;
  for (const auto& p : out.points) {
    if (p.separation_unique) seen_unique = true;
    else if (seen_unique) out.monotonicity_violations.push_back(p.alpha);
  }
  for (std::size_t i = out.points.size(); i > 0; --i) {
    if (!out.points[i - 1].separation_unique) break;
    out.alpha_hat = out.points[i - 1].alpha;
  }
  if (options.mixed_step && out.alpha_hat) {
    for (std::size_t i = 0; i < out.points.size(); ++i) {
      auto& p = out.points[i];
      if (p.alpha < *out.alpha_hat) continue;
      const auto search = search_mixed_equilibria(games[i].game(), *options.mixed_step, options.tol, options.seed, grid);
      const Strategy separating = games[i].separating_strategy();
      p.mixed_additional = static_cast<std::size_t>(std::count_if(
          search.candidates.begin(), search.candidates.end(), [&](const MixedCandidate& c) { return !(c.strategy == separating); }));
      p.mixed_examined = search.profiles_examined;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Welfare

struct WelfareRow {
  std::string label;
  std::vector<double> payoff;
  double total = 0.0;
};

/// Legislation (unobserved actions) against every pure equilibrium, per type.
struct WelfareReport {
  std::vector<std::string> type_labels;
  /// Weights used for totals: the prior, or for two players the observers' average belief.
  std::vector<double> weights;
  std::vector<WelfareRow> legislation;
  std::vector<WelfareRow> equilibria;

  /// Largest amount by which any type is better off in an equilibrium than under legislation row `l`.
  double max_equilibrium_advantage(std::size_t l = 0) const {
    double worst = -std::numeric_limits<double>::infinity();
    for (const auto& e : equilibria)
      for (std::size_t t = 0; t < e.payoff.size(); ++t) worst = std::max(worst, e.payoff[t] - legislation[l].payoff[t]);
    return worst;
  }
};

namespace detail {

inline double weighted_total(const std::vector<double>& payoff, const std::vector<double>& weights) {
  double total = 0.0;
  for (std::size_t t = 0; t < payoff.size(); ++t) total += weights[t] * payoff[t];
  return total;
}

inline std::string profile_label(const std::vector<std::string>& types, const std::vector<std::string>& actions,
                                 const std::vector<std::size_t>& profile) {
  std::string out;
  for (std::size_t t = 0; t < profile.size(); ++t) {
    if (!out.empty()) out += ", ";
    out += types[t] + "->" + actions[profile[t]];
  }
  return out;
}

inline std::vector<std::size_t> pure_actions(const Strategy& s) {
  std::vector<std::size_t> out;
  for (std::size_t t = 0; t < s.type_count(); ++t) out.push_back(s.pure_action(t).value_or(0));
  return out;
}

}  // namespace detail

inline std::string describe_profile(const PerceptionGame& game, const Strategy& s) {
  return detail::profile_label(game.types().labels(), game.actions().labels(), detail::pure_actions(s));
}

inline WelfareReport welfare_report(const PerceptionGame& game, const SimplexGrid* grid = nullptr, double tol = kTolerance) {
  WelfareReport out;
  out.type_labels = game.types().labels();
  out.weights.assign(game.prior().weights().begin(), game.prior().weights().end());
  WelfareRow legislation{"legislation", {}, 0.0};
  for (const auto& l : legislation_welfare(game, tol)) legislation.payoff.push_back(l.value);
  legislation.total = detail::weighted_total(legislation.payoff, out.weights);
  out.legislation.push_back(std::move(legislation));
  for (const auto& r : enumerate_pure_equilibria(game, grid, tol)) {
    WelfareRow row{describe_profile(game, r.strategy), r.payoff, 0.0};
    row.total = detail::weighted_total(row.payoff, out.weights);
    out.equilibria.push_back(std::move(row));
  }
  return out;
}

inline std::string describe_profile_2p(const TwoPlayerPerceptionGame& game, const std::array<std::vector<std::size_t>, 2>& actions) {
  return detail::profile_label(game.types(0).labels(), game.actions(0).labels(), actions[0]) + "; " +
         detail::profile_label(game.types(1).labels(), game.actions(1).labels(), actions[1]);
}

/// Pure Bayesian Nash equilibria with perceptions fixed at the priors, against
/// every pure perception equilibrium. Columns are player 1's types then player 2's.
inline WelfareReport welfare_report(const TwoPlayerPerceptionGame& game, const SimplexGrid* grid = nullptr,
                                    double tol = kTolerance) {
  WelfareReport out;
  for (std::size_t i = 0; i < 2; ++i) {
    const std::size_t n = game.types(i).size(), opp = game.types(1 - i).size();
    for (std::size_t t = 0; t < n; ++t) {
      out.type_labels.push_back(game.types(i)[t]);
      double w = 0.0;
      for (std::size_t o = 0; o < opp; ++o) w += game.belief(1 - i, o)[t];
      out.weights.push_back(w / static_cast<double>(opp));
    }
  }
  for (const auto& bne : enumerate_pure_bne(legislation_game(game), tol)) {
    WelfareRow row{"legislation: " + describe_profile_2p(game, bne.actions), {}, 0.0};
    for (const auto& p : bne.payoff) row.payoff.insert(row.payoff.end(), p.begin(), p.end());
    row.total = detail::weighted_total(row.payoff, out.weights);
    out.legislation.push_back(std::move(row));
  }
  for (const auto& r : enumerate_pure_equilibria_2p(game, grid, tol)) {
    const std::array<std::vector<std::size_t>, 2> actions{detail::pure_actions(r.strategy.players[0]),
                                                          detail::pure_actions(r.strategy.players[1])};
    WelfareRow row{describe_profile_2p(game, actions), {}, 0.0};
    for (const auto& p : r.payoff) row.payoff.insert(row.payoff.end(), p.begin(), p.end());
    row.total = detail::weighted_total(row.payoff, out.weights);
    out.equilibria.push_back(std::move(row));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Discontinuity counterexamples

struct EpsilonVerdict {
  double epsilon = 0.0;
  /// Smallest maximum deviation gain over all examined profiles.
  double min_gain = 0.0;
  /// True when no examined profile is an epsilon-equilibrium.
  bool no_equilibrium = false;
};

struct CounterexampleReport {
  /// Maximum deviation gain of each pure profile (odometer order).
  std::vector<double> pure_gains;
  double pure_min_gain = 0.0;
  double mixed_min_gain = 0.0;
  Strategy mixed_min_strategy;
  std::size_t mixed_examined = 0;
  double step = 0.0;
  std::vector<EpsilonVerdict> verdicts;
};

/// Sweeps pure and grid-mixed profiles of a discontinuous game under the least
/// deterring consistent perceptions. An epsilon-equilibrium here is a profile
/// whose pure deviation gains are all at most epsilon.
inline CounterexampleReport counterexample_check(const PerceptionGame& game, double step, const std::vector<double>& epsilons,
                                                 const SimplexGrid* grid = nullptr) {
  if (game.continuous())
    throw std::invalid_argument("counterexample check needs a game whose utility is discontinuous in the belief");
  CounterexampleReport out;
  out.step = step;
  out.pure_min_gain = std::numeric_limits<double>::infinity();
  for_each_pure_profile(game.type_count(), game.action_count(), [&](const std::vector<std::size_t>& profile) {
    const double g = assess_profile(game, Strategy::pure(profile, game.action_count()), grid).max_gain;
    out.pure_gains.push_back(g);
    out.pure_min_gain = std::min(out.pure_min_gain, g);
  });
  const auto search = search_mixed_equilibria(game, step, -std::numeric_limits<double>::infinity(), 0, grid);
  out.mixed_min_gain = search.min_max_gain;
  out.mixed_min_strategy = search.min_gain_strategy;
  out.mixed_examined = search.profiles_examined;
  const double overall = std::min(out.pure_min_gain, out.mixed_min_gain);
  for (double eps : epsilons) out.verdicts.push_back({eps, overall, overall > eps});
  return out;
}

}  // namespace percept
