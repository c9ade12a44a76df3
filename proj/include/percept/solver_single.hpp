#pragma once

// Single-player perception games: posteriors, consistency, expected utility,
// equilibrium verification and enumeration, and the full-pooling tests for
// players with upper or lower privacy concerns.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "percept/distributions.hpp"
#include "percept/game_model.hpp"

namespace percept {

/// A mixed action for every type.
class Strategy {
 public:
  Strategy() = default;
  explicit Strategy(std::vector<std::vector<double>> mixed) : mixed_(std::move(mixed)) {
    for (std::size_t t = 0; t < mixed_.size(); ++t) {
      double sum = 0.0;
      for (double p : mixed_[t]) {
        if (!std::isfinite(p) || p < 0.0) throw std::invalid_argument("strategy: negative probability for type " + std::to_string(t));
        sum += p;
      }
      if (std::abs(sum - 1.0) > kSumTolerance)
        throw std::invalid_argument("strategy: probabilities for type " + std::to_string(t) + " do not sum to 1");
    }
  }

  static Strategy pure(const std::vector<std::size_t>& actions, std::size_t action_count) {
    std::vector<std::vector<double>> mixed(actions.size(), std::vector<double>(action_count, 0.0));
    for (std::size_t t = 0; t < actions.size(); ++t) mixed.at(t).at(actions[t]) = 1.0;
    return Strategy(std::move(mixed));
  }

  static Strategy pooling(std::size_t action, std::size_t type_count, std::size_t action_count) {
    return pure(std::vector<std::size_t>(type_count, action), action_count);
  }

  std::size_t type_count() const { return mixed_.size(); }
  std::size_t action_count() const { return mixed_.empty() ? 0 : mixed_.front().size(); }
  double prob(std::size_t t, std::size_t a) const { return mixed_[t][a]; }
  std::span<const double> row(std::size_t t) const { return mixed_[t]; }
  const std::vector<std::vector<double>>& rows() const { return mixed_; }

  std::optional<std::size_t> pure_action(std::size_t t) const {
    for (std::size_t a = 0; a < mixed_[t].size(); ++a)
      if (mixed_[t][a] == 1.0) return a;
    return std::nullopt;
  }
  bool is_pure() const {
    for (std::size_t t = 0; t < mixed_.size(); ++t)
      if (!pure_action(t)) return false;
    return true;
  }

  friend bool operator==(const Strategy&, const Strategy&) = default;

 private:
  std::vector<std::vector<double>> mixed_;
};

/// tau_t(a): for each type, the belief it expects the observer to hold after each action.
class PerceptionMap {
 public:
  PerceptionMap() = default;
  explicit PerceptionMap(std::vector<std::vector<Belief>> rows) : rows_(std::move(rows)) {}

  /// Every row maps every action to the same belief.
  static PerceptionMap constant(const Belief& b, std::size_t type_count, std::size_t action_count) {
    return PerceptionMap(std::vector<std::vector<Belief>>(type_count, std::vector<Belief>(action_count, b)));
  }

  std::size_t type_count() const { return rows_.size(); }
  const Belief& at(std::size_t t, std::size_t a) const { return rows_[t][a]; }
  void set(std::size_t t, std::size_t a, Belief b) { rows_[t][a] = std::move(b); }
  /// Sets tau_t(a) for every type t.
  void set_all(std::size_t a, const Belief& b) {
    for (auto& row : rows_) row[a] = b;
  }
  std::span<const Belief> row(std::size_t t) const { return rows_[t]; }

 private:
  std::vector<std::vector<Belief>> rows_;
};

/// Actions played with positive probability by some type in the prior's support.
inline std::vector<bool> on_path_actions(const PerceptionGame& game, const Strategy& sigma) {
  std::vector<bool> on(game.action_count(), false);
  for (std::size_t t = 0; t < game.type_count(); ++t) {
    if (!game.prior().in_support(t)) continue;
    for (std::size_t a = 0; a < game.action_count(); ++a)
      if (sigma.prob(t, a) > 0.0) on[a] = true;
  }
  return on;
}

/// Bayes posterior P(. | a, sigma); empty when `a` is off the equilibrium path.
inline std::optional<Belief> posterior(const PerceptionGame& game, const Strategy& sigma, std::size_t a) {
  if (!on_path_actions(game, sigma)[a]) return std::nullopt;
  std::vector<double> joint(game.type_count(), 0.0);
  for (std::size_t t = 0; t < game.type_count(); ++t) joint[t] = game.prior()[t] * sigma.prob(t, a);
  return Belief::normalized(std::move(joint));
}

/// U(t, mixed, tau_t) = sum_a mixed(a) * u(t, a, tau_t(a)).
inline double expected_utility(const PerceptionGame& game, std::size_t t, std::span<const double> mixed,
                               std::span<const Belief> tau_row) {
  double total = 0.0;
  for (std::size_t a = 0; a < game.action_count(); ++a)
    if (mixed[a] > 0.0) total += mixed[a] * game.utility(t, a, tau_row[a]);
  return total;
}

struct ConsistencyViolation {
  std::size_t type = 0;
  std::size_t action = 0;
  /// Largest absolute difference from the Bayes posterior.
  double deviation = 0.0;
};

struct ConsistencyResult {
  bool consistent = true;
  std::vector<ConsistencyViolation> violations;
};

/// On-path rows must equal the Bayes posterior within `tol`; off-path rows are free.
inline ConsistencyResult is_consistent(const PerceptionGame& game, const Strategy& sigma, const PerceptionMap& tau,
                                       double tol = kTolerance) {
  ConsistencyResult out;
  for (std::size_t a = 0; a < game.action_count(); ++a) {
    const auto post = posterior(game, sigma, a);
    if (!post) continue;
    for (std::size_t t = 0; t < game.type_count(); ++t) {
      double worst = 0.0;
      for (std::size_t s = 0; s < game.type_count(); ++s) worst = std::max(worst, std::abs(tau.at(t, a)[s] - (*post)[s]));
      if (worst > tol) out.violations.push_back({t, a, worst});
    }
  }
  out.consistent = out.violations.empty();
  return out;
}

struct OffPathWitness {
  std::size_t type = 0;
  std::size_t action = 0;
  Belief belief;
};

struct EquilibriumReport {
  Strategy strategy;
  PerceptionMap perception;
  std::vector<double> payoff;
  /// max_a u(t, a, tau_t(a)) - payoff; at most the tolerance at an equilibrium.
  std::vector<double> deviation_gain;
  /// payoff - max over actions outside supp(sigma_t); +inf when every action is in the support.
  std::vector<double> margin;
  std::vector<std::size_t> best_deviation;
  std::vector<std::size_t> on_path;
  std::vector<OffPathWitness> witnesses;
  /// Types with zero prior mass: exempt from consistency, still required to best-reply.
  std::vector<std::size_t> zero_prior_types;
  Certification certification = Certification::kExact;

  double max_gain() const {
    double g = -std::numeric_limits<double>::infinity();
    for (double x : deviation_gain) g = std::max(g, x);
    return g;
  }
};

struct Rejection {
  std::string reason;
  std::size_t type = 0;
  std::optional<std::size_t> action;
};

struct VerificationResult {
  EquilibriumReport report;
  std::optional<Rejection> rejection;
  bool accepted() const { return !rejection.has_value(); }
};

namespace detail {

inline void fill_payoffs(const PerceptionGame& game, EquilibriumReport& r) {
  const std::size_t n = game.type_count(), m = game.action_count();
  r.payoff.assign(n, 0.0);
  r.deviation_gain.assign(n, 0.0);
  r.margin.assign(n, std::numeric_limits<double>::infinity());
  r.best_deviation.assign(n, 0);
  for (std::size_t t = 0; t < n; ++t) {
    const double u = expected_utility(game, t, r.strategy.row(t), r.perception.row(t));
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < m; ++a) {
      const double value = game.utility(t, a, r.perception.at(t, a));
      if (value > best) {
        best = value;
        r.best_deviation[t] = a;
      }
      if (r.strategy.prob(t, a) == 0.0) r.margin[t] = std::min(r.margin[t], u - value);
    }
    r.payoff[t] = u;
    r.deviation_gain[t] = best - u;
  }
}

inline void fill_path_info(const PerceptionGame& game, EquilibriumReport& r) {
  const auto on = on_path_actions(game, r.strategy);
  r.on_path.clear();
  r.witnesses.clear();
  r.zero_prior_types.clear();
  for (std::size_t a = 0; a < on.size(); ++a)
    if (on[a]) r.on_path.push_back(a);
  for (std::size_t t = 0; t < game.type_count(); ++t) {
    if (!game.prior().in_support(t)) r.zero_prior_types.push_back(t);
    for (std::size_t a = 0; a < on.size(); ++a)
      if (!on[a]) r.witnesses.push_back({t, a, r.perception.at(t, a)});
  }
}

}  // namespace detail

/// Checks Bayes consistency and best replies. Mixed deviations reduce to pure ones.
inline VerificationResult verify_equilibrium(const PerceptionGame& game, const Strategy& sigma, const PerceptionMap& tau,
                                             double tol = kTolerance) {
  if (sigma.type_count() != game.type_count() || sigma.action_count() != game.action_count() ||
      tau.type_count() != game.type_count())
    throw std::invalid_argument("verify_equilibrium: profile dimensions do not match the game");
  VerificationResult out;
  out.report.strategy = sigma;
  out.report.perception = tau;
  detail::fill_path_info(game, out.report);
  detail::fill_payoffs(game, out.report);
  out.report.certification = game.analytic() ? Certification::kExact : Certification::kGridCertified;

  const auto consistency = is_consistent(game, sigma, tau, tol);
  if (!consistency.consistent) {
    const auto& v = consistency.violations.front();
    out.rejection = Rejection{"perception of type '" + game.types()[v.type] + "' after '" + game.actions()[v.action] +
                                  "' differs from the Bayes posterior",
                              v.type, v.action};
    return out;
  }
  for (std::size_t t = 0; t < game.type_count(); ++t) {
    if (out.report.deviation_gain[t] > tol) {
      const std::size_t a = out.report.best_deviation[t];
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.12g", out.report.deviation_gain[t]);
      out.rejection = Rejection{"type '" + game.types()[t] + "' gains " + buf + " by deviating to '" + game.actions()[a] + "'",
                                t, a};
      return out;
    }
  }
  return out;
}

/// Consistent perception for `sigma` that is least favorable to deviations.
///
/// On-path rows are Bayes posteriors. An off-path action gets the belief that
/// minimizes its utility, except for actions a zero-prior type plays itself,
/// which get the most favorable belief.
struct ProfileAssessment {
  PerceptionMap perception;
  std::vector<double> payoff;
  std::vector<double> gain;
  double max_gain = 0.0;
  Certification certification = Certification::kExact;
};

inline ProfileAssessment assess_profile(const PerceptionGame& game, const Strategy& sigma, const SimplexGrid* grid = nullptr) {
  const std::size_t n = game.type_count(), m = game.action_count();
  const auto on = on_path_actions(game, sigma);
  std::vector<std::optional<Belief>> post(m);
  for (std::size_t a = 0; a < m; ++a)
    if (on[a]) post[a] = posterior(game, sigma, a);

  ProfileAssessment out;
  std::vector<std::vector<Belief>> rows(n, std::vector<Belief>(m));
  out.payoff.assign(n, 0.0);
  out.gain.assign(n, 0.0);
  out.max_gain = -std::numeric_limits<double>::infinity();
  std::vector<double> value(m);
  for (std::size_t t = 0; t < n; ++t) {
    for (std::size_t a = 0; a < m; ++a) {
      if (post[a]) {
        rows[t][a] = *post[a];
        value[a] = game.utility(t, a, *post[a]);
        continue;
      }
      const auto r = game.utility_range(t, a, grid);
      out.certification = combine(out.certification, r.certification);
      if (sigma.prob(t, a) > 0.0) {
        rows[t][a] = r.argmax;
        value[a] = r.max;
      } else {
        rows[t][a] = r.argmin;
        value[a] = r.min;
      }
    }
    double u = 0.0, best = -std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < m; ++a) {
      if (sigma.prob(t, a) > 0.0) u += sigma.prob(t, a) * value[a];
      best = std::max(best, value[a]);
    }
    out.payoff[t] = u;
    out.gain[t] = best - u;
    out.max_gain = std::max(out.max_gain, out.gain[t]);
  }
  out.perception = PerceptionMap(std::move(rows));
  return out;
}

/// Calls `visit(profile)` for every pure profile, odometer order with type 0 most significant.
template <class Visit>
void for_each_pure_profile(std::size_t type_count, std::size_t action_count, Visit&& visit) {
  std::vector<std::size_t> profile(type_count, 0);
  while (true) {
    visit(profile);
    std::size_t pos = type_count;
    while (pos > 0) {
      --pos;
      if (++profile[pos] < action_count) break;
      profile[pos] = 0;
      if (pos == 0) return;
    }
    if (type_count == 0) return;
  }
}

/// All pure-strategy perception equilibria, each with its most deterring off-path witnesses.
inline std::vector<EquilibriumReport> enumerate_pure_equilibria(const PerceptionGame& game, const SimplexGrid* grid = nullptr,
                                                                double tol = kTolerance) {
  std::vector<EquilibriumReport> out;
  for_each_pure_profile(game.type_count(), game.action_count(), [&](const std::vector<std::size_t>& profile) {
    const Strategy sigma = Strategy::pure(profile, game.action_count());
    auto assessed = assess_profile(game, sigma, grid);
    if (assessed.max_gain > tol) return;
    EquilibriumReport r;
    r.strategy = sigma;
    r.perception = std::move(assessed.perception);
    detail::fill_path_info(game, r);
    detail::fill_payoffs(game, r);
    r.certification = assessed.certification;
    out.push_back(std::move(r));
  });
  return out;
}

/// The common pure action when every type plays it.
inline std::optional<std::size_t> full_pooling_action(const Strategy& sigma) {
  std::optional<std::size_t> common;
  for (std::size_t t = 0; t < sigma.type_count(); ++t) {
    const auto a = sigma.pure_action(t);
    if (!a || (common && *common != *a)) return std::nullopt;
    common = a;
  }
  return common;
}

/// The common pure action of the types with positive prior mass. Zero-mass
/// types do not move the posterior, so they are free to play anything.
inline std::optional<std::size_t> full_pooling_action(const PerceptionGame& game, const Strategy& sigma) {
  std::optional<std::size_t> common;
  for (std::size_t t = 0; t < sigma.type_count(); ++t) {
    if (!game.prior().in_support(t)) continue;
    const auto a = sigma.pure_action(t);
    if (!a || (common && *common != *a)) return std::nullopt;
    common = a;
  }
  return common;
}

struct MixedCandidate {
  Strategy strategy;
  PerceptionMap perception;
  double max_gain = 0.0;
};

struct MixedSearchResult {
  std::vector<MixedCandidate> candidates;
  std::size_t profiles_examined = 0;
  std::size_t profiles_on_grid = 0;
  /// False when the grid was too large and a seeded random subset was examined.
  bool covered_whole_grid = true;
  /// Smallest maximum deviation gain over every examined profile.
  double min_max_gain = std::numeric_limits<double>::infinity();
  Strategy min_gain_strategy;
};

/// Mixed actions whose probabilities are multiples of `step`.
inline std::vector<std::vector<double>> mixed_action_grid(std::size_t action_count, double step) {
  if (!(step > 0.0) || step > 1.0) throw std::invalid_argument("step must lie in (0, 1]");
  const double inv = 1.0 / step;
  const long k = std::lround(inv);
  if (std::abs(inv - static_cast<double>(k)) > 1e-9) throw std::invalid_argument("step must divide 1");
  SimplexGrid grid(static_cast<int>(k), action_count);
  std::vector<std::vector<double>> out;
  for (const auto& p : grid.points()) out.emplace_back(p.weights().begin(), p.weights().end());
  return out;
}

/// Grid search over mixed strategies for approximate equilibria.
///
/// Not exhaustive: only strategies on the step grid are examined, and when the
/// grid has more than `max_profiles` points a seeded random sample is used.
inline MixedSearchResult search_mixed_equilibria(const PerceptionGame& game, double step, double tol = kTolerance,
                                                 std::uint64_t seed = 0, const SimplexGrid* grid = nullptr,
                                                 std::size_t max_profiles = 2'000'000) {
  const auto actions = mixed_action_grid(game.action_count(), step);
  const std::size_t n = game.type_count();
  MixedSearchResult out;
  double total = 1.0;
  for (std::size_t t = 0; t < n; ++t) total *= static_cast<double>(actions.size());
  out.covered_whole_grid = total <= static_cast<double>(max_profiles);
  out.profiles_on_grid = out.covered_whole_grid ? static_cast<std::size_t>(total) : 0;

  auto examine = [&](const std::vector<std::size_t>& idx) {
    std::vector<std::vector<double>> mixed(n);
    for (std::size_t t = 0; t < n; ++t) mixed[t] = actions[idx[t]];
    Strategy sigma(std::move(mixed));
    auto assessed = assess_profile(game, sigma, grid);
    ++out.profiles_examined;
    if (assessed.max_gain < out.min_max_gain) {
      out.min_max_gain = assessed.max_gain;
      out.min_gain_strategy = sigma;
    }
    if (assessed.max_gain <= tol) out.candidates.push_back({std::move(sigma), std::move(assessed.perception), assessed.max_gain});
  };

  if (out.covered_whole_grid) {
    for_each_pure_profile(n, actions.size(), examine);
  } else {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, actions.size() - 1);
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < max_profiles; ++i) {
      for (auto& x : idx) x = pick(rng);
      examine(idx);
    }
  }
  return out;
}

enum class PoolingMode { kUpper, kLower };

inline const char* to_string(PoolingMode m) { return m == PoolingMode::kUpper ? "upper" : "lower"; }

struct PoolingResult {
  PoolingMode mode = PoolingMode::kUpper;
  bool exists = false;
  std::vector<std::size_t> witness_actions;
  /// L(t) for upper mode, M(t) for lower mode.
  std::vector<std::vector<std::size_t>> sets;
  /// Whether the game has the privacy concern the test presumes; otherwise the answer is advisory.
  bool concern_confirmed = false;
  /// For each witness action: whether the proof's pooling profile verifies as an equilibrium.
  std::vector<bool> witness_verified;
  Certification certification = Certification::kExact;
};

/// Full-pooling test by intersecting per-type candidate sets over the types
/// with positive prior mass.
///
/// Upper mode uses the potentially optimal actions L(t); lower mode uses the
/// actions potentially optimal at the extremes M(t). Each witness action is
/// re-checked by building the pooling profile with the corresponding
/// off-path perceptions and running verify_equilibrium.
inline PoolingResult pooling_check(const PerceptionGame& game, PoolingMode mode, const SimplexGrid* grid = nullptr,
                                   double tol = kTolerance) {
  const std::size_t n = game.type_count(), m = game.action_count();
  PoolingResult out;
  out.mode = mode;
  const auto privacy = classify_privacy(game, grid);
  out.concern_confirmed = mode == PoolingMode::kUpper ? has_upper_privacy(privacy) : has_lower_privacy(privacy);

  std::vector<std::vector<UtilityRange>> ranges(n, std::vector<UtilityRange>(m));
  for (std::size_t t = 0; t < n; ++t)
    for (std::size_t a = 0; a < m; ++a) {
      ranges[t][a] = game.utility_range(t, a, grid);
      out.certification = combine(out.certification, ranges[t][a].certification);
    }

  out.sets.assign(n, {});
  std::vector<int> count(m, 0);
  for (std::size_t t = 0; t < n; ++t) {
    const Belief exposed = dirac(t, n);
    for (std::size_t a = 0; a < m; ++a) {
      bool member = true;
      for (std::size_t b = 0; b < m && member; ++b) {
        if (mode == PoolingMode::kUpper) member = ranges[t][a].max >= ranges[t][b].min - tol;
        else member = game.utility(t, a, game.prior()) >= game.utility(t, b, exposed) - tol;
      }
      if (member) {
        out.sets[t].push_back(a);
        if (game.prior().in_support(t)) ++count[a];
      }
    }
  }
  std::size_t support = 0;
  for (std::size_t t = 0; t < n; ++t)
    if (game.prior().in_support(t)) ++support;
  for (std::size_t a = 0; a < m; ++a)
    if (count[a] == static_cast<int>(support)) out.witness_actions.push_back(a);
  out.exists = !out.witness_actions.empty();

  // Witness profile: the support pools on a, zero-mass types best-reply to the same perceptions.
  for (std::size_t a : out.witness_actions) {
    std::vector<std::vector<Belief>> rows(n, std::vector<Belief>(m));
    std::vector<std::size_t> actions(n, a);
    for (std::size_t t = 0; t < n; ++t) {
      for (std::size_t b = 0; b < m; ++b)
        rows[t][b] = b == a ? game.prior() : (mode == PoolingMode::kUpper ? ranges[t][b].argmin : dirac(t, n));
      if (game.prior().in_support(t)) continue;
      for (std::size_t b = 0; b < m; ++b)
        if (game.utility(t, b, rows[t][b]) > game.utility(t, actions[t], rows[t][actions[t]])) actions[t] = b;
    }
    const Strategy sigma = Strategy::pure(actions, m);
    out.witness_verified.push_back(verify_equilibrium(game, sigma, PerceptionMap(std::move(rows)), tol).accepted());
  }
  return out;
}

struct LegislationOutcome {
  std::vector<std::size_t> best_actions;
  double value = 0.0;
};

/// Payoffs when actions are unobserved and perceptions stay at the prior.
inline std::vector<LegislationOutcome> legislation_welfare(const PerceptionGame& game, double tol = kTolerance) {
  std::vector<LegislationOutcome> out(game.type_count());
  for (std::size_t t = 0; t < game.type_count(); ++t) {
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < game.action_count(); ++a) best = std::max(best, game.utility(t, a, game.prior()));
    out[t].value = best;
    for (std::size_t a = 0; a < game.action_count(); ++a)
      if (game.utility(t, a, game.prior()) >= best - tol) out[t].best_actions.push_back(a);
  }
  return out;
}

}  // namespace percept
