#pragma once

// Data model for single- and two-player perception games: label spaces,
// utility models, validation and privacy-concern classification.

#include <array>
#include <cstdlib>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "percept/belief_table.hpp"
#include "percept/distributions.hpp"
#include "percept/penalty.hpp"

namespace percept {

/// Ordered set of distinct labels.
template <class Tag>
class LabelSet {
 public:
  LabelSet() = default;
  explicit LabelSet(std::vector<std::string> labels) : labels_(std::move(labels)) {}

  std::size_t size() const { return labels_.size(); }
  const std::string& operator[](std::size_t i) const { return labels_[i]; }
  const std::vector<std::string>& labels() const { return labels_; }

  std::optional<std::size_t> index_of(const std::string& label) const {
    for (std::size_t i = 0; i < labels_.size(); ++i)
      if (labels_[i] == label) return i;
    return std::nullopt;
  }

  std::size_t at(const std::string& label) const {
    if (auto i = index_of(label)) return *i;
    throw std::out_of_range("unknown label '" + label + "'");
  }

 private:
  std::vector<std::string> labels_;
};

using TypeSpace = LabelSet<struct TypeTag>;
using ActionSpace = LabelSet<struct ActionTag>;

/// Product structure T = T_o x T_p. Type labels are "o:p", outcome-major.
struct Factorization {
  std::vector<std::string> outcome;
  std::vector<std::string> privacy;
  /// Privacy type that does not care about perceptions.
  std::optional<std::string> indifferent;
  /// Optimal action label per outcome type; empty when not declared.
  std::vector<std::string> optimal_actions;

  static std::string compose(const std::string& o, const std::string& p) { return o + ":" + p; }

  std::vector<std::string> type_labels() const {
    std::vector<std::string> out;
    for (const auto& o : outcome)
      for (const auto& p : privacy) out.push_back(compose(o, p));
    return out;
  }

  std::size_t outcome_of(std::size_t type) const { return type / privacy.size(); }
  std::size_t privacy_of(std::size_t type) const { return type % privacy.size(); }
  std::size_t type_index(std::size_t o, std::size_t p) const { return o * privacy.size() + p; }

  std::optional<std::size_t> indifferent_index() const {
    if (!indifferent) return std::nullopt;
    for (std::size_t i = 0; i < privacy.size(); ++i)
      if (privacy[i] == *indifferent) return i;
    return std::nullopt;
  }

  BeliefProjection outcome_projection() const {
    BeliefProjection p;
    p.class_labels = outcome;
    p.class_of.resize(outcome.size() * privacy.size());
    for (std::size_t t = 0; t < p.class_of.size(); ++t) p.class_of[t] = outcome_of(t);
    return p;
  }

  friend bool operator==(const Factorization&, const Factorization&) = default;
};

enum class UtilityKind { kAdditiveSeparable, kTabulatedGrid };

/// Utility over cells (own type, opponent type, own action, opponent action).
///
/// Single-player games have one opponent type and one opponent action, so a
/// cell is (type, action). Values are stored flat in cell-major order:
/// ((own * opp_types + opp) * actions + a) * opp_actions + b.
struct UtilityModel {
  UtilityKind kind = UtilityKind::kAdditiveSeparable;
  std::vector<double> v;
  std::vector<PenaltySpec> penalties;
  int table_resolution = 0;
  std::vector<std::vector<double>> tables;

  static UtilityModel additive(const std::vector<std::vector<double>>& v_by_type_action, std::vector<PenaltySpec> penalties) {
    UtilityModel m;
    for (const auto& row : v_by_type_action) m.v.insert(m.v.end(), row.begin(), row.end());
    m.penalties = std::move(penalties);
    return m;
  }

  friend bool operator==(const UtilityModel&, const UtilityModel&) = default;
};

enum class Certification { kExact, kGridCertified };

inline const char* to_string(Certification c) { return c == Certification::kExact ? "exact" : "grid-certified"; }

inline Certification combine(Certification a, Certification b) {
  return a == Certification::kExact && b == Certification::kExact ? Certification::kExact : Certification::kGridCertified;
}

struct UtilityRange {
  double min = 0.0;
  double max = 0.0;
  Belief argmin;
  Belief argmax;
  std::optional<double> error_bound;
  Certification certification = Certification::kExact;
};

struct ValidationReport {
  std::vector<std::string> errors;
  bool continuous = true;
  /// Declared L1-Lipschitz bound of each type's penalty, per player for two-player games.
  std::vector<std::vector<std::optional<double>>> lipschitz;

  bool ok() const { return errors.empty(); }
};

class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(std::vector<std::string> errors)
      : std::invalid_argument(join(errors)), errors_(std::move(errors)) {}
  const std::vector<std::string>& errors() const { return errors_; }

 private:
  static std::string join(const std::vector<std::string>& errors) {
    std::string out = "invalid game";
    for (const auto& e : errors) out += "\n  " + e;
    return out;
  }
  std::vector<std::string> errors_;
};

/// Grid resolution for simplex searches: PERCEPT_GRID if set, else by dimension.
inline int default_grid_resolution(std::size_t dimension) {
  if (const char* env = std::getenv("PERCEPT_GRID")) {
    const int k = std::atoi(env);
    if (k > 0) return k;
  }
  return SimplexGrid::default_resolution(dimension);
}

namespace detail {

inline void check_labels(const std::vector<std::string>& labels, const std::string& path, std::vector<std::string>& errors) {
  if (labels.empty()) errors.push_back(path + ": must not be empty");
  std::set<std::string> seen;
  for (const auto& l : labels)
    if (!seen.insert(l).second) errors.push_back(path + ": duplicate label '" + l + "'");
}

inline void check_probability_vector(const std::vector<double>& w, std::size_t expected, const std::string& path,
                                     std::vector<std::string>& errors) {
  if (w.size() != expected)
    errors.push_back(path + ": expected " + std::to_string(expected) + " entries, got " + std::to_string(w.size()));
  double sum = 0.0;
  bool entries_ok = true;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!std::isfinite(w[i]) || w[i] < 0.0) {
      errors.push_back(path + "/" + std::to_string(i) + ": probability must be finite and >= 0");
      entries_ok = false;
    }
    sum += w[i];
  }
  if (entries_ok && std::abs(sum - 1.0) > kSumTolerance) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", sum);
    errors.push_back(path + ": weights sum to " + std::string(buf) + ", expected 1");
  }
}

struct CellShape {
  std::size_t own_types = 1;
  std::size_t opp_types = 1;
  std::size_t actions = 1;
  std::size_t opp_actions = 1;

  std::size_t cells() const { return own_types * opp_types * actions * opp_actions; }
  std::size_t index(std::size_t own, std::size_t opp, std::size_t a, std::size_t b) const {
    return ((own * opp_types + opp) * actions + a) * opp_actions + b;
  }
};

/// Context needed to bind penalties of one player.
struct PenaltyContext {
  std::vector<std::string> type_labels;
  const Factorization* factorization = nullptr;
  /// Default reference for tv_to_prior; absent when the observers disagree.
  std::optional<Belief> default_reference;
  bool allow_discontinuous = false;
};

inline void check_utility(const UtilityModel& u, const CellShape& shape, const PenaltyContext& ctx,
                          const std::string& path, std::vector<std::string>& errors, bool& continuous,
                          std::vector<std::optional<double>>& lipschitz) {
  lipschitz.assign(shape.own_types, std::nullopt);
  if (u.kind == UtilityKind::kAdditiveSeparable) {
    if (u.v.size() != shape.cells())
      errors.push_back(path + "/v: expected " + std::to_string(shape.cells()) + " values, got " + std::to_string(u.v.size()));
    for (double x : u.v)
      if (!std::isfinite(x)) {
        errors.push_back(path + "/v: values must be finite");
        break;
      }
    if (u.penalties.size() != shape.own_types) {
      errors.push_back(path + "/penalties: expected one penalty per type (" + std::to_string(shape.own_types) + "), got " +
                       std::to_string(u.penalties.size()));
      return;
    }
    for (std::size_t t = 0; t < u.penalties.size(); ++t) {
      const auto& p = u.penalties[t];
      const std::string at = path + "/penalties/" + std::to_string(t);
      auto shape_errors = check_penalty_shape(p, at);
      errors.insert(errors.end(), shape_errors.begin(), shape_errors.end());
      if (!p.continuous()) {
        continuous = false;
        if (!ctx.allow_discontinuous)
          errors.push_back(at + ": discontinuous penalty (step_marginal) violates continuity in the belief; set flags.allow_discontinuous to load it");
      }
      if (p.marginal_over_outcome && !ctx.factorization)
        errors.push_back(at + "/marginal_over: 'outcome' requires a type factorization");
      const auto& class_labels =
          p.marginal_over_outcome && ctx.factorization ? ctx.factorization->outcome : ctx.type_labels;
      for (const auto& label : p.event)
        if (std::find(class_labels.begin(), class_labels.end(), label) == class_labels.end())
          errors.push_back(at + "/event: unknown label '" + label + "'");
      if (p.reference) {
        check_probability_vector(*p.reference, shape.own_types, at + "/reference", errors);
      } else if (p.kind == PenaltyKind::kTvToPrior && !ctx.default_reference) {
        errors.push_back(at + "/reference: tv_to_prior needs an explicit reference when observers hold different beliefs");
      }
      if (shape_errors.empty()) {
        switch (p.kind) {
          case PenaltyKind::kZero: lipschitz[t] = 0.0; break;
          case PenaltyKind::kTvToPrior:
          case PenaltyKind::kExposure: lipschitz[t] = p.weight; break;
          case PenaltyKind::kPiecewiseLinearMarginal: {
            double slope = 0.0;
            for (std::size_t i = 1; i < p.knots.size(); ++i)
              slope = std::max(slope, std::abs((p.knots[i].value - p.knots[i - 1].value) /
                                               (p.knots[i].position - p.knots[i - 1].position)));
            lipschitz[t] = p.weight * slope;
            break;
          }
          case PenaltyKind::kStepMarginal: break;
        }
      }
    }
  } else {
    if (u.table_resolution < 1) {
      errors.push_back(path + "/resolution: must be a positive integer");
      return;
    }
    if (u.tables.size() != shape.cells()) {
      errors.push_back(path + "/values: expected " + std::to_string(shape.cells()) + " tables, got " +
                       std::to_string(u.tables.size()));
      return;
    }
    const std::size_t points = SimplexGrid::composition_count(u.table_resolution, shape.own_types);
    for (std::size_t c = 0; c < u.tables.size(); ++c) {
      if (u.tables[c].size() != points) {
        errors.push_back(path + "/values: table " + std::to_string(c) + " has " + std::to_string(u.tables[c].size()) +
                         " values, expected " + std::to_string(points));
        continue;
      }
      for (double x : u.tables[c])
        if (!std::isfinite(x)) {
          errors.push_back(path + "/values: table " + std::to_string(c) + " has non-finite values");
          break;
        }
    }
  }
}

/// Runtime form of a validated UtilityModel for one player.
class BoundUtility {
 public:
  BoundUtility() = default;
  BoundUtility(const UtilityModel& model, const CellShape& shape, const PenaltyContext& ctx) : model_(model), shape_(shape) {
    if (model.kind == UtilityKind::kAdditiveSeparable) {
      for (std::size_t t = 0; t < shape.own_types; ++t) {
        const auto& spec = model.penalties[t];
        BeliefProjection projection = spec.marginal_over_outcome ? ctx.factorization->outcome_projection()
                                                                 : BeliefProjection::identity(ctx.type_labels);
        Belief reference = spec.reference ? Belief(*spec.reference)
                                          : (ctx.default_reference ? *ctx.default_reference : Belief::uniform(shape.own_types));
        penalties_.emplace_back(spec, t, std::move(projection), std::move(reference));
        extremes_.push_back(penalties_.back().extremes());
      }
    } else {
      auto grid = std::make_shared<const SimplexGrid>(model.table_resolution, shape.own_types);
      for (const auto& values : model.tables) tables_.emplace_back(grid, values);
      default_grid_ = std::make_shared<const SimplexGrid>(default_grid_resolution(shape.own_types), shape.own_types);
    }
  }

  const CellShape& shape() const { return shape_; }
  bool analytic() const { return model_.kind == UtilityKind::kAdditiveSeparable; }
  const UtilityModel& model() const { return model_; }

  double operator()(std::size_t own, std::size_t opp, std::size_t a, std::size_t b, const Belief& mu) const {
    const std::size_t cell = shape_.index(own, opp, a, b);
    if (analytic()) return model_.v[cell] - penalties_[own](mu);
    return tables_[cell](mu);
  }

  double penalty(std::size_t own, const Belief& mu) const { return analytic() ? penalties_[own](mu) : 0.0; }
  const Penalty& bound_penalty(std::size_t own) const { return penalties_.at(own); }

  std::optional<double> lipschitz(std::size_t own) const {
    if (!analytic()) return std::nullopt;
    return penalties_[own].lipschitz_l1();
  }

  /// Range over beliefs of the opponent-action mixture sum_b weights[b] * u(own, opp, a, b, mu).
  UtilityRange range(std::size_t own, std::size_t opp, std::size_t a, std::span<const double> weights,
                     const SimplexGrid* grid) const {
    UtilityRange r;
    if (analytic()) {
      double base = 0.0;
      for (std::size_t b = 0; b < shape_.opp_actions; ++b)
        if (weights[b] > 0.0) base += weights[b] * model_.v[shape_.index(own, opp, a, b)];
      const auto& ex = extremes_[own];
      r.min = base - ex.max_value;
      r.max = base - ex.min_value;
      r.argmin = ex.argmax;
      r.argmax = ex.argmin;
      r.error_bound = 0.0;
      r.certification = Certification::kExact;
      return r;
    }
    // A grid of another dimension (the opponent's, in two-player games) only lends its resolution.
    std::unique_ptr<SimplexGrid> owned;
    if (!grid) {
      grid = default_grid_.get();
    } else if (grid->dimension() != shape_.own_types) {
      owned = std::make_unique<SimplexGrid>(grid->resolution(), shape_.own_types);
      grid = owned.get();
    }
    auto f = [&](const Belief& mu) {
      double total = 0.0;
      for (std::size_t b = 0; b < shape_.opp_actions; ++b)
        if (weights[b] > 0.0) total += weights[b] * tables_[shape_.index(own, opp, a, b)](mu);
      return total;
    };
    const auto lo = optimize_over_simplex(f, shape_.own_types, OptimizeMode::kMin, *grid);
    const auto hi = optimize_over_simplex(f, shape_.own_types, OptimizeMode::kMax, *grid);
    r.min = lo.value;
    r.argmin = lo.argpoint;
    r.max = hi.value;
    r.argmax = hi.argpoint;
    r.error_bound = std::nullopt;
    r.certification = Certification::kGridCertified;
    return r;
  }

 private:
  UtilityModel model_;
  CellShape shape_;
  std::vector<Penalty> penalties_;
  std::vector<PenaltyExtremes> extremes_;
  std::vector<BeliefTable> tables_;
  std::shared_ptr<const SimplexGrid> default_grid_;
};

}  // namespace detail

// ---------------------------------------------------------------------------
// Single-player perception games

struct SingleGameSpec {
  std::vector<std::string> types;
  std::vector<std::string> actions;
  std::vector<double> prior;
  UtilityModel utility;
  std::optional<Factorization> factorization;
  bool allow_discontinuous = false;

  friend bool operator==(const SingleGameSpec&, const SingleGameSpec&) = default;
};

/// Checks every structural invariant and reports all violations with document paths.
inline ValidationReport validate(const SingleGameSpec& spec) {
  ValidationReport report;
  auto& errors = report.errors;
  detail::check_labels(spec.types, "/types", errors);
  detail::check_labels(spec.actions, "/actions", errors);
  detail::check_probability_vector(spec.prior, spec.types.size(), "/prior", errors);

  if (spec.factorization) {
    const auto& f = *spec.factorization;
    detail::check_labels(f.outcome, "/factorization/outcome", errors);
    detail::check_labels(f.privacy, "/factorization/privacy", errors);
    if (!f.outcome.empty() && !f.privacy.empty() && f.type_labels() != spec.types)
      errors.push_back("/factorization: type labels must be the outcome-major products \"outcome:privacy\"");
    if (f.indifferent && !f.indifferent_index())
      errors.push_back("/factorization/indifferent: unknown privacy label '" + *f.indifferent + "'");
    if (!f.optimal_actions.empty()) {
      if (f.optimal_actions.size() != f.outcome.size())
        errors.push_back("/factorization/optimal_actions: expected one action per outcome type");
      for (const auto& a : f.optimal_actions)
        if (std::find(spec.actions.begin(), spec.actions.end(), a) == spec.actions.end())
          errors.push_back("/factorization/optimal_actions: unknown action '" + a + "'");
    }
  }
  if (!errors.empty()) return report;

  detail::CellShape shape{spec.types.size(), 1, spec.actions.size(), 1};
  detail::PenaltyContext ctx{spec.types, spec.factorization ? &*spec.factorization : nullptr, Belief(spec.prior),
                             spec.allow_discontinuous};
  report.lipschitz.resize(1);
  detail::check_utility(spec.utility, shape, ctx, "/utility", errors, report.continuous, report.lipschitz[0]);
  return report;
}

class PerceptionGame {
 public:
  explicit PerceptionGame(SingleGameSpec spec) : spec_(std::move(spec)) {
    auto report = validate(spec_);
    if (!report.ok()) throw ValidationError(report.errors);
    continuous_ = report.continuous;
    types_ = TypeSpace(spec_.types);
    actions_ = ActionSpace(spec_.actions);
    prior_ = Belief(spec_.prior);
    shape_ = detail::CellShape{types_.size(), 1, actions_.size(), 1};
    detail::PenaltyContext ctx{spec_.types, spec_.factorization ? &*spec_.factorization : nullptr, prior_,
                               spec_.allow_discontinuous};
    utility_ = detail::BoundUtility(spec_.utility, shape_, ctx);
  }

  const SingleGameSpec& spec() const { return spec_; }
  const TypeSpace& types() const { return types_; }
  const ActionSpace& actions() const { return actions_; }
  const Belief& prior() const { return prior_; }
  std::size_t type_count() const { return types_.size(); }
  std::size_t action_count() const { return actions_.size(); }
  const std::optional<Factorization>& factorization() const { return spec_.factorization; }

  bool continuous() const { return continuous_; }
  /// True when every belief range has a closed form (additive utilities).
  bool analytic() const { return utility_.analytic(); }

  double utility(std::size_t t, std::size_t a, const Belief& mu) const { return utility_(t, 0, a, 0, mu); }

  /// Material part v(t, a); only meaningful for additive utilities.
  double material(std::size_t t, std::size_t a) const {
    return analytic() ? spec_.utility.v[shape_.index(t, 0, a, 0)] : 0.0;
  }
  double penalty(std::size_t t, const Belief& mu) const { return utility_.penalty(t, mu); }
  std::optional<double> lipschitz(std::size_t t) const { return utility_.lipschitz(t); }

  /// Range of u(t, a, .) over the simplex. `grid` is consulted only for tabulated utilities.
  UtilityRange utility_range(std::size_t t, std::size_t a, const SimplexGrid* grid = nullptr) const {
    static constexpr double one = 1.0;
    return utility_.range(t, 0, a, std::span<const double>(&one, 1), grid);
  }

 private:
  SingleGameSpec spec_;
  TypeSpace types_;
  ActionSpace actions_;
  Belief prior_;
  detail::CellShape shape_;
  detail::BoundUtility utility_;
  bool continuous_ = true;
};

/// Free-function form of PerceptionGame::utility_range.
inline UtilityRange utility_range(const PerceptionGame& game, std::size_t t, std::size_t a,
                                  const SimplexGrid* grid = nullptr) {
  return game.utility_range(t, a, grid);
}

enum class Concern { kYes, kNo, kGridCertified };

inline const char* to_string(Concern c) {
  switch (c) {
    case Concern::kYes: return "yes";
    case Concern::kNo: return "no";
    case Concern::kGridCertified: return "grid-certified";
  }
  return "unknown";
}

struct PrivacyClass {
  Concern upper = Concern::kYes;
  Concern lower = Concern::kYes;
};

/// Per type: does the prior maximize, and does full exposure minimize, u(t, a, .) for every a?
inline std::vector<PrivacyClass> classify_privacy(const PerceptionGame& game, const SimplexGrid* grid = nullptr) {
  std::vector<PrivacyClass> out(game.type_count());
  const std::size_t n = game.type_count();
  for (std::size_t t = 0; t < n; ++t) {
    bool upper = true, lower = true;
    Certification cert = Certification::kExact;
    const Belief exposed = dirac(t, n);
    for (std::size_t a = 0; a < game.action_count(); ++a) {
      const auto r = game.utility_range(t, a, grid);
      cert = combine(cert, r.certification);
      if (game.utility(t, a, game.prior()) < r.max - kTolerance) upper = false;
      if (game.utility(t, a, exposed) > r.min + kTolerance) lower = false;
    }
    // A grid point that beats the prior (or exposure) is a genuine counterexample.
    const Concern holds = cert == Certification::kExact ? Concern::kYes : Concern::kGridCertified;
    out[t].upper = upper ? holds : Concern::kNo;
    out[t].lower = lower ? holds : Concern::kNo;
  }
  return out;
}

inline bool has_upper_privacy(const std::vector<PrivacyClass>& c) {
  return std::all_of(c.begin(), c.end(), [](const PrivacyClass& p) { return p.upper != Concern::kNo; });
}
inline bool has_lower_privacy(const std::vector<PrivacyClass>& c) {
  return std::all_of(c.begin(), c.end(), [](const PrivacyClass& p) { return p.lower != Concern::kNo; });
}

// ---------------------------------------------------------------------------
// Two-player perception games

struct PlayerSpec {
  std::vector<std::string> types;
  std::vector<std::string> actions;
  /// Belief over the opponent's types, one row per own type.
  std::vector<std::vector<double>> beliefs;
  UtilityModel utility;

  friend bool operator==(const PlayerSpec&, const PlayerSpec&) = default;
};

struct TwoPlayerSpec {
  std::array<PlayerSpec, 2> players;
  bool allow_discontinuous = false;

  friend bool operator==(const TwoPlayerSpec&, const TwoPlayerSpec&) = default;
};

namespace detail {

/// The observer's belief about `player` when every opponent type holds the same one.
inline std::optional<Belief> common_observer_belief(const TwoPlayerSpec& spec, std::size_t player) {
  const auto& rows = spec.players[1 - player].beliefs;
  if (rows.empty()) return std::nullopt;
  for (const auto& row : rows) {
    if (row.size() != rows.front().size()) return std::nullopt;
    for (std::size_t i = 0; i < row.size(); ++i)
      if (std::abs(row[i] - rows.front()[i]) > kSumTolerance) return std::nullopt;
  }
  try {
    return Belief(rows.front());
  } catch (const std::invalid_argument&) {
    return std::nullopt;
  }
}

inline void check_player_shapes(const TwoPlayerSpec& spec, std::vector<std::string>& errors) {
  for (std::size_t i = 0; i < 2; ++i) {
    const auto& p = spec.players[i];
    const std::string at = "/players/" + std::to_string(i);
    check_labels(p.types, at + "/types", errors);
    check_labels(p.actions, at + "/actions", errors);
    const std::size_t opp_types = spec.players[1 - i].types.size();
    if (p.beliefs.size() != p.types.size())
      errors.push_back(at + "/beliefs: expected one belief per type (" + std::to_string(p.types.size()) + "), got " +
                       std::to_string(p.beliefs.size()));
    for (std::size_t t = 0; t < p.beliefs.size(); ++t)
      check_probability_vector(p.beliefs[t], opp_types, at + "/beliefs/" + std::to_string(t), errors);
  }
}

}  // namespace detail

inline ValidationReport validate(const TwoPlayerSpec& spec) {
  ValidationReport report;
  detail::check_player_shapes(spec, report.errors);
  if (!report.ok()) return report;
  report.lipschitz.resize(2);
  for (std::size_t i = 0; i < 2; ++i) {
    const auto& p = spec.players[i];
    detail::CellShape shape{p.types.size(), spec.players[1 - i].types.size(), p.actions.size(),
                            spec.players[1 - i].actions.size()};
    detail::PenaltyContext ctx{p.types, nullptr, detail::common_observer_belief(spec, i), spec.allow_discontinuous};
    detail::check_utility(p.utility, shape, ctx, "/players/" + std::to_string(i) + "/utility", report.errors,
                          report.continuous, report.lipschitz[i]);
  }
  return report;
}

class TwoPlayerPerceptionGame {
 public:
  explicit TwoPlayerPerceptionGame(TwoPlayerSpec spec) : spec_(std::move(spec)) {
    auto report = validate(spec_);
    if (!report.ok()) throw ValidationError(report.errors);
    continuous_ = report.continuous;
    for (std::size_t i = 0; i < 2; ++i) {
      const auto& p = spec_.players[i];
      types_[i] = TypeSpace(p.types);
      actions_[i] = ActionSpace(p.actions);
      for (const auto& row : p.beliefs) beliefs_[i].emplace_back(row);
    }
    for (std::size_t i = 0; i < 2; ++i) {
      const auto& p = spec_.players[i];
      detail::CellShape shape{types_[i].size(), types_[1 - i].size(), actions_[i].size(), actions_[1 - i].size()};
      detail::PenaltyContext ctx{p.types, nullptr, detail::common_observer_belief(spec_, i), spec_.allow_discontinuous};
      utility_[i] = detail::BoundUtility(p.utility, shape, ctx);
    }
  }

  const TwoPlayerSpec& spec() const { return spec_; }
  const TypeSpace& types(std::size_t i) const { return types_[i]; }
  const ActionSpace& actions(std::size_t i) const { return actions_[i]; }
  /// Player i's belief, at own type t, about the opponent's type.
  const Belief& belief(std::size_t i, std::size_t t) const { return beliefs_[i][t]; }
  bool continuous() const { return continuous_; }
  bool analytic() const { return utility_[0].analytic() && utility_[1].analytic(); }

  double utility(std::size_t i, std::size_t own, std::size_t opp, std::size_t a, std::size_t b, const Belief& mu) const {
    return utility_[i](own, opp, a, b, mu);
  }

  /// Range over mu of sum_b weights[b] * u_i(own, opp, a, b, mu).
  UtilityRange utility_range(std::size_t i, std::size_t own, std::size_t opp, std::size_t a,
                             std::span<const double> weights, const SimplexGrid* grid = nullptr) const {
    return utility_[i].range(own, opp, a, weights, grid);
  }

 private:
  TwoPlayerSpec spec_;
  std::array<TypeSpace, 2> types_;
  std::array<ActionSpace, 2> actions_;
  std::array<std::vector<Belief>, 2> beliefs_;
  std::array<detail::BoundUtility, 2> utility_;
  bool continuous_ = true;
};

// ---------------------------------------------------------------------------
// Finite two-player Bayesian games (no perception terms)

struct BayesianPlayerSpec {
  std::vector<std::string> types;
  std::vector<std::string> actions;
  std::vector<std::vector<double>> beliefs;
  /// Flat payoffs in cell-major order (own, opp, a, b).
  std::vector<double> payoffs;

  friend bool operator==(const BayesianPlayerSpec&, const BayesianPlayerSpec&) = default;
};

struct BayesianGameSpec {
  std::array<BayesianPlayerSpec, 2> players;
  friend bool operator==(const BayesianGameSpec&, const BayesianGameSpec&) = default;
};

inline ValidationReport validate(const BayesianGameSpec& spec) {
  ValidationReport report;
  TwoPlayerSpec shapes;
  for (std::size_t i = 0; i < 2; ++i) {
    shapes.players[i].types = spec.players[i].types;
    shapes.players[i].actions = spec.players[i].actions;
    shapes.players[i].beliefs = spec.players[i].beliefs;
  }
  detail::check_player_shapes(shapes, report.errors);
  for (std::size_t i = 0; i < 2; ++i) {
    const auto& p = spec.players[i];
    const auto& q = spec.players[1 - i];
    const std::size_t cells = p.types.size() * q.types.size() * p.actions.size() * q.actions.size();
    if (p.payoffs.size() != cells)
      report.errors.push_back("/players/" + std::to_string(i) + "/payoffs: expected " + std::to_string(cells) +
                              " values, got " + std::to_string(p.payoffs.size()));
    for (double x : p.payoffs)
      if (!std::isfinite(x)) {
        report.errors.push_back("/players/" + std::to_string(i) + "/payoffs: values must be finite");
        break;
      }
  }
  return report;
}

class BayesianGame {
 public:
  explicit BayesianGame(BayesianGameSpec spec) : spec_(std::move(spec)) {
    auto report = validate(spec_);
    if (!report.ok()) throw ValidationError(report.errors);
    for (std::size_t i = 0; i < 2; ++i)
      for (const auto& row : spec_.players[i].beliefs) beliefs_[i].emplace_back(row);
    for (std::size_t i = 0; i < 2; ++i)
      shape_[i] = detail::CellShape{spec_.players[i].types.size(), spec_.players[1 - i].types.size(),
                                    spec_.players[i].actions.size(), spec_.players[1 - i].actions.size()};
  }

  const BayesianGameSpec& spec() const { return spec_; }
  std::size_t type_count(std::size_t i) const { return spec_.players[i].types.size(); }
  std::size_t action_count(std::size_t i) const { return spec_.players[i].actions.size(); }
  const Belief& belief(std::size_t i, std::size_t t) const { return beliefs_[i][t]; }
  double payoff(std::size_t i, std::size_t own, std::size_t opp, std::size_t a, std::size_t b) const {
    return spec_.players[i].payoffs[shape_[i].index(own, opp, a, b)];
  }

 private:
  BayesianGameSpec spec_;
  std::array<std::vector<Belief>, 2> beliefs_;
  std::array<detail::CellShape, 2> shape_;
};

}  // namespace percept
