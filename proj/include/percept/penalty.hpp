#pragma once

// Privacy penalties w(t, mu): the perception-dependent part of an additive
// utility u(t, a, mu) = v(t, a) - w(t, mu).

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "percept/distributions.hpp"

namespace percept {

enum class PenaltyKind { kZero, kTvToPrior, kExposure, kPiecewiseLinearMarginal, kStepMarginal };

inline const char* to_string(PenaltyKind kind) {
  switch (kind) {
    case PenaltyKind::kZero: return "zero";
    case PenaltyKind::kTvToPrior: return "tv_to_prior";
    case PenaltyKind::kExposure: return "exposure";
    case PenaltyKind::kPiecewiseLinearMarginal: return "piecewise_linear_marginal";
    case PenaltyKind::kStepMarginal: return "step_marginal";
  }
  return "unknown";
}

inline std::optional<PenaltyKind> penalty_kind_from_string(const std::string& s) {
  if (s == "zero") return PenaltyKind::kZero;
  if (s == "tv_to_prior") return PenaltyKind::kTvToPrior;
  if (s == "exposure") return PenaltyKind::kExposure;
  if (s == "piecewise_linear_marginal") return PenaltyKind::kPiecewiseLinearMarginal;
  if (s == "step_marginal") return PenaltyKind::kStepMarginal;
  return std::nullopt;
}

struct Knot {
  double position = 0.0;
  double value = 0.0;
  friend bool operator==(const Knot&, const Knot&) = default;
};

/// Constant value on an interval of the marginal probability; zero elsewhere.
struct StepPiece {
  double lo = 0.0;
  double hi = 0.0;
  bool lo_closed = true;
  bool hi_closed = true;
  double value = 0.0;

  bool contains(double p) const {
    const bool above = lo_closed ? p >= lo : p > lo;
    const bool below = hi_closed ? p <= hi : p < hi;
    return above && below;
  }
  bool empty() const { return lo > hi || (lo == hi && !(lo_closed && hi_closed)); }
  friend bool operator==(const StepPiece&, const StepPiece&) = default;
};

/// Declarative description of one type's penalty, as it appears in game files.
///
/// `event` names the labels whose total probability is the one-dimensional
/// marginal read by the piecewise and step kinds (default: the first label).
/// With `marginal_over_outcome` the penalty sees only the outcome-factor
/// marginal of the belief and `event` names outcome labels.
struct PenaltySpec {
  PenaltyKind kind = PenaltyKind::kZero;
  double weight = 1.0;
  std::vector<Knot> knots;
  std::vector<StepPiece> pieces;
  std::vector<std::string> event;
  bool marginal_over_outcome = false;
  std::optional<std::vector<double>> reference;

  bool continuous() const { return kind != PenaltyKind::kStepMarginal; }
  friend bool operator==(const PenaltySpec&, const PenaltySpec&) = default;

  static PenaltySpec zero() { return PenaltySpec{}; }
  static PenaltySpec tv_to_prior(double weight) {
    PenaltySpec p;
    p.kind = PenaltyKind::kTvToPrior;
    p.weight = weight;
    return p;
  }
  static PenaltySpec exposure(double weight) {
    PenaltySpec p;
    p.kind = PenaltyKind::kExposure;
    p.weight = weight;
    return p;
  }
  static PenaltySpec piecewise(std::vector<Knot> knots, double weight = 1.0) {
    PenaltySpec p;
    p.kind = PenaltyKind::kPiecewiseLinearMarginal;
    p.weight = weight;
    p.knots = std::move(knots);
    return p;
  }
  static PenaltySpec step(std::vector<StepPiece> pieces, double weight = 1.0) {
    PenaltySpec p;
    p.kind = PenaltyKind::kStepMarginal;
    p.weight = weight;
    p.pieces = std::move(pieces);
    return p;
  }
};

/// Checks a penalty spec in isolation. Messages are prefixed with `path`.
inline std::vector<std::string> check_penalty_shape(const PenaltySpec& spec, const std::string& path) {
  std::vector<std::string> errors;
  if (!std::isfinite(spec.weight) || spec.weight < 0.0) errors.push_back(path + "/weight: must be finite and >= 0");
  if (spec.kind == PenaltyKind::kPiecewiseLinearMarginal) {
    const auto& k = spec.knots;
    if (k.size() < 2) {
      errors.push_back(path + "/knots: need at least two knots");
    } else {
      if (k.front().position != 0.0) errors.push_back(path + "/knots: first knot must be at position 0");
      if (k.back().position != 1.0) errors.push_back(path + "/knots: last knot must be at position 1");
      for (std::size_t i = 1; i < k.size(); ++i)
        if (!(k[i].position > k[i - 1].position)) {
          errors.push_back(path + "/knots: positions must be strictly increasing");
          break;
        }
      for (const auto& knot : k)
        if (!std::isfinite(knot.value)) {
          errors.push_back(path + "/knots: values must be finite");
          break;
        }
    }
  } else if (spec.kind == PenaltyKind::kStepMarginal) {
    for (std::size_t i = 0; i < spec.pieces.size(); ++i) {
      const auto& piece = spec.pieces[i];
      const std::string at = path + "/pieces/" + std::to_string(i);
      if (piece.lo < 0.0 || piece.hi > 1.0 || piece.empty()) errors.push_back(at + ": interval must be a nonempty subset of [0,1]");
      if (!std::isfinite(piece.value)) errors.push_back(at + "/value: must be finite");
    }
    auto sorted = spec.pieces;
    std::sort(sorted.begin(), sorted.end(), [](const StepPiece& a, const StepPiece& b) { return a.lo < b.lo; });
    for (std::size_t i = 1; i < sorted.size(); ++i) {
      const auto& prev = sorted[i - 1];
      const auto& cur = sorted[i];
      const bool overlap = cur.lo < prev.hi || (cur.lo == prev.hi && cur.lo_closed && prev.hi_closed);
      if (overlap) {
        errors.push_back(path + "/pieces: intervals overlap");
        break;
      }
    }
  }
  return errors;
}

/// Groups types into classes; a penalty reads only the class marginal.
struct BeliefProjection {
  std::vector<std::size_t> class_of;
  std::vector<std::string> class_labels;

  static BeliefProjection identity(const std::vector<std::string>& labels) {
    BeliefProjection p;
    p.class_labels = labels;
    p.class_of.resize(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) p.class_of[i] = i;
    return p;
  }

  std::size_t classes() const { return class_labels.size(); }

  std::vector<double> marginal(const Belief& mu) const {
    std::vector<double> m(classes(), 0.0);
    for (std::size_t t = 0; t < mu.size(); ++t) m[class_of[t]] += mu[t];
    return m;
  }

  /// First type belonging to class `c`.
  std::size_t representative(std::size_t c) const {
    for (std::size_t t = 0; t < class_of.size(); ++t)
      if (class_of[t] == c) return t;
    throw std::logic_error("empty class in belief projection");
  }
};

struct PenaltyExtremes {
  double min_value = 0.0;
  Belief argmin;
  double max_value = 0.0;
  Belief argmax;
};

/// A penalty spec bound to a concrete type space, owner type and reference belief.
class Penalty {
 public:
  Penalty(PenaltySpec spec, std::size_t owner, BeliefProjection projection, Belief reference)
      : spec_(std::move(spec)), owner_(owner), projection_(std::move(projection)), reference_(std::move(reference)) {
    const std::size_t n = projection_.class_of.size();
    in_event_.assign(n, false);
    if (spec_.event.empty()) {
      for (std::size_t t = 0; t < n; ++t) in_event_[t] = projection_.class_of[t] == 0;
    } else {
      for (const auto& label : spec_.event) {
        auto it = std::find(projection_.class_labels.begin(), projection_.class_labels.end(), label);
        if (it == projection_.class_labels.end()) throw std::invalid_argument("penalty event label '" + label + "' is unknown");
        const auto c = static_cast<std::size_t>(it - projection_.class_labels.begin());
        for (std::size_t t = 0; t < n; ++t)
          if (projection_.class_of[t] == c) in_event_[t] = true;
      }
    }
    reference_marginal_ = projection_.marginal(reference_);
  }

  const PenaltySpec& spec() const { return spec_; }
  std::size_t type_count() const { return projection_.class_of.size(); }

  /// Probability of the designated event under `mu`.
  double event_probability(const Belief& mu) const {
    double p = 0.0;
    for (std::size_t t = 0; t < mu.size(); ++t)
      if (in_event_[t]) p += mu[t];
    return std::clamp(p, 0.0, 1.0);
  }

  double operator()(const Belief& mu) const {
    switch (spec_.kind) {
      case PenaltyKind::kZero: return 0.0;
      case PenaltyKind::kTvToPrior: {
        const auto m = projection_.marginal(mu);
        double l1 = 0.0;
        for (std::size_t c = 0; c < m.size(); ++c) l1 += std::abs(m[c] - reference_marginal_[c]);
        return spec_.weight * 0.5 * l1;
      }
      case PenaltyKind::kExposure: return spec_.weight * projection_.marginal(mu)[projection_.class_of[owner_]];
      case PenaltyKind::kPiecewiseLinearMarginal: return spec_.weight * interpolate(event_probability(mu));
      case PenaltyKind::kStepMarginal: return spec_.weight * step_value(event_probability(mu));
    }
    return 0.0;
  }

  /// L1-Lipschitz constant in the belief; absent for discontinuous penalties.
  std::optional<double> lipschitz_l1() const {
    switch (spec_.kind) {
      case PenaltyKind::kZero: return 0.0;
      case PenaltyKind::kTvToPrior:
      case PenaltyKind::kExposure: return spec_.weight;
      case PenaltyKind::kPiecewiseLinearMarginal: {
        double slope = 0.0;
        for (std::size_t i = 1; i < spec_.knots.size(); ++i) {
          const auto& a = spec_.knots[i - 1];
          const auto& b = spec_.knots[i];
          slope = std::max(slope, std::abs((b.value - a.value) / (b.position - a.position)));
        }
        return spec_.weight * slope;
      }
      case PenaltyKind::kStepMarginal: return std::nullopt;
    }
    return std::nullopt;
  }

  /// Exact minimum and maximum over the whole simplex.
  ///
  /// Each kind has a finite candidate set known to contain both optimizers;
  /// ties keep the first candidate.
  PenaltyExtremes extremes() const {
    const auto candidates = candidate_points();
    PenaltyExtremes out;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      const double value = (*this)(candidates[i]);
      if (i == 0 || value < out.min_value) {
        out.min_value = value;
        out.argmin = candidates[i];
      }
      if (i == 0 || value > out.max_value) {
        out.max_value = value;
        out.argmax = candidates[i];
      }
    }
    return out;
  }

 private:
  double interpolate(double p) const {
    const auto& k = spec_.knots;
    if (p <= k.front().position) return k.front().value;
    for (std::size_t i = 1; i < k.size(); ++i) {
      if (p <= k[i].position) {
        const double s = (p - k[i - 1].position) / (k[i].position - k[i - 1].position);
        return k[i - 1].value + s * (k[i].value - k[i - 1].value);
      }
    }
    return k.back().value;
  }

  double step_value(double p) const {
    for (const auto& piece : spec_.pieces)
      if (piece.contains(p)) return piece.value;
    return 0.0;
  }

  /// Belief placing mass `p` on the event and `1 - p` off it, when both sides are nonempty.
  std::optional<Belief> belief_with_event_mass(double p) const {
    const std::size_t n = in_event_.size();
    std::optional<std::size_t> in, out;
    for (std::size_t t = 0; t < n; ++t) {
      if (in_event_[t] && !in) in = t;
      if (!in_event_[t] && !out) out = t;
    }
    if (!in || !out) return std::nullopt;
    std::vector<double> w(n, 0.0);
    w[*in] = p;
    w[*out] = 1.0 - p;
    return Belief(std::move(w));
  }

  std::vector<double> step_candidates() const {
    std::vector<double> ps;
    for (const auto& piece : spec_.pieces) {
      if (piece.lo_closed) ps.push_back(piece.lo);
      else if (piece.hi_closed) ps.push_back(piece.hi);
      else ps.push_back(0.5 * (piece.lo + piece.hi));
    }
    // A point outside every piece attains the background value 0.
    std::vector<double> probes{0.0, 1.0};
    for (const auto& piece : spec_.pieces) {
      probes.push_back(piece.lo);
      probes.push_back(piece.hi);
    }
    std::sort(probes.begin(), probes.end());
    const std::size_t count = probes.size();
    for (std::size_t i = 1; i < count; ++i) probes.push_back(0.5 * (probes[i - 1] + probes[i]));
    for (double p : probes) {
      if (std::none_of(spec_.pieces.begin(), spec_.pieces.end(), [p](const StepPiece& s) { return s.contains(p); })) {
        ps.push_back(p);
        break;
      }
    }
    std::sort(ps.begin(), ps.end());
    return ps;
  }

  std::vector<Belief> candidate_points() const {
    const std::size_t n = type_count();
    std::vector<Belief> out;
    switch (spec_.kind) {
      case PenaltyKind::kZero: out.push_back(reference_); break;
      case PenaltyKind::kTvToPrior:
        // Convex with minimum at the reference; the maximum sits at a vertex.
        out.push_back(reference_);
        for (std::size_t t = 0; t < n; ++t) out.push_back(dirac(t, n));
        break;
      case PenaltyKind::kExposure:
        for (std::size_t t = 0; t < n; ++t) out.push_back(dirac(t, n));
        break;
      case PenaltyKind::kPiecewiseLinearMarginal:
      case PenaltyKind::kStepMarginal: {
        std::vector<double> ps;
        if (spec_.kind == PenaltyKind::kPiecewiseLinearMarginal) {
          for (const auto& knot : spec_.knots) ps.push_back(knot.position);
        } else {
          ps = step_candidates();
        }
        for (double p : ps) {
          if (auto b = belief_with_event_mass(p)) out.push_back(std::move(*b));
        }
        // The event probability is pinned when the event is empty or everything.
        if (out.empty()) out.push_back(reference_);
        break;
      }
    }
    return out;
  }

  PenaltySpec spec_;
  std::size_t owner_;
  BeliefProjection projection_;
  Belief reference_;
  std::vector<double> reference_marginal_;
  std::vector<bool> in_event_;
};

}  // namespace percept
