#pragma once

// Numerics over the probability simplex: beliefs, distances, grids and
// bounded-error optimization of belief-dependent functions.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace percept {

/// Weak inequalities are tested as `lhs >= rhs - kTolerance`.
inline constexpr double kTolerance = 1e-9;

/// Allowed deviation of a probability vector's sum from one.
inline constexpr double kSumTolerance = 1e-12;

class Belief {
 public:
  Belief() = default;

  /// Throws std::invalid_argument unless `weights` is a probability vector.
  explicit Belief(std::vector<double> weights) : weights_(std::move(weights)) {
    if (weights_.empty()) throw std::invalid_argument("belief must have at least one entry");
    double sum = 0.0;
    for (std::size_t i = 0; i < weights_.size(); ++i) {
      const double w = weights_[i];
      if (!std::isfinite(w) || w < 0.0)
        throw std::invalid_argument("belief weight " + std::to_string(i) + " is negative or non-finite");
      sum += w;
    }
    if (std::abs(sum - 1.0) > kSumTolerance)
      throw std::invalid_argument("belief weights sum to " + std::to_string(sum) + ", expected 1");
  }

  /// Scales nonnegative masses to sum to one. Throws if the total mass is zero.
  static Belief normalized(std::vector<double> mass) {
    double total = 0.0;
    for (double m : mass) {
      if (!std::isfinite(m) || m < 0.0) throw std::invalid_argument("mass must be finite and nonnegative");
      total += m;
    }
    if (total <= 0.0) throw std::invalid_argument("cannot normalize zero mass");
    for (double& m : mass) m /= total;
    return Belief(std::move(mass));
  }

  static Belief uniform(std::size_t n) { return Belief(std::vector<double>(n, 1.0 / static_cast<double>(n))); }

  std::size_t size() const { return weights_.size(); }
  double operator[](std::size_t i) const { return weights_[i]; }
  std::span<const double> weights() const { return weights_; }

  bool in_support(std::size_t i) const { return weights_[i] > 0.0; }

  friend bool operator==(const Belief&, const Belief&) = default;

 private:
  std::vector<double> weights_;
};

/// Point mass on type `t` among `n` types.
inline Belief dirac(std::size_t t, std::size_t n) {
  if (t >= n) throw std::out_of_range("dirac: type index " + std::to_string(t) + " out of range for " + std::to_string(n) + " types");
  std::vector<double> w(n, 0.0);
  w[t] = 1.0;
  return Belief(std::move(w));
}

/// Total variation distance, half the L1 distance.
inline double tv_distance(const Belief& p, const Belief& q) {
  if (p.size() != q.size()) throw std::invalid_argument("tv_distance: dimension mismatch");
  double l1 = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) l1 += std::abs(p[i] - q[i]);
  return 0.5 * l1;
}

/// L1 distance between two beliefs of equal dimension.
inline double l1_distance(const Belief& p, const Belief& q) { return 2.0 * tv_distance(p, q); }

/// All beliefs whose weights are integer multiples of 1/resolution.
///
/// Points are ordered lexicographically by their integer counts with the
/// first coordinate varying slowest and descending, so (k,0,..,0) comes first
/// and (0,..,0,k) last.
class SimplexGrid {
 public:
  SimplexGrid(int resolution, std::size_t dimension) : resolution_(resolution), dimension_(dimension) {
    if (resolution < 1) throw std::invalid_argument("simplex grid resolution must be positive");
    if (dimension < 1) throw std::invalid_argument("simplex grid dimension must be positive");
    std::vector<int> counts(dimension, 0);
    build(counts, 0, resolution);
  }

  int resolution() const { return resolution_; }
  std::size_t dimension() const { return dimension_; }
  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }

  const Belief& point(std::size_t i) const { return points_[i]; }
  const std::vector<Belief>& points() const { return points_; }
  std::span<const int> counts(std::size_t i) const { return counts_[i]; }

  /// Index of the point with the given integer counts, if it is on the grid.
  std::optional<std::size_t> index_of(const std::vector<int>& counts) const {
    auto it = index_.find(counts);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  /// Default resolution by dimension: 200 for two types, 60 for three, 24 beyond.
  static int default_resolution(std::size_t dimension) {
    if (dimension <= 2) return 200;
    if (dimension == 3) return 60;
    return 24;
  }

  /// Number of compositions of `k` into `n` nonnegative parts.
  static std::size_t composition_count(int k, std::size_t n) {
    // C(k + n - 1, n - 1) computed incrementally to stay exact.
    std::size_t result = 1;
    for (std::size_t i = 1; i < n; ++i) result = result * (static_cast<std::size_t>(k) + i) / i;
    return result;
  }

  /// Bound on the L1 distance from any simplex point to its nearest grid point.
  double covering_radius_l1() const { return 2.0 / static_cast<double>(resolution_); }

 private:
  void build(std::vector<int>& counts, std::size_t pos, int remaining) {
    if (pos + 1 == dimension_) {
      counts[pos] = remaining;
      std::vector<double> w(dimension_);
      for (std::size_t i = 0; i < dimension_; ++i) w[i] = static_cast<double>(counts[i]) / resolution_;
      index_.emplace(counts, points_.size());
      counts_.push_back(counts);
      points_.emplace_back(std::move(w));
      return;
    }
    for (int c = remaining; c >= 0; --c) {
      counts[pos] = c;
      build(counts, pos + 1, remaining - c);
    }
  }

  int resolution_;
  std::size_t dimension_;
  std::vector<Belief> points_;
  std::vector<std::vector<int>> counts_;
  std::map<std::vector<int>, std::size_t> index_;
};

enum class OptimizeMode { kMax, kMin };

struct SimplexOptimum {
  double value = 0.0;
  Belief argpoint;
  /// Absent when no Lipschitz constant was supplied.
  std::optional<double> error_bound;
};

/// Exhaustive search of `f` over `grid`. Ties keep the earliest grid point.
///
/// With an L1-Lipschitz constant `L` the true optimum over the simplex lies
/// within `L * 2 / k` of the returned value.
inline SimplexOptimum optimize_over_simplex(const std::function<double(const Belief&)>& f, std::size_t n,
                                            OptimizeMode mode, const SimplexGrid& grid,
                                            std::optional<double> lipschitz_l1 = std::nullopt) {
  if (grid.empty()) throw std::invalid_argument("optimize_over_simplex: empty grid");
  if (grid.dimension() != n) throw std::invalid_argument("optimize_over_simplex: grid dimension differs from type count");
  std::size_t best = 0;
  double best_value = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double value = f(grid.point(i));
    if (!std::isfinite(value)) throw std::domain_error("optimize_over_simplex: non-finite function value");
    const bool better = mode == OptimizeMode::kMax ? value > best_value : value < best_value;
    if (i == 0 || better) {
      best = i;
      best_value = value;
    }
  }
  SimplexOptimum out{best_value, grid.point(best), std::nullopt};
  if (lipschitz_l1) out.error_bound = *lipschitz_l1 * grid.covering_radius_l1();
  return out;
}

}  // namespace percept
