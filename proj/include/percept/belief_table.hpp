#pragma once

// Tabulated functions of a belief: values on a SimplexGrid, interpolated
// linearly on the Freudenthal triangulation of the grid.

#include <algorithm>
#include <cmath>
#include <memory>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "percept/distributions.hpp"

namespace percept {

class BeliefTable {
 public:
  BeliefTable(std::shared_ptr<const SimplexGrid> grid, std::vector<double> values)
      : grid_(std::move(grid)), values_(std::move(values)) {
    if (!grid_) throw std::invalid_argument("belief table needs a grid");
    if (values_.size() != grid_->size())
      throw std::invalid_argument("belief table has " + std::to_string(values_.size()) + " values for " +
                                  std::to_string(grid_->size()) + " grid points");
  }

  const SimplexGrid& grid() const { return *grid_; }
  const std::vector<double>& values() const { return values_; }

  double operator()(const Belief& mu) const {
    const std::size_t n = grid_->dimension();
    if (mu.size() != n) throw std::invalid_argument("belief table: dimension mismatch");
    if (n == 1) return values_[0];
    const int k = grid_->resolution();

    // Suffix sums scaled by k give monotone coordinates k >= c1 >= ... >= c_{n-1} >= 0.
    std::vector<double> c(n, 0.0);
    double suffix = 0.0;
    for (std::size_t i = n - 1; i >= 1; --i) {
      suffix += mu[i];
      c[i] = std::clamp(suffix * k, 0.0, static_cast<double>(k));
    }
    c[0] = k;
    for (std::size_t i = 1; i < n; ++i) c[i] = std::min(c[i], c[i - 1]);

    std::vector<int> base(n);
    std::vector<double> frac(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      base[i] = static_cast<int>(std::floor(c[i]));
      frac[i] = c[i] - base[i];
    }
    std::vector<std::size_t> order(n - 1);
    std::iota(order.begin(), order.end(), std::size_t{1});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return frac[a] > frac[b]; });

    auto lookup = [&](const std::vector<int>& cum) {
      std::vector<int> counts(n);
      counts[0] = k - cum[1];
      for (std::size_t i = 1; i + 1 < n; ++i) counts[i] = cum[i] - cum[i + 1];
      counts[n - 1] = cum[n - 1];
      auto idx = grid_->index_of(counts);
      if (!idx) throw std::logic_error("belief table: interpolation vertex left the grid");
      return values_[*idx];
    };

    std::vector<int> vertex = base;
    double result = 0.0;
    double weight = 1.0 - frac[order[0]];
    if (weight > 0.0) result += weight * lookup(vertex);
    for (std::size_t m = 0; m < order.size(); ++m) {
      vertex[order[m]] += 1;
      weight = m + 1 < order.size() ? frac[order[m]] - frac[order[m + 1]] : frac[order[m]];
      if (weight > 0.0) result += weight * lookup(vertex);
    }
    return result;
  }

 private:
  std::shared_ptr<const SimplexGrid> grid_;
  std::vector<double> values_;
};

}  // namespace percept
