#pragma once

#include <algorithm>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "bandit/rng.hpp"
#include "bandit/types.hpp"

namespace bandit {

// Finite-armed problem instance with Bernoulli rewards.
struct KArmedInstance {
  std::vector<double> means;

  int k() const { return static_cast<int>(means.size()); }

  double opt() const {
    if (means.empty()) throw std::invalid_argument("empty instance");
    return *std::max_element(means.begin(), means.end());
  }

  // Optimal value for the semi-bandit variant pulling `b` distinct arms.
  double comb_opt(int b) const {
    if (b > k()) throw std::invalid_argument("budget exceeds arm count");
    std::vector<double> s = means;
    std::sort(s.begin(), s.end(), std::greater<>());
    return std::accumulate(s.begin(), s.begin() + b, 0.0);
  }

  double mean_of(int arm) const {
    if (arm < 0 || arm >= k()) throw std::out_of_range("arm index out of range");
    return means[arm];
  }

  static KArmedInstance uniform_random(int k, Stream& rng) {
    KArmedInstance inst;
    inst.means.reserve(k);
    for (int i = 0; i < k; ++i) inst.means.push_back(rng.uniform01());
    return inst;
  }

  // Indices of the bottom ceil(frac * K) arms by mean (ties by index).
  std::vector<int> bottom_arms(double frac) const {
    std::vector<int> idx(means.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(),
                     [&](int a, int b) { return means[a] < means[b]; });
    const int n = std::max<int>(1, static_cast<int>(std::ceil(frac * k())));
    idx.resize(std::min<int>(n, k()));
    return idx;
  }
};

enum class Surface { kPiecewiseLinear, kQuadratic };

// Mean reward of a (point, allocation) pair on the synthetic surfaces.
inline double surface_mu(Surface s, Point p, double beta) {
  switch (s) {
    case Surface::kPiecewiseLinear:
      return beta * (p.x / 2.0 + p.y / 2.0);
    case Surface::kQuadratic:
      return beta * (1.0 - (p.x - 0.5) * (p.x - 0.5) -
                     (p.y - 0.5) * (p.y - 0.5));
  }
  return 0.0;
}

// Continuous combinatorial allocation model: pick up to `n_slots` points in
// [0,1]^2, assign each an allocation level, spend at most `budget`, and keep
// chosen points at infinity-norm distance >= eps from each other.
struct CmabModel {
  Surface surface = Surface::kQuadratic;
  std::vector<double> levels = {0.0, 0.5, 1.0};  // sorted ascending
  int n_slots = 5;
  double budget = 2.0;
  double eps = 0.2;
  double lipschitz = 1.0;

  double mu(Point p, double beta) const { return surface_mu(surface, p, beta); }

  int level_index(double beta, double tol = 1e-6) const {
    for (std::size_t i = 0; i < levels.size(); ++i) {
      if (std::fabs(levels[i] - beta) <= tol) return static_cast<int>(i);
    }
    return -1;
  }

  double min_positive_level() const {
    for (double b : levels) {
      if (b > 0.0) return b;
    }
    return 1.0;
  }
};

}  // namespace bandit
