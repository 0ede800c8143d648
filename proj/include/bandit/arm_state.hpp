#pragma once

#include <cstdint>
#include <stdexcept>

namespace bandit {

// Pull count, running mean, and monotone upper confidence bound.  The UCB is
// initialized to 1 and only ever min-updated, so it is non-increasing for
// the lifetime of the arm (or region) it describes.
struct ArmState {
  std::int64_t n = 0;
  double mean = 1.0;
  double ucb = 1.0;

  // Fold in one observation; `bonus` is evaluated at the post-update count.
  void observe(double reward, double bonus) {
    if (reward < 0.0 || reward > 1.0)
      throw std::invalid_argument("reward outside [0,1]");
    mean = n == 0 ? reward
                  : (static_cast<double>(n) * mean + reward) /
                        static_cast<double>(n + 1);
    ++n;
    const double candidate = mean + bonus;
    if (candidate < ucb) ucb = candidate;
  }
};

}  // namespace bandit
