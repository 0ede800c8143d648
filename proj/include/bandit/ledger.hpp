#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

namespace bandit {

// Regret accounting for one execution: cumulative regret is
// t * opt - sum of realized action means, tracked per online step together
// with the replay counters.
struct RegretLedger {
  double opt = 0.0;

  std::vector<double> step_means;   // mu(A_t) per online step
  std::vector<double> cum_regret;   // cumulative regret after step t
  std::int64_t proposals = 0;       // base-algorithm decide calls
  std::int64_t reads = 0;           // historical entries consumed
  std::int64_t online_steps = 0;
  std::int64_t reads_at_first_online = -1;

  void record_step(double mu) {
    const double prev = cum_regret.empty() ? 0.0 : cum_regret.back();
    step_means.push_back(mu);
    cum_regret.push_back(prev + (opt - mu));
    ++online_steps;
    if (reads_at_first_online < 0) reads_at_first_online = reads;
  }

  double regret() const { return cum_regret.empty() ? 0.0 : cum_regret.back(); }

  // Recompute T*opt - sum(mu) from the stored log and compare against the
  // incrementally tracked series.
  bool recompute_ok(double tol = 1e-9) const {
    double sum = 0.0;
    for (double m : step_means) sum += m;
    const double direct =
        static_cast<double>(step_means.size()) * opt - sum;
    return std::fabs(direct - regret()) <= tol * (1.0 + std::fabs(direct));
  }
};

}  // namespace bandit
