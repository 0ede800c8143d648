#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "bandit/cmab/partition.hpp"
#include "bandit/instance.hpp"
#include "bandit/policy.hpp"

namespace bandit::cmab {

// Confidence radius of a region observed t times under a fixed partition.
inline double bonus_fixed(std::int64_t t, std::int64_t horizon, double delta) {
  if (t <= 0) return std::numeric_limits<double>::infinity();
  return 2.0 * std::sqrt(2.0 * std::log(static_cast<double>(horizon) / delta) /
                         static_cast<double>(t));
}

// Fixed-partition radius plus the discretization error of extending a
// region's estimate to all of its points.
inline double bonus_adaptive(std::int64_t t, std::int64_t horizon, double delta,
                             double lipschitz, double d_max) {
  if (t <= 0) return std::numeric_limits<double>::infinity();
  return bonus_fixed(t, horizon, delta) +
         2.0 * lipschitz * d_max / std::sqrt(static_cast<double>(t));
}

// Maximum leaf depth the split guard permits: cells stop splitting once
// their side drops below 2*eps, so leaves never get finer than side eps.
int max_leaf_depth(double eps);

// Depth of a dyadic uniform grid of mesh gamma; throws unless gamma = 2^-k.
int grid_depth(double gamma);

// UCB-greedy allocation over a discretization of the space, one partition
// tree per allocation level.  The fixed variant keeps a uniform gamma-grid
// for the whole run; the adaptive variant starts from a single region per
// level and quarters a selected region once its confidence radius beats its
// diameter, provided the split guard r >= 2*eps holds.
class DiscretizationPolicy final : public Policy {
 public:
  DiscretizationPolicy(const CmabModel& model, std::int64_t horizon,
                       double delta, bool adaptive, double gamma);

  void decide(std::vector<ClassKey>& out) override;
  using Policy::decide;
  void update(const std::vector<ClassKey>& action,
              const std::vector<double>& rewards) override;
  void ingest(const HistEntry& entry) override;
  void match_keys(const std::vector<ClassKey>& action,
                  std::vector<ClassKey>& out) const override;
  bool iidata() const override { return true; }
  std::unique_ptr<Policy> clone() const override {
    return std::make_unique<DiscretizationPolicy>(*this);
  }
  std::int64_t region_count() const override;

  const PartitionTree& tree(int level_idx) const { return trees_[level_idx]; }
  PartitionTree& tree(int level_idx) { return trees_[level_idx]; }
  const CmabModel& model() const { return model_; }
  bool adaptive() const { return adaptive_; }

  double bonus(std::int64_t t) const {
    return adaptive_ ? bonus_adaptive(t, horizon_, delta_, model_.lipschitz, 1.0)
                     : bonus_fixed(t, horizon_, delta_);
  }

 private:
  void observe(int level_idx, Point p, double reward);

  CmabModel model_;
  std::int64_t horizon_;
  double delta_;
  bool adaptive_;
  std::vector<PartitionTree> trees_;  // one per allocation level
};

}  // namespace bandit::cmab
