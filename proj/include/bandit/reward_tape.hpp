#pragma once

#include <cstdint>
#include <functional>
#include <unordered_map>
#include <vector>

#include "bandit/rng.hpp"
#include "bandit/types.hpp"

namespace bandit {

// Pre-sampled Bernoulli reward tape indexed by (equivalence class, pull
// count).  Entry (c, i) is a deterministic function of (seed, c, i): each
// class draws from its own substream, so the tape contents never depend on
// the order different algorithms touch classes.  Two executions sharing a
// tape and pulling the same class at the same per-class count observe the
// exact same reward.
class RewardTape {
 public:
  using MeanFn = std::function<double(ClassKey)>;

  RewardTape(std::uint64_t seed, MeanFn mean_of) : seed_(seed), mean_of_(std::move(mean_of)) {}

  double at(ClassKey cls, std::int64_t index) {
    Lane& lane = lane_for(cls);
    while (static_cast<std::int64_t>(lane.draws.size()) <= index) {
      lane.draws.push_back(lane.rng.bernoulli(lane.mean) ? 1 : 0);
    }
    return lane.draws[static_cast<std::size_t>(index)];
  }

  void prefill(ClassKey cls, std::int64_t n) {
    if (n > 0) at(cls, n - 1);
  }

  double mean_of(ClassKey cls) const { return mean_of_(cls); }

 private:
  struct Lane {
    Stream rng;
    double mean = 0.0;
    std::vector<std::uint8_t> draws;
  };

  Lane& lane_for(ClassKey cls) {
    auto it = lanes_.find(cls);
    if (it == lanes_.end()) {
      Lane lane;
      lane.rng = Stream(splitmix64(seed_ ^ splitmix64(cls)));
      lane.mean = mean_of_(cls);
      it = lanes_.emplace(cls, std::move(lane)).first;
    }
    return it->second;
  }

  std::uint64_t seed_;
  MeanFn mean_of_;
  std::unordered_map<ClassKey, Lane> lanes_;
};

// Per-execution pull counters.  Kept outside the tape so several executions
// can replay the identical sample path.
class PullCounts {
 public:
  std::int64_t next(ClassKey cls) { return counts_[cls]++; }
  std::int64_t count(ClassKey cls) const {
    auto it = counts_.find(cls);
    return it == counts_.end() ? 0 : it->second;
  }

 private:
  std::unordered_map<ClassKey, std::int64_t> counts_;
};

}  // namespace bandit
