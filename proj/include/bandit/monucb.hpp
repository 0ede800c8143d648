#pragma once

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "bandit/arm_state.hpp"
#include "bandit/policy.hpp"
#include "bandit/psi.hpp"

namespace bandit {

// Monotone UCB for the K-armed bandit.  Identical to UCB1 except the index
// of an arm is min-updated, hence non-increasing; decisions therefore cannot
// be swayed by extra data on arms other than the current argmax.
//
// Index ties break deterministically to the arm with the fewest
// observations, then the lowest index.  Several arms can sit pinned at the
// initial index simultaneously, and least-observed-first keeps unexplored
// arms ahead of a pinned incumbent; appending data about a non-chosen arm
// can only lower that arm's index or raise its count, so the choice is
// still independent of irrelevant data.
class MonUcb final : public Policy {
 public:
  MonUcb(int k, std::int64_t t_horizon, PsiSpec spec = PsiSpec::hoeffding())
      : horizon_(t_horizon), spec_(std::move(spec)), arms_(k) {
    if (k < 1) throw std::invalid_argument("need at least one arm");
  }

  void decide(std::vector<ClassKey>& out) override {
    out.clear();
    out.push_back(key::arm(best_arm()));
  }
  using Policy::decide;

  int best_arm() const {
    int best = 0;
    for (int a = 1; a < k(); ++a) {
      if (arms_[a].ucb > arms_[best].ucb ||
          (arms_[a].ucb == arms_[best].ucb && arms_[a].n < arms_[best].n)) {
        best = a;
      }
    }
    return best;
  }

  void update(const std::vector<ClassKey>& action,
              const std::vector<double>& rewards) override {
    for (std::size_t i = 0; i < action.size(); ++i) {
      observe(key::arm_of(action[i]), rewards[i]);
    }
  }

  void ingest(const HistEntry& entry) override {
    observe(entry.arm, entry.reward);
  }

  void observe(int arm, double reward) {
    if (arm < 0 || arm >= k())
      throw std::out_of_range("arm index out of range");
    ArmState& s = arms_[arm];
    s.observe(reward, ucb_bonus(spec_, s.n + 1, horizon_, k()));
  }

  bool iidata() const override { return true; }

  std::unique_ptr<Policy> clone() const override {
    return std::make_unique<MonUcb>(*this);
  }

  int k() const { return static_cast<int>(arms_.size()); }
  const ArmState& state(int arm) const { return arms_.at(arm); }

 private:
  std::int64_t horizon_;
  PsiSpec spec_;
  std::vector<ArmState> arms_;
};

// Greedy Monotone UCB for the combinatorial finite setting: pull the
// `b_int` arms with the largest indices each step (exact under a pure
// cardinality constraint), observing semi-bandit feedback per arm.
class CombMonUcb final : public Policy {
 public:
  CombMonUcb(int k, int b_int, std::int64_t t_horizon,
             PsiSpec spec = PsiSpec::hoeffding())
      : b_int_(b_int), horizon_(t_horizon), spec_(std::move(spec)), arms_(k) {
    if (k < 1) throw std::invalid_argument("need at least one arm");
    if (b_int < 1 || b_int > k)
      throw std::invalid_argument("integer budget must be in [1, K]");
  }

  void decide(std::vector<ClassKey>& out) override {
    std::vector<int> idx(arms_.size());
    for (std::size_t i = 0; i < arms_.size(); ++i) idx[i] = static_cast<int>(i);
    std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
      if (arms_[a].ucb != arms_[b].ucb) return arms_[a].ucb > arms_[b].ucb;
      return arms_[a].n < arms_[b].n;
    });
    idx.resize(b_int_);
    std::sort(idx.begin(), idx.end());
    out.clear();
    for (int a : idx) out.push_back(key::arm(a));
  }
  using Policy::decide;

  void update(const std::vector<ClassKey>& action,
              const std::vector<double>& rewards) override {
    for (std::size_t i = 0; i < action.size(); ++i) {
      observe(key::arm_of(action[i]), rewards[i]);
    }
  }

  void ingest(const HistEntry& entry) override {
    observe(entry.arm, entry.reward);
  }

  void observe(int arm, double reward) {
    if (arm < 0 || arm >= static_cast<int>(arms_.size()))
      throw std::out_of_range("arm index out of range");
    ArmState& s = arms_[arm];
    s.observe(reward,
              ucb_bonus(spec_, s.n + 1, horizon_, static_cast<int>(arms_.size())));
  }

  bool iidata() const override { return true; }

  std::unique_ptr<Policy> clone() const override {
    return std::make_unique<CombMonUcb>(*this);
  }

  const ArmState& state(int arm) const { return arms_.at(arm); }

 private:
  int b_int_;
  std::int64_t horizon_;
  PsiSpec spec_;
  std::vector<ArmState> arms_;
};

}  // namespace bandit
