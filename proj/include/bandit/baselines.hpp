#pragma once

#include <algorithm>
#include <numeric>
#include <vector>

#include "bandit/cmab/policies.hpp"
#include "bandit/env.hpp"
#include "bandit/policy.hpp"
#include "bandit/rng.hpp"

namespace bandit {

// Uniform play over feasible actions; ignores all feedback.
class RandomKArmed final : public Policy {
 public:
  RandomKArmed(int k, int b_int, Stream rng) : k_(k), b_int_(b_int), rng_(rng) {}

  void decide(std::vector<ClassKey>& out) override {
    out.clear();
    if (b_int_ <= 1) {
      out.push_back(key::arm(static_cast<int>(rng_.uniform_int(k_))));
      return;
    }
    std::vector<int> arms(k_);
    std::iota(arms.begin(), arms.end(), 0);
    for (int i = 0; i < b_int_; ++i) {
      const int j = i + static_cast<int>(rng_.uniform_int(k_ - i));
      std::swap(arms[i], arms[j]);
    }
    arms.resize(b_int_);
    std::sort(arms.begin(), arms.end());
    for (int a : arms) out.push_back(key::arm(a));
  }
  using Policy::decide;

  void update(const std::vector<ClassKey>&, const std::vector<double>&) override {}
  void ingest(const HistEntry&) override {}
  bool iidata() const override { return false; }
  std::unique_ptr<Policy> clone() const override {
    return std::make_unique<RandomKArmed>(*this);
  }

 private:
  int k_;
  int b_int_;
  Stream rng_;
};

// Random feasible allocation: distinct cells from a fixed reference grid,
// each at a level drawn uniformly among those still fitting the budget.
class RandomCmab final : public Policy {
 public:
  RandomCmab(const CmabModel& model, int grid_depth, Stream rng)
      : model_(model), depth_(grid_depth), rng_(rng) {}

  void decide(std::vector<ClassKey>& out) override {
    const std::uint32_t side = 1u << depth_;
    const std::uint64_t cells = static_cast<std::uint64_t>(side) * side;
    std::vector<std::uint64_t> chosen;
    double budget = model_.budget;
    out.clear();
    for (int s = 0; s < model_.n_slots; ++s) {
      std::uint64_t c;
      bool fresh;
      do {
        c = rng_.uniform_int(cells);
        fresh = std::find(chosen.begin(), chosen.end(), c) == chosen.end();
      } while (!fresh);
      chosen.push_back(c);
      std::vector<int> fit;
      for (std::size_t li = 0; li < model_.levels.size(); ++li) {
        if (model_.levels[li] <= budget + 1e-12) fit.push_back(static_cast<int>(li));
      }
      if (fit.empty()) break;
      const int li = fit[rng_.uniform_int(fit.size())];
      budget -= model_.levels[li];
      Cell cell{depth_, static_cast<std::uint32_t>(c % side),
                static_cast<std::uint32_t>(c / side)};
      out.push_back(key::cell(li, cell));
    }
  }
  using Policy::decide;

  void update(const std::vector<ClassKey>&, const std::vector<double>&) override {}
  void ingest(const HistEntry&) override {}
  bool iidata() const override { return false; }
  std::unique_ptr<Policy> clone() const override {
    return std::make_unique<RandomCmab>(*this);
  }

 private:
  CmabModel model_;
  int depth_;
  Stream rng_;
};

// Plays the oracle action every step; the benchmark all regret is measured
// against.
class OptimalPolicy final : public Policy {
 public:
  explicit OptimalPolicy(std::vector<ClassKey> action)
      : action_(std::move(action)) {}

  static OptimalPolicy for_domain(const Domain& domain) {
    std::vector<ClassKey> action;
    if (const auto* ka = dynamic_cast<const KArmedDomain*>(&domain)) {
      const auto& m = ka->instance().means;
      action.push_back(key::arm(static_cast<int>(
          std::max_element(m.begin(), m.end()) - m.begin())));
    } else if (const auto* cf = dynamic_cast<const CombFiniteDomain*>(&domain)) {
      std::vector<int> idx(cf->instance().k());
      std::iota(idx.begin(), idx.end(), 0);
      std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
        return cf->instance().means[a] > cf->instance().means[b];
      });
      idx.resize(cf->b_int());
      std::sort(idx.begin(), idx.end());
      for (int a : idx) action.push_back(key::arm(a));
    } else if (const auto* cm = dynamic_cast<const CmabDomain*>(&domain)) {
      for (std::size_t i = 0; i < cm->oracle().action.size(); ++i) {
        const int li = cm->model().level_index(cm->oracle().action[i].second);
        action.push_back(key::exact(li, static_cast<int>(i)));
      }
    }
    return OptimalPolicy(std::move(action));
  }

  void decide(std::vector<ClassKey>& out) override { out = action_; }
  using Policy::decide;
  void update(const std::vector<ClassKey>&, const std::vector<double>&) override {}
  void ingest(const HistEntry&) override {}
  bool iidata() const override { return false; }
  std::unique_ptr<Policy> clone() const override {
    return std::make_unique<OptimalPolicy>(*this);
  }

 private:
  std::vector<ClassKey> action_;
};

}  // namespace bandit
