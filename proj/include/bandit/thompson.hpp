#pragma once

#include <random>
#include <stdexcept>
#include <vector>

#include "bandit/policy.hpp"
#include "bandit/rng.hpp"

namespace bandit {

// Bernoulli Thompson sampling with Beta(1,1) priors.  Included as the
// classic baseline that does NOT have the irrelevant-data property: extra
// observations on non-chosen arms move the posterior and hence the sampling
// distribution of the decision.
class Thompson final : public Policy {
 public:
  struct BetaParams {
    double alpha = 1.0;
    double beta = 1.0;
  };

  Thompson(int k, Stream rng) : rng_(rng), posteriors_(k) {
    if (k < 1) throw std::invalid_argument("need at least one arm");
  }

  void decide(std::vector<ClassKey>& out) override {
    int best = 0;
    double best_draw = -1.0;
    for (int a = 0; a < k(); ++a) {
      const double draw = sample_beta(posteriors_[a]);
      if (draw > best_draw) {
        best_draw = draw;
        best = a;
      }
    }
    out.clear();
    out.push_back(key::arm(best));
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
    if (arm < 0 || arm >= k()) throw std::out_of_range("arm index out of range");
    if (reward != 0.0 && reward != 1.0)
      throw std::invalid_argument("Thompson baseline needs binary rewards");
    if (reward == 1.0) {
      posteriors_[arm].alpha += 1.0;
    } else {
      posteriors_[arm].beta += 1.0;
    }
  }

  bool iidata() const override { return false; }

  std::unique_ptr<Policy> clone() const override {
    return std::make_unique<Thompson>(*this);
  }

  int k() const { return static_cast<int>(posteriors_.size()); }
  const BetaParams& posterior(int arm) const { return posteriors_.at(arm); }

 private:
  double sample_beta(const BetaParams& p) {
    std::gamma_distribution<double> ga(p.alpha, 1.0);
    std::gamma_distribution<double> gb(p.beta, 1.0);
    const double x = ga(rng_.engine());
    const double y = gb(rng_.engine());
    return x / (x + y);
  }

  Stream rng_;
  std::vector<BetaParams> posteriors_;
};

}  // namespace bandit
