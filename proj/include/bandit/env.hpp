#pragma once

#include <memory>
#include <set>
#include <stdexcept>
#include <vector>

#include "bandit/cmab/opt.hpp"
#include "bandit/instance.hpp"
#include "bandit/types.hpp"

namespace bandit {

// Immutable per-seed problem glue: mean reward of any equivalence class, the
// optimal value for regret accounting, and the feasibility checks an action
// must pass before it is executed.  Shared read-only by every execution on
// the same seed.
class Domain {
 public:
  virtual ~Domain() = default;
  virtual double opt() const = 0;
  virtual double mean_of(ClassKey cls) const = 0;
  virtual void check_action(const std::vector<ClassKey>& action) const = 0;

  double action_mean(const std::vector<ClassKey>& action) const {
    double sum = 0.0;
    for (ClassKey k : action) sum += mean_of(k);
    return sum;
  }
};

class KArmedDomain final : public Domain {
 public:
  explicit KArmedDomain(KArmedInstance inst) : inst_(std::move(inst)) {}

  double opt() const override { return inst_.opt(); }

  double mean_of(ClassKey cls) const override {
    return inst_.mean_of(key::arm_of(cls));
  }

  void check_action(const std::vector<ClassKey>& action) const override {
    if (action.size() != 1)
      throw std::logic_error("finite-armed action must have one arm");
    inst_.mean_of(key::arm_of(action[0]));  // range check
  }

  const KArmedInstance& instance() const { return inst_; }

 private:
  KArmedInstance inst_;
};

class CombFiniteDomain final : public Domain {
 public:
  CombFiniteDomain(KArmedInstance inst, int b_int)
      : inst_(std::move(inst)), b_int_(b_int) {
    if (b_int_ < 1 || b_int_ > inst_.k())
      throw std::invalid_argument("integer budget must be in [1, K]");
  }

  double opt() const override { return inst_.comb_opt(b_int_); }

  double mean_of(ClassKey cls) const override {
    return inst_.mean_of(key::arm_of(cls));
  }

  void check_action(const std::vector<ClassKey>& action) const override {
    if (static_cast<int>(action.size()) != b_int_)
      throw std::logic_error("combinatorial action has wrong cardinality");
    std::set<int> arms;
    for (ClassKey k : action) {
      inst_.mean_of(key::arm_of(k));
      if (!arms.insert(key::arm_of(k)).second)
        throw std::logic_error("combinatorial action repeats an arm");
    }
  }

  const KArmedInstance& instance() const { return inst_; }
  int b_int() const { return b_int_; }

 private:
  KArmedInstance inst_;
  int b_int_;
};

class CmabDomain final : public Domain {
 public:
  CmabDomain(CmabModel model, cmab::OptResult oracle)
      : model_(std::move(model)), oracle_(std::move(oracle)) {}

  double opt() const override { return oracle_.value; }

  double mean_of(ClassKey cls) const override {
    switch (key::tag(cls)) {
      case key::kTagCell:
        return model_.mu(key::cell_of(cls).center(),
                         model_.levels.at(key::level_of(cls)));
      case key::kTagExact: {
        const auto& pair = oracle_.action.at(key::exact_id(cls));
        return model_.mu(pair.first, pair.second);
      }
      default:
        throw std::logic_error("key kind not valid in this domain");
    }
  }

  // Budget and pairwise separation, checked on every online action.  Region
  // actions must pick pairwise disjoint cells no finer than the separation
  // parameter: disjoint dyadic cells with sides >= eps keep any in-cell
  // representatives (in particular the centers) at least eps apart.
  void check_action(const std::vector<ClassKey>& action) const override {
    if (static_cast<int>(action.size()) > model_.n_slots)
      throw std::logic_error("action exceeds the slot cap");
    double spent = 0.0;
    std::vector<Cell> cells;
    std::vector<Point> exact_pts;
    for (ClassKey k : action) {
      if (key::tag(k) == key::kTagCell) {
        const Cell c = key::cell_of(k);
        if (c.side() < model_.eps - 1e-12)
          throw std::logic_error("region finer than the separation parameter");
        for (const Cell& prev : cells) {
          if (prev.nested_or_equal(c))
            throw std::logic_error("action selects overlapping regions");
        }
        cells.push_back(c);
        spent += model_.levels.at(key::level_of(k));
      } else if (key::tag(k) == key::kTagExact) {
        const auto& pair = oracle_.action.at(key::exact_id(k));
        exact_pts.push_back(pair.first);
        spent += pair.second;
      } else {
        throw std::logic_error("key kind not valid in this domain");
      }
    }
    for (std::size_t i = 0; i < exact_pts.size(); ++i) {
      for (std::size_t j = i + 1; j < exact_pts.size(); ++j) {
        if (dist_inf(exact_pts[i], exact_pts[j]) < model_.eps - 1e-12)
          throw std::logic_error("action violates the separation constraint");
      }
    }
    if (spent > model_.budget + 1e-9)
      throw std::logic_error("action violates the budget constraint");
  }

  const CmabModel& model() const { return model_; }
  const cmab::OptResult& oracle() const { return oracle_; }

 private:
  CmabModel model_;
  cmab::OptResult oracle_;
};

}  // namespace bandit
