#pragma once

#include <memory>
#include <vector>

#include "bandit/types.hpp"

namespace bandit {

// A base bandit algorithm: a map from its accumulated observations to a
// proposed action, plus the two ways observations arrive (online feedback
// and historical entries).  An action is the list of equivalence-class keys
// of its subcomponents; the finite-armed case has exactly one.
class Policy {
 public:
  virtual ~Policy() = default;

  // Fill `out` with the proposed action, reusing its capacity.  The replay
  // loop proposes far more often than it acts, so this path stays free of
  // per-call allocation.
  virtual void decide(std::vector<ClassKey>& out) = 0;

  std::vector<ClassKey> decide() {
    std::vector<ClassKey> out;
    decide(out);
    return out;
  }

  // Semi-bandit feedback: one reward per subcomponent of the played action.
  virtual void update(const std::vector<ClassKey>& action,
                      const std::vector<double>& rewards) = 0;

  // Feed one historical entry through the same statistics path an online
  // observation of it would take.
  virtual void ingest(const HistEntry& entry) = 0;

  // Equivalence classes whose unused historical data must be consumed before
  // `action` may execute online.  Defaults to the action's own classes; the
  // discretization policies widen this to the proposal's spatial closure
  // across allocation levels so that lazily-replayed and fully-warmed runs
  // maintain identical partitions wherever the selection can look.
  virtual void match_keys(const std::vector<ClassKey>& action,
                          std::vector<ClassKey>& out) const {
    out = action;
  }

  // True when appending data about actions other than the current decision
  // cannot change that decision.
  virtual bool iidata() const = 0;

  virtual std::unique_ptr<Policy> clone() const = 0;

  // Number of regions in the partition, for discretization policies.
  virtual std::int64_t region_count() const { return 0; }
};

}  // namespace bandit
