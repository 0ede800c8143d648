#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "bandit/env.hpp"
#include "bandit/history.hpp"
#include "bandit/ledger.hpp"
#include "bandit/policy.hpp"
#include "bandit/reward_tape.hpp"

namespace bandit {

// How historical data reaches the base algorithm.
//  - kIgnorant: it does not.
//  - kFullStart: every entry is fed through the update path before t = 1.
//  - kArtificialReplay: entries are consumed lazily, one per matched
//    subcomponent of the proposed action, and a timestep only elapses when
//    the proposal has no unused matching history.
enum class Meta { kIgnorant, kFullStart, kArtificialReplay };

struct RunResult {
  RegretLedger ledger;
  std::vector<std::vector<ClassKey>> actions;  // online action per step
  std::vector<std::int64_t> reads_at;          // cumulative reads after step t
  std::vector<std::int64_t> regions_at;        // partition size after step t
  std::vector<double> wall_ms_at;              // elapsed wall time after step t
};

// Execute `policy` for `horizon` online steps.  The reward tape is shared
// between executions on purpose; per-class pull counts are private to this
// run.  `history` may be null for the ignorant wrapper.
RunResult run_policy(Meta meta, Policy& policy, const Domain& domain,
                     RewardTape& tape, HistorySource* history,
                     std::int64_t horizon);

struct CouplingReport {
  bool identical = true;
  std::int64_t first_divergence_t = -1;  // 1-based; -1 when identical
  std::vector<ClassKey> replay_action;
  std::vector<ClassKey> full_start_action;
  RunResult replay;
  RunResult full_start;

  std::string describe() const;
};

// Run the full-start and replay wrappers of the same base algorithm on one
// reward tape and one dataset, and compare the online action sequences
// exactly.  For bases with the irrelevant-data property the sequences match
// step for step; the report carries the first divergence otherwise.
CouplingReport verify_coupling(const Policy& base, const Domain& domain,
                               RewardTape& tape,
                               const std::function<std::unique_ptr<HistorySource>()>& history_factory,
                               std::int64_t horizon);

}  // namespace bandit
