#include "bandit/meta.hpp"

#include <chrono>
#include <sstream>

namespace bandit {

RunResult run_policy(Meta meta, Policy& policy, const Domain& domain,
                     RewardTape& tape, HistorySource* history,
                     std::int64_t horizon) {
  RunResult out;
  out.ledger.opt = domain.opt();
  out.ledger.step_means.reserve(horizon);
  out.ledger.cum_regret.reserve(horizon);
  out.actions.reserve(horizon);
  out.reads_at.reserve(horizon);
  out.regions_at.reserve(horizon);
  out.wall_ms_at.reserve(horizon);

  PullCounts counts;
  const auto start = std::chrono::steady_clock::now();

  if (meta == Meta::kFullStart && history != nullptr) {
    for (const HistEntry& e : history->entries()) {
      policy.ingest(e);
    }
    out.ledger.reads = history->size();
  }

  const bool replay = meta == Meta::kArtificialReplay && history != nullptr;

  std::vector<ClassKey> action, match;
  std::vector<double> rewards;
  for (std::int64_t t = 1; t <= horizon; ++t) {
    while (true) {
      ++out.ledger.proposals;
      policy.decide(action);
      if (replay) {
        int consumed = 0;
        policy.match_keys(action, match);
        for (ClassKey cls : match) {
          if (auto entry = history->pop(cls)) {
            policy.ingest(*entry);
            ++consumed;
          }
        }
        if (consumed > 0) {
          out.ledger.reads += consumed;
          continue;  // stay at time t and re-propose
        }
      }
      break;
    }

    domain.check_action(action);
    rewards.clear();
    for (ClassKey cls : action) {
      rewards.push_back(tape.at(cls, counts.next(cls)));
    }
    policy.update(action, rewards);
    out.ledger.record_step(domain.action_mean(action));

    out.actions.push_back(action);
    out.reads_at.push_back(out.ledger.reads);
    out.regions_at.push_back(policy.region_count());
    out.wall_ms_at.push_back(
        std::chrono::duration<double, std::milli>(
            std::chrono::steady_clock::now() - start)
            .count());
  }
  return out;
}

std::string CouplingReport::describe() const {
  if (identical) return "coupled";
  std::ostringstream os;
  os << "diverged at t=" << first_divergence_t << " replay=[";
  for (ClassKey k : replay_action) os << k << " ";
  os << "] full-start=[";
  for (ClassKey k : full_start_action) os << k << " ";
  os << "]";
  return os.str();
}

CouplingReport verify_coupling(
    const Policy& base, const Domain& domain, RewardTape& tape,
    const std::function<std::unique_ptr<HistorySource>()>& history_factory,
    std::int64_t horizon) {
  CouplingReport report;

  auto fs_policy = base.clone();
  auto fs_history = history_factory();
  report.full_start = run_policy(Meta::kFullStart, *fs_policy, domain, tape,
                                 fs_history.get(), horizon);

  auto ar_policy = base.clone();
  auto ar_history = history_factory();
  report.replay = run_policy(Meta::kArtificialReplay, *ar_policy, domain, tape,
                             ar_history.get(), horizon);

  for (std::int64_t t = 0; t < horizon; ++t) {
    if (report.replay.actions[t] != report.full_start.actions[t]) {
      report.identical = false;
      report.first_divergence_t = t + 1;
      report.replay_action = report.replay.actions[t];
      report.full_start_action = report.full_start.actions[t];
      break;
    }
  }
  return report;
}

}  // namespace bandit
