#pragma once

#include <memory>
#include <string>
#include <vector>

#include "bandit/env.hpp"
#include "bandit/harness/config.hpp"
#include "bandit/harness/history_gen.hpp"
#include "bandit/meta.hpp"
#include "bandit/policy.hpp"

namespace bandit::harness {

// Everything one seed needs, built deterministically from (config, seed).
// All executions on a seed share the instance, dataset, and reward tape.
struct SeedSetup {
  std::uint64_t seed = 0;
  KArmedInstance instance;  // finite domains
  CmabModel model;          // continuous domains
  std::shared_ptr<const std::vector<HistEntry>> history;
  std::unique_ptr<Domain> domain;
  std::unique_ptr<RewardTape> tape;
};

SeedSetup make_setup(const ScenarioConfig& cfg, std::uint64_t seed,
                     const cmab::OptResult* oracle = nullptr,
                     std::shared_ptr<const std::vector<HistEntry>> fixed_history = nullptr);

std::unique_ptr<Policy> make_policy(const ScenarioConfig& cfg, Algorithm alg,
                                    MetaKind meta, const SeedSetup& setup);

std::unique_ptr<HistorySource> make_history_source(const ScenarioConfig& cfg,
                                                   const SeedSetup& setup);

// One (algorithm, meta) pair over all seeds.
struct PairResult {
  std::string name;
  Algorithm algorithm = Algorithm::kMonUcb;
  MetaKind meta = MetaKind::kIgnorant;
  std::vector<std::uint64_t> seeds;
  std::vector<RunResult> runs;
};

// Run every requested (algorithm, meta) pair on every seed; seeds fan out to
// a worker pool, each worker owning its seed end to end.  Every run is
// checked against the accounting invariants before it is returned.
std::vector<PairResult> execute(const ScenarioConfig& cfg);

// execute() plus CSV output: per-pair metrics, per-pair mean/sem summaries,
// a replay data-usage report on stdout, and a partition snapshot for
// continuous domains.
void run_scenario(const ScenarioConfig& cfg, const std::string& out_dir);

struct CoupleOutcome {
  int seeds_checked = 0;
  int divergences = 0;
  bool pass = false;
  std::string detail;
};

// Replay-vs-full-start coupling check over all seeds; requires a base
// algorithm with the irrelevant-data property.
CoupleOutcome couple_scenario(const ScenarioConfig& cfg);

struct ReadsReport {
  double mean_reads_first_online = 0.0;
  double mean_reads_final = 0.0;
  std::int64_t h = 0;
};

ReadsReport report_reads(const std::vector<RunResult>& runs, std::int64_t h);

// Post-processing checks over an emitted metrics CSV: contiguous timesteps
// per seed, monotone regret and reads, unused fraction in [0,1].  Throws on
// the first violation.
void validate_csv(const std::string& path);

void write_metrics_csv(const std::string& path, const PairResult& pair,
                       std::int64_t h, bool cmab);
void write_summary_csv(const std::string& path, const PairResult& pair,
                       std::int64_t h, bool cmab);

// One row per leaf of every level's partition: level, bounds, depth, pulls,
// mean, ucb.
void write_partition_csv(const std::string& path, const Policy& policy,
                         const ScenarioConfig& cfg);

}  // namespace bandit::harness
