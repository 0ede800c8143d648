#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bandit/instance.hpp"
#include "bandit/psi.hpp"

namespace bandit::harness {

enum class DomainKind { kKArmed, kCombFinite, kCmabPwl, kCmabQuadratic, kCmabCsv };
enum class Algorithm { kMonUcb, kCombMonUcb, kFixedDisc, kAdaptiveDisc, kThompson };
enum class MetaKind { kIgnorant, kFullStart, kArtificialReplay, kRandom, kOptimal };
enum class HistoryMode { kUniform, kSpurious, kImbalanced };

const char* to_string(DomainKind);
const char* to_string(Algorithm);
const char* to_string(MetaKind);

// One experiment description.  Parsed from a flat key=value file; unknown
// keys are rejected rather than ignored.
struct ScenarioConfig {
  DomainKind domain = DomainKind::kKArmed;
  std::vector<Algorithm> algorithms = {Algorithm::kMonUcb};
  std::vector<MetaKind> metas = {MetaKind::kIgnorant};

  int seeds = 60;
  std::uint64_t master_seed = 0;
  std::int64_t horizon = 1000;     // T
  std::int64_t history_size = 0;   // H

  HistoryMode history_mode = HistoryMode::kUniform;
  double history_frac = 0.0;       // f for spurious / imbalanced modes

  // finite domains
  int k = 10;
  int b_int = 3;
  std::vector<double> means;       // optional fixed instance

  // continuous allocation domains
  Surface surface = Surface::kQuadratic;  // for the CSV domain
  std::vector<double> levels = {0.0, 0.5, 1.0};
  int n_slots = 5;
  double budget = 2.0;
  double eps = 0.2;
  double lipschitz = 1.0;
  double delta = 0.1;
  double gamma = 0.25;
  std::string history_csv;
  int opt_resolution = 64;

  LogTerm psi_log_term = LogTerm::kLogT;
  int threads = 0;  // 0 = hardware concurrency

  bool is_cmab() const {
    return domain == DomainKind::kCmabPwl || domain == DomainKind::kCmabQuadratic ||
           domain == DomainKind::kCmabCsv;
  }

  void validate() const;  // throws on inconsistent settings
};

ScenarioConfig parse_config(const std::string& text);
ScenarioConfig load_config(const std::string& path);

}  // namespace bandit::harness
