#include "bandit/harness/scenario.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "bandit/baselines.hpp"
#include "bandit/cmab/history_tree.hpp"
#include "bandit/cmab/policies.hpp"
#include "bandit/history.hpp"
#include "bandit/monucb.hpp"
#include "bandit/thompson.hpp"

namespace bandit::harness {

namespace {

CmabModel model_from(const ScenarioConfig& cfg) {
  CmabModel m;
  switch (cfg.domain) {
    case DomainKind::kCmabPwl:
      m.surface = Surface::kPiecewiseLinear;
      break;
    case DomainKind::kCmabQuadratic:
      m.surface = Surface::kQuadratic;
      break;
    default:
      m.surface = cfg.surface;
  }
  m.levels = cfg.levels;
  m.n_slots = cfg.n_slots;
  m.budget = cfg.budget;
  m.eps = cfg.eps;
  m.lipschitz = cfg.lipschitz;
  return m;
}

int fixed_grid_depth(const ScenarioConfig& cfg) {
  return cmab::grid_depth(cfg.gamma);
}

std::string pair_name(Algorithm alg, MetaKind meta) {
  if (meta == MetaKind::kRandom || meta == MetaKind::kOptimal)
    return to_string(meta);
  return std::string(to_string(alg)) + "_" + to_string(meta);
}

Meta wrapper_of(MetaKind meta) {
  switch (meta) {
    case MetaKind::kFullStart:
      return Meta::kFullStart;
    case MetaKind::kArtificialReplay:
      return Meta::kArtificialReplay;
    default:
      return Meta::kIgnorant;
  }
}

void check_run(const ScenarioConfig& cfg, const RunResult& run,
               const std::string& name) {
  const auto fail = [&](const std::string& what) {
    throw std::runtime_error("invariant violation in " + name + ": " + what);
  };
  if (static_cast<std::int64_t>(run.actions.size()) != cfg.horizon)
    fail("online step count differs from the horizon");
  if (!run.ledger.recompute_ok()) fail("regret does not recompute from the log");
  if (run.ledger.reads > cfg.history_size) fail("more reads than dataset entries");
  if (run.ledger.proposals > cfg.horizon + cfg.history_size)
    fail("proposal count exceeds horizon + dataset size");
  for (std::size_t t = 0; t < run.reads_at.size(); ++t) {
    if (t > 0 && run.reads_at[t] < run.reads_at[t - 1]) fail("reads decreased");
    if (t > 0 &&
        run.ledger.cum_regret[t] < run.ledger.cum_regret[t - 1] - 1e-9)
      fail("regret decreased");
  }
}

struct Pair {
  Algorithm alg;
  MetaKind meta;
};

std::vector<Pair> pairs_of(const ScenarioConfig& cfg) {
  std::vector<Pair> out;
  for (MetaKind m : cfg.metas) {
    if (m == MetaKind::kRandom || m == MetaKind::kOptimal) {
      out.push_back({cfg.algorithms.front(), m});
    } else {
      for (Algorithm a : cfg.algorithms) out.push_back({a, m});
    }
  }
  return out;
}

}  // namespace

SeedSetup make_setup(const ScenarioConfig& cfg, std::uint64_t seed,
                     const cmab::OptResult* oracle,
                     std::shared_ptr<const std::vector<HistEntry>> fixed_history) {
  SeedSetup s;
  s.seed = seed;

  if (cfg.is_cmab()) {
    s.model = model_from(cfg);
    cmab::OptResult opt;
    if (oracle != nullptr) {
      opt = *oracle;
    } else {
      const double grid = cfg.algorithms.size() &&
                                  std::find(cfg.algorithms.begin(), cfg.algorithms.end(),
                                            Algorithm::kFixedDisc) != cfg.algorithms.end()
                              ? cfg.gamma
                              : 0.0;
      opt = cmab::solve_opt(
          s.model, cmab::opt_resolution_for(s.model, grid, cfg.opt_resolution));
    }
    s.domain = std::make_unique<CmabDomain>(s.model, std::move(opt));

    if (fixed_history) {
      s.history = std::move(fixed_history);
    } else {
      Stream hist_rng = Stream::derive(seed, "history");
      s.history = std::make_shared<const std::vector<HistEntry>>(
          generate_cmab_history(s.model, cfg.history_mode, cfg.history_frac,
                                cfg.history_size, hist_rng));
    }
  } else {
    if (!cfg.means.empty()) {
      s.instance.means = cfg.means;
    } else {
      Stream inst_rng = Stream::derive(seed, "instance");
      s.instance = KArmedInstance::uniform_random(cfg.k, inst_rng);
    }
    if (cfg.domain == DomainKind::kCombFinite) {
      s.domain = std::make_unique<CombFiniteDomain>(s.instance, cfg.b_int);
    } else {
      s.domain = std::make_unique<KArmedDomain>(s.instance);
    }

    if (fixed_history) {
      s.history = std::move(fixed_history);
    } else {
      Stream hist_rng = Stream::derive(seed, "history");
      s.history = std::make_shared<const std::vector<HistEntry>>(
          generate_karmed_history(s.instance, cfg.history_mode, cfg.history_frac,
                                  cfg.history_size, hist_rng));
    }
  }

  const Domain* dom = s.domain.get();
  s.tape = std::make_unique<RewardTape>(
      splitmix64(seed ^ fnv1a("tape")),
      [dom](ClassKey cls) { return dom->mean_of(cls); });
  if (!cfg.is_cmab()) {
    for (int a = 0; a < cfg.k; ++a) s.tape->prefill(key::arm(a), cfg.horizon);
  }
  return s;
}

std::unique_ptr<Policy> make_policy(const ScenarioConfig& cfg, Algorithm alg,
                                    MetaKind meta, const SeedSetup& setup) {
  const std::string stream_name =
      std::string("alg:") + pair_name(alg, meta);
  switch (meta) {
    case MetaKind::kRandom: {
      Stream rng = Stream::derive(setup.seed, stream_name);
      if (cfg.is_cmab())
        return std::make_unique<RandomCmab>(setup.model, fixed_grid_depth(cfg), rng);
      const int pulls = cfg.domain == DomainKind::kCombFinite ? cfg.b_int : 1;
      return std::make_unique<RandomKArmed>(cfg.k, pulls, rng);
    }
    case MetaKind::kOptimal:
      return std::make_unique<OptimalPolicy>(
          OptimalPolicy::for_domain(*setup.domain));
    default:
      break;
  }
  switch (alg) {
    case Algorithm::kMonUcb:
      return std::make_unique<MonUcb>(cfg.k, cfg.horizon,
                                      PsiSpec::hoeffding(cfg.psi_log_term));
    case Algorithm::kCombMonUcb:
      return std::make_unique<CombMonUcb>(cfg.k, cfg.b_int, cfg.horizon,
                                          PsiSpec::hoeffding(cfg.psi_log_term));
    case Algorithm::kThompson:
      return std::make_unique<Thompson>(
          cfg.k, Stream::derive(setup.seed, stream_name));
    case Algorithm::kFixedDisc:
      return std::make_unique<cmab::DiscretizationPolicy>(
          setup.model, cfg.horizon, cfg.delta, /*adaptive=*/false, cfg.gamma);
    case Algorithm::kAdaptiveDisc:
      return std::make_unique<cmab::DiscretizationPolicy>(
          setup.model, cfg.horizon, cfg.delta, /*adaptive=*/true, cfg.gamma);
  }
  throw std::logic_error("unreachable algorithm kind");
}

std::unique_ptr<HistorySource> make_history_source(const ScenarioConfig& cfg,
                                                   const SeedSetup& setup) {
  if (cfg.is_cmab()) {
    const int depth =
        std::max(cmab::max_leaf_depth(cfg.eps),
                 std::find(cfg.algorithms.begin(), cfg.algorithms.end(),
                           Algorithm::kFixedDisc) != cfg.algorithms.end()
                     ? fixed_grid_depth(cfg)
                     : 0);
    return std::make_unique<cmab::CmabHistory>(setup.history, setup.model, depth);
  }
  return std::make_unique<ArmHistory>(setup.history, cfg.k);
}

std::vector<PairResult> execute(const ScenarioConfig& cfg) {
  cfg.validate();
  const auto pairs = pairs_of(cfg);

  // The oracle and any CSV dataset are seed-independent; build them once.
  std::shared_ptr<cmab::OptResult> oracle;
  std::shared_ptr<const std::vector<HistEntry>> csv_history;
  if (cfg.is_cmab()) {
    const CmabModel model = model_from(cfg);
    const bool fixed =
        std::find(cfg.algorithms.begin(), cfg.algorithms.end(),
                  Algorithm::kFixedDisc) != cfg.algorithms.end();
    oracle = std::make_shared<cmab::OptResult>(cmab::solve_opt(
        model, cmab::opt_resolution_for(model, fixed ? cfg.gamma : 0.0,
                                        cfg.opt_resolution)));
    if (cfg.domain == DomainKind::kCmabCsv) {
      csv_history = std::make_shared<const std::vector<HistEntry>>(
          load_history_csv(cfg.history_csv, true));
    }
  }

  std::vector<PairResult> results(pairs.size());
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    results[i].name = pair_name(pairs[i].alg, pairs[i].meta);
    results[i].algorithm = pairs[i].alg;
    results[i].meta = pairs[i].meta;
    results[i].seeds.resize(cfg.seeds);
    results[i].runs.resize(cfg.seeds);
  }

  std::atomic<int> next{0};
  std::mutex err_mutex;
  std::exception_ptr first_error;

  auto worker = [&]() {
    while (true) {
      const int idx = next.fetch_add(1);
      if (idx >= cfg.seeds) return;
      try {
        const std::uint64_t seed = cfg.master_seed + static_cast<std::uint64_t>(idx);
        SeedSetup setup = make_setup(cfg, seed, oracle.get(), csv_history);
        for (std::size_t pi = 0; pi < pairs.size(); ++pi) {
          auto policy = make_policy(cfg, pairs[pi].alg, pairs[pi].meta, setup);
          auto history = make_history_source(cfg, setup);
          RunResult run =
              run_policy(wrapper_of(pairs[pi].meta), *policy, *setup.domain,
                         *setup.tape, history.get(), cfg.horizon);
          check_run(cfg, run, results[pi].name);
          results[pi].seeds[idx] = seed;
          results[pi].runs[idx] = std::move(run);
        }
      } catch (...) {
        std::lock_guard<std::mutex> lock(err_mutex);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };

  int n_threads = cfg.threads > 0
                      ? cfg.threads
                      : static_cast<int>(std::thread::hardware_concurrency());
  n_threads = std::max(1, std::min(n_threads, cfg.seeds));
  std::vector<std::thread> threads;
  threads.reserve(n_threads);
  for (int i = 0; i < n_threads; ++i) threads.emplace_back(worker);
  for (auto& t : threads) t.join();
  if (first_error) std::rethrow_exception(first_error);

  return results;
}

ReadsReport report_reads(const std::vector<RunResult>& runs, std::int64_t h) {
  ReadsReport r;
  r.h = h;
  if (runs.empty()) return r;
  for (const RunResult& run : runs) {
    r.mean_reads_first_online +=
        static_cast<double>(std::max<std::int64_t>(0, run.ledger.reads_at_first_online));
    r.mean_reads_final += static_cast<double>(run.ledger.reads);
  }
  r.mean_reads_first_online /= static_cast<double>(runs.size());
  r.mean_reads_final /= static_cast<double>(runs.size());
  return r;
}

void write_metrics_csv(const std::string& path, const PairResult& pair,
                       std::int64_t h, bool cmab) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "seed,t,regret,reads,unused_frac,regions,wall_ms\n";
  char buf[256];
  for (std::size_t si = 0; si < pair.runs.size(); ++si) {
    const RunResult& run = pair.runs[si];
    for (std::size_t t = 0; t < run.actions.size(); ++t) {
      const double unused =
          h > 0 ? 1.0 - static_cast<double>(run.reads_at[t]) / static_cast<double>(h)
                : 0.0;
      if (cmab) {
        std::snprintf(buf, sizeof buf, "%llu,%zu,%.17g,%lld,%.17g,%lld,%.3f\n",
                      static_cast<unsigned long long>(pair.seeds[si]), t + 1,
                      run.ledger.cum_regret[t],
                      static_cast<long long>(run.reads_at[t]), unused,
                      static_cast<long long>(run.regions_at[t]),
                      run.wall_ms_at[t]);
      } else {
        std::snprintf(buf, sizeof buf, "%llu,%zu,%.17g,%lld,%.17g,,%.3f\n",
                      static_cast<unsigned long long>(pair.seeds[si]), t + 1,
                      run.ledger.cum_regret[t],
                      static_cast<long long>(run.reads_at[t]), unused,
                      run.wall_ms_at[t]);
      }
      out << buf;
    }
  }
}

void write_summary_csv(const std::string& path, const PairResult& pair,
                       std::int64_t h, bool cmab) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "t,regret_mean,regret_sem,reads_mean,reads_sem,unused_mean,unused_sem,"
         "regions_mean,regions_sem\n";
  if (pair.runs.empty()) return;
  const std::size_t horizon = pair.runs.front().actions.size();
  const double n = static_cast<double>(pair.runs.size());
  char buf[320];
  for (std::size_t t = 0; t < horizon; ++t) {
    auto stats = [&](auto getter) {
      double mean = 0.0, m2 = 0.0;
      for (const RunResult& run : pair.runs) mean += getter(run);
      mean /= n;
      for (const RunResult& run : pair.runs) {
        const double d = getter(run) - mean;
        m2 += d * d;
      }
      const double sem = n > 1 ? std::sqrt(m2 / (n - 1) / n) : 0.0;
      return std::pair<double, double>(mean, sem);
    };
    const auto reg = stats([&](const RunResult& r) { return r.ledger.cum_regret[t]; });
    const auto rds =
        stats([&](const RunResult& r) { return static_cast<double>(r.reads_at[t]); });
    const auto unu = stats([&](const RunResult& r) {
      return h > 0
                 ? 1.0 - static_cast<double>(r.reads_at[t]) / static_cast<double>(h)
                 : 0.0;
    });
    const auto rgn = stats(
        [&](const RunResult& r) { return static_cast<double>(r.regions_at[t]); });
    if (cmab) {
      std::snprintf(buf, sizeof buf,
                    "%zu,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                    t + 1, reg.first, reg.second, rds.first, rds.second,
                    unu.first, unu.second, rgn.first, rgn.second);
    } else {
      std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,,\n",
                    t + 1, reg.first, reg.second, rds.first, rds.second,
                    unu.first, unu.second);
    }
    out << buf;
  }
}

void write_partition_csv(const std::string& path, const Policy& policy,
                         const ScenarioConfig& cfg) {
  const auto* disc = dynamic_cast<const cmab::DiscretizationPolicy*>(&policy);
  if (disc == nullptr) return;
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "beta,x0,y0,side,depth,n,mean,ucb\n";
  char buf[256];
  for (std::size_t li = 0; li < cfg.levels.size(); ++li) {
    disc->tree(static_cast<int>(li))
        .for_each_leaf([&](const cmab::RegionNode& leaf) {
          std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%d,%lld,%.17g,%.17g\n",
                        cfg.levels[li], leaf.cell.x0(), leaf.cell.y0(),
                        leaf.cell.side(), leaf.cell.depth,
                        static_cast<long long>(leaf.stats.n), leaf.stats.mean,
                        leaf.stats.ucb);
          out << buf;
        });
  }
}

void run_scenario(const ScenarioConfig& cfg, const std::string& out_dir) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  const auto results = execute(cfg);

  for (const PairResult& pair : results) {
    const std::string base = (fs::path(out_dir) / pair.name).string();
    write_metrics_csv(base + ".csv", pair, cfg.history_size, cfg.is_cmab());
    write_summary_csv(base + "_summary.csv", pair, cfg.history_size, cfg.is_cmab());
    validate_csv(base + ".csv");

    if (pair.meta == MetaKind::kArtificialReplay) {
      const ReadsReport r = report_reads(pair.runs, cfg.history_size);
      std::cout << pair.name << ": mean reads before first online action = "
                << r.mean_reads_first_online
                << ", mean reads at T = " << r.mean_reads_final
                << ", full-start reads = " << r.h << "\n";
    }
  }

  // Partition snapshot of the first seed of each discretization pair.
  if (cfg.is_cmab()) {
    for (const PairResult& pair : results) {
      if (pair.meta == MetaKind::kRandom || pair.meta == MetaKind::kOptimal)
        continue;
      SeedSetup setup = make_setup(cfg, cfg.master_seed);
      auto policy = make_policy(cfg, pair.algorithm, pair.meta, setup);
      auto history = make_history_source(cfg, setup);
      run_policy(wrapper_of(pair.meta), *policy, *setup.domain, *setup.tape,
                 history.get(), cfg.horizon);
      const std::string base = (fs::path(out_dir) / pair.name).string();
      write_partition_csv(base + "_partition.csv", *policy, cfg);
    }
  }
}

CoupleOutcome couple_scenario(const ScenarioConfig& cfg) {
  cfg.validate();
  CoupleOutcome out;
  const Algorithm alg = cfg.algorithms.front();

  std::shared_ptr<cmab::OptResult> oracle;
  std::shared_ptr<const std::vector<HistEntry>> csv_history;
  if (cfg.is_cmab()) {
    const CmabModel model = model_from(cfg);
    oracle = std::make_shared<cmab::OptResult>(cmab::solve_opt(
        model, cmab::opt_resolution_for(
                   model, alg == Algorithm::kFixedDisc ? cfg.gamma : 0.0,
                   cfg.opt_resolution)));
    if (cfg.domain == DomainKind::kCmabCsv) {
      csv_history = std::make_shared<const std::vector<HistEntry>>(
          load_history_csv(cfg.history_csv, true));
    }
  }

  {
    // Precondition: the coupling guarantee only covers bases with the
    // irrelevant-data property.
    SeedSetup probe = make_setup(cfg, cfg.master_seed, oracle.get(), csv_history);
    auto policy = make_policy(cfg, alg, MetaKind::kIgnorant, probe);
    if (!policy->iidata())
      throw std::invalid_argument(
          std::string(to_string(alg)) +
          " does not have the irrelevant-data property; coupling is not guaranteed");
  }

  for (int i = 0; i < cfg.seeds; ++i) {
    const std::uint64_t seed = cfg.master_seed + static_cast<std::uint64_t>(i);
    SeedSetup setup = make_setup(cfg, seed, oracle.get(), csv_history);
    auto base = make_policy(cfg, alg, MetaKind::kIgnorant, setup);
    auto factory = [&]() { return make_history_source(cfg, setup); };
    const CouplingReport report =
        verify_coupling(*base, *setup.domain, *setup.tape, factory, cfg.horizon);
    ++out.seeds_checked;
    if (!report.identical) {
      ++out.divergences;
      if (out.detail.empty()) {
        out.detail = "seed " + std::to_string(seed) + ": " + report.describe();
      }
    }
  }
  out.pass = out.divergences == 0;
  return out;
}

void validate_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::string line;
  if (!std::getline(in, line))
    throw std::runtime_error(path + ": empty file");
  while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) line.pop_back();
  if (line != "seed,t,regret,reads,unused_frac,regions,wall_ms")
    throw std::runtime_error(path + ": unexpected header");

  std::uint64_t cur_seed = 0;
  bool have_seed = false;
  std::int64_t prev_t = 0;
  double prev_regret = 0.0;
  std::int64_t prev_reads = 0;
  std::int64_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string tok;
    std::vector<std::string> cols;
    while (std::getline(ss, tok, ',')) cols.push_back(tok);
    // The regions field may be empty, in which case a trailing split is lost.
    if (cols.size() == 6) cols.insert(cols.begin() + 5, "");
    if (cols.size() != 7)
      throw std::runtime_error(path + " row " + std::to_string(row) +
                               ": wrong column count");
    const std::uint64_t seed = std::stoull(cols[0]);
    const std::int64_t t = std::stoll(cols[1]);
    const double regret = std::stod(cols[2]);
    const std::int64_t reads = std::stoll(cols[3]);
    const double unused = std::stod(cols[4]);

    if (!have_seed || seed != cur_seed) {
      cur_seed = seed;
      have_seed = true;
      if (t != 1)
        throw std::runtime_error(path + " row " + std::to_string(row) +
                                 ": seed block must start at t=1");
    } else {
      if (t != prev_t + 1)
        throw std::runtime_error(path + " row " + std::to_string(row) +
                                 ": non-contiguous timestep");
      if (regret < prev_regret - 1e-9)
        throw std::runtime_error(path + " row " + std::to_string(row) +
                                 ": regret decreased");
      if (reads < prev_reads)
        throw std::runtime_error(path + " row " + std::to_string(row) +
                                 ": reads decreased");
    }
    if (unused < -1e-12 || unused > 1.0 + 1e-12)
      throw std::runtime_error(path + " row " + std::to_string(row) +
                               ": unused fraction outside [0,1]");
    prev_t = t;
    prev_regret = regret;
    prev_reads = reads;
  }
}

}  // namespace bandit::harness
