#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "bandit/harness/config.hpp"
#include "bandit/harness/history_gen.hpp"
#include "bandit/harness/scenario.hpp"
#include "bandit/rng.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Bandit simulation harness with lazy historical-data replay"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_path;
  std::string csv_path;

  auto* run = app.add_subcommand("run", "Run a scenario and write metrics CSVs");
  run->add_option("--config", config_path, "scenario config file")->required();
  run->add_option("--out", out_path, "output directory")->required();

  auto* couple = app.add_subcommand(
      "couple", "Check that replay and full start take identical actions");
  couple->add_option("--config", config_path, "scenario config file")->required();

  auto* gen = app.add_subcommand("gen-history", "Generate a historical dataset CSV");
  gen->add_option("--config", config_path, "scenario config file")->required();
  gen->add_option("--out", out_path, "output CSV path")->required();

  auto* validate = app.add_subcommand("validate", "Validate an emitted metrics CSV");
  validate->add_option("--csv", csv_path, "metrics CSV path")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      const auto cfg = bandit::harness::load_config(config_path);
      bandit::harness::run_scenario(cfg, out_path);
      std::cout << "ok: wrote metrics to " << out_path << "\n";
    } else if (couple->parsed()) {
      const auto cfg = bandit::harness::load_config(config_path);
      const auto outcome = bandit::harness::couple_scenario(cfg);
      std::cout << "seeds checked: " << outcome.seeds_checked
                << ", divergences: " << outcome.divergences << "\n";
      if (!outcome.pass) {
        std::cout << "first divergence: " << outcome.detail << "\n";
        return 1;
      }
      std::cout << "coupling holds on every seed\n";
    } else if (gen->parsed()) {
      const auto cfg = bandit::harness::load_config(config_path);
      bandit::Stream rng = bandit::Stream::derive(cfg.master_seed, "history");
      if (cfg.is_cmab()) {
        bandit::CmabModel model;
        model.surface = cfg.domain == bandit::harness::DomainKind::kCmabPwl
                            ? bandit::Surface::kPiecewiseLinear
                            : cfg.domain == bandit::harness::DomainKind::kCmabQuadratic
                                  ? bandit::Surface::kQuadratic
                                  : cfg.surface;
        model.levels = cfg.levels;
        model.n_slots = cfg.n_slots;
        model.budget = cfg.budget;
        model.eps = cfg.eps;
        model.lipschitz = cfg.lipschitz;
        const auto entries = bandit::harness::generate_cmab_history(
            model, cfg.history_mode, cfg.history_frac, cfg.history_size, rng);
        bandit::harness::save_history_csv(out_path, entries, true);
      } else {
        bandit::KArmedInstance inst;
        if (!cfg.means.empty()) {
          inst.means = cfg.means;
        } else {
          bandit::Stream inst_rng = bandit::Stream::derive(cfg.master_seed, "instance");
          inst = bandit::KArmedInstance::uniform_random(cfg.k, inst_rng);
        }
        const auto entries = bandit::harness::generate_karmed_history(
            inst, cfg.history_mode, cfg.history_frac, cfg.history_size, rng);
        bandit::harness::save_history_csv(out_path, entries, false);
      }
      std::cout << "ok: wrote " << cfg.history_size << " entries to " << out_path
                << "\n";
    } else if (validate->parsed()) {
      bandit::harness::validate_csv(csv_path);
      std::cout << "ok: " << csv_path << " passes the column checks\n";
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
