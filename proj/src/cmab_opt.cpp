#include "bandit/cmab/opt.hpp"

#include <algorithm>
#include <cmath>

#include "bandit/cmab/policies.hpp"

namespace bandit::cmab {

namespace {

struct Cand {
  Point p;
  double vmax = 0.0;   // best value over positive levels
  double vrate = 0.0;  // best value-to-allocation ratio over positive levels
};

struct Search {
  const CmabModel* model;
  std::vector<Cand> cands;          // sorted by vmax descending
  std::vector<double> prefix;       // prefix sums of vmax
  std::vector<double> suffix_rate;  // suffix max of vrate
  std::vector<double> pos_levels;   // positive levels, descending
  double best = 0.0;
  std::vector<std::pair<int, double>> chosen;  // (candidate idx, level)
  std::vector<std::pair<int, double>> best_set;

  // Two admissible relaxations: drop the budget (top remaining values) or
  // drop the slot/separation structure (budget times the best remaining
  // value rate).  Either alone is weak; their min prunes hard.
  double bound(std::size_t pos, int slots, double budget) const {
    const std::size_t hi = std::min(pos + slots, cands.size());
    const double by_slots = prefix[hi] - prefix[pos];
    const double by_budget = budget * suffix_rate[pos];
    return std::min(by_slots, by_budget);
  }

  void rec(std::size_t pos, int slots, double budget, double value) {
    if (value > best) {
      best = value;
      best_set = chosen;
    }
    if (slots == 0) return;
    for (std::size_t i = pos; i < cands.size(); ++i) {
      // Both bound terms are non-increasing in i, so the break is safe.
      if (value + bound(i, slots, budget) <= best) break;
      bool ok = true;
      for (const auto& [ci, b] : chosen) {
        if (dist_inf(cands[ci].p, cands[i].p) < model->eps - 1e-12) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      for (double beta : pos_levels) {
        if (beta > budget + 1e-12) continue;
        const double v = model->mu(cands[i].p, beta);
        if (v <= 0.0) continue;
        chosen.emplace_back(static_cast<int>(i), beta);
        rec(i + 1, slots - 1, budget - beta, value + v);
        chosen.pop_back();
      }
    }
  }
};

}  // namespace

OptResult solve_opt(const CmabModel& model, int resolution) {
  Search s;
  s.model = &model;
  for (double b : model.levels) {
    if (b > 0.0) s.pos_levels.push_back(b);
  }
  std::sort(s.pos_levels.begin(), s.pos_levels.end(), std::greater<>());

  s.cands.reserve(static_cast<std::size_t>(resolution + 1) * (resolution + 1));
  for (int i = 0; i <= resolution; ++i) {
    for (int j = 0; j <= resolution; ++j) {
      Cand c;
      c.p = {static_cast<double>(i) / resolution,
             static_cast<double>(j) / resolution};
      for (double b : s.pos_levels) {
        const double v = model.mu(c.p, b);
        c.vmax = std::max(c.vmax, v);
        c.vrate = std::max(c.vrate, v / b);
      }
      if (c.vmax > 0.0) s.cands.push_back(c);
    }
  }
  std::sort(s.cands.begin(), s.cands.end(),
            [](const Cand& a, const Cand& b) { return a.vmax > b.vmax; });
  s.prefix.assign(s.cands.size() + 1, 0.0);
  for (std::size_t i = 0; i < s.cands.size(); ++i) {
    s.prefix[i + 1] = s.prefix[i] + s.cands[i].vmax;
  }
  s.suffix_rate.assign(s.cands.size() + 1, 0.0);
  for (std::size_t i = s.cands.size(); i-- > 0;) {
    s.suffix_rate[i] = std::max(s.suffix_rate[i + 1], s.cands[i].vrate);
  }

  s.rec(0, model.n_slots, model.budget, 0.0);

  OptResult out;
  out.value = s.best;
  for (const auto& [ci, beta] : s.best_set) {
    out.action.emplace_back(s.cands[ci].p, beta);
  }
  return out;
}

int opt_resolution_for(const CmabModel& model, double gamma, int requested) {
  int depth = max_leaf_depth(model.eps);
  if (gamma > 0.0) depth = std::max(depth, grid_depth(gamma));
  const int needed = 1 << std::min(depth + 1, 12);
  return std::max({requested, needed, 64});
}

}  // namespace bandit::cmab
