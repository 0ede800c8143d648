#include <doctest.h>

#include <set>
#include <vector>

#include "bandit/cmab/policies.hpp"
#include "bandit/monucb.hpp"
#include "bandit/rng.hpp"

using namespace bandit;
using namespace bandit::cmab;

namespace {

HistEntry arm_entry(int arm, double reward) {
  HistEntry e;
  e.arm = arm;
  e.reward = reward;
  return e;
}

// Every reachable observation path of the deterministic index policy on a
// binary-reward instance: the action at each step is fixed by the state, so
// the paths are exactly the 2^t reward strings.
template <typename Fn>
void enumerate_paths(int k, int t_max, const Fn& visit) {
  std::vector<int> rewards(t_max, 0);
  for (int mask = 0; mask < (1 << t_max); ++mask) {
    MonUcb policy(k, t_max);
    for (int t = 0; t < t_max; ++t) {
      visit(policy);
      const int arm = policy.best_arm();
      policy.observe(arm, (mask >> t) & 1 ? 1.0 : 0.0);
    }
    visit(policy);
  }
}

}  // namespace

TEST_CASE("exhaustive irrelevant-data check on small index states") {
  // K <= 4, horizons <= 6, every reward path, every appended batch of size
  // <= 2 on arms other than the decision.
  for (int k = 2; k <= 4; ++k) {
    for (int t_max = 1; t_max <= 6; ++t_max) {
      long states = 0;
      enumerate_paths(k, t_max, [&](const MonUcb& policy) {
        ++states;
        const int chosen = policy.best_arm();
        std::vector<HistEntry> batch_pool;
        for (int a = 0; a < k; ++a) {
          if (a == chosen) continue;
          batch_pool.push_back(arm_entry(a, 0.0));
          batch_pool.push_back(arm_entry(a, 1.0));
        }
        // Singletons.
        for (const HistEntry& e : batch_pool) {
          auto probe = policy.clone();
          probe->ingest(e);
          CHECK(static_cast<MonUcb*>(probe.get())->best_arm() == chosen);
        }
        // Pairs (with repetition).
        for (const HistEntry& e1 : batch_pool) {
          for (const HistEntry& e2 : batch_pool) {
            auto probe = policy.clone();
            probe->ingest(e1);
            probe->ingest(e2);
            CHECK(static_cast<MonUcb*>(probe.get())->best_arm() == chosen);
          }
        }
      });
      CHECK(states == (1 << t_max) * (t_max + 1));
    }
  }
}

TEST_CASE("randomized irrelevant-data checks at scale: flat index policy") {
  Stream rng(2025);
  for (int trial = 0; trial < 200; ++trial) {
    const int k = 2 + static_cast<int>(rng.uniform_int(9));
    MonUcb policy(k, 1000);
    const int steps = static_cast<int>(rng.uniform_int(500));
    for (int t = 0; t < steps; ++t) {
      const int arm = static_cast<int>(rng.uniform_int(k));
      policy.observe(arm, rng.bernoulli(0.5) ? 1.0 : 0.0);
    }
    const int chosen = policy.best_arm();

    auto probe = policy.clone();
    const int batch = 1 + static_cast<int>(rng.uniform_int(50));
    for (int i = 0; i < batch; ++i) {
      int a;
      do {
        a = static_cast<int>(rng.uniform_int(k));
      } while (a == chosen);
      probe->ingest(arm_entry(a, rng.bernoulli(0.5) ? 1.0 : 0.0));
    }
    CHECK(static_cast<MonUcb*>(probe.get())->best_arm() == chosen);
  }
}

TEST_CASE("randomized irrelevant-data checks at scale: combinatorial policy") {
  Stream rng(4047);
  for (int trial = 0; trial < 150; ++trial) {
    const int k = 4 + static_cast<int>(rng.uniform_int(7));
    const int b = 1 + static_cast<int>(rng.uniform_int(3));
    CombMonUcb policy(k, b, 1000);
    const int steps = static_cast<int>(rng.uniform_int(300));
    for (int t = 0; t < steps; ++t) {
      policy.observe(static_cast<int>(rng.uniform_int(k)),
                     rng.bernoulli(0.4) ? 1.0 : 0.0);
    }
    const auto chosen = policy.decide();
    std::set<int> chosen_arms;
    for (ClassKey c : chosen) chosen_arms.insert(key::arm_of(c));

    auto probe = policy.clone();
    const int batch = 1 + static_cast<int>(rng.uniform_int(30));
    for (int i = 0; i < batch; ++i) {
      int a;
      do {
        a = static_cast<int>(rng.uniform_int(k));
      } while (chosen_arms.count(a) > 0);
      probe->ingest(arm_entry(a, rng.bernoulli(0.6) ? 1.0 : 0.0));
    }
    CHECK(probe->decide() == chosen);
  }
}

TEST_CASE("randomized irrelevant-data checks at scale: discretization policies") {
  Stream rng(515);
  for (bool adaptive : {false, true}) {
    for (int trial = 0; trial < 75; ++trial) {
      CmabModel m;
      m.surface = Surface::kQuadratic;
      m.levels = {0.0, 0.5, 1.0};
      m.n_slots = 3;
      m.budget = 1.5;
      m.eps = 0.125;
      DiscretizationPolicy policy(m, 1000, 0.1, adaptive, 0.25);

      // Random warmup through the online path.
      const int steps = static_cast<int>(rng.uniform_int(120));
      for (int t = 0; t < steps; ++t) {
        const auto action = policy.decide();
        std::vector<double> rewards;
        for (ClassKey c : action) {
          rewards.push_back(rng.bernoulli(0.5) ? 1.0 : 0.0);
        }
        policy.update(action, rewards);
      }

      const auto chosen = policy.decide();
      std::set<ClassKey> chosen_keys(chosen.begin(), chosen.end());
      std::vector<Cell> chosen_cells;
      for (ClassKey c : chosen) chosen_cells.push_back(key::cell_of(c));

      // Batch of entries from classes outside the selection, evaluated
      // against the evolving partition as they land.  For the adaptive
      // variant the irrelevant set is the complement of the selection's
      // spatial closure: data landing in a leaf that overlaps a chosen
      // region (at any level) is the data the replay matcher would consume,
      // so it is not "irrelevant" to the decision.
      auto probe = policy.clone();
      auto* disc = static_cast<DiscretizationPolicy*>(probe.get());
      int appended = 0;
      int guard = 0;
      while (appended < 25 && ++guard < 4000) {
        HistEntry e;
        e.p = {rng.uniform01(), rng.uniform01()};
        const int li = static_cast<int>(rng.uniform_int(m.levels.size()));
        e.beta = m.levels[li];
        e.reward = rng.bernoulli(0.5) ? 1.0 : 0.0;
        const Cell cell = disc->tree(li).locate(e.p).cell;
        if (chosen_keys.count(key::cell(li, cell)) > 0) continue;
        if (adaptive) {
          bool overlaps = false;
          for (const Cell& c : chosen_cells) {
            if (c.nested_or_equal(cell)) {
              overlaps = true;
              break;
            }
          }
          if (overlaps) continue;
        }
        disc->ingest(e);
        ++appended;
      }
      CHECK(probe->decide() == chosen);
    }
  }
}
