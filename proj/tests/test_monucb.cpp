#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <vector>

#include "bandit/monucb.hpp"
#include "bandit/rng.hpp"

using namespace bandit;

TEST_CASE("fresh arms tie-break to the lowest index") {
  MonUcb p(3, 100);
  CHECK(p.decide() == std::vector<ClassKey>{key::arm(0)});
}

TEST_CASE("decide is the argmax of the indices") {
  MonUcb p(3, 1000);
  // Drive the indices apart with observations.
  for (int i = 0; i < 50; ++i) p.observe(0, 0.0);
  for (int i = 0; i < 50; ++i) p.observe(2, 0.0);
  p.observe(1, 1.0);
  // After many zero rewards arms 0/2 sank; arm 1 has the largest index.
  CHECK(p.best_arm() == 1);
}

TEST_CASE("warm start on one-sided history picks the evident winner") {
  MonUcb p(3, 1000);
  for (int i = 0; i < 400; ++i) {
    HistEntry e;
    e.arm = 2;
    e.reward = i % 10 < 9 ? 1.0 : 0.0;  // mean 0.9
    p.ingest(e);
    e.arm = 0;
    e.reward = i % 10 == 0 ? 1.0 : 0.0;  // mean 0.1
    p.ingest(e);
    e.arm = 1;
    e.reward = i % 5 == 0 ? 1.0 : 0.0;  // mean 0.2
    p.ingest(e);
  }
  // Hand evaluation: every arm has n = 400, bonus = sqrt(2 ln 1000 / 400)
  // ~ 0.186, so the indices order as the means do.
  CHECK(p.best_arm() == 2);
  CHECK(p.state(2).ucb > p.state(0).ucb);
  CHECK(p.state(2).ucb > p.state(1).ucb);
}

TEST_CASE("update at n=200 applies the closed-form bonus") {
  MonUcb p(1, 1000);
  // 199 rewards summing to 99.5, then one 0.5: mean lands exactly on 0.5.
  for (int i = 0; i < 199; ++i) p.observe(0, i < 99 ? 1.0 : (i == 99 ? 0.5 : 0.0));
  p.observe(0, 0.5);
  const auto& s = p.state(0);
  REQUIRE(s.n == 200);
  CHECK(s.mean == doctest::Approx(0.5).epsilon(1e-12));
  const double candidate = 0.5 + 0.26282608848784655;
  CHECK(s.ucb == doctest::Approx(std::min(1.0, candidate)).epsilon(1e-9));
  // n=200 with mean 0.5 gives candidate 0.7628..., below the initial 1.
  CHECK(s.ucb == doctest::Approx(0.76282608848784655).epsilon(1e-9));
}

TEST_CASE("a huge first bonus leaves the index at its initial value") {
  MonUcb p(2, 100);
  p.observe(0, 1.0);
  // candidate = 1 + sqrt(2 ln 100) > 1, so the min keeps 1.
  CHECK(p.state(0).ucb == 1.0);
  CHECK(p.state(0).n == 1);
}

TEST_CASE("updating one arm leaves every other arm bit-identical") {
  MonUcb p(3, 1000);
  p.observe(2, 1.0);
  p.observe(2, 0.0);
  const ArmState before1 = p.state(1);
  const ArmState before0 = p.state(0);
  p.observe(2, 1.0);
  CHECK(std::memcmp(&before1, &p.state(1), sizeof(ArmState)) == 0);
  CHECK(std::memcmp(&before0, &p.state(0), sizeof(ArmState)) == 0);
}

TEST_CASE("rewards outside [0,1] are rejected") {
  MonUcb p(2, 100);
  CHECK_THROWS(p.observe(0, -0.1));
  CHECK_THROWS(p.observe(0, 1.1));
  CHECK_THROWS(p.observe(5, 0.5));
}

TEST_CASE("indices never increase over a random run") {
  MonUcb p(4, 2000);
  Stream rng(11);
  std::vector<double> prev(4, 1.0);
  for (int t = 0; t < 2000; ++t) {
    const int arm = static_cast<int>(rng.uniform_int(4));
    p.observe(arm, rng.bernoulli(0.3 + 0.1 * arm) ? 1.0 : 0.0);
    for (int a = 0; a < 4; ++a) {
      CHECK(p.state(a).ucb <= prev[a] + 1e-15);
      prev[a] = p.state(a).ucb;
      CHECK(p.state(a).ucb <= 1.0);
    }
  }
}

TEST_CASE("combinatorial decide returns the top indices") {
  CombMonUcb p(4, 2, 1000);
  // Push arms to distinct indices: observed means 0.1, 0.9, 0.8, 0.2.
  const double means[] = {0.1, 0.9, 0.8, 0.2};
  for (int a = 0; a < 4; ++a) {
    for (int i = 0; i < 500; ++i) {
      p.observe(a, i < 500 * means[a] ? 1.0 : 0.0);
    }
  }
  const auto action = p.decide();
  REQUIRE(action.size() == 2);
  CHECK(key::arm_of(action[0]) == 1);
  CHECK(key::arm_of(action[1]) == 2);
}

TEST_CASE("fresh combinatorial ties take the lowest indices") {
  CombMonUcb p(5, 3, 100);
  const auto action = p.decide();
  REQUIRE(action.size() == 3);
  CHECK(key::arm_of(action[0]) == 0);
  CHECK(key::arm_of(action[1]) == 1);
  CHECK(key::arm_of(action[2]) == 2);
}

TEST_CASE("greedy top-B matches the exhaustive subset maximum") {
  const int k = 10, b = 3;
  Stream rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    CombMonUcb p(k, b, 1000);
    // Random decayed indices via random observation counts.
    for (int a = 0; a < k; ++a) {
      const int n = 1 + static_cast<int>(rng.uniform_int(60));
      for (int i = 0; i < n; ++i) p.observe(a, rng.bernoulli(0.5) ? 1.0 : 0.0);
    }
    const auto action = p.decide();
    double got = 0.0;
    for (ClassKey c : action) got += p.state(key::arm_of(c)).ucb;

    // Exhaustive oracle over all C(10,3) subsets.
    double best = -1.0;
    for (int i = 0; i < k; ++i) {
      for (int j = i + 1; j < k; ++j) {
        for (int l = j + 1; l < k; ++l) {
          best = std::max(best, p.state(i).ucb + p.state(j).ucb + p.state(l).ucb);
        }
      }
    }
    CHECK(got == doctest::Approx(best).epsilon(1e-12));
  }
}

TEST_CASE("integer budget beyond the arm count is a configuration error") {
  CHECK_THROWS(CombMonUcb(3, 4, 100));
}
