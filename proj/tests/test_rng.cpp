#include <doctest.h>

#include "bandit/rng.hpp"

using namespace bandit;

TEST_CASE("derived streams are deterministic and purpose-isolated") {
  Stream a = Stream::derive(42, "instance");
  Stream b = Stream::derive(42, "instance");
  Stream c = Stream::derive(42, "history");

  bool all_equal = true;
  bool any_differ = false;
  for (int i = 0; i < 100; ++i) {
    const double va = a.uniform01();
    all_equal = all_equal && va == b.uniform01();
    any_differ = any_differ || va != c.uniform01();
  }
  CHECK(all_equal);
  CHECK(any_differ);
}

TEST_CASE("uniform01 stays in [0,1) and uniform_int in range") {
  Stream s(7);
  for (int i = 0; i < 1000; ++i) {
    const double u = s.uniform01();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    CHECK(s.uniform_int(13) < 13);
  }
}

TEST_CASE("bernoulli respects degenerate probabilities") {
  Stream s(3);
  for (int i = 0; i < 100; ++i) {
    CHECK(s.bernoulli(1.0));
    CHECK_FALSE(s.bernoulli(0.0));
  }
}
