#include <doctest.h>

#include <cmath>

#include "bandit/rng.hpp"
#include "bandit/thompson.hpp"

using namespace bandit;

namespace {

// ln Beta(a, b)
double lbeta(double a, double b) {
  return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

// P(X > Y) for X ~ Beta(a1,b1), Y ~ Beta(a2,b2), exact for integer a2.
double prob_first_greater(double a1, double b1, double a2, double b2) {
  double total = 0.0;
  for (int i = 0; i < static_cast<int>(a2); ++i) {
    total += std::exp(lbeta(a1 + i, b1 + b2) - std::log(b2 + i) -
                      lbeta(1 + i, b2) - lbeta(a1, b1));
  }
  return 1.0 - total;
}

// Independent quadrature oracle for the same probability.
double prob_first_greater_quad(double a1, double b1, double a2, double b2) {
  const int n = 200000;
  auto pdf = [&](double x) {
    return std::exp((a1 - 1) * std::log(x) + (b1 - 1) * std::log1p(-x) -
                    lbeta(a1, b1));
  };
  auto cdf2 = [&](double x) {
    // CDF of Beta(a2, b2) for integer parameters via the binomial identity.
    double s = 0.0;
    const int m = static_cast<int>(a2 + b2 - 1);
    for (int j = static_cast<int>(a2); j <= m; ++j) {
      s += std::exp(std::lgamma(m + 1) - std::lgamma(j + 1) -
                    std::lgamma(m - j + 1) + j * std::log(x) +
                    (m - j) * std::log1p(-x));
    }
    return s;
  };
  double acc = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = (i + 0.5) / n;
    acc += pdf(x) * cdf2(x);
  }
  return acc / n;
}

}  // namespace

TEST_CASE("conjugate updates move the right parameter") {
  Thompson p(2, Stream(1));
  CHECK(p.posterior(0).alpha == 1.0);
  CHECK(p.posterior(0).beta == 1.0);
  p.observe(0, 1.0);
  CHECK(p.posterior(0).alpha == 2.0);
  CHECK(p.posterior(0).beta == 1.0);
  p.observe(0, 0.0);
  CHECK(p.posterior(0).beta == 2.0);
  CHECK(p.posterior(1).alpha == 1.0);
}

TEST_CASE("non-binary rewards are rejected") {
  Thompson p(2, Stream(1));
  CHECK_THROWS(p.observe(0, 0.5));
}

TEST_CASE("a lopsided posterior wins nearly every draw") {
  Thompson p(2, Stream(42));
  for (int i = 0; i < 999999; ++i) {
    // alpha_0 = 1e6 ; beta_1 = 1e6 via direct parameter bumps
    p.observe(0, 1.0);
    p.observe(1, 0.0);
  }
  int wins = 0;
  const int draws = 10000;
  for (int i = 0; i < draws; ++i) {
    if (key::arm_of(p.decide()[0]) == 0) ++wins;
  }
  CHECK(static_cast<double>(wins) / draws > 0.999);
}

TEST_CASE("appending data on the other arm shifts the decision distribution") {
  // Exact witness: with posteriors Beta(2,1) vs Beta(1,1) the first arm is
  // chosen with probability 2/3; after one success lands on the second arm
  // the probability drops to 1/2.  Any such state breaks independence of
  // irrelevant data, which the deterministic index policies satisfy.
  const double before = prob_first_greater(2, 1, 1, 1);
  const double after = prob_first_greater(2, 1, 2, 1);
  CHECK(before == doctest::Approx(2.0 / 3.0).epsilon(1e-9));
  CHECK(after == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(std::fabs(before - after) > 0.01);

  // The closed form agrees with an independent quadrature.
  CHECK(before ==
        doctest::Approx(prob_first_greater_quad(2, 1, 1, 1)).epsilon(1e-6));
  CHECK(after ==
        doctest::Approx(prob_first_greater_quad(2, 1, 2, 1)).epsilon(1e-6));

  Thompson p(2, Stream(7));
  CHECK_FALSE(p.iidata());
}
