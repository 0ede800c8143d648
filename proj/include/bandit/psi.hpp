#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

namespace bandit {

// Which horizon term feeds the exploration bonus.  The default reproduces
// the plain UCB1 bonus sqrt(2 log T / n); the other modes widen it for
// simultaneous confidence over all arms.
enum class LogTerm { kLogT, kLogTK, kLog2TK };

inline double log_term_value(LogTerm mode, std::int64_t t_horizon, int k) {
  switch (mode) {
    case LogTerm::kLogT:
      return std::log(static_cast<double>(t_horizon));
    case LogTerm::kLogTK:
      return std::log(static_cast<double>(t_horizon) * k);
    case LogTerm::kLog2TK:
      return std::log(2.0 * static_cast<double>(t_horizon) * k);
  }
  return 0.0;
}

// Convex rate function and its Legendre-Fenchel machinery.  The default is
// the Hoeffding envelope psi(l) = l^2/8 with psi*(e) = 2 e^2 and
// (psi*)^-1(y) = sqrt(y/2).
struct PsiSpec {
  std::function<double(double)> psi;
  std::function<double(double)> psi_star;      // closed form when known
  std::function<double(double)> psi_star_inv;  // y -> (psi*)^-1(y)
  LogTerm log_term = LogTerm::kLogT;

  static PsiSpec hoeffding(LogTerm mode = LogTerm::kLogT) {
    PsiSpec s;
    s.psi = [](double l) { return l * l / 8.0; };
    s.psi_star = [](double e) { return 2.0 * e * e; };
    s.psi_star_inv = [](double y) { return std::sqrt(y / 2.0); };
    s.log_term = mode;
    return s;
  }
};

// sup_l (l*eps - psi(l)) by golden-section search on an expanding bracket.
// Used as the generic route when no closed form is supplied; the closed form
// and this maximization agree for the default psi.
inline double psi_star_numeric(const std::function<double(double)>& psi,
                               double eps) {
  if (eps < 0) throw std::invalid_argument("psi* defined for eps >= 0");
  auto f = [&](double l) { return l * eps - psi(l); };
  double hi = 1.0;
  while (f(hi * 2.0) > f(hi) && hi < 1e12) hi *= 2.0;
  hi *= 2.0;
  double lo = 0.0;
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  for (int it = 0; it < 200 && (b - a) > 1e-13 * (1.0 + b); ++it) {
    if (f(c) > f(d)) {
      b = d;
    } else {
      a = c;
    }
    c = b - invphi * (b - a);
    d = a + invphi * (b - a);
  }
  const double l = (a + b) / 2.0;
  return f(l);
}

inline double psi_star(const PsiSpec& spec, double eps) {
  if (eps < 0) throw std::invalid_argument("psi* defined for eps >= 0");
  if (spec.psi_star) return spec.psi_star(eps);
  return psi_star_numeric(spec.psi, eps);
}

// Exploration bonus after n observations.  The scaling is chosen so the
// default spec evaluates to sqrt(2 * log_term / n) exactly.
inline double ucb_bonus(const PsiSpec& spec, std::int64_t n,
                        std::int64_t t_horizon, int k) {
  if (n <= 0) return std::numeric_limits<double>::infinity();
  const double lt = log_term_value(spec.log_term, t_horizon, k);
  return spec.psi_star_inv(4.0 * lt / static_cast<double>(n));
}

}  // namespace bandit
