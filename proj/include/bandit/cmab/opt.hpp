#pragma once

#include <utility>
#include <vector>

#include "bandit/instance.hpp"
#include "bandit/types.hpp"

namespace bandit::cmab {

struct OptResult {
  double value = 0.0;
  std::vector<std::pair<Point, double>> action;  // chosen (point, allocation)
};

// Exact optimum of the allocation problem over the grid {i/resolution} x
// {j/resolution}: maximize the summed mean reward over at most n_slots
// (point, level) pairs subject to the budget and pairwise separation.
// Solved by branch and bound with an admissible sorted-value bound, so the
// result is the true grid optimum.  The grid includes the corners, hence the
// surfaces' analytic optima when they sit on grid points; it also contains
// every dyadic cell center down to depth log2(resolution)-1, so no playable
// discretized action can exceed the returned value.
OptResult solve_opt(const CmabModel& model, int resolution);

// Resolution fine enough to contain every leaf center the policies can play
// for this model (and at least 64).
int opt_resolution_for(const CmabModel& model, double gamma, int requested);

}  // namespace bandit::cmab
