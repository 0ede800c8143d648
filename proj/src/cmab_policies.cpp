#include "bandit/cmab/policies.hpp"

#include <stdexcept>

namespace bandit::cmab {

int max_leaf_depth(double eps) {
  if (eps <= 0.0) return key::kMaxDepth;
  int depth = 0;
  // A cell of side 2^-d may split while 2^-d >= 2*eps.
  while (depth < key::kMaxDepth && std::ldexp(1.0, -depth) >= 2.0 * eps) {
    ++depth;
  }
  return depth;
}

int grid_depth(double gamma) {
  if (gamma <= 0.0 || gamma > 1.0)
    throw std::invalid_argument("grid mesh must be in (0, 1]");
  const double d = std::log2(1.0 / gamma);
  const int depth = static_cast<int>(std::lround(d));
  if (std::fabs(d - depth) > 1e-9 || depth > key::kMaxDepth)
    throw std::invalid_argument("grid mesh must be a dyadic 2^-k");
  return depth;
}

DiscretizationPolicy::DiscretizationPolicy(const CmabModel& model,
                                           std::int64_t horizon, double delta,
                                           bool adaptive, double gamma)
    : model_(model), horizon_(horizon), delta_(delta), adaptive_(adaptive) {
  if (model_.levels.empty())
    throw std::invalid_argument("need at least one allocation level");
  if (adaptive_) {
    trees_.assign(model_.levels.size(), PartitionTree());
  } else {
    const int depth = grid_depth(gamma);
    if (gamma < model_.eps)
      throw std::invalid_argument(
          "grid mesh below the separation parameter breaks feasibility");
    trees_.assign(model_.levels.size(), PartitionTree::uniform_grid(depth));
  }
}

void DiscretizationPolicy::decide(std::vector<ClassKey>& out) {
  const auto picked =
      select_regions(trees_, model_.levels, model_.n_slots, model_.budget);
  out.clear();
  for (const Selected& s : picked) {
    out.push_back(key::cell(s.level_idx, s.node->cell));
  }
}

void DiscretizationPolicy::update(const std::vector<ClassKey>& action,
                                  const std::vector<double>& rewards) {
  for (std::size_t i = 0; i < action.size(); ++i) {
    const Cell cell = key::cell_of(action[i]);
    observe(key::level_of(action[i]), cell.center(), rewards[i]);
  }
}

void DiscretizationPolicy::ingest(const HistEntry& entry) {
  if (entry.p.x < 0.0 || entry.p.x > 1.0 || entry.p.y < 0.0 || entry.p.y > 1.0)
    throw std::invalid_argument("history point outside [0,1]^2");
  const int li = model_.level_index(entry.beta);
  if (li < 0)
    throw std::invalid_argument("history allocation not a configured level");
  observe(li, entry.p, entry.reward);
}

void DiscretizationPolicy::observe(int level_idx, Point p, double reward) {
  RegionNode& leaf = trees_[level_idx].locate(p);
  leaf.stats.observe(reward, bonus(leaf.stats.n + 1));
  if (adaptive_) trees_[level_idx].maybe_split(leaf, model_.eps);
}

void DiscretizationPolicy::match_keys(const std::vector<ClassKey>& action,
                                      std::vector<ClassKey>& out) const {
  // Spatial closure of the proposal: for each proposed region, the covering
  // leaf at every allocation level (or the region itself where that level is
  // already finer).  Exhausting history over this closure keeps the lazily
  // replayed partition identical to the fully warmed one on every lineage
  // the selection rule can see near the chosen regions.
  out.clear();
  for (ClassKey k : action) {
    const Cell cell = key::cell_of(k);
    for (std::size_t li = 0; li < trees_.size(); ++li) {
      const Cell leaf_cell = trees_[li].locate(cell.center()).cell;
      const Cell query = leaf_cell.depth <= cell.depth ? leaf_cell : cell;
      const ClassKey qk = key::cell(static_cast<int>(li), query);
      bool seen = false;
      for (ClassKey existing : out) {
        if (existing == qk) {
          seen = true;
          break;
        }
      }
      if (!seen) out.push_back(qk);
    }
  }
}

std::int64_t DiscretizationPolicy::region_count() const {
  std::int64_t total = 0;
  for (const auto& t : trees_) total += t.leaf_count();
  return total;
}

}  // namespace bandit::cmab
