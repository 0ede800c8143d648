#pragma once

#include <array>
#include <functional>
#include <memory>
#include <vector>

#include "bandit/arm_state.hpp"
#include "bandit/instance.hpp"
#include "bandit/types.hpp"

namespace bandit::cmab {

struct RegionNode {
  Cell cell;
  ArmState stats;
  std::array<std::unique_ptr<RegionNode>, 4> kid;  // all null while a leaf
  bool is_leaf() const { return kid[0] == nullptr; }
};

// One partition tree of [0,1]^2 for a single allocation level, rooted at the
// full space (radius d_max = 1).  Leaves tile the space; only leaves are
// selectable.  Splitting quarters a cell and the children start from the
// parent's statistics.
class PartitionTree {
 public:
  PartitionTree();

  // Pre-split uniform grid with 4^depth leaves; used by fixed
  // discretization, which never re-partitions.
  static PartitionTree uniform_grid(int depth);

  PartitionTree(const PartitionTree& other);
  PartitionTree& operator=(const PartitionTree& other);
  PartitionTree(PartitionTree&&) = default;
  PartitionTree& operator=(PartitionTree&&) = default;

  // Leaf containing p.  Cells are half-open; coordinates equal to 1.0 fall
  // into the last cell along that axis.
  RegionNode& locate(Point p);
  const RegionNode& locate(Point p) const;

  // Split when the cell has been observed at least (d_max / r)^2 times and
  // r >= 2*eps.  Returns true when a split happened.
  bool maybe_split(RegionNode& node, double eps);

  void split(RegionNode& node);

  // Depth-first traversal of leaves in fixed child order; this order is
  // stable under splits, which the deterministic selection tie-break relies
  // on.
  void for_each_leaf(const std::function<void(const RegionNode&)>& fn) const;
  void for_each_leaf(const std::function<void(RegionNode&)>& fn);

  std::int64_t leaf_count() const { return leaf_count_; }
  const RegionNode& root() const { return *root_; }
  RegionNode& root() { return *root_; }

 private:
  std::unique_ptr<RegionNode> root_;
  std::int64_t leaf_count_ = 1;
};

// One (leaf, level) pair chosen by the selection rule.
struct Selected {
  int level_idx = 0;
  RegionNode* node = nullptr;
};

// Greedy knapsack over all (leaf, level) candidates: repeatedly take the
// feasible candidate with the best UCB-to-allocation ratio subject to the
// budget, the slot cap, and spatial exclusivity (no two chosen cells may
// overlap, which also forbids re-selecting a cell at another level).
// Zero-cost levels are ranked by UCB against the smallest positive level.
std::vector<Selected> select_regions(std::vector<PartitionTree>& trees,
                                     const std::vector<double>& levels,
                                     int n_slots, double budget);

}  // namespace bandit::cmab
