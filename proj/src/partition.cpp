#include "bandit/cmab/partition.hpp"

#include <algorithm>
#include <cmath>

namespace bandit::cmab {

namespace {

std::unique_ptr<RegionNode> clone_node(const RegionNode& n) {
  auto out = std::make_unique<RegionNode>();
  out->cell = n.cell;
  out->stats = n.stats;
  for (int i = 0; i < 4; ++i) {
    if (n.kid[i]) out->kid[i] = clone_node(*n.kid[i]);
  }
  return out;
}

void dfs_leaves(RegionNode& n, const std::function<void(RegionNode&)>& fn) {
  if (n.is_leaf()) {
    fn(n);
    return;
  }
  for (auto& k : n.kid) dfs_leaves(*k, fn);
}

void dfs_leaves_const(const RegionNode& n,
                      const std::function<void(const RegionNode&)>& fn) {
  if (n.is_leaf()) {
    fn(n);
    return;
  }
  for (const auto& k : n.kid) dfs_leaves_const(*k, fn);
}

}  // namespace

PartitionTree::PartitionTree() : root_(std::make_unique<RegionNode>()) {
  root_->cell = Cell{0, 0, 0};
}

PartitionTree::PartitionTree(const PartitionTree& other)
    : root_(clone_node(*other.root_)), leaf_count_(other.leaf_count_) {}

PartitionTree& PartitionTree::operator=(const PartitionTree& other) {
  if (this != &other) {
    root_ = clone_node(*other.root_);
    leaf_count_ = other.leaf_count_;
  }
  return *this;
}

PartitionTree PartitionTree::uniform_grid(int depth) {
  PartitionTree t;
  std::function<void(RegionNode&, int)> rec = [&](RegionNode& n, int d) {
    if (d == 0) return;
    t.split(n);
    for (auto& k : n.kid) rec(*k, d - 1);
  };
  rec(*t.root_, depth);
  return t;
}

RegionNode& PartitionTree::locate(Point p) {
  RegionNode* n = root_.get();
  while (!n->is_leaf()) {
    const Point c = n->cell.center();
    const int dx = p.x >= c.x ? 1 : 0;
    const int dy = p.y >= c.y ? 1 : 0;
    n = n->kid[dy * 2 + dx].get();
  }
  return *n;
}

const RegionNode& PartitionTree::locate(Point p) const {
  return const_cast<PartitionTree*>(this)->locate(p);
}

void PartitionTree::split(RegionNode& node) {
  const Cell& c = node.cell;
  for (int dy = 0; dy < 2; ++dy) {
    for (int dx = 0; dx < 2; ++dx) {
      auto kid = std::make_unique<RegionNode>();
      kid->cell = Cell{c.depth + 1, 2 * c.ix + dx, 2 * c.iy + dy};
      kid->stats = node.stats;  // children start from the parent's values
      node.kid[dy * 2 + dx] = std::move(kid);
    }
  }
  leaf_count_ += 3;
}

bool PartitionTree::maybe_split(RegionNode& node, double eps) {
  if (!node.is_leaf()) return false;
  const double r = node.cell.side();
  if (r < 2.0 * eps) return false;
  const double threshold = std::ldexp(1.0, 2 * node.cell.depth);  // (d_max/r)^2
  if (static_cast<double>(node.stats.n) < threshold) return false;
  split(node);
  return true;
}

void PartitionTree::for_each_leaf(
    const std::function<void(const RegionNode&)>& fn) const {
  dfs_leaves_const(*root_, fn);
}

void PartitionTree::for_each_leaf(const std::function<void(RegionNode&)>& fn) {
  dfs_leaves(*root_, fn);
}

namespace {

struct Candidate {
  double ratio = 0.0;
  double beta = 0.0;
  int level_idx = 0;
  RegionNode* node = nullptr;

  // Ratio first, then the larger allocation, then spatial order.  Preferring
  // the larger level on ties makes the greedy rule exact when region values
  // scale linearly with the allocation; the spatial key is stable under
  // splits so re-running the selection after irrelevant data cannot reorder
  // surviving ties (indices only min-update and split children sort at or
  // after their parent's position).
  bool before(const Candidate& o) const {
    if (ratio != o.ratio) return ratio > o.ratio;
    if (beta != o.beta) return beta > o.beta;
    const double x0 = node->cell.x0(), ox0 = o.node->cell.x0();
    if (x0 != ox0) return x0 < ox0;
    const double y0 = node->cell.y0(), oy0 = o.node->cell.y0();
    if (y0 != oy0) return y0 < oy0;
    return node->cell.depth < o.node->cell.depth;
  }
};

}  // namespace

std::vector<Selected> select_regions(std::vector<PartitionTree>& trees,
                                     const std::vector<double>& levels,
                                     int n_slots, double budget) {
  std::vector<Selected> out;
  if (n_slots <= 0) return out;

  // Zero-allocation levels never enter the selection: they add nothing to
  // the objective, an action may hold fewer than the slot cap of pairs, and
  // an optimistic zero-cost region would otherwise crowd real allocations
  // out of the slots.
  std::vector<Candidate> cands;
  for (std::size_t li = 0; li < levels.size(); ++li) {
    if (levels[li] <= 0.0) continue;
    trees[li].for_each_leaf([&](RegionNode& leaf) {
      Candidate c;
      c.beta = levels[li];
      c.level_idx = static_cast<int>(li);
      c.node = &leaf;
      c.ratio = leaf.stats.ucb / c.beta;
      cands.push_back(c);
    });
  }
  std::sort(cands.begin(), cands.end(),
            [](const Candidate& a, const Candidate& b) { return a.before(b); });

  double budget_left = budget;
  for (const Candidate& c : cands) {
    if (static_cast<int>(out.size()) >= n_slots) break;
    if (c.beta > budget_left + 1e-12) continue;
    bool overlaps = false;
    for (const Selected& s : out) {
      if (s.node->cell.nested_or_equal(c.node->cell)) {
        overlaps = true;
        break;
      }
    }
    if (overlaps) continue;
    out.push_back(Selected{c.level_idx, c.node});
    budget_left -= c.beta;
  }
  return out;
}

}  // namespace bandit::cmab
