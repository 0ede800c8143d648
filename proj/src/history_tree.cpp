#include "bandit/cmab/history_tree.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace bandit::cmab {

CmabHistory::CmabHistory(std::shared_ptr<const std::vector<HistEntry>> entries,
                         const CmabModel& model, int max_depth)
    : entries_(std::move(entries)),
      max_depth_(std::min(max_depth, key::kMaxDepth)) {
  roots_.resize(model.levels.size());
  const auto& data = *entries_;
  for (std::int64_t j = 0; j < static_cast<std::int64_t>(data.size()); ++j) {
    const HistEntry& e = data[j];
    if (e.p.x < 0.0 || e.p.x > 1.0 || e.p.y < 0.0 || e.p.y > 1.0)
      throw std::invalid_argument("history entry " + std::to_string(j) +
                                  ": point outside [0,1]^2");
    const int li = model.level_index(e.beta);
    if (li < 0)
      throw std::invalid_argument("history entry " + std::to_string(j) +
                                  ": allocation not a configured level");
    if (!roots_[li]) roots_[li] = std::make_unique<Node>();
    Node* n = roots_[li].get();
    // Descend to the bucket depth, creating nodes along the way.  A
    // coordinate equal to 1.0 always lands in the upper child.
    std::uint32_t ix = 0, iy = 0;
    for (int d = 0; d < max_depth_; ++d) {
      const double s = std::ldexp(1.0, -(d + 1));
      const int dx = e.p.x >= (2 * ix + 1) * s ? 1 : 0;
      const int dy = e.p.y >= (2 * iy + 1) * s ? 1 : 0;
      const int child = dy * 2 + dx;
      if (!n->kid[child]) n->kid[child] = std::make_unique<Node>();
      n->unused++;
      n->min_idx = std::min(n->min_idx, j);
      n = n->kid[child].get();
      ix = 2 * ix + dx;
      iy = 2 * iy + dy;
    }
    n->bucket.push_back(j);
    n->unused++;
    n->min_idx = std::min(n->min_idx, j);
  }
}

CmabHistory::Node* CmabHistory::walk(int level_idx, const Cell& cell) const {
  if (level_idx < 0 || level_idx >= static_cast<int>(roots_.size()))
    return nullptr;
  Node* n = roots_[level_idx].get();
  for (int d = cell.depth - 1; n != nullptr && d >= 0; --d) {
    const int dx = (cell.ix >> d) & 1;
    const int dy = (cell.iy >> d) & 1;
    n = n->kid[dy * 2 + dx].get();
  }
  return n;
}

void CmabHistory::refresh(Node& n) {
  n.min_idx = n.cursor < n.bucket.size() ? n.bucket[n.cursor] : kNone;
  for (const auto& k : n.kid) {
    if (k && k->min_idx < n.min_idx) n.min_idx = k->min_idx;
  }
}

std::int64_t CmabHistory::take_min(Node& n) {
  std::int64_t got;
  if (n.cursor < n.bucket.size() && n.bucket[n.cursor] == n.min_idx) {
    got = n.bucket[n.cursor++];
  } else {
    Node* best = nullptr;
    for (const auto& k : n.kid) {
      if (k && k->min_idx == n.min_idx) {
        best = k.get();
        break;
      }
    }
    got = take_min(*best);
  }
  n.unused--;
  refresh(n);
  return got;
}

std::optional<HistEntry> CmabHistory::pop(ClassKey cls) {
  if (key::tag(cls) != key::kTagCell) return std::nullopt;
  const Cell cell = key::cell_of(cls);
  if (cell.depth > max_depth_) return std::nullopt;
  const int li = key::level_of(cls);
  if (li < 0 || li >= static_cast<int>(roots_.size()) || !roots_[li])
    return std::nullopt;

  std::vector<Node*> path;  // root .. parent of target
  Node* n = roots_[li].get();
  for (int d = cell.depth - 1; d >= 0; --d) {
    path.push_back(n);
    const int dx = (cell.ix >> d) & 1;
    const int dy = (cell.iy >> d) & 1;
    n = n->kid[dy * 2 + dx].get();
    if (n == nullptr) return std::nullopt;
  }
  if (n->unused == 0) return std::nullopt;

  const std::int64_t j = take_min(*n);
  // Ancestors refresh bottom-up so each sees its child's new minimum.
  for (auto it = path.rbegin(); it != path.rend(); ++it) {
    (*it)->unused--;
    refresh(**it);
  }
  ++reads_;
  return (*entries_)[static_cast<std::size_t>(j)];
}

std::int64_t CmabHistory::unused_in(ClassKey cls) const {
  if (key::tag(cls) != key::kTagCell) return 0;
  const Cell cell = key::cell_of(cls);
  Node* n = walk(key::level_of(cls), cell);
  return n == nullptr ? 0 : n->unused;
}

}  // namespace bandit::cmab
