#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <vector>

#include "bandit/history.hpp"
#include "bandit/instance.hpp"
#include "bandit/types.hpp"

namespace bandit::cmab {

// Spatial index over a continuous-allocation dataset: one dyadic tree per
// allocation level, points bucketed at a fixed maximum depth.  Supports
// counting unused points inside any cell and popping the earliest unused
// point inside a cell (FIFO in dataset order).  After the caller's partition
// splits a region, queries against the child cells see exactly the unused
// points that fall inside them.
class CmabHistory final : public bandit::HistorySource {
 public:
  CmabHistory(std::shared_ptr<const std::vector<HistEntry>> entries,
              const CmabModel& model, int max_depth);

  std::optional<HistEntry> pop(ClassKey cls) override;
  std::int64_t reads() const override { return reads_; }
  std::int64_t size() const override {
    return static_cast<std::int64_t>(entries_->size());
  }
  const std::vector<HistEntry>& entries() const override { return *entries_; }

  std::int64_t unused_in(ClassKey cls) const;

 private:
  static constexpr std::int64_t kNone = std::numeric_limits<std::int64_t>::max();

  struct Node {
    std::int64_t unused = 0;
    std::int64_t min_idx = kNone;  // smallest unused dataset index below
    std::array<std::unique_ptr<Node>, 4> kid;
    std::vector<std::int64_t> bucket;  // dataset indices, ascending
    std::size_t cursor = 0;            // consumed prefix of the bucket
  };

  Node* walk(int level_idx, const Cell& cell) const;
  std::int64_t take_min(Node& n);
  void refresh(Node& n);

  std::shared_ptr<const std::vector<HistEntry>> entries_;
  std::vector<std::unique_ptr<Node>> roots_;  // per allocation level
  int max_depth_;
  std::int64_t reads_ = 0;
};

}  // namespace bandit::cmab
