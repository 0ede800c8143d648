#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "bandit/types.hpp"

namespace bandit {

// Read-only view of a historical dataset plus per-execution consumption
// state.  pop() hands out the earliest unconsumed entry matching a class,
// FIFO per class; exhaustion is a normal empty return.
class HistorySource {
 public:
  virtual ~HistorySource() = default;
  virtual std::optional<HistEntry> pop(ClassKey cls) = 0;
  virtual std::int64_t reads() const = 0;
  virtual std::int64_t size() const = 0;
  virtual const std::vector<HistEntry>& entries() const = 0;
};

// Per-arm FIFO index over a finite-armed dataset.  Built once per dataset,
// the way the dataset's own storage would be; shared read-only by every
// execution.
class ArmHistoryIndex {
 public:
  ArmHistoryIndex(std::shared_ptr<const std::vector<HistEntry>> entries, int k)
      : entries_(std::move(entries)), per_arm_(k) {
    const auto& data = *entries_;
    for (std::size_t i = 0; i < data.size(); ++i) {
      const int arm = data[i].arm;
      if (arm >= 0 && arm < k) per_arm_[arm].push_back(i);
    }
  }

  const std::vector<HistEntry>& entries() const { return *entries_; }
  const std::vector<std::size_t>& of(int arm) const { return per_arm_[arm]; }
  int arms() const { return static_cast<int>(per_arm_.size()); }
  std::shared_ptr<const std::vector<HistEntry>> shared_entries() const {
    return entries_;
  }

 private:
  std::shared_ptr<const std::vector<HistEntry>> entries_;
  std::vector<std::vector<std::size_t>> per_arm_;
};

// Consumption state for one execution: a cursor into each arm's FIFO list.
// pop() is constant-time; only the cursors are owned.
class ArmHistory final : public HistorySource {
 public:
  ArmHistory(std::shared_ptr<const std::vector<HistEntry>> entries, int k)
      : owned_(std::make_shared<ArmHistoryIndex>(std::move(entries), k)),
        index_(owned_.get()),
        cursor_(k, 0) {}

  explicit ArmHistory(const ArmHistoryIndex& index)
      : index_(&index), cursor_(index.arms(), 0) {}

  std::optional<HistEntry> pop(ClassKey cls) override {
    const int arm = key::arm_of(cls);
    if (arm < 0 || arm >= static_cast<int>(cursor_.size())) return std::nullopt;
    const auto& list = index_->of(arm);
    if (cursor_[arm] >= list.size()) return std::nullopt;
    ++reads_;
    return index_->entries()[list[cursor_[arm]++]];
  }

  std::int64_t reads() const override { return reads_; }
  std::int64_t size() const override {
    return static_cast<std::int64_t>(index_->entries().size());
  }
  const std::vector<HistEntry>& entries() const override {
    return index_->entries();
  }

  std::int64_t cursor(int arm) const {
    return static_cast<std::int64_t>(cursor_[arm]);
  }

 private:
  std::shared_ptr<const ArmHistoryIndex> owned_;  // null when index borrowed
  const ArmHistoryIndex* index_;
  std::vector<std::size_t> cursor_;
  std::int64_t reads_ = 0;
};

}  // namespace bandit
