#pragma once

#include <vector>

#include "bandit/harness/config.hpp"
#include "bandit/instance.hpp"
#include "bandit/rng.hpp"
#include "bandit/types.hpp"

namespace bandit::harness {

// Historical dataset for a finite instance.  Uniform mode draws arms
// uniformly; spurious mode puts fraction f of entries on the single worst
// arm; imbalanced mode puts fraction f on the bottom-20%-mean arm set.
// Rewards are drawn from the arm's distribution in all modes.
std::vector<HistEntry> generate_karmed_history(const KArmedInstance& inst,
                                               HistoryMode mode, double frac,
                                               std::int64_t h, Stream& rng);

// Per-arm sample counts, rewards from the arm's distribution, dataset order
// interleaved round-robin.  Used to build coverage-matched datasets.
std::vector<HistEntry> make_counted_history(const KArmedInstance& inst,
                                            const std::vector<std::int64_t>& counts,
                                            Stream& rng);

// Continuous-allocation dataset.  Uniform mode draws points uniformly with a
// uniformly chosen level; spurious mode puts fraction f of entries at the
// worst grid point; imbalanced mode draws fraction f from the bottom-20%
// mean-reward set by rejection.
std::vector<HistEntry> generate_cmab_history(const CmabModel& model,
                                             HistoryMode mode, double frac,
                                             std::int64_t h, Stream& rng);

// CSV io for historical datasets.  Finite header: action,reward.
// Continuous header: p1,p2,beta,reward.  Malformed rows raise with the row
// number.
std::vector<HistEntry> load_history_csv(const std::string& path, bool cmab);
void save_history_csv(const std::string& path, const std::vector<HistEntry>& entries,
                      bool cmab);

}  // namespace bandit::harness
