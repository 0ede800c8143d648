#include "bandit/harness/history_gen.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace bandit::harness {

namespace {

HistEntry draw_arm_entry(const KArmedInstance& inst, int arm, Stream& rng) {
  HistEntry e;
  e.arm = arm;
  e.reward = rng.bernoulli(inst.means[arm]) ? 1.0 : 0.0;
  return e;
}

}  // namespace

std::vector<HistEntry> generate_karmed_history(const KArmedInstance& inst,
                                               HistoryMode mode, double frac,
                                               std::int64_t h, Stream& rng) {
  if (frac < 0.0 || frac > 1.0)
    throw std::invalid_argument("history fraction must be in [0,1]");
  std::vector<HistEntry> out;
  out.reserve(h);

  const auto bad = inst.bottom_arms(0.2);
  int worst = 0;
  for (int a = 1; a < inst.k(); ++a) {
    if (inst.means[a] < inst.means[worst]) worst = a;
  }

  for (std::int64_t j = 0; j < h; ++j) {
    int arm;
    switch (mode) {
      case HistoryMode::kUniform:
        arm = static_cast<int>(rng.uniform_int(inst.k()));
        break;
      case HistoryMode::kSpurious:
        arm = rng.uniform01() < frac
                  ? worst
                  : static_cast<int>(rng.uniform_int(inst.k()));
        break;
      case HistoryMode::kImbalanced:
        arm = rng.uniform01() < frac
                  ? bad[rng.uniform_int(bad.size())]
                  : static_cast<int>(rng.uniform_int(inst.k()));
        break;
      default:
        arm = 0;
    }
    out.push_back(draw_arm_entry(inst, arm, rng));
  }
  return out;
}

std::vector<HistEntry> make_counted_history(const KArmedInstance& inst,
                                            const std::vector<std::int64_t>& counts,
                                            Stream& rng) {
  std::vector<std::int64_t> left = counts;
  std::vector<HistEntry> out;
  bool more = true;
  while (more) {
    more = false;
    for (int a = 0; a < inst.k(); ++a) {
      if (left[a] > 0) {
        out.push_back(draw_arm_entry(inst, a, rng));
        --left[a];
        more = more || left[a] > 0;
      }
    }
  }
  return out;
}

std::vector<HistEntry> generate_cmab_history(const CmabModel& model,
                                             HistoryMode mode, double frac,
                                             std::int64_t h, Stream& rng) {
  if (frac < 0.0 || frac > 1.0)
    throw std::invalid_argument("history fraction must be in [0,1]");
  std::vector<HistEntry> out;
  out.reserve(h);

  auto uniform_pair = [&]() {
    HistEntry e;
    e.arm = -1;
    e.p = {rng.uniform01(), rng.uniform01()};
    e.beta = model.levels[rng.uniform_int(model.levels.size())];
    return e;
  };

  // Bottom-20% threshold of the mean reward over a fixed evaluation lattice,
  // so the bad-region set is deterministic per model.
  double q20 = 0.0;
  Point worst{0.0, 0.0};
  double worst_val = 2.0;
  {
    std::vector<double> vals;
    const int res = 32;
    for (int i = 0; i <= res; ++i) {
      for (int j = 0; j <= res; ++j) {
        const Point p{static_cast<double>(i) / res, static_cast<double>(j) / res};
        for (double b : model.levels) {
          const double v = model.mu(p, b);
          vals.push_back(v);
          if (b > 0.0 && v < worst_val) {
            worst_val = v;
            worst = p;
          }
        }
      }
    }
    std::sort(vals.begin(), vals.end());
    q20 = vals[static_cast<std::size_t>(0.2 * (vals.size() - 1))];
  }

  for (std::int64_t j = 0; j < h; ++j) {
    HistEntry e;
    switch (mode) {
      case HistoryMode::kUniform:
        e = uniform_pair();
        break;
      case HistoryMode::kSpurious:
        if (rng.uniform01() < frac) {
          e.arm = -1;
          e.p = worst;
          e.beta = model.levels.back();
        } else {
          e = uniform_pair();
        }
        break;
      case HistoryMode::kImbalanced:
        if (rng.uniform01() < frac) {
          int guard = 0;
          do {
            e = uniform_pair();
          } while (model.mu(e.p, e.beta) > q20 && ++guard < 10000);
        } else {
          e = uniform_pair();
        }
        break;
      default:
        e = uniform_pair();
    }
    e.reward = rng.bernoulli(model.mu(e.p, e.beta)) ? 1.0 : 0.0;
    out.push_back(e);
  }
  return out;
}

std::vector<HistEntry> load_history_csv(const std::string& path, bool cmab) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open history csv: " + path);
  std::string line;
  if (!std::getline(in, line))
    throw std::runtime_error("empty history csv: " + path);
  const std::string want = cmab ? "p1,p2,beta,reward" : "action,reward";
  // Tolerate trailing carriage returns from foreign tools.
  while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) line.pop_back();
  if (line != want)
    throw std::runtime_error("history csv header must be '" + want + "'");

  std::vector<HistEntry> out;
  std::int64_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) line.pop_back();
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string tok;
    std::vector<double> vals;
    while (std::getline(ss, tok, ',')) vals.push_back(std::stod(tok));
    HistEntry e;
    try {
      if (cmab) {
        if (vals.size() != 4) throw std::invalid_argument("need 4 columns");
        e.p = {vals[0], vals[1]};
        e.beta = vals[2];
        e.reward = vals[3];
        if (e.p.x < 0.0 || e.p.x > 1.0 || e.p.y < 0.0 || e.p.y > 1.0)
          throw std::invalid_argument("point outside [0,1]^2");
      } else {
        if (vals.size() != 2) throw std::invalid_argument("need 2 columns");
        e.arm = static_cast<int>(vals[0]);
        e.reward = vals[1];
        if (e.arm < 0) throw std::invalid_argument("negative action index");
      }
      if (e.reward < 0.0 || e.reward > 1.0)
        throw std::invalid_argument("reward outside [0,1]");
    } catch (const std::exception& ex) {
      throw std::runtime_error("history csv row " + std::to_string(row) + ": " +
                               ex.what());
    }
    out.push_back(e);
  }
  return out;
}

void save_history_csv(const std::string& path,
                      const std::vector<HistEntry>& entries, bool cmab) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write history csv: " + path);
  char buf[160];
  if (cmab) {
    out << "p1,p2,beta,reward\n";
    for (const HistEntry& e : entries) {
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n", e.p.x, e.p.y,
                    e.beta, e.reward);
      out << buf;
    }
  } else {
    out << "action,reward\n";
    for (const HistEntry& e : entries) {
      std::snprintf(buf, sizeof buf, "%d,%.17g\n", e.arm, e.reward);
      out << buf;
    }
  }
}

}  // namespace bandit::harness
