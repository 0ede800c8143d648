#include "bandit/harness/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "bandit/cmab/policies.hpp"

namespace bandit::harness {

const char* to_string(DomainKind d) {
  switch (d) {
    case DomainKind::kKArmed: return "k-armed";
    case DomainKind::kCombFinite: return "comb-finite";
    case DomainKind::kCmabPwl: return "cmab-pwl";
    case DomainKind::kCmabQuadratic: return "cmab-quadratic";
    case DomainKind::kCmabCsv: return "cmab-csv";
  }
  return "?";
}

const char* to_string(Algorithm a) {
  switch (a) {
    case Algorithm::kMonUcb: return "monucb";
    case Algorithm::kCombMonUcb: return "comb-monucb";
    case Algorithm::kFixedDisc: return "fixed-disc";
    case Algorithm::kAdaptiveDisc: return "adaptive-disc";
    case Algorithm::kThompson: return "thompson";
  }
  return "?";
}

const char* to_string(MetaKind m) {
  switch (m) {
    case MetaKind::kIgnorant: return "ignorant";
    case MetaKind::kFullStart: return "full-start";
    case MetaKind::kArtificialReplay: return "artificial-replay";
    case MetaKind::kRandom: return "random";
    case MetaKind::kOptimal: return "optimal";
  }
  return "?";
}

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(trim(item));
  return out;
}

DomainKind parse_domain(const std::string& v) {
  if (v == "k-armed") return DomainKind::kKArmed;
  if (v == "comb-finite") return DomainKind::kCombFinite;
  if (v == "cmab-pwl") return DomainKind::kCmabPwl;
  if (v == "cmab-quadratic") return DomainKind::kCmabQuadratic;
  if (v == "cmab-csv") return DomainKind::kCmabCsv;
  throw std::invalid_argument("unknown domain: " + v);
}

Algorithm parse_algorithm(const std::string& v) {
  if (v == "monucb") return Algorithm::kMonUcb;
  if (v == "comb-monucb") return Algorithm::kCombMonUcb;
  if (v == "fixed-disc") return Algorithm::kFixedDisc;
  if (v == "adaptive-disc") return Algorithm::kAdaptiveDisc;
  if (v == "thompson") return Algorithm::kThompson;
  throw std::invalid_argument("unknown algorithm: " + v);
}

MetaKind parse_meta(const std::string& v) {
  if (v == "ignorant") return MetaKind::kIgnorant;
  if (v == "full-start") return MetaKind::kFullStart;
  if (v == "artificial-replay") return MetaKind::kArtificialReplay;
  if (v == "random") return MetaKind::kRandom;
  if (v == "optimal") return MetaKind::kOptimal;
  throw std::invalid_argument("unknown meta: " + v);
}

}  // namespace

ScenarioConfig parse_config(const std::string& text) {
  ScenarioConfig cfg;
  std::unordered_map<std::string, std::string> kv;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line is not key=value: " + line);
    const std::string k = trim(line.substr(0, eq));
    const std::string v = trim(line.substr(eq + 1));
    if (!kv.emplace(k, v).second)
      throw std::invalid_argument("duplicate config key: " + k);
  }

  auto take = [&](const char* name) -> std::optional<std::string> {
    auto it = kv.find(name);
    if (it == kv.end()) return std::nullopt;
    std::string v = it->second;
    kv.erase(it);
    return v;
  };

  if (auto v = take("domain")) cfg.domain = parse_domain(*v);
  if (auto v = take("algorithm")) {
    cfg.algorithms.clear();
    for (const auto& s : split(*v, ',')) cfg.algorithms.push_back(parse_algorithm(s));
  }
  if (auto v = take("meta")) {
    cfg.metas.clear();
    for (const auto& s : split(*v, ',')) cfg.metas.push_back(parse_meta(s));
  }
  if (auto v = take("seeds")) cfg.seeds = std::stoi(*v);
  if (auto v = take("master_seed")) cfg.master_seed = std::stoull(*v);
  if (auto v = take("T")) cfg.horizon = std::stoll(*v);
  if (auto v = take("H")) cfg.history_size = std::stoll(*v);
  if (auto v = take("history_mode")) {
    const auto parts = split(*v, ':');
    if (parts[0] == "uniform") {
      cfg.history_mode = HistoryMode::kUniform;
    } else if (parts[0] == "spurious") {
      cfg.history_mode = HistoryMode::kSpurious;
      cfg.history_frac = parts.size() > 1 ? std::stod(parts[1]) : 1.0;
    } else if (parts[0] == "imbalanced") {
      cfg.history_mode = HistoryMode::kImbalanced;
      if (parts.size() < 2)
        throw std::invalid_argument("imbalanced mode needs a fraction");
      cfg.history_frac = std::stod(parts[1]);
    } else {
      throw std::invalid_argument("unknown history_mode: " + *v);
    }
  }
  if (auto v = take("K")) cfg.k = std::stoi(*v);
  if (auto v = take("B_int")) cfg.b_int = std::stoi(*v);
  if (auto v = take("means")) {
    cfg.means.clear();
    for (const auto& s : split(*v, ',')) cfg.means.push_back(std::stod(s));
  }
  if (auto v = take("surface")) {
    if (*v == "pwl") {
      cfg.surface = Surface::kPiecewiseLinear;
    } else if (*v == "quadratic") {
      cfg.surface = Surface::kQuadratic;
    } else {
      throw std::invalid_argument("unknown surface: " + *v);
    }
  }
  if (auto v = take("levels")) {
    cfg.levels.clear();
    for (const auto& s : split(*v, ',')) cfg.levels.push_back(std::stod(s));
  }
  if (auto v = take("N")) cfg.n_slots = std::stoi(*v);
  if (auto v = take("B")) cfg.budget = std::stod(*v);
  if (auto v = take("eps")) cfg.eps = std::stod(*v);
  if (auto v = take("lipschitz")) cfg.lipschitz = std::stod(*v);
  if (auto v = take("delta")) cfg.delta = std::stod(*v);
  if (auto v = take("gamma")) cfg.gamma = std::stod(*v);
  if (auto v = take("history_csv")) cfg.history_csv = *v;
  if (auto v = take("opt_resolution")) cfg.opt_resolution = std::stoi(*v);
  if (auto v = take("psi_log_term")) {
    if (*v == "t") {
      cfg.psi_log_term = LogTerm::kLogT;
    } else if (*v == "tk") {
      cfg.psi_log_term = LogTerm::kLogTK;
    } else if (*v == "2tk") {
      cfg.psi_log_term = LogTerm::kLog2TK;
    } else {
      throw std::invalid_argument("unknown psi_log_term: " + *v);
    }
  }
  if (auto v = take("threads")) cfg.threads = std::stoi(*v);

  if (!kv.empty())
    throw std::invalid_argument("unknown config key: " + kv.begin()->first);

  cfg.validate();
  return cfg;
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

void ScenarioConfig::validate() const {
  if (seeds < 1) throw std::invalid_argument("seeds must be >= 1");
  if (horizon < 1) throw std::invalid_argument("T must be >= 1");
  if (history_size < 0) throw std::invalid_argument("H must be >= 0");
  if (history_frac < 0.0 || history_frac > 1.0)
    throw std::invalid_argument("history fraction must be in [0,1]");

  for (Algorithm a : algorithms) {
    bool fits = false;
    switch (a) {
      case Algorithm::kMonUcb:
      case Algorithm::kThompson:
        fits = domain == DomainKind::kKArmed;
        break;
      case Algorithm::kCombMonUcb:
        fits = domain == DomainKind::kCombFinite;
        break;
      case Algorithm::kFixedDisc:
      case Algorithm::kAdaptiveDisc:
        fits = is_cmab();
        break;
    }
    if (!fits)
      throw std::invalid_argument(std::string("algorithm ") + to_string(a) +
                                  " does not fit domain " + to_string(domain));
  }

  if (domain == DomainKind::kKArmed || domain == DomainKind::kCombFinite) {
    if (k < 1) throw std::invalid_argument("K must be >= 1");
    if (!means.empty() && static_cast<int>(means.size()) != k)
      throw std::invalid_argument("means list must have K entries");
    for (double m : means) {
      if (m < 0.0 || m > 1.0)
        throw std::invalid_argument("means must be in [0,1]");
    }
    if (domain == DomainKind::kCombFinite && (b_int < 1 || b_int > k))
      throw std::invalid_argument("B_int must be in [1, K]");
  }

  if (is_cmab()) {
    if (levels.empty()) throw std::invalid_argument("levels must be nonempty");
    if (!std::is_sorted(levels.begin(), levels.end()))
      throw std::invalid_argument("levels must be sorted ascending");
    for (double b : levels) {
      if (b < 0.0 || b > 1.0)
        throw std::invalid_argument("levels must be in [0,1]");
    }
    if (n_slots < 0) throw std::invalid_argument("N must be >= 0");
    if (budget < 0.0) throw std::invalid_argument("B must be >= 0");
    if (eps <= 0.0) throw std::invalid_argument("eps must be > 0");
    if (delta <= 0.0 || delta >= 1.0)
      throw std::invalid_argument("delta must be in (0,1)");
    cmab::grid_depth(gamma);  // dyadic check
    const bool uses_fixed =
        std::find(algorithms.begin(), algorithms.end(), Algorithm::kFixedDisc) !=
        algorithms.end();
    if (uses_fixed && gamma < eps)
      throw std::invalid_argument("fixed grid mesh must be >= eps");
    if (domain == DomainKind::kCmabCsv && history_csv.empty())
      throw std::invalid_argument("cmab-csv domain needs history_csv");
  }
}

}  // namespace bandit::harness
