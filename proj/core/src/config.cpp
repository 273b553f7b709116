#include "wsir/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace wsir {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(trim(item));
  return out;
}

double parse_real(const std::string& s, const std::string& where) {
  std::size_t pos = 0;
  double v;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    throw ConfigError(where + ": cannot parse '" + s + "' as a real number");
  }
  if (pos != s.size())
    throw ConfigError(where + ": trailing characters in '" + s + "'");
  return v;
}

std::uint64_t parse_u64(const std::string& s, const std::string& where) {
  try {
    return std::stoull(s);
  } catch (const std::exception&) {
    throw ConfigError(where + ": cannot parse '" + s + "' as an integer");
  }
}

bool parse_bool(const std::string& s, const std::string& where) {
  if (s == "true" || s == "1" || s == "yes") return true;
  if (s == "false" || s == "0" || s == "no") return false;
  throw ConfigError(where + ": expected true/false, got '" + s + "'");
}

}  // namespace

ExperimentConfig parse_config(std::istream& is, const std::string& origin) {
  ExperimentConfig cfg;
  bool have_dist = false, have_theta = false, have_p = false,
       have_lambda = false, have_n = false, have_times = false;

  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const std::string where = origin + ":" + std::to_string(lineno);
    std::string stripped = line;
    if (const auto h = stripped.find('#'); h != std::string::npos)
      stripped = stripped.substr(0, h);
    stripped = trim(stripped);
    if (stripped.empty()) continue;

    const auto eq = stripped.find('=');
    if (eq == std::string::npos)
      throw ConfigError(where + ": expected 'key = value'");
    const std::string key = trim(stripped.substr(0, eq));
    const std::string val = trim(stripped.substr(eq + 1));
    if (val.empty()) throw ConfigError(where + ": empty value for '" + key + "'");

    if (key == "dist") {
      for (const auto& pair_str : split(val, ',')) {
        const auto colon = pair_str.find(':');
        if (colon == std::string::npos)
          throw ConfigError(where + ": dist entries must look like q:mass");
        cfg.dist_pairs.emplace_back(
            parse_real(trim(pair_str.substr(0, colon)), where),
            parse_real(trim(pair_str.substr(colon + 1)), where));
      }
      have_dist = true;
    } else if (key == "theta") {
      cfg.theta = parse_real(val, where);
      have_theta = true;
    } else if (key == "p") {
      cfg.p = parse_real(val, where);
      have_p = true;
    } else if (key == "lambda") {
      cfg.lambda = parse_real(val, where);
      have_lambda = true;
    } else if (key == "n_list") {
      for (const auto& s : split(val, ','))
        cfg.n_list.push_back(static_cast<std::size_t>(parse_u64(s, where)));
      have_n = true;
    } else if (key == "replicates") {
      cfg.replicates = static_cast<std::size_t>(parse_u64(val, where));
    } else if (key == "obs_times") {
      for (const auto& s : split(val, ','))
        cfg.obs_times.push_back(parse_real(s, where));
      have_times = true;
    } else if (key == "seed") {
      cfg.master_seed = parse_u64(val, where);
    } else if (key == "tol") {
      cfg.tol = parse_real(val, where);
    } else if (key == "out") {
      cfg.out_dir = val;
    } else if (key == "fixed_graph") {
      cfg.fixed_graph = parse_bool(val, where);
    } else if (key == "complete_graph") {
      cfg.complete_graph = parse_bool(val, where);
    } else if (key == "threads") {
      cfg.threads = static_cast<unsigned>(parse_u64(val, where));
    } else {
      throw ConfigError(where + ": unknown key '" + key + "'");
    }
  }

  if (!have_dist) throw ConfigError(origin + ": missing 'dist'");
  if (!have_theta) throw ConfigError(origin + ": missing 'theta'");
  if (!have_p) throw ConfigError(origin + ": missing 'p'");
  if (!have_lambda) throw ConfigError(origin + ": missing 'lambda'");
  if (!have_n) throw ConfigError(origin + ": missing 'n_list'");
  if (!have_times) throw ConfigError(origin + ": missing 'obs_times'");

  // invariants
  if (!(cfg.theta > 0.0 && cfg.theta < 1.0))
    throw ConfigError("theta must lie strictly in (0,1)");
  if (!cfg.complete_graph && !(cfg.p > 0.0 && cfg.p < 1.0))
    throw ConfigError("p must lie strictly in (0,1)");
  if (!(cfg.lambda > 0.0)) throw ConfigError("lambda must be positive");
  if (cfg.n_list.empty() || !std::is_sorted(cfg.n_list.begin(), cfg.n_list.end()) ||
      std::adjacent_find(cfg.n_list.begin(), cfg.n_list.end()) != cfg.n_list.end())
    throw ConfigError("n_list must be nonempty and strictly increasing");
  if (cfg.replicates < 1) throw ConfigError("replicates must be >= 1");
  if (cfg.obs_times.empty() ||
      !std::is_sorted(cfg.obs_times.begin(), cfg.obs_times.end()) ||
      std::adjacent_find(cfg.obs_times.begin(), cfg.obs_times.end()) !=
          cfg.obs_times.end() ||
      cfg.obs_times.front() < 0.0)
    throw ConfigError("obs_times must be increasing and start at >= 0");
  if (!(cfg.tol > 0.0)) throw ConfigError("tol must be positive");
  cfg.distribution();  // validates the atom list

  if (cfg.complete_graph) cfg.p = 1.0;
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open config file: " + path);
  return parse_config(f, path);
}

}  // namespace wsir
