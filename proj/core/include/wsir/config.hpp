#ifndef WSIR_CONFIG_HPP
#define WSIR_CONFIG_HPP

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "wsir/weights.hpp"

namespace wsir {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Experiment configuration, read from a line-oriented `key = value`
/// file. `dist` is a list of `q:mass` pairs.
struct ExperimentConfig {
  std::vector<std::pair<double, double>> dist_pairs;
  double theta = 0.0;
  double p = 0.0;
  double lambda = 0.0;
  std::vector<std::size_t> n_list;
  std::size_t replicates = 1;
  std::vector<double> obs_times;
  std::uint64_t master_seed = 0;
  double tol = 1e-9;
  std::string out_dir = "out";
  bool fixed_graph = false;
  bool complete_graph = false;  // all-edges fixture, p recorded as 1
  unsigned threads = 0;

  WeightDistribution distribution() const {
    return WeightDistribution::from_pairs(dist_pairs);
  }
};

/// Parse and validate. Parse errors carry the line number; invariant
/// violations name the offending key.
ExperimentConfig load_config(const std::string& path);
ExperimentConfig parse_config(std::istream& is, const std::string& origin);

}  // namespace wsir

#endif
