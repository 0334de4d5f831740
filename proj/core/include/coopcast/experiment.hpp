#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "coopcast/net.hpp"

namespace coopcast {

enum class ExperimentKind { Gain, ConversionRatio, GridGain };

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::Gain;
  // Placement template; the node count (grid side for GridGain) is replaced
  // by each entry of n_values, the seed by the derived per-run seed.
  PlacementSpec placement;
  std::vector<int> n_values;
  std::vector<double> alphas{2.0};
  int runs_per_point = 50;
  std::uint64_t base_seed = 0;
  std::string output;
  bool verify = true;
  int jobs = 1;
  // Fixed source id, or a fresh uniform draw per run when empty.
  std::optional<NodeId> fixed_source = NodeId{0};
};

struct GainRecord {
  std::string experiment;
  int n;
  double alpha;
  std::string placement;
  std::uint64_t seed;
  double p_noncoop;
  double p_coop;
  double gain_value;
  nlohmann::json extra;
};

// Raised when a schedule fails its class checker mid-experiment; carries the
// offending seed so the run can be replayed.
class CheckFailure : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// splitmix64 chain over (base_seed, n, alpha bits, run); documented in the
// README and stable across platforms.
std::uint64_t derive_seed(std::uint64_t base_seed, std::uint64_t n,
                          double alpha, std::uint64_t run);

std::vector<GainRecord> run_gain_experiment(const ExperimentConfig& cfg);
std::vector<GainRecord> run_conversion_ratio_experiment(
    const ExperimentConfig& cfg);
std::vector<GainRecord> run_grid_experiment(const ExperimentConfig& cfg);
std::vector<GainRecord> run_experiment(const ExperimentConfig& cfg);

// header: experiment,n,alpha,placement,seed,p_noncoop,p_coop,gain,extra_json
// Floats at 12 significant digits, LF line endings, rows in deterministic
// (n, alpha, run) order.
void write_csv(const std::vector<GainRecord>& records, std::ostream& out);

ExperimentConfig config_from_json(const nlohmann::json& j);

}  // namespace coopcast
