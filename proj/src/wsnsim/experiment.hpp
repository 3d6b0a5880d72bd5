#ifndef WSNSIM_EXPERIMENT_HPP
#define WSNSIM_EXPERIMENT_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "wsnsim/config.hpp"
#include "wsnsim/engine.hpp"
#include "wsnsim/metrics.hpp"

namespace wsnsim {

// One sweep point: replications over `seeds` at one parameter value,
// reported as means with standard errors, ordered by achieved service ratio.
struct SweepRow {
  double param_value = 0;
  double mean_ratio = 0;
  double drop_percent = 0;
  double success_rate = 0;
  double stderr_ratio = 0;
  double stderr_drop = 0;
  double stderr_success = 0;
};

std::vector<SweepRow> run_sweep(const SimConfig& base, const std::string& key,
                                const std::vector<std::string>& values,
                                const std::vector<std::uint64_t>& seeds);

// The drop-vs-service-ratio experiment: sweeps the ratio threshold.
std::vector<SweepRow> sweep_service_ratio(
    const SimConfig& base, const std::vector<std::uint64_t>& seeds,
    const std::vector<double>& ratio_thresholds);

struct ComparePair {
  std::uint64_t seed = 0;
  MetricsReport with_control;
  MetricsReport without_control;
};

// Paired rate-control on/off replications per seed.
std::vector<ComparePair> run_compare(const SimConfig& base,
                                     const std::vector<std::uint64_t>& seeds);

void write_sweep_csv(const std::vector<SweepRow>& rows, std::ostream& out);
void write_compare_csv(const std::vector<ComparePair>& pairs,
                       std::ostream& out);

// The `run` command body: simulates (config, seed) and writes metrics.csv,
// timeseries.csv and topology.txt into `out_dir` (created if missing).
MetricsReport run_to_dir(const SimConfig& config, std::uint64_t seed,
                         const std::string& out_dir);

// The `sweep` / `compare` command bodies; return the output CSV path.
std::string sweep_to_dir(const SimConfig& config, const std::string& key,
                         const std::vector<std::string>& values,
                         const std::vector<std::uint64_t>& seeds,
                         const std::string& out_dir);
std::string compare_to_dir(const SimConfig& config,
                           const std::vector<std::uint64_t>& seeds,
                           const std::string& out_dir);

// The `topology` command body: builds the deployment, writes topology.txt
// and path_length.csv (mean discovered path length per hop bucket).
void topology_to_dir(const SimConfig& config, std::uint64_t seed,
                     const std::string& out_dir);

}  // namespace wsnsim

#endif  // WSNSIM_EXPERIMENT_HPP
