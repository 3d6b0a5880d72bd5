#ifndef WSNSIM_CONFIG_HPP
#define WSNSIM_CONFIG_HPP

#include <cstdint>
#include <iosfwd>
#include <string>

namespace wsnsim {

// How the cumulative "maximum rate adjustment" bound is applied.
enum class RateCapMode { kCumulative, kPerStep };

// Every simulation parameter, including the ones the underlying design
// leaves open. Defaults reflect the reference scenario: 100 sensors in a
// 50x50 m field, 12 m transmission range, 8-packet node buffers, 30-byte
// packets, 70% maximum rate adjustment.
struct SimConfig {
  // Deployment.
  double field_side = 50.0;      // m
  int node_count = 100;
  double tx_range = 12.0;        // m
  int sink_id = -1;              // -1: node nearest the field center

  // Packets and queues.
  int packet_size = 30;          // bytes, fixed by the wire format
  int queue_capacity = 8;        // packets per node, all five queues combined

  // Energy model.
  double alpha = 2.0;            // path-loss exponent, valid range [2, 5]
  double energy_k = 1e-6;        // J / m^alpha per transmission
  double energy_prioritizer = 1e-4;   // J per classified packet
  double energy_sched_unit = 2e-4;    // J per dispatched packet

  // Rate control.
  double ratio_threshold = 0.5;
  int queue_threshold = 6;            // packets
  double reduction_factor = 0.85;     // per trigger
  double max_rate_adjustment = 0.70;  // cumulative reduction cap
  RateCapMode rate_cap_mode = RateCapMode::kCumulative;
  bool rate_recovery_enabled = false;
  double rate_recovery_factor = 1.02;
  std::int64_t service_window_ms = 1000;
  bool rate_control_enabled = true;

  // Link model.
  std::int64_t link_latency_ms = 10;
  double link_loss_base = 0.0;
  double link_loss_collision = 0.1;  // scaled by receiver queue occupancy

  // Per-packet turnaround latency of a node; floors the measured
  // receive-to-retransmit delay that the service rate is the inverse of.
  std::int64_t processing_delay_ms = 125;

  // Traffic model.
  double initial_sched_rate = 8.0;   // pkt/s per node
  double origination_share = 0.5;    // fraction of sched rate spent on own data
  double origination_weight_high = 2.0;  // class 0
  double origination_weight_low = 1.0;   // class 1
  std::int64_t deadline_ms_class0 = 200;
  std::int64_t deadline_ms_class1 = 500;
  std::int64_t deadline_ms_class2 = 1000;
  double traffic_multiplier = 1.0;
  bool burst_enabled = false;
  double burst_multiplier = 4.0;
  std::int64_t burst_period_ms = 8000;
  double burst_duty = 0.25;

  // Run control.
  std::int64_t duration_ms = 60000;
  int replications = 2;
};

// Parses the flat `key = value` config format ('#' starts a comment).
// Later assignments win. Throws UnknownKey / InvalidValue.
SimConfig parse_config(std::istream& in);
SimConfig parse_config_file(const std::string& path);

// Applies a single `key=value` override to an existing config.
void apply_override(SimConfig& cfg, const std::string& key,
                    const std::string& value);

// Formatted value of one key, as dump_config would print it.
std::string get_value(const SimConfig& cfg, const std::string& key);

// Validates ranges (alpha in [2,5], probabilities in [0,1], ...).
// Throws InvalidValue naming the offending key.
void validate(const SimConfig& cfg);

// Emits every key in parse order; parse_config(dump(cfg)) == cfg.
void dump_config(const SimConfig& cfg, std::ostream& out);

}  // namespace wsnsim

#endif  // WSNSIM_CONFIG_HPP
