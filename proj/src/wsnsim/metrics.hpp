#ifndef WSNSIM_METRICS_HPP
#define WSNSIM_METRICS_HPP

#include <cstdint>
#include <iosfwd>
#include <map>
#include <vector>

#include "wsnsim/fixed.hpp"
#include "wsnsim/topology.hpp"

namespace wsnsim {

// Per-node energy attribution. `transmission` is every joule the radio
// spent; `congestion` re-attributes the share spent on packets that later
// died of congestion (buffer overflow or collision loss), and
// `implicit_congestion` the share spent on packets that outlived their
// deadline. A packet dies or is delivered exactly once, so the two
// attribution buckets never exceed the charged totals.
struct EnergyLedger {
  double prioritizer = 0;
  double scheduling_unit = 0;
  double congestion = 0;
  double implicit_congestion = 0;
  double transmission = 0;

  EnergyLedger& operator+=(const EnergyLedger& o) {
    prioritizer += o.prioritizer;
    scheduling_unit += o.scheduling_unit;
    congestion += o.congestion;
    implicit_congestion += o.implicit_congestion;
    transmission += o.transmission;
    return *this;
  }
};

struct SeriesPoint {
  std::int64_t time_ms = 0;
  NodeId node = 0;
  int queue_len = 0;
  RateFx sched_rate;
  RateFx service_rate;
  RateFx ratio;
  bool ratio_defined = false;
};

struct MetricsReport {
  std::uint64_t originated = 0;
  std::uint64_t delivered = 0;
  std::uint64_t delivered_late = 0;
  std::uint64_t dropped_queue = 0;
  std::uint64_t dropped_link = 0;
  std::uint64_t missed_deadline = 0;  // discarded at dispatch, past deadline
  std::uint64_t in_flight_at_end = 0;

  double drop_percent = 0;  // (queue + link) drops / originated
  double success_rate = 0;  // delivered / originated
  double mean_service_ratio = 0;  // over nodes with a defined ratio

  std::vector<double> node_mean_ratio;  // -1 where never defined
  EnergyLedger total_energy;
  std::vector<EnergyLedger> node_energy;

  std::map<int, double> path_length_by_hops;
  double average_path_length_hops = 0;

  std::vector<SeriesPoint> series;

  // Internal consistency counters; all zero on a healthy run.
  std::uint64_t rate_sum_violations = 0;    // per-parent sum != sched rate
  std::uint64_t occupancy_violations = 0;   // queue occupancy > capacity
  std::uint64_t rate_floor_violations = 0;  // sched rate under reduction cap
  std::uint64_t packet_size_violations = 0; // serialized size != 30 bytes

  std::uint64_t enqueue_attempts = 0;
  std::uint64_t dispatched = 0;

  bool conserved() const {
    return originated == delivered + dropped_queue + dropped_link +
                             missed_deadline + in_flight_at_end;
  }
};

// metrics.csv: header plus one row for this run, 6-decimal fixed floats.
void write_metrics_csv(const MetricsReport& report, std::uint64_t seed,
                       std::ostream& out);

// timeseries.csv: one row per (window, node).
void write_timeseries_csv(const MetricsReport& report, std::ostream& out);

}  // namespace wsnsim

#endif  // WSNSIM_METRICS_HPP
