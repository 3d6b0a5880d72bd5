#include "wsnsim/metrics.hpp"

#include <cstdio>
#include <ostream>

namespace wsnsim {

namespace {

void put_fixed(std::ostream& out, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  out << buf;
}

}  // namespace

void write_metrics_csv(const MetricsReport& r, std::uint64_t seed,
                       std::ostream& out) {
  out << "seed,originated,delivered,dropped_queue,dropped_link,"
         "missed_deadline,drop_percent,success_rate,mean_r,"
         "energy_prioritizer,energy_sched_unit,energy_congestion,"
         "energy_implicit,energy_tx_total\n";
  out << seed << ',' << r.originated << ',' << r.delivered << ','
      << r.dropped_queue << ',' << r.dropped_link << ',' << r.missed_deadline
      << ',';
  put_fixed(out, r.drop_percent);
  out << ',';
  put_fixed(out, r.success_rate);
  out << ',';
  put_fixed(out, r.mean_service_ratio);
  out << ',';
  put_fixed(out, r.total_energy.prioritizer);
  out << ',';
  put_fixed(out, r.total_energy.scheduling_unit);
  out << ',';
  put_fixed(out, r.total_energy.congestion);
  out << ',';
  put_fixed(out, r.total_energy.implicit_congestion);
  out << ',';
  put_fixed(out, r.total_energy.transmission);
  out << '\n';
}

void write_timeseries_csv(const MetricsReport& r, std::ostream& out) {
  out << "time_ms,node_id,queue_len,sched_rate,service_rate,ratio\n";
  for (const auto& p : r.series) {
    out << p.time_ms << ',' << p.node << ',' << p.queue_len << ',';
    put_fixed(out, p.sched_rate.to_double());
    out << ',';
    put_fixed(out, p.service_rate.to_double());
    out << ',';
    put_fixed(out, p.ratio_defined ? p.ratio.to_double() : 0.0);
    out << '\n';
  }
}

}  // namespace wsnsim
