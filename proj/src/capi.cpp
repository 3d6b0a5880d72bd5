// extern "C" surface over the C++ core. Exceptions are caught at the
// boundary and mapped to status codes; the message is kept per thread.

#include "wsnsim.h"

#include <cstring>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "wsnsim/config.hpp"
#include "wsnsim/engine.hpp"
#include "wsnsim/errors.hpp"
#include "wsnsim/experiment.hpp"
#include "wsnsim/metrics.hpp"
#include "wsnsim/topology.hpp"

struct wsn_config {
  wsnsim::SimConfig cfg;
};

struct wsn_topology {
  wsnsim::Topology topo;
};

struct wsn_report {
  wsnsim::MetricsReport report;
};

namespace {

thread_local std::string g_last_error;

wsn_status map_code(wsnsim::ErrorCode code) {
  using wsnsim::ErrorCode;
  switch (code) {
    case ErrorCode::TopologyDisconnected: return WSN_ERR_DISCONNECTED;
    case ErrorCode::NoPathFound: return WSN_ERR_NO_PATH;
    case ErrorCode::FieldOutOfRange: return WSN_ERR_OUT_OF_RANGE;
    case ErrorCode::TruncatedHeader: return WSN_ERR_TRUNCATED;
    case ErrorCode::InvalidPriority: return WSN_ERR_INVALID_PRIORITY;
    case ErrorCode::ZeroSchedulingRate: return WSN_ERR_ZERO_RATE;
    case ErrorCode::InstanceTooLarge: return WSN_ERR_TOO_LARGE;
    case ErrorCode::AlphaOutOfRange: return WSN_ERR_OUT_OF_RANGE;
    case ErrorCode::NotAdjacent: return WSN_ERR_NOT_ADJACENT;
    case ErrorCode::UnknownKey: return WSN_ERR_UNKNOWN_KEY;
    case ErrorCode::InvalidValue: return WSN_ERR_INVALID_VALUE;
    case ErrorCode::IoError: return WSN_ERR_IO;
  }
  return WSN_ERR_INTERNAL;
}

template <typename Fn>
wsn_status guard(Fn&& fn) {
  try {
    fn();
    return WSN_OK;
  } catch (const wsnsim::Error& e) {
    g_last_error = e.what();
    return map_code(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return WSN_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return WSN_ERR_INTERNAL;
  }
}

wsn_status bad_argument(const char* what) {
  g_last_error = std::string("invalid argument: ") + what;
  return WSN_ERR_INVALID_ARGUMENT;
}

std::vector<std::uint64_t> seed_range(std::uint64_t lo, std::uint64_t hi) {
  std::vector<std::uint64_t> seeds;
  for (std::uint64_t s = lo; s <= hi; ++s) {
    seeds.push_back(s);
    if (s == hi) break;  // guard hi == UINT64_MAX
  }
  return seeds;
}

std::vector<std::string> split_csv(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(item);
  return out;
}

}  // namespace

extern "C" {

const char* wsn_status_name(wsn_status status) {
  switch (status) {
    case WSN_OK: return "ok";
    case WSN_ERR_INVALID_ARGUMENT: return "invalid_argument";
    case WSN_ERR_UNKNOWN_KEY: return "unknown_key";
    case WSN_ERR_INVALID_VALUE: return "invalid_value";
    case WSN_ERR_DISCONNECTED: return "topology_disconnected";
    case WSN_ERR_NO_PATH: return "no_path_found";
    case WSN_ERR_OUT_OF_RANGE: return "out_of_range";
    case WSN_ERR_TRUNCATED: return "truncated_header";
    case WSN_ERR_INVALID_PRIORITY: return "invalid_priority";
    case WSN_ERR_ZERO_RATE: return "zero_scheduling_rate";
    case WSN_ERR_TOO_LARGE: return "instance_too_large";
    case WSN_ERR_NOT_ADJACENT: return "not_adjacent";
    case WSN_ERR_IO: return "io_error";
    case WSN_ERR_INTERNAL: return "internal_error";
  }
  return "unknown_status";
}

const char* wsn_last_error(void) { return g_last_error.c_str(); }

wsn_config* wsn_config_new(void) { return new wsn_config{}; }

void wsn_config_free(wsn_config* config) { delete config; }

wsn_status wsn_config_load_file(wsn_config* config, const char* path) {
  if (!config || !path) return bad_argument("config/path");
  return guard([&] { config->cfg = wsnsim::parse_config_file(path); });
}

wsn_status wsn_config_set(wsn_config* config, const char* key,
                          const char* value) {
  if (!config || !key || !value) return bad_argument("config/key/value");
  return guard([&] { wsnsim::apply_override(config->cfg, key, value); });
}

wsn_status wsn_config_validate(const wsn_config* config) {
  if (!config) return bad_argument("config");
  return guard([&] { wsnsim::validate(config->cfg); });
}

wsn_status wsn_config_get(const wsn_config* config, const char* key,
                          char* buf, size_t buf_len) {
  if (!config || !key || !buf || buf_len == 0) {
    return bad_argument("config/key/buf");
  }
  return guard([&] {
    const std::string value = wsnsim::get_value(config->cfg, key);
    if (value.size() + 1 > buf_len) {
      throw wsnsim::Error(wsnsim::ErrorCode::InvalidValue,
                          "buffer too small for value of '" +
                              std::string(key) + "'");
    }
    std::memcpy(buf, value.c_str(), value.size() + 1);
  });
}

wsn_status wsn_config_dump_file(const wsn_config* config, const char* path) {
  if (!config || !path) return bad_argument("config/path");
  return guard([&] {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
      throw wsnsim::Error(wsnsim::ErrorCode::IoError,
                          std::string("cannot write '") + path + "'");
    }
    wsnsim::dump_config(config->cfg, out);
  });
}

wsn_status wsn_topology_build(const wsn_config* config, uint64_t seed,
                              wsn_topology** out) {
  if (!config || !out) return bad_argument("config/out");
  return guard([&] {
    wsnsim::validate(config->cfg);
    *out = new wsn_topology{wsnsim::build_topology(config->cfg, seed)};
  });
}

void wsn_topology_free(wsn_topology* topology) { delete topology; }

int32_t wsn_topology_node_count(const wsn_topology* topology) {
  return topology ? topology->topo.node_count() : 0;
}

int32_t wsn_topology_sink(const wsn_topology* topology) {
  return topology ? topology->topo.sink() : -1;
}

wsn_status wsn_topology_path_length(const wsn_topology* topology,
                                    int32_t source, int64_t budget,
                                    int32_t* out_hops) {
  if (!topology || !out_hops) return bad_argument("topology/out_hops");
  if (source < 0 || source >= topology->topo.node_count()) {
    return bad_argument("source node id");
  }
  return guard([&] {
    *out_hops = wsnsim::find_path_length(topology->topo, source, budget);
  });
}

wsn_status wsn_topology_write_file(const wsn_topology* topology,
                                   const char* path) {
  if (!topology || !path) return bad_argument("topology/path");
  return guard([&] {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
      throw wsnsim::Error(wsnsim::ErrorCode::IoError,
                          std::string("cannot write '") + path + "'");
    }
    topology->topo.serialize(out);
  });
}

wsn_status wsn_run(const wsn_config* config, uint64_t seed, wsn_report** out) {
  if (!config || !out) return bad_argument("config/out");
  return guard([&] {
    *out = new wsn_report{wsnsim::run_simulation(config->cfg, seed)};
  });
}

void wsn_report_free(wsn_report* report) { delete report; }

wsn_status wsn_report_counter(const wsn_report* report, const char* name,
                              uint64_t* out) {
  if (!report || !name || !out) return bad_argument("report/name/out");
  const auto& r = report->report;
  const std::string key(name);
  if (key == "originated") *out = r.originated;
  else if (key == "delivered") *out = r.delivered;
  else if (key == "delivered_late") *out = r.delivered_late;
  else if (key == "dropped_queue") *out = r.dropped_queue;
  else if (key == "dropped_link") *out = r.dropped_link;
  else if (key == "missed_deadline") *out = r.missed_deadline;
  else if (key == "in_flight_at_end") *out = r.in_flight_at_end;
  else if (key == "dispatched") *out = r.dispatched;
  else if (key == "enqueue_attempts") *out = r.enqueue_attempts;
  else if (key == "rate_sum_violations") *out = r.rate_sum_violations;
  else if (key == "occupancy_violations") *out = r.occupancy_violations;
  else if (key == "rate_floor_violations") *out = r.rate_floor_violations;
  else if (key == "packet_size_violations") *out = r.packet_size_violations;
  else return bad_argument("unknown counter name");
  return WSN_OK;
}

wsn_status wsn_report_metric(const wsn_report* report, const char* name,
                             double* out) {
  if (!report || !name || !out) return bad_argument("report/name/out");
  const auto& r = report->report;
  const std::string key(name);
  if (key == "drop_percent") *out = r.drop_percent;
  else if (key == "success_rate") *out = r.success_rate;
  else if (key == "mean_r") *out = r.mean_service_ratio;
  else if (key == "energy_prioritizer") *out = r.total_energy.prioritizer;
  else if (key == "energy_sched_unit") *out = r.total_energy.scheduling_unit;
  else if (key == "energy_congestion") *out = r.total_energy.congestion;
  else if (key == "energy_implicit") *out = r.total_energy.implicit_congestion;
  else if (key == "energy_tx_total") *out = r.total_energy.transmission;
  else if (key == "avg_path_length") *out = r.average_path_length_hops;
  else return bad_argument("unknown metric name");
  return WSN_OK;
}

wsn_status wsn_cmd_run(const wsn_config* config, uint64_t seed,
                       const char* out_dir) {
  if (!config || !out_dir) return bad_argument("config/out_dir");
  return guard([&] { wsnsim::run_to_dir(config->cfg, seed, out_dir); });
}

wsn_status wsn_cmd_sweep(const wsn_config* config, const char* key,
                         const char* values, uint64_t seed_lo,
                         uint64_t seed_hi, const char* out_dir) {
  if (!config || !key || !values || !out_dir) {
    return bad_argument("config/key/values/out_dir");
  }
  if (seed_hi < seed_lo) return bad_argument("seed range");
  const auto value_list = split_csv(values);
  if (value_list.empty()) return bad_argument("empty sweep values");
  return guard([&] {
    wsnsim::sweep_to_dir(config->cfg, key, value_list,
                         seed_range(seed_lo, seed_hi), out_dir);
  });
}

wsn_status wsn_cmd_compare(const wsn_config* config, uint64_t seed_lo,
                           uint64_t seed_hi, const char* out_dir) {
  if (!config || !out_dir) return bad_argument("config/out_dir");
  if (seed_hi < seed_lo) return bad_argument("seed range");
  return guard([&] {
    wsnsim::compare_to_dir(config->cfg, seed_range(seed_lo, seed_hi), out_dir);
  });
}

wsn_status wsn_cmd_topology(const wsn_config* config, uint64_t seed,
                            const char* out_dir) {
  if (!config || !out_dir) return bad_argument("config/out_dir");
  return guard([&] { wsnsim::topology_to_dir(config->cfg, seed, out_dir); });
}

}  // extern "C"
