#include "wsnsim/config.hpp"

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include "wsnsim/errors.hpp"

namespace wsnsim {

namespace {

std::string trim(const std::string& s) {
  const char* ws = " \t\r\n";
  auto b = s.find_first_not_of(ws);
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

[[noreturn]] void bad_value(const std::string& key, const std::string& text) {
  throw Error(ErrorCode::InvalidValue,
              "invalid value for '" + key + "': '" + text + "'");
}

double parse_double(const std::string& key, const std::string& text) {
  const char* c = text.c_str();
  char* end = nullptr;
  double v = std::strtod(c, &end);
  if (end == c || *end != '\0') bad_value(key, text);
  return v;
}

std::int64_t parse_int(const std::string& key, const std::string& text) {
  const char* c = text.c_str();
  char* end = nullptr;
  long long v = std::strtoll(c, &end, 10);
  if (end == c || *end != '\0') bad_value(key, text);
  return v;
}

bool parse_bool(const std::string& key, const std::string& text) {
  if (text == "true" || text == "1") return true;
  if (text == "false" || text == "0") return false;
  bad_value(key, text);
}

// Shortest decimal form that parses back to the same double, so that a
// dumped config re-parses to an identical SimConfig.
std::string format_double(double v) {
  char buf[64];
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

std::string format_int(std::int64_t v) { return std::to_string(v); }
std::string format_bool(bool v) { return v ? "true" : "false"; }

struct KeyDef {
  const char* name;
  void (*set)(SimConfig&, const std::string&, const std::string&);
  std::string (*get)(const SimConfig&);
};

#define WSNSIM_KEY_D(key)                                                  \
  {#key,                                                                   \
   +[](SimConfig& c, const std::string& k, const std::string& v) {         \
     c.key = parse_double(k, v);                                           \
   },                                                                      \
   +[](const SimConfig& c) { return format_double(c.key); }}
#define WSNSIM_KEY_I(key, type)                                            \
  {#key,                                                                   \
   +[](SimConfig& c, const std::string& k, const std::string& v) {         \
     c.key = static_cast<type>(parse_int(k, v));                           \
   },                                                                      \
   +[](const SimConfig& c) {                                               \
     return format_int(static_cast<std::int64_t>(c.key));                  \
   }}
#define WSNSIM_KEY_B(key)                                                  \
  {#key,                                                                   \
   +[](SimConfig& c, const std::string& k, const std::string& v) {         \
     c.key = parse_bool(k, v);                                             \
   },                                                                      \
   +[](const SimConfig& c) { return format_bool(c.key); }}

const std::vector<KeyDef>& key_table() {
  static const std::vector<KeyDef> table = {
      WSNSIM_KEY_D(field_side),
      WSNSIM_KEY_I(node_count, int),
      WSNSIM_KEY_D(tx_range),
      WSNSIM_KEY_I(sink_id, int),
      WSNSIM_KEY_I(packet_size, int),
      WSNSIM_KEY_I(queue_capacity, int),
      WSNSIM_KEY_D(alpha),
      WSNSIM_KEY_D(energy_k),
      WSNSIM_KEY_D(energy_prioritizer),
      WSNSIM_KEY_D(energy_sched_unit),
      WSNSIM_KEY_D(ratio_threshold),
      WSNSIM_KEY_I(queue_threshold, int),
      WSNSIM_KEY_D(reduction_factor),
      WSNSIM_KEY_D(max_rate_adjustment),
      {"rate_cap_mode",
       +[](SimConfig& c, const std::string& k, const std::string& v) {
         if (v == "cumulative") {
           c.rate_cap_mode = RateCapMode::kCumulative;
         } else if (v == "per_step") {
           c.rate_cap_mode = RateCapMode::kPerStep;
         } else {
           bad_value(k, v);
         }
       },
       +[](const SimConfig& c) {
         return std::string(c.rate_cap_mode == RateCapMode::kCumulative
                                ? "cumulative"
                                : "per_step");
       }},
      WSNSIM_KEY_B(rate_recovery_enabled),
      WSNSIM_KEY_D(rate_recovery_factor),
      WSNSIM_KEY_I(service_window_ms, std::int64_t),
      WSNSIM_KEY_B(rate_control_enabled),
      WSNSIM_KEY_I(link_latency_ms, std::int64_t),
      WSNSIM_KEY_D(link_loss_base),
      WSNSIM_KEY_D(link_loss_collision),
      WSNSIM_KEY_I(processing_delay_ms, std::int64_t),
      WSNSIM_KEY_D(initial_sched_rate),
      WSNSIM_KEY_D(origination_share),
      WSNSIM_KEY_D(origination_weight_high),
      WSNSIM_KEY_D(origination_weight_low),
      WSNSIM_KEY_I(deadline_ms_class0, std::int64_t),
      WSNSIM_KEY_I(deadline_ms_class1, std::int64_t),
      WSNSIM_KEY_I(deadline_ms_class2, std::int64_t),
      WSNSIM_KEY_D(traffic_multiplier),
      WSNSIM_KEY_B(burst_enabled),
      WSNSIM_KEY_D(burst_multiplier),
      WSNSIM_KEY_I(burst_period_ms, std::int64_t),
      WSNSIM_KEY_D(burst_duty),
      WSNSIM_KEY_I(duration_ms, std::int64_t),
      WSNSIM_KEY_I(replications, int),
  };
  return table;
}

#undef WSNSIM_KEY_D
#undef WSNSIM_KEY_I
#undef WSNSIM_KEY_B

void check(bool ok, const char* key, const std::string& detail) {
  if (!ok) {
    throw Error(ErrorCode::InvalidValue,
                std::string("invalid value for '") + key + "': " + detail);
  }
}

}  // namespace

void apply_override(SimConfig& cfg, const std::string& key,
                    const std::string& value) {
  for (const auto& def : key_table()) {
    if (key == def.name) {
      def.set(cfg, key, value);
      return;
    }
  }
  throw Error(ErrorCode::UnknownKey, "unknown config key '" + key + "'");
}

std::string get_value(const SimConfig& cfg, const std::string& key) {
  for (const auto& def : key_table()) {
    if (key == def.name) return def.get(cfg);
  }
  throw Error(ErrorCode::UnknownKey, "unknown config key '" + key + "'");
}

SimConfig parse_config(std::istream& in) {
  SimConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorCode::InvalidValue,
                  "line " + std::to_string(lineno) +
                      ": expected 'key = value', got '" + line + "'");
    }
    apply_override(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return cfg;
}

SimConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::IoError, "cannot open config file '" + path + "'");
  }
  return parse_config(in);
}

void validate(const SimConfig& c) {
  check(c.field_side > 0, "field_side", "must be > 0");
  check(c.node_count >= 2, "node_count", "must be >= 2");
  check(c.tx_range > 0, "tx_range", "must be > 0");
  check(c.sink_id >= -1 && c.sink_id < c.node_count, "sink_id",
        "must be -1 or a valid node id");
  check(c.packet_size == 30, "packet_size",
        "wire format is fixed at 30 bytes");
  check(c.queue_capacity >= 1, "queue_capacity", "must be >= 1");
  check(c.alpha >= 2.0 && c.alpha <= 5.0, "alpha", "must be in [2, 5]");
  check(c.energy_k >= 0, "energy_k", "must be >= 0");
  check(c.energy_prioritizer >= 0, "energy_prioritizer", "must be >= 0");
  check(c.energy_sched_unit >= 0, "energy_sched_unit", "must be >= 0");
  check(c.ratio_threshold > 0, "ratio_threshold", "must be > 0");
  check(c.queue_threshold >= 0, "queue_threshold", "must be >= 0");
  check(c.reduction_factor > 0 && c.reduction_factor < 1, "reduction_factor",
        "must be in (0, 1)");
  check(c.max_rate_adjustment >= 0 && c.max_rate_adjustment < 1,
        "max_rate_adjustment", "must be in [0, 1)");
  check(c.rate_recovery_factor >= 1, "rate_recovery_factor", "must be >= 1");
  check(c.service_window_ms > 0, "service_window_ms", "must be > 0");
  check(c.link_latency_ms >= 0, "link_latency_ms", "must be >= 0");
  check(c.link_loss_base >= 0 && c.link_loss_base <= 1, "link_loss_base",
        "must be in [0, 1]");
  check(c.link_loss_collision >= 0 && c.link_loss_collision <= 1,
        "link_loss_collision", "must be in [0, 1]");
  check(c.link_loss_base + c.link_loss_collision <= 1, "link_loss_collision",
        "base + collision loss must be <= 1");
  check(c.processing_delay_ms >= 0, "processing_delay_ms", "must be >= 0");
  check(c.initial_sched_rate > 0, "initial_sched_rate", "must be > 0");
  check(c.origination_share >= 0 && c.origination_share <= 1,
        "origination_share", "must be in [0, 1]");
  check(c.origination_weight_high >= 0, "origination_weight_high",
        "must be >= 0");
  check(c.origination_weight_low >= 0, "origination_weight_low",
        "must be >= 0");
  check(c.origination_weight_high + c.origination_weight_low > 0,
        "origination_weight_high", "class weights must not both be zero");
  check(c.deadline_ms_class0 > 0, "deadline_ms_class0", "must be > 0");
  check(c.deadline_ms_class1 > 0, "deadline_ms_class1", "must be > 0");
  check(c.deadline_ms_class2 > 0, "deadline_ms_class2", "must be > 0");
  check(c.traffic_multiplier >= 0, "traffic_multiplier", "must be >= 0");
  check(c.burst_multiplier >= 0, "burst_multiplier", "must be >= 0");
  check(c.burst_period_ms > 0, "burst_period_ms", "must be > 0");
  check(c.burst_duty >= 0 && c.burst_duty <= 1, "burst_duty",
        "must be in [0, 1]");
  check(c.duration_ms >= 0, "duration_ms", "must be >= 0");
  check(c.replications >= 1, "replications", "must be >= 1");
}

void dump_config(const SimConfig& cfg, std::ostream& out) {
  for (const auto& def : key_table()) {
    out << def.name << " = " << def.get(cfg) << "\n";
  }
}

}  // namespace wsnsim
