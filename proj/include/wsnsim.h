/* wsnsim - deterministic multipath WSN simulator, C API.
 *
 * All handles are opaque; every fallible call returns a wsn_status and the
 * calling thread's last failure message is available via wsn_last_error().
 */
#ifndef WSNSIM_H
#define WSNSIM_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define WSNSIM_API __declspec(dllexport)
#else
#define WSNSIM_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum wsn_status {
  WSN_OK = 0,
  WSN_ERR_INVALID_ARGUMENT = 1, /* null handle / bad parameter */
  WSN_ERR_UNKNOWN_KEY = 2,
  WSN_ERR_INVALID_VALUE = 3,
  WSN_ERR_DISCONNECTED = 4, /* deployment has nodes with no route to sink */
  WSN_ERR_NO_PATH = 5,
  WSN_ERR_OUT_OF_RANGE = 6, /* header field or attenuation factor */
  WSN_ERR_TRUNCATED = 7,
  WSN_ERR_INVALID_PRIORITY = 8,
  WSN_ERR_ZERO_RATE = 9,
  WSN_ERR_TOO_LARGE = 10,
  WSN_ERR_NOT_ADJACENT = 11,
  WSN_ERR_IO = 12,
  WSN_ERR_INTERNAL = 13
} wsn_status;

typedef struct wsn_config wsn_config;
typedef struct wsn_topology wsn_topology;
typedef struct wsn_report wsn_report;

WSNSIM_API const char* wsn_status_name(wsn_status status);

/* Message for the calling thread's most recent failed call. */
WSNSIM_API const char* wsn_last_error(void);

/* --- configuration ----------------------------------------------------- */

/* Fresh config with every default applied. */
WSNSIM_API wsn_config* wsn_config_new(void);
WSNSIM_API void wsn_config_free(wsn_config* config);

/* Loads a `key = value` file ('#' comments); file settings override the
 * defaults already in the handle. */
WSNSIM_API wsn_status wsn_config_load_file(wsn_config* config,
                                           const char* path);

/* Single key override, applied after any file. */
WSNSIM_API wsn_status wsn_config_set(wsn_config* config, const char* key,
                                     const char* value);

/* Full range validation; run/sweep/compare also validate implicitly. */
WSNSIM_API wsn_status wsn_config_validate(const wsn_config* config);

/* Copies the formatted value of one key into buf (NUL-terminated). */
WSNSIM_API wsn_status wsn_config_get(const wsn_config* config,
                                     const char* key, char* buf,
                                     size_t buf_len);

/* Writes the complete key set; reloading the dump reproduces the config. */
WSNSIM_API wsn_status wsn_config_dump_file(const wsn_config* config,
                                           const char* path);

/* --- topology ----------------------------------------------------------- */

WSNSIM_API wsn_status wsn_topology_build(const wsn_config* config,
                                         uint64_t seed, wsn_topology** out);
WSNSIM_API void wsn_topology_free(wsn_topology* topology);
WSNSIM_API int32_t wsn_topology_node_count(const wsn_topology* topology);
WSNSIM_API int32_t wsn_topology_sink(const wsn_topology* topology);

/* Hop count of the best path found within `budget` node expansions
 * (budget < 0 means unlimited). */
WSNSIM_API wsn_status wsn_topology_path_length(const wsn_topology* topology,
                                               int32_t source, int64_t budget,
                                               int32_t* out_hops);
WSNSIM_API wsn_status wsn_topology_write_file(const wsn_topology* topology,
                                              const char* path);

/* --- simulation --------------------------------------------------------- */

/* One deterministic replication. */
WSNSIM_API wsn_status wsn_run(const wsn_config* config, uint64_t seed,
                              wsn_report** out);
WSNSIM_API void wsn_report_free(wsn_report* report);

/* Counters: originated, delivered, delivered_late, dropped_queue,
 * dropped_link, missed_deadline, in_flight_at_end, dispatched,
 * enqueue_attempts, rate_sum_violations, occupancy_violations,
 * rate_floor_violations, packet_size_violations. */
WSNSIM_API wsn_status wsn_report_counter(const wsn_report* report,
                                         const char* name, uint64_t* out);

/* Metrics: drop_percent, success_rate, mean_r, energy_prioritizer,
 * energy_sched_unit, energy_congestion, energy_implicit, energy_tx_total,
 * avg_path_length. */
WSNSIM_API wsn_status wsn_report_metric(const wsn_report* report,
                                        const char* name, double* out);

/* --- CLI command bodies -------------------------------------------------- */

/* Simulates and writes metrics.csv, timeseries.csv and topology.txt. */
WSNSIM_API wsn_status wsn_cmd_run(const wsn_config* config, uint64_t seed,
                                  const char* out_dir);

/* Sweeps `key` over comma-separated `values` with seeds seed_lo..seed_hi
 * inclusive; writes sweep.csv. */
WSNSIM_API wsn_status wsn_cmd_sweep(const wsn_config* config, const char* key,
                                    const char* values, uint64_t seed_lo,
                                    uint64_t seed_hi, const char* out_dir);

/* Paired rate-control on/off runs per seed; writes compare.csv. */
WSNSIM_API wsn_status wsn_cmd_compare(const wsn_config* config,
                                      uint64_t seed_lo, uint64_t seed_hi,
                                      const char* out_dir);

/* Writes topology.txt and path_length.csv without simulating traffic. */
WSNSIM_API wsn_status wsn_cmd_topology(const wsn_config* config,
                                       uint64_t seed, const char* out_dir);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* WSNSIM_H */
