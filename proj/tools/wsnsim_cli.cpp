// wsnsim command-line front end. Talks to the simulator exclusively through
// the C API in wsnsim.h.

#include <cinttypes>
#include <cstdio>
#include <cstdlib>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "wsnsim.h"

namespace {

struct ConfigDeleter {
  void operator()(wsn_config* c) const { wsn_config_free(c); }
};
using ConfigPtr = std::unique_ptr<wsn_config, ConfigDeleter>;

[[noreturn]] void fail(wsn_status status, const char* what) {
  std::fprintf(stderr, "wsnsim: %s failed: %s (%s)\n", what,
               wsn_last_error(), wsn_status_name(status));
  std::exit(static_cast<int>(status));
}

void check(wsn_status status, const char* what) {
  if (status != WSN_OK) fail(status, what);
}

struct CommonOpts {
  std::string config_path;
  std::string out_dir = "out";
  std::uint64_t seed = 1;
  std::string seed_range;  // "N..M" or "N"
  bool no_rate_control = false;
  std::vector<std::string> overrides;  // key=value
};

ConfigPtr make_config(const CommonOpts& opts) {
  ConfigPtr cfg(wsn_config_new());
  if (!cfg) {
    std::fprintf(stderr, "wsnsim: out of memory\n");
    std::exit(1);
  }
  if (!opts.config_path.empty()) {
    check(wsn_config_load_file(cfg.get(), opts.config_path.c_str()),
          "loading config");
  }
  for (const auto& kv : opts.overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) {
      std::fprintf(stderr, "wsnsim: --set expects key=value, got '%s'\n",
                   kv.c_str());
      std::exit(static_cast<int>(WSN_ERR_INVALID_VALUE));
    }
    check(wsn_config_set(cfg.get(), kv.substr(0, eq).c_str(),
                         kv.substr(eq + 1).c_str()),
          "applying --set override");
  }
  if (opts.no_rate_control) {
    check(wsn_config_set(cfg.get(), "rate_control_enabled", "false"),
          "disabling rate control");
  }
  check(wsn_config_validate(cfg.get()), "validating config");
  return cfg;
}

// Accepts "N..M" (inclusive) or a single "N". Defaults to 1..replications
// when unset.
std::pair<std::uint64_t, std::uint64_t> seed_span(const CommonOpts& opts,
                                                  const wsn_config* cfg) {
  if (opts.seed_range.empty()) {
    char buf[32];
    check(wsn_config_get(cfg, "replications", buf, sizeof buf),
          "reading replications");
    const auto reps = std::strtoull(buf, nullptr, 10);
    return {1, reps > 0 ? reps : 1};
  }
  const auto dots = opts.seed_range.find("..");
  try {
    if (dots == std::string::npos) {
      const auto s = std::stoull(opts.seed_range);
      return {s, s};
    }
    const auto lo = std::stoull(opts.seed_range.substr(0, dots));
    const auto hi = std::stoull(opts.seed_range.substr(dots + 2));
    if (hi < lo) throw std::invalid_argument("hi < lo");
    return {lo, hi};
  } catch (const std::exception&) {
    std::fprintf(stderr, "wsnsim: --seeds expects N or N..M, got '%s'\n",
                 opts.seed_range.c_str());
    std::exit(static_cast<int>(WSN_ERR_INVALID_VALUE));
  }
}

void add_common(CLI::App* cmd, CommonOpts& opts, bool with_seed,
                bool with_seeds) {
  cmd->add_option("--config", opts.config_path, "Config file (key = value)");
  cmd->add_option("--out", opts.out_dir, "Output directory");
  if (with_seed) cmd->add_option("--seed", opts.seed, "Replication seed");
  if (with_seeds) {
    cmd->add_option("--seeds", opts.seed_range,
                    "Seed range N..M (default 1..replications)");
  }
  cmd->add_flag("--no-rate-control", opts.no_rate_control,
                "Disable the congestion control loop");
  cmd->add_option("--set", opts.overrides, "Config override key=value")
      ->take_all();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Deterministic multipath WSN simulator"};
  app.require_subcommand(1);

  CommonOpts run_opts, sweep_opts, compare_opts, topo_opts;
  std::string sweep_spec = "ratio_threshold=0.1,0.25,0.5,1.0,2.0,4.0";

  auto* run_cmd =
      app.add_subcommand("run", "Single simulation run; writes metrics.csv, "
                                "timeseries.csv and topology.txt");
  add_common(run_cmd, run_opts, true, false);

  auto* sweep_cmd = app.add_subcommand(
      "sweep", "Parameter sweep over seeded replications; writes sweep.csv");
  add_common(sweep_cmd, sweep_opts, false, true);
  sweep_cmd->add_option("--sweep", sweep_spec,
                        "Sweep spec KEY=v1,v2,... (default sweeps "
                        "ratio_threshold)");

  auto* compare_cmd = app.add_subcommand(
      "compare",
      "Paired rate-control on/off runs per seed; writes compare.csv");
  add_common(compare_cmd, compare_opts, false, true);

  auto* topo_cmd = app.add_subcommand(
      "topology", "Emit topology.txt and path_length.csv only");
  add_common(topo_cmd, topo_opts, true, false);

  CLI11_PARSE(app, argc, argv);

  if (run_cmd->parsed()) {
    auto cfg = make_config(run_opts);
    check(wsn_cmd_run(cfg.get(), run_opts.seed, run_opts.out_dir.c_str()),
          "run");
    std::printf("run: seed %" PRIu64 " -> %s\n", run_opts.seed,
                run_opts.out_dir.c_str());
  } else if (sweep_cmd->parsed()) {
    auto cfg = make_config(sweep_opts);
    const auto eq = sweep_spec.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 >= sweep_spec.size()) {
      std::fprintf(stderr, "wsnsim: --sweep expects KEY=v1,v2,..., got '%s'\n",
                   sweep_spec.c_str());
      return static_cast<int>(WSN_ERR_INVALID_VALUE);
    }
    const auto [lo, hi] = seed_span(sweep_opts, cfg.get());
    check(wsn_cmd_sweep(cfg.get(), sweep_spec.substr(0, eq).c_str(),
                        sweep_spec.substr(eq + 1).c_str(), lo, hi,
                        sweep_opts.out_dir.c_str()),
          "sweep");
    std::printf("sweep: seeds %" PRIu64 "..%" PRIu64 " -> %s/sweep.csv\n", lo,
                hi, sweep_opts.out_dir.c_str());
  } else if (compare_cmd->parsed()) {
    auto cfg = make_config(compare_opts);
    const auto [lo, hi] = seed_span(compare_opts, cfg.get());
    check(wsn_cmd_compare(cfg.get(), lo, hi, compare_opts.out_dir.c_str()),
          "compare");
    std::printf("compare: seeds %" PRIu64 "..%" PRIu64 " -> %s/compare.csv\n",
                lo, hi, compare_opts.out_dir.c_str());
  } else if (topo_cmd->parsed()) {
    auto cfg = make_config(topo_opts);
    check(wsn_cmd_topology(cfg.get(), topo_opts.seed,
                           topo_opts.out_dir.c_str()),
          "topology");
    std::printf("topology: seed %" PRIu64 " -> %s\n", topo_opts.seed,
                topo_opts.out_dir.c_str());
  }
  return 0;
}
