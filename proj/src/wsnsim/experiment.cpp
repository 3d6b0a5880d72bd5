#include "wsnsim/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "wsnsim/errors.hpp"
#include "wsnsim/topology.hpp"

namespace wsnsim {

namespace {

void put_fixed(std::ostream& out, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  out << buf;
}

struct MeanStderr {
  double mean = 0;
  double se = 0;
};

MeanStderr mean_stderr(const std::vector<double>& xs) {
  MeanStderr m;
  if (xs.empty()) return m;
  for (double x : xs) m.mean += x;
  m.mean /= static_cast<double>(xs.size());
  if (xs.size() < 2) return m;
  double ss = 0;
  for (double x : xs) ss += (x - m.mean) * (x - m.mean);
  const auto n = static_cast<double>(xs.size());
  m.se = std::sqrt(ss / (n - 1) / n);
  return m;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);  // LF line endings everywhere
  if (!out) {
    throw Error(ErrorCode::IoError, "cannot write '" + path.string() + "'");
  }
  return out;
}

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    throw Error(ErrorCode::IoError,
                "cannot create output directory '" + dir + "'");
  }
}

}  // namespace

std::vector<SweepRow> run_sweep(const SimConfig& base, const std::string& key,
                                const std::vector<std::string>& values,
                                const std::vector<std::uint64_t>& seeds) {
  std::vector<SweepRow> rows;
  for (const auto& value : values) {
    SimConfig cfg = base;
    apply_override(cfg, key, value);
    validate(cfg);

    std::vector<double> ratios, drops, successes;
    for (std::uint64_t seed : seeds) {
      const MetricsReport r = run_simulation(cfg, seed);
      ratios.push_back(r.mean_service_ratio);
      drops.push_back(r.drop_percent);
      successes.push_back(r.success_rate);
    }
    SweepRow row;
    row.param_value = std::strtod(value.c_str(), nullptr);
    const auto mr = mean_stderr(ratios);
    const auto md = mean_stderr(drops);
    const auto ms = mean_stderr(successes);
    row.mean_ratio = mr.mean;
    row.stderr_ratio = mr.se;
    row.drop_percent = md.mean;
    row.stderr_drop = md.se;
    row.success_rate = ms.mean;
    row.stderr_success = ms.se;
    rows.push_back(row);
  }
  std::stable_sort(rows.begin(), rows.end(),
                   [](const SweepRow& a, const SweepRow& b) {
                     return a.mean_ratio < b.mean_ratio;
                   });
  return rows;
}

std::vector<SweepRow> sweep_service_ratio(
    const SimConfig& base, const std::vector<std::uint64_t>& seeds,
    const std::vector<double>& ratio_thresholds) {
  std::vector<std::string> values;
  char buf[64];
  for (double t : ratio_thresholds) {
    std::snprintf(buf, sizeof buf, "%.17g", t);
    values.emplace_back(buf);
  }
  return run_sweep(base, "ratio_threshold", values, seeds);
}

std::vector<ComparePair> run_compare(const SimConfig& base,
                                     const std::vector<std::uint64_t>& seeds) {
  std::vector<ComparePair> pairs;
  for (std::uint64_t seed : seeds) {
    ComparePair pair;
    pair.seed = seed;
    SimConfig on = base;
    on.rate_control_enabled = true;
    SimConfig off = base;
    off.rate_control_enabled = false;
    pair.with_control = run_simulation(on, seed);
    pair.without_control = run_simulation(off, seed);
    pairs.push_back(std::move(pair));
  }
  return pairs;
}

void write_sweep_csv(const std::vector<SweepRow>& rows, std::ostream& out) {
  out << "param_value,mean_r,drop_percent,success_rate,"
         "stderr_r,stderr_drop,stderr_success\n";
  for (const auto& r : rows) {
    put_fixed(out, r.param_value);
    out << ',';
    put_fixed(out, r.mean_ratio);
    out << ',';
    put_fixed(out, r.drop_percent);
    out << ',';
    put_fixed(out, r.success_rate);
    out << ',';
    put_fixed(out, r.stderr_ratio);
    out << ',';
    put_fixed(out, r.stderr_drop);
    out << ',';
    put_fixed(out, r.stderr_success);
    out << '\n';
  }
}

namespace {

void write_compare_row(std::ostream& out, std::uint64_t seed, const char* mode,
                       const MetricsReport& r) {
  out << seed << ',' << mode << ',' << r.originated << ',' << r.delivered
      << ',' << r.dropped_queue << ',' << r.dropped_link << ','
      << r.missed_deadline << ',';
  put_fixed(out, r.drop_percent);
  out << ',';
  put_fixed(out, r.success_rate);
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

}  // namespace

void write_compare_csv(const std::vector<ComparePair>& pairs,
                       std::ostream& out) {
  out << "seed,rate_control,originated,delivered,dropped_queue,dropped_link,"
         "missed_deadline,drop_percent,success_rate,energy_prioritizer,"
         "energy_sched_unit,energy_congestion,energy_implicit,"
         "energy_tx_total\n";
  for (const auto& p : pairs) {
    write_compare_row(out, p.seed, "on", p.with_control);
    write_compare_row(out, p.seed, "off", p.without_control);
  }
}

MetricsReport run_to_dir(const SimConfig& config, std::uint64_t seed,
                         const std::string& out_dir) {
  validate(config);
  ensure_dir(out_dir);
  const std::filesystem::path dir(out_dir);

  const MetricsReport report = run_simulation(config, seed);
  {
    auto out = open_out(dir / "metrics.csv");
    write_metrics_csv(report, seed, out);
  }
  {
    auto out = open_out(dir / "timeseries.csv");
    write_timeseries_csv(report, out);
  }
  {
    const Topology topo = build_topology(config, seed);
    auto out = open_out(dir / "topology.txt");
    topo.serialize(out);
  }
  return report;
}

std::string sweep_to_dir(const SimConfig& config, const std::string& key,
                         const std::vector<std::string>& values,
                         const std::vector<std::uint64_t>& seeds,
                         const std::string& out_dir) {
  ensure_dir(out_dir);
  const auto rows = run_sweep(config, key, values, seeds);
  const auto path = std::filesystem::path(out_dir) / "sweep.csv";
  auto out = open_out(path);
  write_sweep_csv(rows, out);
  return path.string();
}

std::string compare_to_dir(const SimConfig& config,
                           const std::vector<std::uint64_t>& seeds,
                           const std::string& out_dir) {
  validate(config);
  ensure_dir(out_dir);
  const auto pairs = run_compare(config, seeds);
  const auto path = std::filesystem::path(out_dir) / "compare.csv";
  auto out = open_out(path);
  write_compare_csv(pairs, out);
  return path.string();
}

void topology_to_dir(const SimConfig& config, std::uint64_t seed,
                     const std::string& out_dir) {
  validate(config);
  ensure_dir(out_dir);
  const Topology topo = build_topology(config, seed);
  const std::filesystem::path dir(out_dir);
  {
    auto out = open_out(dir / "topology.txt");
    topo.serialize(out);
  }
  {
    auto out = open_out(dir / "path_length.csv");
    out << "hops,mean_path_length\n";
    for (const auto& [hops, mean] : average_path_length(topo)) {
      out << hops << ',';
      put_fixed(out, mean);
      out << '\n';
    }
  }
}

}  // namespace wsnsim
