#ifndef WSNSIM_ENGINE_HPP
#define WSNSIM_ENGINE_HPP

#include <cstdint>
#include <span>

#include "wsnsim/config.hpp"
#include "wsnsim/metrics.hpp"
#include "wsnsim/rng.hpp"
#include "wsnsim/topology.hpp"

namespace wsnsim {

// Transmit energy for one hop: k * d^alpha. Alpha is valid in [2, 5].
double energy_tx(double distance_m, double alpha, double k);

enum class EnergyComponent { kPrioritizer, kSchedulingUnit };

void charge_processing(EnergyLedger& ledger, EnergyComponent component,
                       std::uint64_t packets, double per_packet_cost);

// Uniform multipath choice of the next-hop parent.
NodeId pick_parent(std::span<const NodeId> parents, Rng& rng);

// Runs one deterministic replication: same (config, seed) give a
// byte-identical serialized report. Throws TopologyDisconnected when the
// seeded deployment leaves nodes without a route to the sink.
MetricsReport run_simulation(const SimConfig& config, std::uint64_t seed);

}  // namespace wsnsim

#endif  // WSNSIM_ENGINE_HPP
