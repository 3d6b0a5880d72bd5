#ifndef WSNSIM_RATECONTROL_HPP
#define WSNSIM_RATECONTROL_HPP

#include <array>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "wsnsim/config.hpp"
#include "wsnsim/fixed.hpp"
#include "wsnsim/packet.hpp"
#include "wsnsim/queueing.hpp"
#include "wsnsim/topology.hpp"

namespace wsnsim {

struct RateControlParams {
  RateFx ratio_threshold;
  int queue_threshold = 6;
  FactorQ16 reduction_factor;
  FactorQ16 floor_factor;  // 1 - max_rate_adjustment
  RateCapMode cap_mode = RateCapMode::kCumulative;
  bool recovery_enabled = false;
  FactorQ16 recovery_factor;
  // Which congestion signals reduce this node's own allocations: its own
  // measured ratio / queue occupancy, or only the piggybacked state of its
  // parents. Throttling a backlogged relay starves the very capacity the
  // backlog needs, so experiments can turn the self triggers off.
  bool self_ratio_trigger = true;
  bool self_queue_trigger = true;

  static RateControlParams from_config(const SimConfig& cfg);
};

// A rate change to advertise downstream via piggyback headers.
struct RateChange {
  NodeId parent = 0;
  RateFx new_rate;
};

struct ControlOutcome {
  bool skipped = false;     // scheduling rate was zero, cycle skipped
  bool triggered = false;   // own ratio / queue trigger fired
  int parents_reduced = 0;  // parents throttled from piggyback observations
  RateFx ratio;             // service ratio used for the decision
  std::vector<RateChange> notifications;
};

// Per-node rate state: the per-parent scheduling-rate allocations whose
// exact fixed-point sum is the node's scheduling rate, the measured service
// rate, and the piggyback observations of each parent's advertised state.
class RateState {
 public:
  RateState() = default;
  // Splits `initial_rate` across `parents`; remainder units go to the
  // lowest parent ids so the parts sum to the total exactly.
  RateState(std::span<const NodeId> parents, RateFx initial_rate,
            const RateControlParams& params);

  RateFx sched_rate() const { return sched_rate_; }
  RateFx initial_sched_rate() const { return initial_total_; }
  // Cumulative-cap lower bound on the scheduling rate (exact sum of the
  // per-parent floors; each floor rounds up, so the sum never undershoots
  // the real-valued (1 - max_rate_adjustment) * initial bound).
  RateFx floor_rate() const { return floor_total_; }

  RateFx service_rate() const { return service_rate_; }
  void set_service_rate(RateFx rate) { service_rate_ = rate; }
  RateFx last_ratio() const { return last_ratio_; }

  std::map<NodeId, RateFx> per_parent_rates() const;
  RateFx parent_rate(NodeId parent) const;
  std::size_t parent_count() const { return allocs_.size(); }

  // Records the piggyback fields observed on a parent's transmission.
  void note_parent_observation(NodeId parent, const PiggybackFields& fields);

  // True iff sched_rate() equals the recomputed sum of per-parent rates.
  bool sum_consistent() const;

  friend ControlOutcome control_step(RateState& rs,
                                     const RateControlParams& params,
                                     int queue_occupancy);

 private:
  struct ParentAlloc {
    NodeId parent = 0;
    RateFx rate;
    RateFx initial;
    RateFx floor;  // cumulative cap per allocation
    bool observed = false;
    PiggybackFields last_observation;
  };

  void rederive_sum();

  std::vector<ParentAlloc> allocs_;  // sorted by parent id
  RateFx sched_rate_;
  RateFx initial_total_;
  RateFx floor_total_;
  RateFx service_rate_;
  RateFx last_ratio_;
};

// Eq.-style aggregation: exact fixed-point sum of per-parent rates.
RateFx aggregate_sched_rate(const std::map<NodeId, RateFx>& per_parent);

// r = service_rate / sched_rate. Throws ZeroSchedulingRate when the node is
// quiesced (sched_rate == 0); callers skip the control cycle.
RateFx service_ratio(RateFx service_rate, RateFx sched_rate);

// Mean over the window's departures of 1000/delay_ms (pkt/s); zero-delay
// hops count as 1 ms. Returns 0 when nothing departed.
RateFx measure_service_rate(std::span<const std::int64_t> delays_ms,
                            std::int64_t window_ms);

// One control cycle: on a ratio/queue trigger every per-parent rate is
// multiplied by the reduction factor and clamped at its floor; additionally,
// any parent whose piggybacked state shows it congested gets its single
// allocation reduced. The scheduling rate is re-derived as the exact sum
// and rate changes are returned for piggybacking.
ControlOutcome control_step(RateState& rs, const RateControlParams& params,
                            int queue_occupancy);

// O_r per originating class: origination_share of the scheduling rate,
// split proportionally to the class weights.
std::array<RateFx, kOriginatingClasses> originating_rate(
    const RateState& rs, FactorQ16 origination_share,
    std::span<const double> class_weights);

}  // namespace wsnsim

#endif  // WSNSIM_RATECONTROL_HPP
