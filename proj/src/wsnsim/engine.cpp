#include "wsnsim/engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <unordered_map>
#include <vector>

#include "wsnsim/errors.hpp"
#include "wsnsim/packet.hpp"
#include "wsnsim/queueing.hpp"
#include "wsnsim/ratecontrol.hpp"
#include "wsnsim/scheduler.hpp"

namespace wsnsim {

double energy_tx(double distance_m, double alpha, double k) {
  if (alpha < 2.0 || alpha > 5.0) {
    throw Error(ErrorCode::AlphaOutOfRange,
                "attenuation factor must be in [2, 5]");
  }
  return k * std::pow(distance_m, alpha);
}

void charge_processing(EnergyLedger& ledger, EnergyComponent component,
                       std::uint64_t packets, double per_packet_cost) {
  const double joules = static_cast<double>(packets) * per_packet_cost;
  switch (component) {
    case EnergyComponent::kPrioritizer:
      ledger.prioritizer += joules;
      break;
    case EnergyComponent::kSchedulingUnit:
      ledger.scheduling_unit += joules;
      break;
  }
}

NodeId pick_parent(std::span<const NodeId> parents, Rng& rng) {
  return parents[rng.uniform_int(parents.size())];
}

namespace {

enum class EventKind : std::uint8_t {
  kPacketOrigination,
  kPacketArrival,
  kDispatchTick,
  kMeasurementTick,
  kControlTick,
  kSimEnd,
};

struct Event {
  std::int64_t time_ms = 0;
  std::uint64_t tiebreak = 0;
  EventKind kind = EventKind::kSimEnd;
  NodeId node = 0;
  int traffic_class = 0;  // origination events
  Packet packet;          // arrival events
};

struct EventAfter {
  bool operator()(const Event& a, const Event& b) const {
    if (a.time_ms != b.time_ms) return a.time_ms > b.time_ms;
    return a.tiebreak > b.tiebreak;
  }
};

constexpr int kTimeShift = 8;  // sub-ms bookkeeping for origination pacing

struct NodeRuntime {
  QueueSet queues;
  DispatchState dispatch;
  RateState rates;
  std::vector<std::int64_t> window_delays;
  RateFx window_service_rate;
  std::uint32_t next_seq = 0;
  std::int64_t next_orig_fx[kOriginatingClasses] = {0, 0};
  double ratio_sum = 0;
  std::uint64_t ratio_samples = 0;

  NodeRuntime(int capacity, DispatchState d, RateState r)
      : queues(capacity), dispatch(d), rates(std::move(r)) {}
};

// Where a packet has been: per-hop transmit energy for congestion
// attribution, plus the receive-buffer entry time at the current node.
struct TrackedPacket {
  std::vector<std::pair<NodeId, double>> hop_energy;
  std::int64_t node_arrival_ms = 0;
};

class Simulation {
 public:
  Simulation(const SimConfig& config, std::uint64_t seed)
      : cfg_(config),
        topology_(build_topology(config, seed)),
        params_(RateControlParams::from_config(config)),
        share_(FactorQ16::from_double(config.origination_share)),
        traffic_rng_(Rng(seed).derive(1)),
        route_rng_(Rng(seed).derive(2)),
        loss_rng_(Rng(seed).derive(3)) {
    weights_[0] = config.origination_weight_high;
    weights_[1] = config.origination_weight_low;
  }

  MetricsReport run();

 private:
  void schedule(Event ev) {
    ev.tiebreak = next_tiebreak_++;
    events_.push(ev);
  }

  void schedule_dispatch_tick(NodeId node, std::int64_t at_ms) {
    Event ev;
    ev.time_ms = std::max(at_ms, now_);
    ev.kind = EventKind::kDispatchTick;
    ev.node = node;
    schedule(ev);
  }

  NodeRuntime& runtime(NodeId n) { return nodes_[static_cast<std::size_t>(n)]; }

  std::uint32_t track_key(const PacketHeader& h) const {
    return (static_cast<std::uint32_t>(h.source_address) << 16) |
           (h.sequence & 0xffffu);
  }

  RateFx origination_rate_now(NodeRuntime& rt, int cls) const;
  void handle_origination(const Event& ev);
  void handle_arrival(const Event& ev);
  void handle_dispatch(const Event& ev);
  void handle_measurement();
  void handle_control();

  void die_of_congestion(std::uint32_t key);
  void attribute_implicit(std::uint32_t key);
  PiggybackFields advertised_fields(NodeRuntime& rt) const;

  SimConfig cfg_;
  Topology topology_;
  RateControlParams params_;
  FactorQ16 share_;
  double weights_[kOriginatingClasses];

  Rng traffic_rng_;
  Rng route_rng_;
  Rng loss_rng_;

  std::vector<NodeRuntime> nodes_;
  std::priority_queue<Event, std::vector<Event>, EventAfter> events_;
  std::uint64_t next_tiebreak_ = 0;
  std::int64_t now_ = 0;

  std::unordered_map<std::uint32_t, TrackedPacket> tracked_;
  MetricsReport report_;
};

RateFx Simulation::origination_rate_now(NodeRuntime& rt, int cls) const {
  const auto rates =
      originating_rate(rt.rates, share_, std::span(weights_, 2));
  double multiplier = cfg_.traffic_multiplier;
  if (cfg_.burst_enabled) {
    const std::int64_t phase = now_ % cfg_.burst_period_ms;
    if (static_cast<double>(phase) <
        cfg_.burst_duty * static_cast<double>(cfg_.burst_period_ms)) {
      multiplier *= cfg_.burst_multiplier;
    }
  }
  return RateFx::from_units(static_cast<std::int64_t>(std::llround(
      static_cast<double>(rates[static_cast<std::size_t>(cls)].units()) *
      multiplier)));
}

PiggybackFields Simulation::advertised_fields(NodeRuntime& rt) const {
  PiggybackFields f;
  f.queue_length = rt.queues.occupancy();
  f.sched_rate = rt.rates.sched_rate();
  f.service_rate = rt.rates.service_rate();
  return f;
}

void Simulation::die_of_congestion(std::uint32_t key) {
  auto it = tracked_.find(key);
  if (it == tracked_.end()) return;
  for (const auto& [node, joules] : it->second.hop_energy) {
    report_.node_energy[static_cast<std::size_t>(node)].congestion += joules;
    report_.total_energy.congestion += joules;
  }
  tracked_.erase(it);
}

void Simulation::attribute_implicit(std::uint32_t key) {
  auto it = tracked_.find(key);
  if (it == tracked_.end()) return;
  for (const auto& [node, joules] : it->second.hop_energy) {
    report_.node_energy[static_cast<std::size_t>(node)].implicit_congestion +=
        joules;
    report_.total_energy.implicit_congestion += joules;
  }
  tracked_.erase(it);
}

void Simulation::handle_origination(const Event& ev) {
  if (now_ >= cfg_.duration_ms) return;
  NodeRuntime& rt = runtime(ev.node);
  const int cls = ev.traffic_class;

  const RateFx rate = origination_rate_now(rt, cls);
  if (rate.units() <= 0) {
    // Quiesced class; check again next window.
    Event next = ev;
    next.time_ms = now_ + cfg_.service_window_ms;
    schedule(next);
    return;
  }

  Packet p;
  p.header.priority_number = cls;
  p.header.source_address = ev.node;
  p.header.sequence = rt.next_seq++ & 0xffffu;
  p.header.absolute_deadline_ms =
      now_ + (cls == 0 ? cfg_.deadline_ms_class0 : cfg_.deadline_ms_class1);
  p.header.piggyback = advertised_fields(rt);
  p.created_at_ms = now_;
  p.is_transit_at_current_hop = false;

  ++report_.originated;
  tracked_[track_key(p.header)] = TrackedPacket{{}, now_};

  charge_processing(report_.node_energy[static_cast<std::size_t>(ev.node)],
                    EnergyComponent::kPrioritizer, 1,
                    cfg_.energy_prioritizer);
  report_.total_energy.prioritizer += cfg_.energy_prioritizer;

  const TrafficClass q = classify(p.header, ev.node);
  if (!rt.queues.enqueue(p, q)) {
    ++report_.dropped_queue;
    die_of_congestion(track_key(p.header));
  } else {
    if (rt.queues.occupancy() > cfg_.queue_capacity) {
      ++report_.occupancy_violations;
    }
    schedule_dispatch_tick(ev.node, rt.dispatch.next_release_ms());
  }

  // Pace the next origination of this class at the current rate.
  const std::int64_t gap_fx =
      ((std::int64_t{1000} << (2 * kTimeShift)) + rate.units() / 2) /
      rate.units();
  std::int64_t& next_fx = rt.next_orig_fx[cls];
  next_fx = std::max(next_fx + gap_fx, (now_ << kTimeShift) + gap_fx);
  Event next = ev;
  next.time_ms = (next_fx + ((1 << kTimeShift) - 1)) >> kTimeShift;
  schedule(next);
}

void Simulation::handle_arrival(const Event& ev) {
  const Packet& p = ev.packet;
  const auto key = track_key(p.header);

  if (ev.node == topology_.sink()) {
    ++report_.delivered;
    if (now_ > p.header.absolute_deadline_ms) {
      ++report_.delivered_late;
      attribute_implicit(key);
    } else {
      tracked_.erase(key);
    }
    return;
  }

  NodeRuntime& rt = runtime(ev.node);
  auto it = tracked_.find(key);
  if (it != tracked_.end()) it->second.node_arrival_ms = now_;

  Packet local = p;
  local.is_transit_at_current_hop = true;

  charge_processing(report_.node_energy[static_cast<std::size_t>(ev.node)],
                    EnergyComponent::kPrioritizer, 1,
                    cfg_.energy_prioritizer);
  report_.total_energy.prioritizer += cfg_.energy_prioritizer;

  const TrafficClass q = classify(local.header, ev.node);
  if (!rt.queues.enqueue(local, q)) {
    ++report_.dropped_queue;
    die_of_congestion(key);
    return;
  }
  if (rt.queues.occupancy() > cfg_.queue_capacity) {
    ++report_.occupancy_violations;
  }
  schedule_dispatch_tick(ev.node, rt.dispatch.next_release_ms());
}

void Simulation::handle_dispatch(const Event& ev) {
  NodeRuntime& rt = runtime(ev.node);
  auto dispatched = rt.dispatch.next_dispatch(rt.queues, now_);
  if (!dispatched) return;  // not yet released, or nothing queued

  Packet p = *dispatched;
  ++report_.dispatched;
  charge_processing(report_.node_energy[static_cast<std::size_t>(ev.node)],
                    EnergyComponent::kSchedulingUnit, 1,
                    cfg_.energy_sched_unit);
  report_.total_energy.scheduling_unit += cfg_.energy_sched_unit;

  const auto key = track_key(p.header);
  auto tracked = tracked_.find(key);

  if (now_ > p.header.absolute_deadline_ms) {
    // Stale at dispatch: not worth a radio transmission.
    ++report_.missed_deadline;
    attribute_implicit(key);
  } else {
    // Record the node delay (receive buffer to retransmission); the
    // turnaround of a node is never faster than its processing latency.
    if (tracked != tracked_.end()) {
      rt.window_delays.push_back(
          std::max(now_ - tracked->second.node_arrival_ms,
                   cfg_.processing_delay_ms));
    }

    const auto& parents = topology_.parents(ev.node);
    if (parents.empty()) {
      throw Error(ErrorCode::NotAdjacent,
                  "dispatch at a node with no parents");
    }
    const NodeId next_hop = pick_parent(parents, route_rng_);
    if (!topology_.adjacent(ev.node, next_hop)) {
      throw Error(ErrorCode::NotAdjacent, "next hop is not a neighbor");
    }

    // Radio charge happens whether or not the hop survives.
    const double joules =
        energy_tx(topology_.distance(ev.node, next_hop), cfg_.alpha,
                  cfg_.energy_k);
    report_.node_energy[static_cast<std::size_t>(ev.node)].transmission +=
        joules;
    report_.total_energy.transmission += joules;
    if (tracked != tracked_.end()) {
      tracked->second.hop_energy.emplace_back(ev.node, joules);
    }

    // Stamp this node's control fields and push the header through the
    // wire codec so receivers and overhearers see quantized values.
    p.header.piggyback = advertised_fields(rt);
    const auto bytes = encode_header(p.header);
    if (bytes.size() + kPayloadBytes != kPacketBytes) {
      ++report_.packet_size_violations;
    }
    p.header = decode_header(bytes);

    // Children of the transmitter overhear the piggybacked state.
    for (NodeId child : topology_.children(ev.node)) {
      runtime(child).rates.note_parent_observation(ev.node,
                                                   p.header.piggyback);
    }

    const NodeRuntime& peer = runtime(next_hop);
    const double occupancy_factor =
        static_cast<double>(peer.queues.occupancy()) /
        static_cast<double>(cfg_.queue_capacity);
    const double u = loss_rng_.uniform();
    if (u < cfg_.link_loss_base) {
      ++report_.dropped_link;
      tracked_.erase(key);
    } else if (u < cfg_.link_loss_base +
                       cfg_.link_loss_collision * occupancy_factor) {
      ++report_.dropped_link;
      die_of_congestion(key);
    } else {
      Event arrival;
      arrival.time_ms = now_ + cfg_.link_latency_ms;
      arrival.kind = EventKind::kPacketArrival;
      arrival.node = next_hop;
      arrival.packet = p;
      schedule(arrival);
    }
  }

  if (!rt.queues.empty()) {
    schedule_dispatch_tick(ev.node, rt.dispatch.next_release_ms());
  }
}

void Simulation::handle_measurement() {
  for (NodeId n = 0; n < topology_.node_count(); ++n) {
    NodeRuntime& rt = runtime(n);
    rt.window_service_rate = measure_service_rate(
        rt.window_delays, cfg_.service_window_ms);
    rt.rates.set_service_rate(rt.window_service_rate);

    SeriesPoint pt;
    pt.time_ms = now_;
    pt.node = n;
    pt.queue_len = rt.queues.occupancy();
    pt.sched_rate = rt.rates.sched_rate();
    pt.service_rate = rt.window_service_rate;
    if (rt.rates.sched_rate().units() > 0) {
      pt.ratio = service_ratio(rt.window_service_rate, rt.rates.sched_rate());
      pt.ratio_defined = true;
      rt.ratio_sum += pt.ratio.to_double();
      ++rt.ratio_samples;
    }
    report_.series.push_back(pt);
  }
}

void Simulation::handle_control() {
  for (NodeId n = 0; n < topology_.node_count(); ++n) {
    NodeRuntime& rt = runtime(n);
    if (cfg_.rate_control_enabled) {
      control_step(rt.rates, params_, rt.queues.occupancy());
    }
    if (!rt.rates.sum_consistent()) ++report_.rate_sum_violations;
    if (rt.rates.sched_rate() < rt.rates.floor_rate() &&
        params_.cap_mode == RateCapMode::kCumulative) {
      ++report_.rate_floor_violations;
    }
    rt.dispatch.set_rate(rt.rates.sched_rate());
    rt.window_delays.clear();
    if (!rt.queues.empty()) {
      schedule_dispatch_tick(n, rt.dispatch.next_release_ms());
    }
  }
}

MetricsReport Simulation::run() {
  const int n = topology_.node_count();
  report_.node_energy.assign(static_cast<std::size_t>(n), EnergyLedger{});
  report_.node_mean_ratio.assign(static_cast<std::size_t>(n), -1.0);

  const RateFx initial_rate = RateFx::from_double(cfg_.initial_sched_rate);
  nodes_.reserve(static_cast<std::size_t>(n));
  for (NodeId id = 0; id < n; ++id) {
    RateState rates(topology_.parents(id), initial_rate, params_);
    DispatchState dispatch(rates.sched_rate());
    nodes_.emplace_back(cfg_.queue_capacity, dispatch, std::move(rates));
  }

  // Seeded phase jitter for the periodic origination of each node/class.
  for (NodeId id = 0; id < n; ++id) {
    if (id == topology_.sink()) continue;
    for (int cls = 0; cls < kOriginatingClasses; ++cls) {
      const double jitter = traffic_rng_.uniform();
      const RateFx rate = origination_rate_now(runtime(id), cls);
      std::int64_t first_ms;
      if (rate.units() > 0) {
        const std::int64_t gap_ms =
            (std::int64_t{1000} * RateFx::kOne + rate.units() / 2) /
            rate.units();
        first_ms = static_cast<std::int64_t>(jitter *
                                             static_cast<double>(gap_ms));
      } else {
        first_ms = static_cast<std::int64_t>(
            jitter * static_cast<double>(cfg_.service_window_ms));
      }
      runtime(id).next_orig_fx[cls] = first_ms << kTimeShift;
      Event ev;
      ev.time_ms = first_ms;
      ev.kind = EventKind::kPacketOrigination;
      ev.node = id;
      ev.traffic_class = cls;
      schedule(ev);
    }
  }

  if (cfg_.service_window_ms <= cfg_.duration_ms) {
    Event m;
    m.time_ms = cfg_.service_window_ms;
    m.kind = EventKind::kMeasurementTick;
    schedule(m);
    Event c = m;
    c.kind = EventKind::kControlTick;
    schedule(c);
  }

  Event end;
  end.time_ms = cfg_.duration_ms;
  end.kind = EventKind::kSimEnd;
  end.tiebreak = std::numeric_limits<std::uint64_t>::max();
  events_.push(end);

  while (!events_.empty()) {
    const Event ev = events_.top();
    events_.pop();
    now_ = ev.time_ms;
    if (ev.kind == EventKind::kSimEnd) break;
    switch (ev.kind) {
      case EventKind::kPacketOrigination:
        handle_origination(ev);
        break;
      case EventKind::kPacketArrival:
        handle_arrival(ev);
        break;
      case EventKind::kDispatchTick:
        handle_dispatch(ev);
        break;
      case EventKind::kMeasurementTick:
        handle_measurement();
        break;
      case EventKind::kControlTick: {
        handle_control();
        const std::int64_t next = now_ + cfg_.service_window_ms;
        if (next <= cfg_.duration_ms) {
          Event m;
          m.time_ms = next;
          m.kind = EventKind::kMeasurementTick;
          schedule(m);
          Event c = m;
          c.kind = EventKind::kControlTick;
          schedule(c);
        }
        break;
      }
      case EventKind::kSimEnd:
        break;
    }
  }

  report_.in_flight_at_end = tracked_.size();
  if (report_.originated > 0) {
    // Packet drop covers buffer overflow and link losses; deadline expiries
    // are counted separately.
    const auto lost = report_.dropped_queue + report_.dropped_link;
    report_.drop_percent = 100.0 * static_cast<double>(lost) /
                           static_cast<double>(report_.originated);
    report_.success_rate = static_cast<double>(report_.delivered) /
                           static_cast<double>(report_.originated);
  }

  double ratio_total = 0;
  int ratio_nodes = 0;
  for (NodeId id = 0; id < n; ++id) {
    NodeRuntime& rt = runtime(id);
    if (rt.ratio_samples > 0) {
      const double mean =
          rt.ratio_sum / static_cast<double>(rt.ratio_samples);
      report_.node_mean_ratio[static_cast<std::size_t>(id)] = mean;
      ratio_total += mean;
      ++ratio_nodes;
    }
    report_.enqueue_attempts += rt.queues.enqueue_attempts();
  }
  if (ratio_nodes > 0) {
    report_.mean_service_ratio = ratio_total / ratio_nodes;
  }

  report_.path_length_by_hops = average_path_length(topology_);
  double length_sum = 0;
  int length_count = 0;
  for (const auto& s : topology_.sites()) {
    if (s.id == topology_.sink()) continue;
    length_sum += find_path_length(topology_, s.id);
    ++length_count;
  }
  if (length_count > 0) {
    report_.average_path_length_hops = length_sum / length_count;
  }
  return report_;
}

}  // namespace

MetricsReport run_simulation(const SimConfig& config, std::uint64_t seed) {
  validate(config);
  Simulation sim(config, seed);
  return sim.run();
}

}  // namespace wsnsim
