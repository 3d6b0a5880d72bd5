#include "wsnsim/ratecontrol.hpp"

#include <algorithm>
#include <cmath>

#include "wsnsim/errors.hpp"

namespace wsnsim {

RateControlParams RateControlParams::from_config(const SimConfig& cfg) {
  RateControlParams p;
  p.ratio_threshold = RateFx::from_double(cfg.ratio_threshold);
  p.queue_threshold = cfg.queue_threshold;
  p.reduction_factor = FactorQ16::from_double(cfg.reduction_factor);
  p.floor_factor = FactorQ16::from_double(1.0 - cfg.max_rate_adjustment);
  p.cap_mode = cfg.rate_cap_mode;
  p.recovery_enabled = cfg.rate_recovery_enabled;
  p.recovery_factor = FactorQ16::from_double(cfg.rate_recovery_factor);
  p.self_ratio_trigger = cfg.self_ratio_trigger;
  p.self_queue_trigger = cfg.self_queue_trigger;
  return p;
}

RateState::RateState(std::span<const NodeId> parents, RateFx initial_rate,
                     const RateControlParams& params) {
  std::vector<NodeId> sorted(parents.begin(), parents.end());
  std::sort(sorted.begin(), sorted.end());

  const auto n = static_cast<std::int64_t>(sorted.size());
  if (n > 0) {
    const std::int64_t share = initial_rate.units() / n;
    std::int64_t remainder = initial_rate.units() - share * n;
    for (NodeId p : sorted) {
      ParentAlloc alloc;
      alloc.parent = p;
      alloc.rate = RateFx::from_units(share + (remainder > 0 ? 1 : 0));
      if (remainder > 0) --remainder;
      alloc.initial = alloc.rate;
      alloc.floor = mul_ceil(alloc.initial, params.floor_factor);
      allocs_.push_back(alloc);
    }
  }
  rederive_sum();
  initial_total_ = sched_rate_;
  floor_total_ = RateFx::from_units(0);
  for (const auto& a : allocs_) floor_total_ += a.floor;
}

void RateState::rederive_sum() {
  RateFx sum;
  for (const auto& a : allocs_) sum += a.rate;
  sched_rate_ = sum;
}

std::map<NodeId, RateFx> RateState::per_parent_rates() const {
  std::map<NodeId, RateFx> out;
  for (const auto& a : allocs_) out[a.parent] = a.rate;
  return out;
}

RateFx RateState::parent_rate(NodeId parent) const {
  for (const auto& a : allocs_) {
    if (a.parent == parent) return a.rate;
  }
  return RateFx::from_units(0);
}

void RateState::note_parent_observation(NodeId parent,
                                        const PiggybackFields& fields) {
  for (auto& a : allocs_) {
    if (a.parent == parent) {
      a.observed = true;
      a.last_observation = fields;
      return;
    }
  }
}

bool RateState::sum_consistent() const {
  RateFx sum;
  for (const auto& a : allocs_) sum += a.rate;
  return sum == sched_rate_;
}

RateFx aggregate_sched_rate(const std::map<NodeId, RateFx>& per_parent) {
  RateFx sum;
  for (const auto& [parent, rate] : per_parent) sum += rate;
  return sum;
}

RateFx service_ratio(RateFx service_rate, RateFx sched_rate) {
  if (sched_rate.units() <= 0) {
    throw Error(ErrorCode::ZeroSchedulingRate,
                "service ratio undefined: scheduling rate is zero");
  }
  return ratio_fx(service_rate, sched_rate);
}

RateFx measure_service_rate(std::span<const std::int64_t> delays_ms,
                            std::int64_t /*window_ms*/) {
  if (delays_ms.empty()) return RateFx::from_units(0);
  std::int64_t sum = 0;
  for (std::int64_t d : delays_ms) {
    const std::int64_t delay = std::max<std::int64_t>(d, 1);
    // 1000/delay pkt/s in rate fx, rounded.
    sum += (std::int64_t{1000} * RateFx::kOne + delay / 2) / delay;
  }
  const auto n = static_cast<std::int64_t>(delays_ms.size());
  return RateFx::from_units((sum + n / 2) / n);
}

namespace {

// True when the piggybacked fields of a parent show it congested under the
// same thresholds the node applies to itself.
bool observation_congested(const PiggybackFields& obs,
                           const RateControlParams& params) {
  if (obs.queue_length > params.queue_threshold) return true;
  if (obs.sched_rate.units() > 0) {
    return ratio_fx(obs.service_rate, obs.sched_rate) < params.ratio_threshold;
  }
  return false;
}

}  // namespace

ControlOutcome control_step(RateState& rs, const RateControlParams& params,
                            int queue_occupancy) {
  ControlOutcome out;
  if (rs.sched_rate_.units() <= 0) {
    out.skipped = true;  // quiesced node, nothing to control
    return out;
  }

  out.ratio = ratio_fx(rs.service_rate_, rs.sched_rate_);
  rs.last_ratio_ = out.ratio;
  out.triggered = out.ratio < params.ratio_threshold ||
                  queue_occupancy > params.queue_threshold;

  const auto old_rates = [&] {
    std::vector<RateFx> v;
    v.reserve(rs.allocs_.size());
    for (const auto& a : rs.allocs_) v.push_back(a.rate);
    return v;
  }();

  bool any_parent_reduced = false;
  for (auto& a : rs.allocs_) {
    const bool parent_congested =
        a.observed && observation_congested(a.last_observation, params);
    a.observed = false;
    if (!out.triggered && !parent_congested) continue;

    // Own trigger and a congested-parent observation may stack within one
    // cycle; the floor bounds the combined reduction either way.
    RateFx rate = a.rate;
    if (out.triggered) rate = mul_round(rate, params.reduction_factor);
    if (parent_congested) rate = mul_round(rate, params.reduction_factor);
    const RateFx floor = params.cap_mode == RateCapMode::kCumulative
                             ? a.floor
                             : mul_ceil(a.rate, params.floor_factor);
    a.rate = std::max(rate, floor);
    if (parent_congested) {
      any_parent_reduced = true;
      ++out.parents_reduced;
    }
  }

  if (!out.triggered && !any_parent_reduced && params.recovery_enabled) {
    for (auto& a : rs.allocs_) {
      a.rate = std::min(mul_round(a.rate, params.recovery_factor), a.initial);
    }
  }

  rs.rederive_sum();
  for (std::size_t i = 0; i < rs.allocs_.size(); ++i) {
    if (rs.allocs_[i].rate != old_rates[i]) {
      out.notifications.push_back({rs.allocs_[i].parent, rs.allocs_[i].rate});
    }
  }
  return out;
}

std::array<RateFx, kOriginatingClasses> originating_rate(
    const RateState& rs, FactorQ16 origination_share,
    std::span<const double> class_weights) {
  std::array<RateFx, kOriginatingClasses> out{};
  const RateFx total = mul_round(rs.sched_rate(), origination_share);
  double weight_sum = 0;
  for (double w : class_weights) weight_sum += w;
  if (weight_sum <= 0 || total.units() <= 0) return out;
  for (std::size_t c = 0; c < out.size() && c < class_weights.size(); ++c) {
    out[c] = RateFx::from_units(static_cast<std::int64_t>(
        std::llround(static_cast<double>(total.units()) * class_weights[c] /
                     weight_sum)));
  }
  return out;
}

}  // namespace wsnsim
