#ifndef WSNSIM_SCHEDULER_HPP
#define WSNSIM_SCHEDULER_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "wsnsim/fixed.hpp"
#include "wsnsim/queueing.hpp"

namespace wsnsim {

struct TaskParams {
  double worst_case_ms = 0;  // C_i
  double period_ms = 0;      // T_i
};

struct UtilizationResult {
  double u = 0.0;
  bool schedulable = true;  // u <= 1
};

// U = sum of C_i / T_i.
UtilizationResult utilization(std::span<const TaskParams> tasks);

struct Job {
  std::int64_t arrival_ms = 0;
  std::int64_t computation_ms = 0;
  std::int64_t deadline_ms = 0;  // absolute
  int id = 0;
};

struct ScheduleSlice {
  std::int64_t start_ms = 0;  // slice [start, start+1)
  int job_id = 0;
};

struct EdfResult {
  std::vector<ScheduleSlice> slices;
  std::int64_t max_lateness_ms = 0;  // signed: completion - deadline
};

// Preemptive unit-slice EDF: at each integer instant the ready job with the
// earliest absolute deadline runs (ties by job id).
EdfResult edf_schedule(std::span<const Job> jobs);

// Exhaustive minimum of the maximum lateness over all unit-slice schedules.
// Test oracle for EDF optimality; limited to <= 6 jobs and <= 24 total
// computation slices (InstanceTooLarge beyond that).
std::int64_t brute_force_min_lateness(std::span<const Job> jobs);

// Paces packet dispatch at the configured scheduling rate. Release times are
// kept in 1/256 ms ticks so fractional rates do not drift on the integer
// event clock. Idle release instants do not bank credits: a dispatch after
// an idle gap restarts the spacing from "now".
class DispatchState {
 public:
  explicit DispatchState(RateFx rate) { set_rate(rate); }

  void set_rate(RateFx rate);
  RateFx rate() const { return rate_; }

  // Dequeues the EDF-selected packet when `now_ms` has reached the next
  // release instant and a packet is waiting; otherwise returns nullopt and
  // leaves the release time unchanged.
  std::optional<Packet> next_dispatch(QueueSet& queues, std::int64_t now_ms);

  // Earliest integer millisecond at which a dispatch may fire.
  std::int64_t next_release_ms() const;

  std::uint64_t served_count() const { return served_; }
  std::int64_t busy_time_ms() const { return busy_ms_; }

 private:
  static constexpr int kShift = 8;  // time fx = ms << kShift

  RateFx rate_;
  std::int64_t interval_fx_ = 0;
  std::int64_t next_release_fx_ = 0;
  std::uint64_t served_ = 0;
  std::int64_t busy_ms_ = 0;
};

}  // namespace wsnsim

#endif  // WSNSIM_SCHEDULER_HPP
