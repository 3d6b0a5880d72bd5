#include "wsnsim/scheduler.hpp"

#include <algorithm>
#include <climits>
#include <limits>
#include <unordered_map>

#include "wsnsim/errors.hpp"

namespace wsnsim {

UtilizationResult utilization(std::span<const TaskParams> tasks) {
  UtilizationResult r;
  for (const auto& t : tasks) r.u += t.worst_case_ms / t.period_ms;
  r.schedulable = r.u <= 1.0;
  return r;
}

EdfResult edf_schedule(std::span<const Job> jobs) {
  EdfResult result;
  if (jobs.empty()) return result;

  const std::size_t n = jobs.size();
  std::vector<std::int64_t> remaining(n), completion(n, 0);
  for (std::size_t i = 0; i < n; ++i) remaining[i] = jobs[i].computation_ms;

  std::int64_t t = jobs[0].arrival_ms;
  for (const auto& j : jobs) t = std::min(t, j.arrival_ms);

  std::size_t unfinished = n;
  while (unfinished > 0) {
    // Ready job with the earliest absolute deadline, ties by id.
    std::ptrdiff_t pick = -1;
    std::int64_t next_arrival = std::numeric_limits<std::int64_t>::max();
    for (std::size_t i = 0; i < n; ++i) {
      if (remaining[i] == 0) continue;
      if (jobs[i].arrival_ms > t) {
        next_arrival = std::min(next_arrival, jobs[i].arrival_ms);
        continue;
      }
      if (pick < 0 ||
          jobs[i].deadline_ms < jobs[static_cast<std::size_t>(pick)].deadline_ms ||
          (jobs[i].deadline_ms ==
               jobs[static_cast<std::size_t>(pick)].deadline_ms &&
           jobs[i].id < jobs[static_cast<std::size_t>(pick)].id)) {
        pick = static_cast<std::ptrdiff_t>(i);
      }
    }
    if (pick < 0) {
      t = next_arrival;  // idle until the next arrival
      continue;
    }
    const auto i = static_cast<std::size_t>(pick);
    result.slices.push_back({t, jobs[i].id});
    ++t;
    if (--remaining[i] == 0) {
      completion[i] = t;
      --unfinished;
    }
  }

  result.max_lateness_ms = std::numeric_limits<std::int64_t>::min();
  for (std::size_t i = 0; i < n; ++i) {
    result.max_lateness_ms =
        std::max(result.max_lateness_ms, completion[i] - jobs[i].deadline_ms);
  }
  return result;
}

namespace {

constexpr std::int64_t kNoLateness = std::numeric_limits<std::int64_t>::min();

struct BruteForceSearch {
  std::vector<Job> jobs;
  std::unordered_map<std::uint64_t, std::int64_t> memo;

  std::uint64_t key(std::int64_t t, const std::vector<std::int64_t>& rem) const {
    std::uint64_t k = static_cast<std::uint64_t>(t);
    for (auto r : rem) k = (k << 5) | static_cast<std::uint64_t>(r);
    return k;
  }

  // Minimum achievable max lateness for the unfinished work at time t.
  // Explores every active unit-slice schedule (idling while a job is ready
  // can only delay completions, so active schedules suffice).
  std::int64_t search(std::int64_t t, std::vector<std::int64_t>& rem) {
    std::int64_t next_arrival = std::numeric_limits<std::int64_t>::max();
    bool any_left = false, any_ready = false;
    for (std::size_t i = 0; i < jobs.size(); ++i) {
      if (rem[i] == 0) continue;
      any_left = true;
      if (jobs[i].arrival_ms <= t) {
        any_ready = true;
      } else {
        next_arrival = std::min(next_arrival, jobs[i].arrival_ms);
      }
    }
    if (!any_left) return kNoLateness;
    if (!any_ready) return search(next_arrival, rem);

    const auto k = key(t, rem);
    if (auto it = memo.find(k); it != memo.end()) return it->second;

    std::int64_t best = std::numeric_limits<std::int64_t>::max();
    for (std::size_t i = 0; i < jobs.size(); ++i) {
      if (rem[i] == 0 || jobs[i].arrival_ms > t) continue;
      --rem[i];
      const std::int64_t late =
          rem[i] == 0 ? (t + 1 - jobs[i].deadline_ms) : kNoLateness;
      const std::int64_t sub = search(t + 1, rem);
      ++rem[i];
      best = std::min(best, std::max(late, sub));
    }
    memo.emplace(k, best);
    return best;
  }
};

}  // namespace

std::int64_t brute_force_min_lateness(std::span<const Job> jobs) {
  if (jobs.empty()) return 0;
  if (jobs.size() > 6) {
    throw Error(ErrorCode::InstanceTooLarge, "brute force limited to 6 jobs");
  }
  std::int64_t total = 0;
  std::int64_t min_arrival = jobs[0].arrival_ms;
  for (const auto& j : jobs) {
    total += j.computation_ms;
    min_arrival = std::min(min_arrival, j.arrival_ms);
  }
  if (total > 24) {
    throw Error(ErrorCode::InstanceTooLarge,
                "brute force limited to 24 total computation slices");
  }

  // Shift times so t starts at 0; lateness is shift-invariant.
  BruteForceSearch bf;
  bf.jobs.assign(jobs.begin(), jobs.end());
  for (auto& j : bf.jobs) {
    j.arrival_ms -= min_arrival;
    j.deadline_ms -= min_arrival;
  }
  std::vector<std::int64_t> rem(bf.jobs.size());
  for (std::size_t i = 0; i < bf.jobs.size(); ++i) {
    rem[i] = bf.jobs[i].computation_ms;
  }
  return bf.search(0, rem);
}

void DispatchState::set_rate(RateFx rate) {
  rate_ = rate;
  const std::int64_t num = std::int64_t{1000} << (2 * kShift);
  interval_fx_ = rate.units() > 0 ? (num + rate.units() / 2) / rate.units() : 0;
}

std::optional<Packet> DispatchState::next_dispatch(QueueSet& queues,
                                                   std::int64_t now_ms) {
  if (rate_.units() <= 0) return std::nullopt;
  const std::int64_t now_fx = now_ms << kShift;
  if (now_fx < next_release_fx_) return std::nullopt;
  if (queues.empty()) return std::nullopt;  // no credit banking while idle

  auto packet = queues.dequeue_next();
  if (next_release_fx_ < now_fx) next_release_fx_ = now_fx;
  next_release_fx_ += interval_fx_;
  ++served_;
  busy_ms_ += interval_fx_ >> kShift;  // nominal per-packet service time
  return packet;
}

std::int64_t DispatchState::next_release_ms() const {
  return (next_release_fx_ + ((std::int64_t{1} << kShift) - 1)) >> kShift;
}

}  // namespace wsnsim
