#include "wsnsim/queueing.hpp"

#include <string>
#include <tuple>

#include "wsnsim/errors.hpp"

namespace wsnsim {

TrafficClass classify(const PacketHeader& header, NodeId at_node) {
  const int prio = header.priority_number;
  if (header.source_address != at_node) {
    if (prio < 0 || prio >= kTransitClasses) {
      throw Error(ErrorCode::InvalidPriority,
                  "transit priority " + std::to_string(prio) +
                      " outside classes 0..2");
    }
    return static_cast<TrafficClass>(static_cast<int>(TrafficClass::T0) +
                                     prio);
  }
  if (prio < 0 || prio >= kOriginatingClasses) {
    throw Error(ErrorCode::InvalidPriority,
                "originating priority " + std::to_string(prio) +
                    " outside classes 0..1");
  }
  return static_cast<TrafficClass>(static_cast<int>(TrafficClass::O0) + prio);
}

bool QueueSet::enqueue(const Packet& packet, TrafficClass cls) {
  ++enqueue_attempts_;
  if (occupancy_ >= capacity_) {
    ++drop_count_;
    return false;
  }
  QueuedPacket qp{packet, next_stamp_++};
  queues_[static_cast<int>(cls)].push_back(qp);
  ++occupancy_;
  return true;
}

namespace {

// EDF order key within a queue: deadline, then arrival stamp, then
// (source, sequence) for a total order.
auto edf_key(const QueuedPacket& qp) {
  return std::make_tuple(qp.packet.header.absolute_deadline_ms,
                         qp.arrival_stamp, qp.packet.header.source_address,
                         qp.packet.header.sequence);
}

}  // namespace

const QueuedPacket* QueueSet::peek_next() const {
  for (const auto& queue : queues_) {
    if (queue.empty()) continue;
    const QueuedPacket* best = &queue.front();
    for (const auto& qp : queue) {
      if (edf_key(qp) < edf_key(*best)) best = &qp;
    }
    return best;
  }
  return nullptr;
}

std::optional<Packet> QueueSet::dequeue_next() {
  for (auto& queue : queues_) {
    if (queue.empty()) continue;
    std::size_t best = 0;
    for (std::size_t i = 1; i < queue.size(); ++i) {
      if (edf_key(queue[i]) < edf_key(queue[best])) best = i;
    }
    Packet out = queue[best].packet;
    queue.erase(queue.begin() + static_cast<std::ptrdiff_t>(best));
    --occupancy_;
    return out;
  }
  return std::nullopt;
}

}  // namespace wsnsim
