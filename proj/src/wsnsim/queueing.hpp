#ifndef WSNSIM_QUEUEING_HPP
#define WSNSIM_QUEUEING_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "wsnsim/packet.hpp"
#include "wsnsim/topology.hpp"

namespace wsnsim {

// The five per-node queues in strict rank order: transit traffic outranks
// originating traffic, and lower class index outranks higher within each
// group.
enum class TrafficClass : std::uint8_t { T0 = 0, T1, T2, O0, O1 };

inline constexpr int kQueueCount = 5;
inline constexpr int kTransitClasses = 3;
inline constexpr int kOriginatingClasses = 2;

// Transit when the source address differs from the local node, originating
// otherwise. Throws InvalidPriority when the priority number is outside the
// class range for its traffic type.
TrafficClass classify(const PacketHeader& header, NodeId at_node);

struct QueuedPacket {
  Packet packet;
  std::uint64_t arrival_stamp = 0;
};

// Shared buffer pool across all five queues; dequeue order is inter-queue
// rank first, then EDF (earliest absolute deadline, ties by arrival stamp,
// then by source/sequence) within the selected queue.
class QueueSet {
 public:
  explicit QueueSet(int capacity) : capacity_(capacity) {}

  // Tail-drops at full capacity regardless of priority; a drop is a counted
  // outcome, not an error.
  bool enqueue(const Packet& packet, TrafficClass cls);

  const QueuedPacket* peek_next() const;
  std::optional<Packet> dequeue_next();

  int occupancy() const { return occupancy_; }
  int capacity() const { return capacity_; }
  bool empty() const { return occupancy_ == 0; }
  std::uint64_t drop_count() const { return drop_count_; }
  std::uint64_t enqueue_attempts() const { return enqueue_attempts_; }

 private:
  std::vector<QueuedPacket> queues_[kQueueCount];
  int capacity_;
  int occupancy_ = 0;
  std::uint64_t drop_count_ = 0;
  std::uint64_t enqueue_attempts_ = 0;
  std::uint64_t next_stamp_ = 0;
};

}  // namespace wsnsim

#endif  // WSNSIM_QUEUEING_HPP
