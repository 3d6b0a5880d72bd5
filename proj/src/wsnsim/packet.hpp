#ifndef WSNSIM_PACKET_HPP
#define WSNSIM_PACKET_HPP

#include <array>
#include <cstdint>
#include <span>

#include "wsnsim/fixed.hpp"

namespace wsnsim {

inline constexpr std::size_t kHeaderBytes = 12;
inline constexpr std::size_t kPacketBytes = 30;
inline constexpr std::size_t kPayloadBytes = kPacketBytes - kHeaderBytes;

// Control fields every node stamps into the headers it transmits: its queue
// length and its current scheduling / service rates. Rates cross the wire as
// one byte each at 2 pkt/s granularity.
struct PiggybackFields {
  int queue_length = 0;   // packets enqueued at the last-hop node
  RateFx sched_rate;      // pkt/s
  RateFx service_rate;    // pkt/s

  friend bool operator==(const PiggybackFields&,
                         const PiggybackFields&) = default;
};

struct PacketHeader {
  int priority_number = 0;       // 0 is highest
  int source_address = 0;        // originating node id
  std::uint32_t sequence = 0;    // per-source counter, wraps at 2^16
  std::int64_t absolute_deadline_ms = 0;
  PiggybackFields piggyback;

  friend bool operator==(const PacketHeader&, const PacketHeader&) = default;
};

struct Packet {
  PacketHeader header;
  int payload_size = static_cast<int>(kPayloadBytes);
  std::int64_t created_at_ms = 0;
  bool is_transit_at_current_hop = false;
};

// Wire layout, big-endian, 12 bytes total:
//   [0]    priority_number
//   [1:2]  source_address
//   [3:4]  sequence
//   [5:8]  absolute deadline, unsigned ms
//   [9]    queue_length
//   [10]   sched_rate   (byte * 2 pkt/s, truncating, saturates at 510)
//   [11]   service_rate (same encoding)
// Throws FieldOutOfRange when a field exceeds its encoded range.
std::array<std::uint8_t, kHeaderBytes> encode_header(const PacketHeader& h);

// Total inverse: every 12-byte pattern decodes (semantic checks belong to
// the queueing classifier). Throws TruncatedHeader on wrong length.
PacketHeader decode_header(std::span<const std::uint8_t> bytes);

}  // namespace wsnsim

#endif  // WSNSIM_PACKET_HPP
