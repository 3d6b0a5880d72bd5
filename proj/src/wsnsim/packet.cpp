#include "wsnsim/packet.hpp"

#include <string>

#include "wsnsim/errors.hpp"

namespace wsnsim {

namespace {

// One wire unit is 2 pkt/s == 512 rate-fx units.
constexpr std::int64_t kRateWireUnit = 2 * RateFx::kOne;

void require(bool ok, const std::string& field) {
  if (!ok) {
    throw Error(ErrorCode::FieldOutOfRange,
                "header field out of range: " + field);
  }
}

std::uint8_t encode_rate(RateFx rate, const char* field) {
  require(rate.units() >= 0, field);
  const std::int64_t wire = rate.units() / kRateWireUnit;  // truncate
  return wire > 255 ? std::uint8_t{255} : static_cast<std::uint8_t>(wire);
}

}  // namespace

std::array<std::uint8_t, kHeaderBytes> encode_header(const PacketHeader& h) {
  require(h.priority_number >= 0 && h.priority_number <= 255,
          "priority_number");
  require(h.source_address >= 0 && h.source_address <= 0xffff,
          "source_address");
  require(h.sequence <= 0xffff, "sequence");
  require(h.absolute_deadline_ms >= 0 && h.absolute_deadline_ms <= 0xffffffffLL,
          "absolute_deadline");
  require(h.piggyback.queue_length >= 0 && h.piggyback.queue_length <= 255,
          "queue_length");

  std::array<std::uint8_t, kHeaderBytes> b{};
  b[0] = static_cast<std::uint8_t>(h.priority_number);
  b[1] = static_cast<std::uint8_t>(h.source_address >> 8);
  b[2] = static_cast<std::uint8_t>(h.source_address & 0xff);
  b[3] = static_cast<std::uint8_t>(h.sequence >> 8);
  b[4] = static_cast<std::uint8_t>(h.sequence & 0xff);
  const auto dl = static_cast<std::uint32_t>(h.absolute_deadline_ms);
  b[5] = static_cast<std::uint8_t>(dl >> 24);
  b[6] = static_cast<std::uint8_t>(dl >> 16);
  b[7] = static_cast<std::uint8_t>(dl >> 8);
  b[8] = static_cast<std::uint8_t>(dl & 0xff);
  b[9] = static_cast<std::uint8_t>(h.piggyback.queue_length);
  b[10] = encode_rate(h.piggyback.sched_rate, "sched_rate");
  b[11] = encode_rate(h.piggyback.service_rate, "service_rate");
  return b;
}

PacketHeader decode_header(std::span<const std::uint8_t> b) {
  if (b.size() != kHeaderBytes) {
    throw Error(ErrorCode::TruncatedHeader,
                "header must be 12 bytes, got " + std::to_string(b.size()));
  }
  PacketHeader h;
  h.priority_number = b[0];
  h.source_address = (b[1] << 8) | b[2];
  h.sequence = static_cast<std::uint32_t>((b[3] << 8) | b[4]);
  h.absolute_deadline_ms =
      (static_cast<std::int64_t>(b[5]) << 24) |
      (static_cast<std::int64_t>(b[6]) << 16) |
      (static_cast<std::int64_t>(b[7]) << 8) | static_cast<std::int64_t>(b[8]);
  h.piggyback.queue_length = b[9];
  h.piggyback.sched_rate = RateFx::from_units(b[10] * kRateWireUnit);
  h.piggyback.service_rate = RateFx::from_units(b[11] * kRateWireUnit);
  return h;
}

}  // namespace wsnsim
