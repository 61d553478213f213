#ifndef SUPERFLOW_COMPACT_HPP
#define SUPERFLOW_COMPACT_HPP

#include <array>
#include <cstdint>
#include <span>

#include "superflow/flow_record.hpp"

namespace superflow {

// 32-byte fixed-layout record, all integers big-endian:
//   src_ip(4) dst_ip(4) src_port(2) dst_port(2) protocol(1) tcp_flags(1)
//   t_start_s(4) t_end_s(4) byte_count(4) packet_count(4) reserved(2, zero)
//
// Timestamps are truncated to seconds on the wire; byte/packet counts and
// second-granularity timestamps saturate at 32 bits.

inline constexpr std::size_t kCompactRecordSize = 32;

std::array<uint8_t, kCompactRecordSize> encode_compact(const FlowRecord& f);

/// Throws FormatError on wrong length or nonzero reserved bytes.
FlowRecord decode_compact(std::span<const uint8_t> bytes);

/// The lossy projection the wire format applies: seconds granularity on
/// timestamps, 32-bit saturation on counters. decode(encode(r)) ==
/// compact_truncate(r) for every record.
FlowRecord compact_truncate(const FlowRecord& f);

} // namespace superflow

#endif // SUPERFLOW_COMPACT_HPP
