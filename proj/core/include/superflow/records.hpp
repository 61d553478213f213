#ifndef SUPERFLOW_RECORDS_HPP
#define SUPERFLOW_RECORDS_HPP

#include <cstdint>
#include <vector>

#include "superflow/decompose.hpp"

namespace superflow {

// Binary superflow record layouts, big-endian, fixed offsets.
//
// scan-256 (32 bytes):
//   src_ip(4) prefix(4) t_start_s(4) t_end_s(4) bytes(4, sat) packets(4, sat)
//   flags(1) kind(1) hit_count(2) reserved(4)
// kind: 1 = full scan-256, 2 = allotted.
//
// allotted scan-256 (64 bytes): the 32-byte base with kind=2, then a 32-byte
// bitmap of the /24 (bit a set, MSB-first within each byte, = address .a
// probed).
//
// web (16 + 16*dcount bytes):
//   header: client_ip(4) t_start_s(4) duration_s(2, sat) dcount(2) flags(1)
//           reserved(3)
//   entry:  dst_ip(4) service_code(1) flow_count(1, sat) total_bytes(4, sat)
//           total_packets(2, sat) first_seen_offset_s(4)

inline constexpr uint8_t kScanRecordKindFull = 1;
inline constexpr uint8_t kScanRecordKindAllotted = 2;

/// Requires hit_count == 256 (a full sweep). Throws FormatError otherwise.
std::vector<uint8_t> encode_scan256(const ScanSummary& s);

/// Requires 224 <= hit_count <= 256. Throws FormatError otherwise.
std::vector<uint8_t> encode_allotted_scan256(const ScanSummary& s);

/// Throws FormatError when the summary has no site entries.
std::vector<uint8_t> encode_web_superflow(const WebSummary& s);

/// Bitmap helpers shared with the summary accumulators.
void bitmap_set(std::array<uint8_t, 32>& bitmap, uint8_t address);
bool bitmap_get(const std::array<uint8_t, 32>& bitmap, uint8_t address);
unsigned bitmap_popcount(const std::array<uint8_t, 32>& bitmap);

} // namespace superflow

#endif // SUPERFLOW_RECORDS_HPP
