#include "superflow/records.hpp"

#include <limits>

#include "superflow/errors.hpp"

namespace superflow {

namespace {

void put16(std::vector<uint8_t>& out, uint16_t v) {
    out.push_back(static_cast<uint8_t>(v >> 8));
    out.push_back(static_cast<uint8_t>(v));
}

void put32(std::vector<uint8_t>& out, uint32_t v) {
    out.push_back(static_cast<uint8_t>(v >> 24));
    out.push_back(static_cast<uint8_t>(v >> 16));
    out.push_back(static_cast<uint8_t>(v >> 8));
    out.push_back(static_cast<uint8_t>(v));
}

template <typename T>
T saturate(uint64_t v) {
    constexpr uint64_t max = std::numeric_limits<T>::max();
    return static_cast<T>(v > max ? max : v);
}

void append_scan_base(std::vector<uint8_t>& out, const ScanSummary& s,
                      uint8_t kind) {
    put32(out, s.src_ip);
    put32(out, s.prefix);
    put32(out, saturate<uint32_t>(s.t_start_ms / 1000));
    put32(out, saturate<uint32_t>(s.t_end_ms / 1000));
    put32(out, saturate<uint32_t>(s.total_bytes));
    put32(out, saturate<uint32_t>(s.total_packets));
    out.push_back(s.tcp_flags);
    out.push_back(kind);
    put16(out, s.hit_count);
    put32(out, 0);  // reserved
}

} // namespace

void bitmap_set(std::array<uint8_t, 32>& bitmap, uint8_t address) {
    bitmap[address >> 3] |= static_cast<uint8_t>(0x80 >> (address & 7));
}

bool bitmap_get(const std::array<uint8_t, 32>& bitmap, uint8_t address) {
    return bitmap[address >> 3] & (0x80 >> (address & 7));
}

unsigned bitmap_popcount(const std::array<uint8_t, 32>& bitmap) {
    unsigned n = 0;
    for (uint8_t b : bitmap) n += static_cast<unsigned>(__builtin_popcount(b));
    return n;
}

std::vector<uint8_t> encode_scan256(const ScanSummary& s) {
    if (s.hit_count != 256) {
        throw FormatError("full scan-256 record needs all 256 addresses, got " +
                          std::to_string(s.hit_count));
    }
    std::vector<uint8_t> out;
    out.reserve(32);
    append_scan_base(out, s, kScanRecordKindFull);
    return out;
}

std::vector<uint8_t> encode_allotted_scan256(const ScanSummary& s) {
    if (s.hit_count < 224 || s.hit_count > 256) {
        throw FormatError("allotted scan-256 record covers 224..256 addresses, got " +
                          std::to_string(s.hit_count));
    }
    std::vector<uint8_t> out;
    out.reserve(64);
    append_scan_base(out, s, kScanRecordKindAllotted);
    out.insert(out.end(), s.hit_bitmap.begin(), s.hit_bitmap.end());
    return out;
}

std::vector<uint8_t> encode_web_superflow(const WebSummary& s) {
    if (s.sites.empty()) {
        throw FormatError("web superflow record needs at least one site entry");
    }
    std::vector<uint8_t> out;
    out.reserve(16 + 16 * s.sites.size());
    put32(out, s.client_ip);
    put32(out, saturate<uint32_t>(s.t_start_ms / 1000));
    put16(out, saturate<uint16_t>((s.t_end_ms - s.t_start_ms) / 1000));
    put16(out, saturate<uint16_t>(s.sites.size()));
    out.push_back(0);  // flags
    out.push_back(0);
    out.push_back(0);
    out.push_back(0);
    for (const auto& e : s.sites) {
        put32(out, e.dst_ip);
        out.push_back(e.service_code);
        out.push_back(saturate<uint8_t>(e.flow_count));
        put32(out, saturate<uint32_t>(e.total_bytes));
        put16(out, saturate<uint16_t>(e.total_packets));
        uint64_t offset_s =
            e.first_seen_ms >= s.t_start_ms ? (e.first_seen_ms - s.t_start_ms) / 1000 : 0;
        put32(out, saturate<uint32_t>(offset_s));
    }
    return out;
}

} // namespace superflow
