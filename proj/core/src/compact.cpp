#include "superflow/compact.hpp"

#include <limits>

#include "superflow/errors.hpp"

namespace superflow {

namespace {

constexpr uint32_t kU32Max = std::numeric_limits<uint32_t>::max();

uint32_t saturate32(uint64_t v) {
    return v > kU32Max ? kU32Max : static_cast<uint32_t>(v);
}

void put16(uint8_t* p, uint16_t v) {
    p[0] = static_cast<uint8_t>(v >> 8);
    p[1] = static_cast<uint8_t>(v);
}

void put32(uint8_t* p, uint32_t v) {
    p[0] = static_cast<uint8_t>(v >> 24);
    p[1] = static_cast<uint8_t>(v >> 16);
    p[2] = static_cast<uint8_t>(v >> 8);
    p[3] = static_cast<uint8_t>(v);
}

uint16_t get16(const uint8_t* p) {
    return static_cast<uint16_t>(p[0] << 8 | p[1]);
}

uint32_t get32(const uint8_t* p) {
    return static_cast<uint32_t>(p[0]) << 24 | static_cast<uint32_t>(p[1]) << 16 |
           static_cast<uint32_t>(p[2]) << 8 | static_cast<uint32_t>(p[3]);
}

} // namespace

std::array<uint8_t, kCompactRecordSize> encode_compact(const FlowRecord& f) {
    std::array<uint8_t, kCompactRecordSize> out{};
    put32(&out[0], f.src_ip);
    put32(&out[4], f.dst_ip);
    put16(&out[8], f.src_port);
    put16(&out[10], f.dst_port);
    out[12] = f.protocol;
    out[13] = f.tcp_flags;
    put32(&out[14], saturate32(f.t_start_ms / 1000));
    put32(&out[18], saturate32(f.t_end_ms / 1000));
    put32(&out[22], saturate32(f.byte_count));
    put32(&out[26], saturate32(f.packet_count));
    // out[30..31] reserved, already zero
    return out;
}

FlowRecord decode_compact(std::span<const uint8_t> bytes) {
    if (bytes.size() != kCompactRecordSize) {
        throw FormatError("compact record must be 32 bytes, got " +
                          std::to_string(bytes.size()));
    }
    if (bytes[30] != 0 || bytes[31] != 0) {
        throw FormatError("compact record has nonzero reserved bytes");
    }
    FlowRecord r;
    r.src_ip = get32(&bytes[0]);
    r.dst_ip = get32(&bytes[4]);
    r.src_port = get16(&bytes[8]);
    r.dst_port = get16(&bytes[10]);
    r.protocol = bytes[12];
    r.tcp_flags = bytes[13];
    r.t_start_ms = uint64_t{get32(&bytes[14])} * 1000;
    r.t_end_ms = uint64_t{get32(&bytes[18])} * 1000;
    r.byte_count = get32(&bytes[22]);
    r.packet_count = get32(&bytes[26]);
    return r;
}

FlowRecord compact_truncate(const FlowRecord& f) {
    FlowRecord r = f;
    r.t_start_ms = uint64_t{saturate32(f.t_start_ms / 1000)} * 1000;
    r.t_end_ms = uint64_t{saturate32(f.t_end_ms / 1000)} * 1000;
    r.byte_count = saturate32(f.byte_count);
    r.packet_count = saturate32(f.packet_count);
    return r;
}

} // namespace superflow
