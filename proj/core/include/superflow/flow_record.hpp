#ifndef SUPERFLOW_FLOW_RECORD_HPP
#define SUPERFLOW_FLOW_RECORD_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace superflow {

/// One unidirectional flow summary. This is the unit everything else
/// aggregates. Timestamps are milliseconds since the Unix epoch; IPs are
/// host-order IPv4.
struct FlowRecord {
    uint32_t src_ip = 0;
    uint32_t dst_ip = 0;
    uint16_t src_port = 0;   // 0 when the protocol has no port concept (ICMP)
    uint16_t dst_port = 0;
    uint8_t protocol = 0;    // IANA number; 6=TCP, 17=UDP, 1=ICMP
    uint8_t tcp_flags = 0;   // initial-packet flags; ACK is bit 4 (0x10)
    uint64_t t_start_ms = 0;
    uint64_t t_end_ms = 0;   // >= t_start_ms
    uint64_t byte_count = 0; // >= packet_count
    uint64_t packet_count = 0;

    friend bool operator==(const FlowRecord&, const FlowRecord&) = default;
};

/// Flow attributes addressable from hypotheses. The registry is fixed.
enum class AttrId : uint8_t {
    SrcIp,
    DstIp,
    SrcPort,
    DstPort,
    Proto,
    TcpFlags,
    TStart,
    TEnd,
    Bytes,
    Packets,
};

/// Uniform numeric view of an attribute (IPs widen to 64 bits).
uint64_t attr_value(const FlowRecord& f, AttrId attr);

std::string_view attr_name(AttrId attr);
std::optional<AttrId> attr_from_name(std::string_view name);

inline bool attr_is_ip(AttrId a) { return a == AttrId::SrcIp || a == AttrId::DstIp; }
inline bool attr_is_time(AttrId a) { return a == AttrId::TStart || a == AttrId::TEnd; }

} // namespace superflow

#endif // SUPERFLOW_FLOW_RECORD_HPP
