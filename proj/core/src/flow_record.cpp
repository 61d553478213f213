#include "superflow/flow_record.hpp"

namespace superflow {

uint64_t attr_value(const FlowRecord& f, AttrId attr) {
    switch (attr) {
        case AttrId::SrcIp: return f.src_ip;
        case AttrId::DstIp: return f.dst_ip;
        case AttrId::SrcPort: return f.src_port;
        case AttrId::DstPort: return f.dst_port;
        case AttrId::Proto: return f.protocol;
        case AttrId::TcpFlags: return f.tcp_flags;
        case AttrId::TStart: return f.t_start_ms;
        case AttrId::TEnd: return f.t_end_ms;
        case AttrId::Bytes: return f.byte_count;
        case AttrId::Packets: return f.packet_count;
    }
    return 0;
}

std::string_view attr_name(AttrId attr) {
    switch (attr) {
        case AttrId::SrcIp: return "srcip";
        case AttrId::DstIp: return "dstip";
        case AttrId::SrcPort: return "srcport";
        case AttrId::DstPort: return "dstport";
        case AttrId::Proto: return "proto";
        case AttrId::TcpFlags: return "tcpflags";
        case AttrId::TStart: return "tstart";
        case AttrId::TEnd: return "tend";
        case AttrId::Bytes: return "bytes";
        case AttrId::Packets: return "packets";
    }
    return "?";
}

std::optional<AttrId> attr_from_name(std::string_view name) {
    static constexpr std::pair<std::string_view, AttrId> kRegistry[] = {
        {"srcip", AttrId::SrcIp},     {"dstip", AttrId::DstIp},
        {"srcport", AttrId::SrcPort}, {"dstport", AttrId::DstPort},
        {"proto", AttrId::Proto},     {"tcpflags", AttrId::TcpFlags},
        {"tstart", AttrId::TStart},   {"tend", AttrId::TEnd},
        {"bytes", AttrId::Bytes},     {"packets", AttrId::Packets},
    };
    for (const auto& [n, id] : kRegistry) {
        if (n == name) return id;
    }
    return std::nullopt;
}

} // namespace superflow
