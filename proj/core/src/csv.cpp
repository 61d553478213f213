#include "superflow/csv.hpp"

#include <array>
#include <charconv>
#include <limits>

#include "superflow/errors.hpp"
#include "superflow/ip.hpp"

namespace superflow {

namespace {

constexpr std::array<std::string_view, 10> kColumns = {
    "srcip",     "dstip",   "srcport", "dstport", "proto",
    "tcpflags",  "tstart_ms", "tend_ms", "bytes",   "packets"};

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

[[noreturn]] void fail(std::size_t line_no, std::size_t column,
                       const std::string& what) {
    throw ParseError("column " + std::to_string(column) + " (" +
                         std::string(kColumns[column - 1]) + "): " + what,
                     line_no, column);
}

uint64_t parse_uint(std::string_view field, uint64_t max, std::size_t line_no,
                    std::size_t column) {
    uint64_t value = 0;
    auto [ptr, ec] =
        std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc{} || ptr != field.data() + field.size()) {
        fail(line_no, column, "expected a number, got '" + std::string(field) + "'");
    }
    if (value > max) {
        fail(line_no, column, "value " + std::to_string(value) + " out of range");
    }
    return value;
}

} // namespace

FlowRecord parse_flow_csv(std::string_view line, std::size_t line_no) {
    std::array<std::string_view, 10> fields;
    std::size_t count = 0;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= line.size(); ++i) {
        if (i == line.size() || line[i] == ',') {
            if (count == 10) {
                throw ParseError("expected 10 columns, got more", line_no, 11);
            }
            fields[count++] = trim(line.substr(start, i - start));
            start = i + 1;
        }
    }
    if (count != 10) {
        throw ParseError("expected 10 columns, got " + std::to_string(count),
                         line_no, count);
    }

    FlowRecord r;
    auto src = parse_ipv4(fields[0]);
    if (!src) fail(line_no, 1, "malformed IPv4 '" + std::string(fields[0]) + "'");
    r.src_ip = *src;
    auto dst = parse_ipv4(fields[1]);
    if (!dst) fail(line_no, 2, "malformed IPv4 '" + std::string(fields[1]) + "'");
    r.dst_ip = *dst;
    r.src_port = static_cast<uint16_t>(parse_uint(fields[2], 65535, line_no, 3));
    r.dst_port = static_cast<uint16_t>(parse_uint(fields[3], 65535, line_no, 4));
    r.protocol = static_cast<uint8_t>(parse_uint(fields[4], 255, line_no, 5));
    r.tcp_flags = static_cast<uint8_t>(parse_uint(fields[5], 255, line_no, 6));
    constexpr uint64_t kMax = std::numeric_limits<uint64_t>::max();
    r.t_start_ms = parse_uint(fields[6], kMax, line_no, 7);
    r.t_end_ms = parse_uint(fields[7], kMax, line_no, 8);
    r.byte_count = parse_uint(fields[8], kMax, line_no, 9);
    r.packet_count = parse_uint(fields[9], kMax, line_no, 10);

    if (r.t_end_ms < r.t_start_ms) {
        fail(line_no, 8, "t_end precedes t_start");
    }
    if (r.packet_count == 0) {
        fail(line_no, 10, "packet count must be at least 1");
    }
    if (r.byte_count < r.packet_count) {
        fail(line_no, 9, "byte count below packet count");
    }
    return r;
}

std::string to_csv_line(const FlowRecord& f) {
    std::string out;
    out.reserve(96);
    out += format_ipv4(f.src_ip);
    out += ',';
    out += format_ipv4(f.dst_ip);
    out += ',';
    out += std::to_string(f.src_port);
    out += ',';
    out += std::to_string(f.dst_port);
    out += ',';
    out += std::to_string(f.protocol);
    out += ',';
    out += std::to_string(f.tcp_flags);
    out += ',';
    out += std::to_string(f.t_start_ms);
    out += ',';
    out += std::to_string(f.t_end_ms);
    out += ',';
    out += std::to_string(f.byte_count);
    out += ',';
    out += std::to_string(f.packet_count);
    return out;
}

bool is_csv_header(std::string_view line) {
    auto comma = line.find(',');
    std::string_view first = trim(comma == std::string_view::npos
                                      ? line
                                      : line.substr(0, comma));
    if (first.empty()) return false;
    return first.find_first_not_of("0123456789.") != std::string_view::npos;
}

} // namespace superflow
