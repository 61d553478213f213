#ifndef SUPERFLOW_CSV_HPP
#define SUPERFLOW_CSV_HPP

#include <string>
#include <string_view>

#include "superflow/flow_record.hpp"

namespace superflow {

// Text schema, one flow per line, exact column order:
//   srcip,dstip,srcport,dstport,proto,tcpflags,tstart_ms,tend_ms,bytes,packets
// An optional header line is detected by a non-numeric first field.

inline constexpr std::string_view kCsvHeader =
    "srcip,dstip,srcport,dstport,proto,tcpflags,tstart_ms,tend_ms,bytes,packets";

/// Parses one data line. Whitespace around fields is tolerated. Throws
/// ParseError naming the offending column and `line_no`.
FlowRecord parse_flow_csv(std::string_view line, std::size_t line_no = 1);

/// Canonical form: no spaces, dotted-quad IPs, decimal integers.
std::string to_csv_line(const FlowRecord& f);

/// True if `line` looks like the schema header rather than data.
bool is_csv_header(std::string_view line);

} // namespace superflow

#endif // SUPERFLOW_CSV_HPP
