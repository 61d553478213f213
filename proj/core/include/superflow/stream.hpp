#ifndef SUPERFLOW_STREAM_HPP
#define SUPERFLOW_STREAM_HPP

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "superflow/flow_record.hpp"

namespace superflow {

enum class StreamFormat { Csv, Compact };

/// Incremental reader over a CSV or compact-binary flow stream. Buffering is
/// bounded (one line / one record). The first malformed record aborts with
/// position info (line number for CSV, byte offset for compact).
class FlowReader {
public:
    FlowReader(std::istream& in, StreamFormat format);

    /// Next record in file order, or nullopt at end of stream.
    std::optional<FlowRecord> next();

    std::size_t records_read() const { return records_read_; }

private:
    std::istream& in_;
    StreamFormat format_;
    std::size_t line_no_ = 0;
    std::size_t byte_offset_ = 0;
    std::size_t records_read_ = 0;
    bool header_checked_ = false;
};

std::vector<FlowRecord> read_flow_stream(std::istream& in, StreamFormat format);

void write_flow_stream(std::ostream& out, std::span<const FlowRecord> flows,
                       StreamFormat format);

} // namespace superflow

#endif // SUPERFLOW_STREAM_HPP
