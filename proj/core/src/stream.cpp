#include "superflow/stream.hpp"

#include <istream>
#include <ostream>
#include <string>

#include "superflow/compact.hpp"
#include "superflow/csv.hpp"
#include "superflow/errors.hpp"

namespace superflow {

FlowReader::FlowReader(std::istream& in, StreamFormat format)
    : in_(in), format_(format) {}

std::optional<FlowRecord> FlowReader::next() {
    if (format_ == StreamFormat::Csv) {
        std::string line;
        while (std::getline(in_, line)) {
            ++line_no_;
            bool blank = line.find_first_not_of(" \t\r") == std::string::npos;
            if (blank) continue;
            if (!header_checked_) {
                header_checked_ = true;
                if (is_csv_header(line)) continue;
            }
            FlowRecord r = parse_flow_csv(line, line_no_);
            ++records_read_;
            return r;
        }
        return std::nullopt;
    }

    uint8_t buf[kCompactRecordSize];
    in_.read(reinterpret_cast<char*>(buf), kCompactRecordSize);
    std::streamsize got = in_.gcount();
    if (got == 0) return std::nullopt;
    if (got != static_cast<std::streamsize>(kCompactRecordSize)) {
        throw FormatError("truncated compact record at byte offset " +
                          std::to_string(byte_offset_) + " (" +
                          std::to_string(got) + " of 32 bytes)");
    }
    byte_offset_ += kCompactRecordSize;
    ++records_read_;
    return decode_compact(std::span<const uint8_t>(buf, kCompactRecordSize));
}

std::vector<FlowRecord> read_flow_stream(std::istream& in, StreamFormat format) {
    FlowReader reader(in, format);
    std::vector<FlowRecord> flows;
    while (auto r = reader.next()) flows.push_back(*r);
    return flows;
}

void write_flow_stream(std::ostream& out, std::span<const FlowRecord> flows,
                       StreamFormat format) {
    if (format == StreamFormat::Csv) {
        for (const auto& f : flows) out << to_csv_line(f) << '\n';
        return;
    }
    for (const auto& f : flows) {
        auto bytes = encode_compact(f);
        out.write(reinterpret_cast<const char*>(bytes.data()),
                  static_cast<std::streamsize>(bytes.size()));
    }
}

} // namespace superflow
