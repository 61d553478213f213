#ifndef SUPERFLOW_FOOTPRINT_HPP
#define SUPERFLOW_FOOTPRINT_HPP

#include <cstdint>
#include <map>
#include <span>
#include <string>

#include "superflow/decompose.hpp"
#include "superflow/flow_record.hpp"

namespace superflow {

// Byte-exact size accounting. All figures derive from the fixed size model;
// nothing here measures real files.

struct SizeModel {
    static constexpr std::size_t netflow_v5_record = 48;  // accounting only
    static constexpr std::size_t compact_record = 32;
    static constexpr std::size_t web_header = 16;
    static constexpr std::size_t web_site_entry = 16;
    static constexpr std::size_t scan256_record = 32;
    static constexpr std::size_t allotted_scan256_record = 64;
};

enum class AccountingMode : uint8_t {
    PerFlow,         // 32 bytes per flow
    PerDestination,  // 32 bytes per distinct destination address
};

std::string_view accounting_mode_name(AccountingMode mode);

/// 16 + 16 * dcount. Throws SpecError when dcount == 0.
std::size_t web_superflow_size(std::size_t dcount);

std::size_t flow_footprint(std::span<const FlowRecord> flows,
                           AccountingMode mode);

/// On-disk size of one superflow record: scan with all 256 addresses -> 32,
/// scan with fewer -> 64 (base + hit bitmap), web -> 16 + 16 * dcount,
/// chat/generic -> one 32-byte summary slot.
std::size_t superflow_record_size(const Superflow& sf);

struct FootprintReport {
    std::size_t original_bytes = 0;
    std::size_t superflow_bytes = 0;
    std::size_t residual_bytes = 0;
    std::size_t total_after = 0;
    double reduction_fraction = 0.0;  // 1 - total_after / original
    AccountingMode mode = AccountingMode::PerFlow;
    std::size_t superflow_count = 0;
    std::size_t rest_flow_count = 0;
    /// hypothesis_id -> (superflow count, record bytes)
    std::map<std::string, std::pair<std::size_t, std::size_t>> per_hypothesis;
};

/// `d` must have been produced from `flows`.
FootprintReport footprint_report(const Decomposition& d,
                                 std::span<const FlowRecord> flows,
                                 AccountingMode mode);

/// Machine-readable key=value lines; reduction printed with 4 decimals.
std::string format_report_kv(const FootprintReport& r);

/// Human-readable table.
std::string format_report_table(const FootprintReport& r);

} // namespace superflow

#endif // SUPERFLOW_FOOTPRINT_HPP
