#include "superflow/footprint.hpp"

#include <cstdio>
#include <set>

#include "superflow/errors.hpp"
#include "superflow/records.hpp"

namespace superflow {

std::string_view accounting_mode_name(AccountingMode mode) {
    return mode == AccountingMode::PerFlow ? "per-flow" : "per-destination";
}

std::size_t web_superflow_size(std::size_t dcount) {
    if (dcount == 0) {
        throw SpecError("web superflow needs at least one destination");
    }
    return SizeModel::web_header + SizeModel::web_site_entry * dcount;
}

std::size_t flow_footprint(std::span<const FlowRecord> flows,
                           AccountingMode mode) {
    if (mode == AccountingMode::PerFlow) {
        return SizeModel::compact_record * flows.size();
    }
    std::set<uint32_t> dsts;
    for (const auto& f : flows) dsts.insert(f.dst_ip);
    return SizeModel::compact_record * dsts.size();
}

std::size_t superflow_record_size(const Superflow& sf) {
    struct Size {
        std::size_t operator()(const ScanSummary& s) const {
            // A full sweep needs no bitmap; anything partial carries one.
            return s.hit_count == 256 ? SizeModel::scan256_record
                                      : SizeModel::allotted_scan256_record;
        }
        std::size_t operator()(const WebSummary& s) const {
            return web_superflow_size(s.sites.size());
        }
        std::size_t operator()(const ChatSummary&) const {
            return SizeModel::compact_record;
        }
        std::size_t operator()(const GenericSummary&) const {
            return SizeModel::compact_record;
        }
    };
    return std::visit(Size{}, sf.summary);
}

FootprintReport footprint_report(const Decomposition& d,
                                 std::span<const FlowRecord> flows,
                                 AccountingMode mode) {
    FootprintReport r;
    r.mode = mode;
    r.original_bytes = flow_footprint(flows, mode);
    r.superflow_count = d.superflows.size();
    r.rest_flow_count = d.rest_indices.size();

    for (const auto& sf : d.superflows) {
        std::size_t bytes = superflow_record_size(sf);
        r.superflow_bytes += bytes;
        auto& [count, total] = r.per_hypothesis[sf.hypothesis_id];
        count += 1;
        total += bytes;
    }

    std::vector<FlowRecord> rest_flows;
    rest_flows.reserve(d.rest_indices.size());
    for (std::size_t i : d.rest_indices) rest_flows.push_back(flows[i]);
    r.residual_bytes = flow_footprint(rest_flows, mode);

    r.total_after = r.superflow_bytes + r.residual_bytes;
    r.reduction_fraction =
        r.original_bytes == 0
            ? 0.0
            : 1.0 - static_cast<double>(r.total_after) /
                        static_cast<double>(r.original_bytes);
    return r;
}

std::string format_report_kv(const FootprintReport& r) {
    char reduction[32];
    std::snprintf(reduction, sizeof reduction, "%.4f", r.reduction_fraction);
    std::string out;
    out += "original_bytes=" + std::to_string(r.original_bytes) + "\n";
    out += "superflow_bytes=" + std::to_string(r.superflow_bytes) + "\n";
    out += "residual_bytes=" + std::to_string(r.residual_bytes) + "\n";
    out += "total_after=" + std::to_string(r.total_after) + "\n";
    out += "reduction=" + std::string(reduction) + "\n";
    out += "mode=" + std::string(accounting_mode_name(r.mode)) + "\n";
    out += "superflows=" + std::to_string(r.superflow_count) + "\n";
    out += "rest_flows=" + std::to_string(r.rest_flow_count) + "\n";
    return out;
}

std::string format_report_table(const FootprintReport& r) {
    char buf[160];
    std::string out;
    out += "  footprint (" + std::string(accounting_mode_name(r.mode)) + ")\n";
    std::snprintf(buf, sizeof buf, "  %-18s %12zu B\n", "original", r.original_bytes);
    out += buf;
    std::snprintf(buf, sizeof buf, "  %-18s %12zu B  (%zu records)\n",
                  "superflows", r.superflow_bytes, r.superflow_count);
    out += buf;
    std::snprintf(buf, sizeof buf, "  %-18s %12zu B  (%zu flows)\n", "residual",
                  r.residual_bytes, r.rest_flow_count);
    out += buf;
    std::snprintf(buf, sizeof buf, "  %-18s %12zu B\n", "total after", r.total_after);
    out += buf;
    std::snprintf(buf, sizeof buf, "  %-18s %12.4f\n", "reduction",
                  r.reduction_fraction);
    out += buf;
    for (const auto& [id, entry] : r.per_hypothesis) {
        std::snprintf(buf, sizeof buf, "    %-16s %4zu superflows %10zu B\n",
                      id.c_str(), entry.first, entry.second);
        out += buf;
    }
    return out;
}

} // namespace superflow
