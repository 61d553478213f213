#ifndef SUPERFLOW_DECOMPOSE_HPP
#define SUPERFLOW_DECOMPOSE_HPP

#include <array>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "superflow/classify.hpp"
#include "superflow/flow_record.hpp"
#include "superflow/ip.hpp"

namespace superflow {

// Greedy single-pass maximal decomposition: every flow is offered to the open
// candidates; if none accepts and a fresh monitor would, it opens a new
// candidate; otherwise it goes to the residual set. At end of stream,
// qualified candidates become superflows and the others dissolve into rest.

enum class Policy : uint8_t {
    FirstMatch,  // first accepting candidate in creation order
    BestMatch,   // accepting candidate with most members, ties to oldest
};

/// Scan summary: one source probing one /24.
struct ScanSummary {
    uint32_t src_ip = 0;
    uint32_t prefix = 0;  // network address of the /24
    std::array<uint8_t, 32> hit_bitmap{};  // bit a (MSB-first) = .a probed
    uint16_t hit_count = 0;
    uint64_t t_start_ms = 0;
    uint64_t t_end_ms = 0;
    uint64_t total_bytes = 0;
    uint64_t total_packets = 0;
    uint8_t tcp_flags = 0;  // OR of member flags
};

struct WebSiteEntry {
    uint32_t dst_ip = 0;
    uint8_t service_code = 0;  // 0 other, 1 UDP/53, 2 UDP/443, 3 TCP/443,
                               // 4 TCP/80, 5 TCP/8080; first non-DNS service
                               // seen for the destination, DNS-only = 1
    uint32_t flow_count = 0;
    uint64_t total_bytes = 0;
    uint64_t total_packets = 0;
    uint64_t first_seen_ms = 0;
};

/// Web summary: one client, one table entry per distinct destination.
struct WebSummary {
    uint32_t client_ip = 0;
    uint64_t t_start_ms = 0;
    uint64_t t_end_ms = 0;
    std::vector<WebSiteEntry> sites;  // ordered by first appearance
};

/// Chat summary: one endpoint pair, both directions.
struct ChatSummary {
    uint32_t peer_a = 0;  // numerically smaller address
    uint32_t peer_b = 0;
    uint64_t flows_a_to_b = 0;
    uint64_t flows_b_to_a = 0;
    uint64_t total_bytes = 0;
    uint64_t total_packets = 0;
    uint64_t t_start_ms = 0;
    uint64_t t_end_ms = 0;
};

struct GenericSummary {
    uint64_t flow_count = 0;
    uint64_t total_bytes = 0;
    uint64_t total_packets = 0;
    uint64_t t_start_ms = 0;
    uint64_t t_end_ms = 0;
};

using SuperflowSummary =
    std::variant<GenericSummary, ScanSummary, WebSummary, ChatSummary>;

struct Superflow {
    std::string hypothesis_id;
    std::vector<std::size_t> member_indices;  // 0-based input positions,
                                              // strictly increasing
    SuperflowSummary summary;
};

struct Decomposition {
    std::vector<Superflow> superflows;
    std::vector<std::size_t> rest_indices;  // ascending
};

struct DecomposeOptions {
    Policy policy = Policy::FirstMatch;
    std::string hypothesis_id = "h";
};

/// Instrumentation for the linear-pass and memory-bound checks.
struct DecomposeStats {
    std::size_t offer_chains = 0;     // exactly one per input flow
    std::size_t monitor_probes = 0;   // candidate offers within the chains
    std::size_t peak_candidates = 0;
    std::size_t peak_retained_values = 0;  // max over time of monitor state
    std::size_t witness_exhausted_rejections = 0;
};

/// Throws UnsupportedHypothesisError when cls.monitorable is false (use
/// brute_force_decompose for small inputs instead). Deterministic given the
/// stream order and policy.
Decomposition decompose(std::span<const FlowRecord> flows,
                        const HypothesisClass& cls,
                        const DecomposeOptions& opts = {},
                        DecomposeStats* stats = nullptr);

/// Convenience: classifies first.
Decomposition decompose(std::span<const FlowRecord> flows, const Hypothesis& h,
                        const DecomposeOptions& opts = {},
                        DecomposeStats* stats = nullptr);

/// Rebuilds the summary a decompose run would have produced for one member
/// set; used when a decomposition is loaded back from its text form.
SuperflowSummary summarize_members(std::span<const FlowRecord> flows,
                                   std::span<const std::size_t> members,
                                   const HypothesisClass& cls);

// Text form, fixed for golden tests. One line per superflow
//   SF <seq> <hypothesis_id> <member_count> <comma-separated indices>
// then
//   REST <count> <comma-separated indices>
// Indices are 0-based input positions.
void write_decomposition(std::ostream& out, const Decomposition& d);
Decomposition read_decomposition(std::istream& in);

/// True when member sets and rest partition {0..flow_count-1}.
bool is_partition(const Decomposition& d, std::size_t flow_count);

} // namespace superflow

#endif // SUPERFLOW_DECOMPOSE_HPP
