#ifndef SUPERFLOW_SCENARIO_HPP
#define SUPERFLOW_SCENARIO_HPP

#include <cstdint>
#include <variant>
#include <vector>

#include "superflow/flow_record.hpp"
#include "superflow/ip.hpp"

namespace superflow {

// Synthetic single-phenomenon traffic generators. Given the same spec
// (parameters and seed) the output is byte-identical, so generated CSV can be
// used in golden tests. Output is sorted by t_start.

/// One TCP probe per hit address of a /24, all from one scanner, initial
/// flags with the ACK bit clear, start times spread inside `window_s`.
struct ScanParams {
    uint32_t scanner_ip = 0;
    Cidr target_prefix;                  // must be a /24
    std::vector<uint8_t> addresses_hit;  // distinct values in 0..255, nonempty
    uint32_t window_s = 8;
};

/// Per site: one UDP/53 lookup to the site address, then `flows_per_site`
/// TCP flows to port 80/443 of the same address within `dns_lead_ms`.
struct WebParams {
    uint32_t client_ip = 0;
    uint32_t site_count = 1;
    uint32_t flows_per_site = 1;
    uint32_t dns_lead_ms = 500;
};

/// Alternating-direction small messages between two peers.
struct ChatParams {
    uint32_t peer_a = 0;
    uint32_t peer_b = 0;
    uint32_t message_count = 1;
    uint32_t max_payload = 1400;
};

/// Unstructured background flows over a random IP pool.
struct NoiseParams {
    uint32_t flow_count = 0;
    uint32_t ip_pool = 8;  // number of distinct addresses drawn
};

struct ScenarioSpec {
    std::variant<ScanParams, WebParams, ChatParams, NoiseParams> params;
    uint64_t seed = 0;
    uint64_t base_time_ms = 1700000000000;  // t_start of the first flow
};

/// Throws SpecError on invalid parameters.
std::vector<FlowRecord> generate_scenario(const ScenarioSpec& spec);

} // namespace superflow

#endif // SUPERFLOW_SCENARIO_HPP
