#include "superflow/scenario.hpp"

#include <algorithm>
#include <array>
#include <random>
#include <set>

#include "superflow/errors.hpp"

namespace superflow {

namespace {

// All draws go through one engine with plain modulo mapping. std::*
// distributions are implementation-defined, which would break byte-identical
// output across standard libraries; modulo bias is irrelevant here.
class Rng {
public:
    explicit Rng(uint64_t seed) : engine_(seed) {}

    uint64_t below(uint64_t n) { return n == 0 ? 0 : engine_() % n; }
    uint64_t range(uint64_t lo, uint64_t hi) {  // inclusive
        return lo + below(hi - lo + 1);
    }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::swap(v[i - 1], v[below(i)]);
        }
    }

private:
    std::mt19937_64 engine_;
};

void sort_by_start(std::vector<FlowRecord>& flows) {
    std::stable_sort(flows.begin(), flows.end(),
                     [](const FlowRecord& a, const FlowRecord& b) {
                         return a.t_start_ms < b.t_start_ms;
                     });
}

std::vector<FlowRecord> generate_scan(const ScanParams& p, uint64_t base_ms,
                                      Rng& rng) {
    if (p.target_prefix.prefix_len != 24) {
        throw SpecError("scan target_prefix must be a /24");
    }
    if (p.addresses_hit.empty()) {
        throw SpecError("scan addresses_hit must be nonempty");
    }
    std::set<uint8_t> seen(p.addresses_hit.begin(), p.addresses_hit.end());
    if (seen.size() != p.addresses_hit.size()) {
        throw SpecError("scan addresses_hit contains duplicates");
    }
    if (p.window_s == 0) throw SpecError("scan window_s must be positive");

    std::vector<uint8_t> order = p.addresses_hit;
    rng.shuffle(order);

    const uint64_t window_ms = uint64_t{p.window_s} * 1000;
    const uint64_t n = order.size();
    std::vector<FlowRecord> flows;
    flows.reserve(n);
    for (uint64_t i = 0; i < n; ++i) {
        FlowRecord f;
        f.src_ip = p.scanner_ip;
        f.dst_ip = p.target_prefix.network | order[i];
        f.src_port = static_cast<uint16_t>(rng.range(1024, 65535));
        f.dst_port = static_cast<uint16_t>(
            std::array<uint16_t, 4>{22, 80, 443, 3389}[rng.below(4)]);
        f.protocol = 6;
        f.tcp_flags = 0x02;  // SYN probe, ACK clear
        f.t_start_ms = base_ms + (i * window_ms) / n;  // spread < window
        f.t_end_ms = f.t_start_ms;
        f.packet_count = 1;
        f.byte_count = rng.range(40, 60);
        flows.push_back(f);
    }
    sort_by_start(flows);
    return flows;
}

std::vector<FlowRecord> generate_web(const WebParams& p, uint64_t base_ms,
                                     Rng& rng) {
    if (p.site_count == 0) throw SpecError("web site_count must be positive");
    if (p.site_count > 60000) throw SpecError("web site_count too large");
    if (p.flows_per_site == 0) {
        throw SpecError("web flows_per_site must be at least 1");
    }

    std::vector<uint32_t> sites;
    std::set<uint32_t> taken;
    while (sites.size() < p.site_count) {
        uint32_t ip = 0xC6120000u | static_cast<uint32_t>(rng.below(65536));
        if (taken.insert(ip).second) sites.push_back(ip);
    }

    std::vector<FlowRecord> flows;
    flows.reserve(std::size_t{p.site_count} * (1 + p.flows_per_site));
    uint64_t site_base = base_ms;
    for (uint32_t s = 0; s < p.site_count; ++s) {
        FlowRecord dns;
        dns.src_ip = p.client_ip;
        dns.dst_ip = sites[s];
        dns.src_port = static_cast<uint16_t>(rng.range(1024, 65535));
        dns.dst_port = 53;
        dns.protocol = 17;
        dns.t_start_ms = site_base;
        dns.t_end_ms = site_base + rng.below(5);
        dns.packet_count = 1;
        dns.byte_count = rng.range(60, 120);
        flows.push_back(dns);

        for (uint32_t j = 0; j < p.flows_per_site; ++j) {
            FlowRecord http;
            http.src_ip = p.client_ip;
            http.dst_ip = sites[s];
            http.src_port = static_cast<uint16_t>(rng.range(1024, 65535));
            http.dst_port = rng.below(2) ? 443 : 80;
            http.protocol = 6;
            http.tcp_flags = 0x02;
            // Request starts after its lookup, within the lead.
            http.t_start_ms = site_base + rng.below(p.dns_lead_ms + 1);
            http.t_end_ms = http.t_start_ms + rng.range(10, 2000);
            http.packet_count = rng.range(3, 20);
            http.byte_count = rng.range(500, 15000);
            flows.push_back(http);
        }
        site_base += rng.range(1000, 5000);
    }
    sort_by_start(flows);
    return flows;
}

std::vector<FlowRecord> generate_chat(const ChatParams& p, uint64_t base_ms,
                                      Rng& rng) {
    if (p.message_count == 0) throw SpecError("chat message_count must be positive");
    if (p.max_payload == 0) throw SpecError("chat max_payload must be positive");

    uint16_t port_a = static_cast<uint16_t>(rng.range(1024, 65535));
    uint16_t port_b = static_cast<uint16_t>(rng.range(1024, 65535));
    uint64_t t = base_ms;
    std::vector<FlowRecord> flows;
    flows.reserve(p.message_count);
    for (uint32_t i = 0; i < p.message_count; ++i) {
        bool a_speaks = (i % 2) == 0;
        FlowRecord f;
        f.src_ip = a_speaks ? p.peer_a : p.peer_b;
        f.dst_ip = a_speaks ? p.peer_b : p.peer_a;
        f.src_port = a_speaks ? port_a : port_b;
        f.dst_port = a_speaks ? port_b : port_a;
        f.protocol = 6;
        f.tcp_flags = 0x18;  // PSH|ACK
        f.t_start_ms = t;
        f.t_end_ms = t + rng.below(200);
        f.packet_count = 1;
        f.byte_count = rng.range(1, p.max_payload);
        flows.push_back(f);
        t += rng.range(50, 800);
    }
    sort_by_start(flows);
    return flows;
}

std::vector<FlowRecord> generate_noise(const NoiseParams& p, uint64_t base_ms,
                                       Rng& rng) {
    if (p.ip_pool < 2) throw SpecError("noise ip_pool must be at least 2");

    std::vector<uint32_t> pool;
    std::set<uint32_t> taken;
    while (pool.size() < p.ip_pool) {
        uint32_t ip = 0x0A000000u | static_cast<uint32_t>(rng.below(0x1000000));
        if (taken.insert(ip).second) pool.push_back(ip);
    }

    const uint64_t span_ms = std::max<uint64_t>(1000, uint64_t{p.flow_count} * 100);
    std::vector<FlowRecord> flows;
    flows.reserve(p.flow_count);
    for (uint32_t i = 0; i < p.flow_count; ++i) {
        FlowRecord f;
        f.src_ip = pool[rng.below(pool.size())];
        do {
            f.dst_ip = pool[rng.below(pool.size())];
        } while (f.dst_ip == f.src_ip);
        f.protocol = std::array<uint8_t, 3>{6, 17, 1}[rng.below(3)];
        if (f.protocol == 1) {
            f.src_port = 0;  // portless protocol
            f.dst_port = 0;
        } else {
            f.src_port = static_cast<uint16_t>(rng.range(1024, 65535));
            f.dst_port = static_cast<uint16_t>(
                std::array<uint16_t, 6>{22, 53, 80, 123, 443, 8080}[rng.below(6)]);
        }
        if (f.protocol == 6) f.tcp_flags = static_cast<uint8_t>(rng.below(64));
        f.t_start_ms = base_ms + rng.below(span_ms);
        f.t_end_ms = f.t_start_ms + rng.below(30000);
        f.packet_count = rng.range(1, 20);
        f.byte_count = std::max<uint64_t>(rng.range(60, 1500), f.packet_count);
        flows.push_back(f);
    }
    sort_by_start(flows);
    return flows;
}

} // namespace

std::vector<FlowRecord> generate_scenario(const ScenarioSpec& spec) {
    Rng rng(spec.seed);
    struct Dispatch {
        uint64_t base;
        Rng& rng;
        std::vector<FlowRecord> operator()(const ScanParams& p) {
            return generate_scan(p, base, rng);
        }
        std::vector<FlowRecord> operator()(const WebParams& p) {
            return generate_web(p, base, rng);
        }
        std::vector<FlowRecord> operator()(const ChatParams& p) {
            return generate_chat(p, base, rng);
        }
        std::vector<FlowRecord> operator()(const NoiseParams& p) {
            return generate_noise(p, base, rng);
        }
    };
    return std::visit(Dispatch{spec.base_time_ms, rng}, spec.params);
}

} // namespace superflow
