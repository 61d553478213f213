#include "superflow/decompose.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "superflow/errors.hpp"
#include "superflow/monitor.hpp"
#include "superflow/records.hpp"

namespace superflow {

namespace {

// Per-candidate summary accumulator; which fields are live depends on kind.
struct SummaryAcc {
    SummaryAcc(SummaryKind k, uint32_t pfx) : kind(k), prefix(pfx) {}

    SummaryKind kind;
    uint32_t prefix = 0;  // scan: /24 network address
    ScanSummary scan;
    WebSummary web;
    std::map<uint32_t, std::size_t> site_index;  // web: dst_ip -> sites slot
    ChatSummary chat;
    GenericSummary generic;
    bool first = true;

    void add(const FlowRecord& f) {
        switch (kind) {
            case SummaryKind::Scan: {
                if (first) {
                    scan.src_ip = f.src_ip;
                    scan.prefix = prefix;
                    scan.t_start_ms = f.t_start_ms;
                    scan.t_end_ms = f.t_end_ms;
                }
                bitmap_set(scan.hit_bitmap, static_cast<uint8_t>(f.dst_ip & 0xff));
                scan.t_start_ms = std::min(scan.t_start_ms, f.t_start_ms);
                scan.t_end_ms = std::max(scan.t_end_ms, f.t_end_ms);
                scan.total_bytes += f.byte_count;
                scan.total_packets += f.packet_count;
                scan.tcp_flags |= f.tcp_flags;
                break;
            }
            case SummaryKind::Web: {
                if (first) {
                    web.client_ip = f.src_ip;
                    web.t_start_ms = f.t_start_ms;
                    web.t_end_ms = f.t_end_ms;
                }
                web.t_start_ms = std::min(web.t_start_ms, f.t_start_ms);
                web.t_end_ms = std::max(web.t_end_ms, f.t_end_ms);
                auto [it, inserted] = site_index.try_emplace(f.dst_ip, web.sites.size());
                if (inserted) {
                    WebSiteEntry e;
                    e.dst_ip = f.dst_ip;
                    e.service_code = service_code(f);
                    e.first_seen_ms = f.t_start_ms;
                    web.sites.push_back(e);
                }
                WebSiteEntry& e = web.sites[it->second];
                if (!inserted && e.service_code == 1) {
                    uint8_t code = service_code(f);
                    if (code != 1) e.service_code = code;  // first non-DNS service
                }
                e.flow_count += 1;
                e.total_bytes += f.byte_count;
                e.total_packets += f.packet_count;
                e.first_seen_ms = std::min(e.first_seen_ms, f.t_start_ms);
                break;
            }
            case SummaryKind::Chat: {
                if (first) {
                    chat.peer_a = std::min(f.src_ip, f.dst_ip);
                    chat.peer_b = std::max(f.src_ip, f.dst_ip);
                    chat.t_start_ms = f.t_start_ms;
                    chat.t_end_ms = f.t_end_ms;
                }
                chat.t_start_ms = std::min(chat.t_start_ms, f.t_start_ms);
                chat.t_end_ms = std::max(chat.t_end_ms, f.t_end_ms);
                if (f.src_ip == chat.peer_a) {
                    chat.flows_a_to_b += 1;
                } else {
                    chat.flows_b_to_a += 1;
                }
                chat.total_bytes += f.byte_count;
                chat.total_packets += f.packet_count;
                break;
            }
            case SummaryKind::Generic: {
                if (first) {
                    generic.t_start_ms = f.t_start_ms;
                    generic.t_end_ms = f.t_end_ms;
                }
                generic.t_start_ms = std::min(generic.t_start_ms, f.t_start_ms);
                generic.t_end_ms = std::max(generic.t_end_ms, f.t_end_ms);
                generic.flow_count += 1;
                generic.total_bytes += f.byte_count;
                generic.total_packets += f.packet_count;
                break;
            }
        }
        first = false;
    }

    static uint8_t service_code(const FlowRecord& f) {
        if (f.protocol == 17 && f.dst_port == 53) return 1;
        if (f.protocol == 17 && f.dst_port == 443) return 2;
        if (f.protocol == 6 && f.dst_port == 443) return 3;
        if (f.protocol == 6 && f.dst_port == 80) return 4;
        if (f.protocol == 6 && f.dst_port == 8080) return 5;
        return 0;
    }

    SuperflowSummary finish() {
        switch (kind) {
            case SummaryKind::Scan:
                scan.hit_count = static_cast<uint16_t>(bitmap_popcount(scan.hit_bitmap));
                return scan;
            case SummaryKind::Web:
                return web;
            case SummaryKind::Chat:
                return chat;
            case SummaryKind::Generic:
                break;
        }
        return generic;
    }
};

uint32_t scan_prefix_from_plan(const MonitorPlan& plan) {
    for (const auto& [e, var] : plan.unary) {
        const auto* in = std::get_if<InCidr>(&e->node);
        if (in && in->lhs.attr == AttrId::DstIp && in->cidr.prefix_len == 24) {
            return in->cidr.network;
        }
    }
    return 0;
}

struct Candidate {
    Monitor monitor;
    std::vector<std::size_t> members;
    SummaryAcc summary;
};

} // namespace

Decomposition decompose(std::span<const FlowRecord> flows,
                        const HypothesisClass& cls, const DecomposeOptions& opts,
                        DecomposeStats* stats) {
    if (!cls.monitorable) {
        throw UnsupportedHypothesisError(
            "hypothesis is not streaming-monitorable (" + cls.reason +
            "); use the brute-force oracle for small inputs");
    }

    SummaryKind kind = cls.summary_kind;
    uint32_t prefix = kind == SummaryKind::Scan ? scan_prefix_from_plan(cls.plan) : 0;

    std::vector<Candidate> candidates;
    std::vector<std::size_t> rest;
    DecomposeStats local_stats;
    DecomposeStats& st = stats ? *stats : local_stats;
    st = DecomposeStats{};

    auto accept_into = [&](Candidate& c, std::size_t index) {
        c.members.push_back(index);
        c.summary.add(flows[index]);
    };

    for (std::size_t i = 0; i < flows.size(); ++i) {
        const FlowRecord& f = flows[i];
        ++st.offer_chains;
        bool placed = false;

        if (opts.policy == Policy::FirstMatch) {
            for (auto& c : candidates) {
                ++st.monitor_probes;
                OfferOutcome out = c.monitor.offer(f);
                if (out == OfferOutcome::RejectedWitnessExhausted) {
                    ++st.witness_exhausted_rejections;
                }
                if (out == OfferOutcome::Accepted) {
                    accept_into(c, i);
                    placed = true;
                    break;
                }
            }
        } else {
            Candidate* best = nullptr;
            for (auto& c : candidates) {
                ++st.monitor_probes;
                if (!c.monitor.would_accept(f)) continue;
                if (!best ||
                    c.monitor.accepted_count() > best->monitor.accepted_count()) {
                    best = &c;
                }
            }
            if (best) {
                OfferOutcome out = best->monitor.offer(f);
                if (out == OfferOutcome::Accepted) {
                    accept_into(*best, i);
                    placed = true;
                } else if (out == OfferOutcome::RejectedWitnessExhausted) {
                    ++st.witness_exhausted_rejections;
                }
            }
        }

        if (!placed) {
            // Open a new candidate only if a fresh monitor takes the flow;
            // anything else (unary failure, unwitnessed subject) is residue.
            Candidate fresh{Monitor(cls), {}, SummaryAcc{kind, prefix}};
            ++st.monitor_probes;
            OfferOutcome out = fresh.monitor.offer(f);
            if (out == OfferOutcome::Accepted) {
                accept_into(fresh, i);
                candidates.push_back(std::move(fresh));
            } else {
                if (out == OfferOutcome::RejectedWitnessExhausted) {
                    ++st.witness_exhausted_rejections;
                }
                rest.push_back(i);
            }
        }

        st.peak_candidates = std::max(st.peak_candidates, candidates.size());
        std::size_t retained = 0;
        for (const auto& c : candidates) retained += c.monitor.retained_values();
        st.peak_retained_values = std::max(st.peak_retained_values, retained);
    }

    Decomposition d;
    for (auto& c : candidates) {
        if (c.monitor.qualified()) {
            Superflow sf;
            sf.hypothesis_id = opts.hypothesis_id;
            sf.member_indices = std::move(c.members);
            sf.summary = c.summary.finish();
            d.superflows.push_back(std::move(sf));
        } else {
            rest.insert(rest.end(), c.members.begin(), c.members.end());
        }
    }
    std::sort(rest.begin(), rest.end());
    d.rest_indices = std::move(rest);
    return d;
}

Decomposition decompose(std::span<const FlowRecord> flows, const Hypothesis& h,
                        const DecomposeOptions& opts, DecomposeStats* stats) {
    HypothesisClass cls = classify(h);
    return decompose(flows, cls, opts, stats);
}

SuperflowSummary summarize_members(std::span<const FlowRecord> flows,
                                   std::span<const std::size_t> members,
                                   const HypothesisClass& cls) {
    SummaryAcc acc(cls.summary_kind,
                   cls.summary_kind == SummaryKind::Scan
                       ? scan_prefix_from_plan(cls.plan)
                       : 0);
    for (std::size_t i : members) {
        if (i >= flows.size()) {
            throw FormatError("member index " + std::to_string(i) +
                              " outside the flow stream");
        }
        acc.add(flows[i]);
    }
    return acc.finish();
}

void write_decomposition(std::ostream& out, const Decomposition& d) {
    std::size_t seq = 1;
    for (const auto& sf : d.superflows) {
        out << "SF " << seq++ << ' ' << sf.hypothesis_id << ' '
            << sf.member_indices.size() << ' ';
        for (std::size_t i = 0; i < sf.member_indices.size(); ++i) {
            if (i) out << ',';
            out << sf.member_indices[i];
        }
        out << '\n';
    }
    out << "REST " << d.rest_indices.size();
    if (!d.rest_indices.empty()) {
        out << ' ';
        for (std::size_t i = 0; i < d.rest_indices.size(); ++i) {
            if (i) out << ',';
            out << d.rest_indices[i];
        }
    }
    out << '\n';
}

namespace {

std::vector<std::size_t> parse_index_list(const std::string& text,
                                          std::size_t expected) {
    std::vector<std::size_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        try {
            out.push_back(std::stoull(item));
        } catch (const std::exception&) {
            throw FormatError("malformed index '" + item + "'");
        }
    }
    if (out.size() != expected) {
        throw FormatError("index list length mismatch: expected " +
                          std::to_string(expected) + ", got " +
                          std::to_string(out.size()));
    }
    return out;
}

} // namespace

Decomposition read_decomposition(std::istream& in) {
    Decomposition d;
    std::string line;
    bool saw_rest = false;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string tag;
        ls >> tag;
        if (tag == "SF") {
            if (saw_rest) throw FormatError("SF line after REST line");
            std::size_t seq = 0, count = 0;
            std::string id, indices;
            if (!(ls >> seq >> id >> count)) {
                throw FormatError("malformed SF line: " + line);
            }
            ls >> indices;
            Superflow sf;
            sf.hypothesis_id = id;
            sf.member_indices = parse_index_list(indices, count);
            sf.summary = GenericSummary{};
            d.superflows.push_back(std::move(sf));
        } else if (tag == "REST") {
            std::size_t count = 0;
            if (!(ls >> count)) throw FormatError("malformed REST line: " + line);
            std::string indices;
            ls >> indices;
            d.rest_indices = parse_index_list(indices, count);
            saw_rest = true;
        } else {
            throw FormatError("unrecognized decomposition line: " + line);
        }
    }
    if (!saw_rest) throw FormatError("decomposition file missing REST line");
    return d;
}

bool is_partition(const Decomposition& d, std::size_t flow_count) {
    std::vector<bool> seen(flow_count, false);
    std::size_t total = 0;
    auto visit = [&](std::span<const std::size_t> indices) {
        for (std::size_t i : indices) {
            if (i >= flow_count || seen[i]) return false;
            seen[i] = true;
            ++total;
        }
        return true;
    };
    for (const auto& sf : d.superflows) {
        if (sf.member_indices.empty()) return false;
        if (!std::is_sorted(sf.member_indices.begin(), sf.member_indices.end()))
            return false;
        if (!visit(sf.member_indices)) return false;
    }
    if (!visit(d.rest_indices)) return false;
    return total == flow_count;
}

} // namespace superflow
