#include "superflow/oracle.hpp"

#include <algorithm>
#include <unordered_map>

#include "superflow/errors.hpp"
#include "superflow/evaluate.hpp"

namespace superflow {

namespace {

std::vector<FlowRecord> subset_flows(std::span<const FlowRecord> flows,
                                     std::span<const std::size_t> indices) {
    std::vector<FlowRecord> out;
    out.reserve(indices.size());
    for (std::size_t i : indices) out.push_back(flows[i]);
    return out;
}

} // namespace

MaximalityReport verify_maximal(const Decomposition& d,
                                std::span<const FlowRecord> flows,
                                const Hypothesis& h, VerifyMode mode) {
    const auto& rest = d.rest_indices;
    if (mode == VerifyMode::Full && rest.size() > 20) {
        throw SizeError("rest has " + std::to_string(rest.size()) +
                        " flows; full subset enumeration is capped at 20; "
                        "use sampling mode (singletons and pairs)");
    }

    MaximalityReport report;
    report.partial = mode == VerifyMode::Sampling;

    // Materialize the subsets of rest to test. Empty subsets are excluded:
    // universally quantified hypotheses hold vacuously on them.
    std::vector<std::vector<std::size_t>> subsets;
    if (mode == VerifyMode::Full) {
        for (uint64_t mask = 1; mask < (uint64_t{1} << rest.size()); ++mask) {
            std::vector<std::size_t> s;
            for (std::size_t b = 0; b < rest.size(); ++b) {
                if (mask >> b & 1) s.push_back(rest[b]);
            }
            subsets.push_back(std::move(s));
        }
    } else {
        for (std::size_t i = 0; i < rest.size(); ++i) {
            subsets.push_back({rest[i]});
            for (std::size_t j = i + 1; j < rest.size(); ++j) {
                subsets.push_back({rest[i], rest[j]});
            }
        }
    }

    std::vector<std::vector<FlowRecord>> member_flows;
    member_flows.reserve(d.superflows.size());
    for (const auto& sf : d.superflows) {
        member_flows.push_back(subset_flows(flows, sf.member_indices));
    }

    for (const auto& s : subsets) {
        std::vector<FlowRecord> sub = subset_flows(flows, s);
        if (evaluate(h, sub)) {
            report.violations.push_back(MaximalityViolation{-1, s});
        }
        for (std::size_t i = 0; i < d.superflows.size(); ++i) {
            std::vector<FlowRecord> merged = member_flows[i];
            merged.insert(merged.end(), sub.begin(), sub.end());
            if (evaluate(h, merged)) {
                report.violations.push_back(
                    MaximalityViolation{static_cast<int>(i), s});
            }
        }
    }
    return report;
}

namespace {

class BruteForce {
public:
    BruteForce(std::span<const FlowRecord> flows, const Hypothesis& h)
        : flows_(flows), n_(flows.size()) {
        // Truth table of h over every subset, then "no nonempty subset of
        // this mask satisfies h", both indexed by bitmask.
        table_.resize(std::size_t{1} << n_);
        rest_ok_.resize(table_.size());
        std::vector<FlowRecord> buf;
        for (std::size_t mask = 0; mask < table_.size(); ++mask) {
            buf.clear();
            for (std::size_t b = 0; b < n_; ++b) {
                if (mask >> b & 1) buf.push_back(flows_[b]);
            }
            table_[mask] = mask != 0 && evaluate(h, buf);
        }
        rest_ok_[0] = true;
        for (std::size_t mask = 1; mask < rest_ok_.size(); ++mask) {
            bool ok = !table_[mask];
            for (std::size_t b = 0; ok && b < n_; ++b) {
                if (mask >> b & 1) ok = rest_ok_[mask & ~(std::size_t{1} << b)];
            }
            rest_ok_[mask] = ok;
        }
    }

    // Assignments are explored in lexicographic order (existing groups in
    // numeric order, then a new group, then rest), so the first valid hit at
    // a given rest size is the smallest tie-break.
    void search() {
        assign_.assign(n_, 0);
        group_masks_.clear();
        recurse(0, 0);
    }

    bool found() const { return best_rest_size_ <= n_; }
    const std::vector<int>& best_assign() const { return best_assign_; }
    std::size_t best_groups() const { return best_group_count_; }

private:
    std::span<const FlowRecord> flows_;
    std::size_t n_;
    std::vector<uint8_t> table_;
    std::vector<uint8_t> rest_ok_;
    std::vector<int> assign_;  // per flow: 1..k group, 0 rest
    std::vector<std::size_t> group_masks_;
    std::size_t rest_mask_ = 0;
    std::size_t best_rest_size_ = ~std::size_t{0};
    std::vector<int> best_assign_;
    std::size_t best_group_count_ = 0;
    std::unordered_map<uint64_t, bool> extension_memo_;

    void recurse(std::size_t i, std::size_t rest_size) {
        if (rest_size > best_rest_size_) return;  // cannot beat the best
        if (i == n_) {
            finish(rest_size);
            return;
        }
        std::size_t bit = std::size_t{1} << i;
        for (std::size_t g = 0; g < group_masks_.size(); ++g) {
            assign_[i] = static_cast<int>(g + 1);
            group_masks_[g] |= bit;
            recurse(i + 1, rest_size);
            group_masks_[g] &= ~bit;
        }
        assign_[i] = static_cast<int>(group_masks_.size() + 1);
        group_masks_.push_back(bit);
        recurse(i + 1, rest_size);
        group_masks_.pop_back();

        assign_[i] = 0;
        rest_mask_ |= bit;
        recurse(i + 1, rest_size + 1);
        rest_mask_ &= ~bit;
    }

    void finish(std::size_t rest_size) {
        if (rest_size >= best_rest_size_ && best_rest_size_ != ~std::size_t{0}) {
            return;  // equal rest: an earlier (lex-smaller) winner exists
        }
        for (std::size_t g : group_masks_) {
            if (!table_[g]) return;
        }
        if (!rest_ok_[rest_mask_]) return;  // condition (a)
        for (std::size_t g : group_masks_) {
            if (has_satisfying_extension(g, rest_mask_)) return;  // condition (b)
        }
        best_rest_size_ = rest_size;
        best_assign_ = assign_;
        best_group_count_ = group_masks_.size();
    }

    // Does some nonempty subset S of rest make h(group | S) true?
    bool has_satisfying_extension(std::size_t group, std::size_t rest) {
        uint64_t key = (uint64_t{group} << 20) | rest;
        auto it = extension_memo_.find(key);
        if (it != extension_memo_.end()) return it->second;
        bool bad = false;
        for (std::size_t s = rest; s != 0 && !bad; s = (s - 1) & rest) {
            if (table_[group | s]) bad = true;
        }
        extension_memo_.emplace(key, bad);
        return bad;
    }
};

} // namespace

Decomposition brute_force_decompose(std::span<const FlowRecord> flows,
                                    const Hypothesis& h,
                                    const std::string& hypothesis_id) {
    if (flows.size() > 10) {
        throw SizeError("brute-force decomposition is capped at 10 flows, got " +
                        std::to_string(flows.size()));
    }

    BruteForce bf(flows, h);
    bf.search();
    if (!bf.found()) {
        // All-rest is always reachable unless condition (a) rules it out, in
        // which case some grouping was valid; the search space is complete.
        throw SizeError("no maximal decomposition found (unexpected)");
    }

    const auto& assign = bf.best_assign();
    Decomposition d;
    d.superflows.resize(bf.best_groups());
    for (std::size_t g = 0; g < bf.best_groups(); ++g) {
        d.superflows[g].hypothesis_id = hypothesis_id;
    }
    for (std::size_t i = 0; i < flows.size(); ++i) {
        if (assign[i] == 0) {
            d.rest_indices.push_back(i);
        } else {
            d.superflows[static_cast<std::size_t>(assign[i] - 1)]
                .member_indices.push_back(i);
        }
    }
    for (auto& sf : d.superflows) {
        GenericSummary s;
        for (std::size_t i : sf.member_indices) {
            const FlowRecord& f = flows[i];
            if (s.flow_count == 0) {
                s.t_start_ms = f.t_start_ms;
                s.t_end_ms = f.t_end_ms;
            }
            s.t_start_ms = std::min(s.t_start_ms, f.t_start_ms);
            s.t_end_ms = std::max(s.t_end_ms, f.t_end_ms);
            s.flow_count += 1;
            s.total_bytes += f.byte_count;
            s.total_packets += f.packet_count;
        }
        sf.summary = s;
    }
    return d;
}

} // namespace superflow
