// Command-line frontend: generate synthetic traces, check hypotheses,
// decompose flow streams, and report footprint reduction.
//
// Exit codes: 0 success, 1 input or I/O error, 2 semantic refusal (e.g. a
// hypothesis outside the monitorable fragment without --oracle).

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <future>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "superflow/builtins.hpp"
#include "superflow/classify.hpp"
#include "superflow/csv.hpp"
#include "superflow/decompose.hpp"
#include "superflow/errors.hpp"
#include "superflow/footprint.hpp"
#include "superflow/oracle.hpp"
#include "superflow/parser.hpp"
#include "superflow/printer.hpp"
#include "superflow/records.hpp"
#include "superflow/scenario.hpp"
#include "superflow/stream.hpp"

using namespace superflow;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInputError = 1;
constexpr int kExitRefused = 2;

StreamFormat parse_format(const std::string& name) {
    if (name == "csv") return StreamFormat::Csv;
    if (name == "compact") return StreamFormat::Compact;
    throw SpecError("unknown format '" + name + "' (csv or compact)");
}

AccountingMode parse_mode(const std::string& name) {
    if (name == "per-flow") return AccountingMode::PerFlow;
    if (name == "per-destination") return AccountingMode::PerDestination;
    throw SpecError("unknown accounting mode '" + name +
                    "' (per-flow or per-destination)");
}

Policy parse_policy(const std::string& name) {
    if (name == "first-match") return Policy::FirstMatch;
    if (name == "best-match") return Policy::BestMatch;
    throw SpecError("unknown policy '" + name + "' (first-match or best-match)");
}

uint32_t parse_ip_arg(const std::string& text, const char* what) {
    auto ip = parse_ipv4(text);
    if (!ip) throw SpecError(std::string("malformed ") + what + ": " + text);
    return *ip;
}

Cidr parse_cidr_arg(const std::string& text) {
    auto c = parse_cidr(text);
    if (!c) throw SpecError("malformed prefix: " + text);
    return *c;
}

std::vector<FlowRecord> read_flows(const std::string& path, StreamFormat fmt) {
    if (path == "-") return read_flow_stream(std::cin, fmt);
    std::ifstream in(path, std::ios::binary);
    if (!in) throw SpecError("cannot open input: " + path);
    return read_flow_stream(in, fmt);
}

// Output sink that is either a file or stdout.
class Sink {
public:
    explicit Sink(const std::string& path) {
        if (path != "-") {
            file_.open(path, std::ios::binary);
            if (!file_) throw SpecError("cannot open output: " + path);
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

private:
    std::ofstream file_;
};

struct HypothesisSpec {
    std::string name = "scan256";  // builtin name or .sf path
    std::string prefix = "192.168.1.0/24";
    int64_t window_s = -1;  // -1: builtin default (scan 10, web 300)
    uint64_t threshold = 256;
    uint64_t mtu = 1500;
};

struct LoadedHypothesis {
    Hypothesis hypothesis;
    std::string id;
};

LoadedHypothesis load_hypothesis(const HypothesisSpec& spec) {
    if (spec.name == "scan256") {
        int64_t w = spec.window_s < 0 ? 10 : spec.window_s;
        return {builtin_scan(parse_cidr_arg(spec.prefix), w * 1000, spec.threshold),
                "scan256"};
    }
    if (spec.name == "chat") {
        return {builtin_chat(spec.mtu), "chat"};
    }
    if (spec.name == "web") {
        int64_t w = spec.window_s < 0 ? 300 : spec.window_s;
        return {builtin_web(w * 1000), "web"};
    }
    std::ifstream in(spec.name);
    if (!in) {
        throw SpecError("hypothesis '" + spec.name +
                        "' is neither a builtin (scan256, chat, web) nor a "
                        "readable file");
    }
    std::stringstream ss;
    ss << in.rdbuf();
    std::string id = spec.name;
    if (auto slash = id.find_last_of('/'); slash != std::string::npos) {
        id = id.substr(slash + 1);
    }
    if (id.size() > 3 && id.ends_with(".sf")) id = id.substr(0, id.size() - 3);
    return {parse_hypothesis(ss.str()), id};
}

void add_hypothesis_flags(CLI::App* cmd, HypothesisSpec& spec) {
    cmd->add_option("--hypothesis", spec.name,
                    "builtin (scan256, chat, web) or path to a .sf file");
    cmd->add_option("--prefix", spec.prefix, "scan: target /24 prefix");
    cmd->add_option("--window-s", spec.window_s,
                    "scan/web: time window in seconds");
    cmd->add_option("--c", spec.threshold, "scan: distinct-destination bound");
    cmd->add_option("--mtu", spec.mtu, "chat: maximum message bytes");
}

// ---- generate ----

std::vector<uint8_t> parse_hits(const std::string& spec) {
    std::vector<uint8_t> hits;
    if (spec == "all") {
        for (int a = 0; a < 256; ++a) hits.push_back(static_cast<uint8_t>(a));
        return hits;
    }
    auto parse_u8 = [&](const std::string& s) {
        std::size_t pos = 0;
        unsigned long v = std::stoul(s, &pos);
        if (pos != s.size() || v > 255) {
            throw SpecError("address '" + s + "' outside 0-255");
        }
        return static_cast<uint8_t>(v);
    };
    if (auto dash = spec.find('-'); dash != std::string::npos) {
        unsigned lo = parse_u8(spec.substr(0, dash));
        unsigned hi = parse_u8(spec.substr(dash + 1));
        if (lo > hi) throw SpecError("empty hit range: " + spec);
        for (unsigned a = lo; a <= hi; ++a) hits.push_back(static_cast<uint8_t>(a));
        return hits;
    }
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) hits.push_back(parse_u8(item));
    }
    if (hits.empty()) throw SpecError("no hit addresses in '" + spec + "'");
    return hits;
}

int run_generate(const ScenarioSpec& spec) {
    auto flows = generate_scenario(spec);
    write_flow_stream(std::cout, flows, StreamFormat::Csv);
    return kExitOk;
}

// ---- check ----

std::string qualifications_text(const std::vector<CardinalityBound>& quals) {
    if (quals.empty()) return "none";
    std::string out;
    for (std::size_t i = 0; i < quals.size(); ++i) {
        if (i) out += ", ";
        out += "distinct(";
        out += attr_name(quals[i].attr);
        out += ") >= ";
        out += std::to_string(quals[i].min_distinct);
    }
    return out;
}

int run_check(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SpecError("cannot open hypothesis file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    Hypothesis h = parse_hypothesis(ss.str());
    HypothesisClass cls = classify(h);

    std::cout << "monitorable: " << (cls.monitorable ? "yes" : "no");
    if (!cls.monitorable) std::cout << " (" << cls.reason << ")";
    std::cout << "\n";
    std::cout << "qualifications: " << qualifications_text(cls.qualifications)
              << "\n";
    std::cout << "families: ";
    if (cls.families.empty()) {
        std::cout << "none";
    } else {
        for (std::size_t i = 0; i < cls.families.size(); ++i) {
            if (i) std::cout << ", ";
            std::cout << cls.families[i];
        }
    }
    std::cout << "\ncompatibility:\n";
    std::istringstream lines(to_dsl(cls.compatibility));
    std::string line;
    while (std::getline(lines, line)) std::cout << "  " << line << "\n";
    return cls.monitorable ? kExitOk : kExitRefused;
}

// ---- decompose / report ----

Decomposition decompose_sharded(std::span<const FlowRecord> flows,
                                const HypothesisClass& cls,
                                const DecomposeOptions& opts) {
    bool constrains_src = false;
    for (AttrId a : cls.plan.eq_attrs) {
        if (a == AttrId::SrcIp) constrains_src = true;
    }
    if (!constrains_src) {
        throw UnsupportedHypothesisError(
            "--shard-by srcip needs a hypothesis whose compatibility pins "
            "srcip equality");
    }

    std::map<uint32_t, std::vector<std::size_t>> shards;  // key order = output order
    for (std::size_t i = 0; i < flows.size(); ++i) {
        shards[flows[i].src_ip].push_back(i);
    }

    std::vector<std::future<Decomposition>> futures;
    std::vector<const std::vector<std::size_t>*> shard_indices;
    for (const auto& [key, indices] : shards) {
        shard_indices.push_back(&indices);
        futures.push_back(std::async(std::launch::async, [&flows, &cls, &opts,
                                                          ixs = &indices]() {
            std::vector<FlowRecord> local;
            local.reserve(ixs->size());
            for (std::size_t i : *ixs) local.push_back(flows[i]);
            return decompose(local, cls, opts);
        }));
    }

    Decomposition merged;
    for (std::size_t s = 0; s < futures.size(); ++s) {
        Decomposition part = futures[s].get();
        const auto& to_global = *shard_indices[s];
        for (auto& sf : part.superflows) {
            for (auto& i : sf.member_indices) i = to_global[i];
            merged.superflows.push_back(std::move(sf));
        }
        for (std::size_t i : part.rest_indices) {
            merged.rest_indices.push_back(to_global[i]);
        }
    }
    std::sort(merged.rest_indices.begin(), merged.rest_indices.end());
    return merged;
}

void write_superflow_records(const std::string& path, const Decomposition& d) {
    Sink sink(path);
    std::size_t skipped = 0;
    for (const auto& sf : d.superflows) {
        std::vector<uint8_t> bytes;
        if (const auto* scan = std::get_if<ScanSummary>(&sf.summary)) {
            if (scan->hit_count == 256) {
                bytes = encode_scan256(*scan);
            } else if (scan->hit_count >= 224) {
                bytes = encode_allotted_scan256(*scan);
            } else {
                ++skipped;
                continue;
            }
        } else if (const auto* web = std::get_if<WebSummary>(&sf.summary)) {
            bytes = encode_web_superflow(*web);
        } else {
            ++skipped;
            continue;
        }
        sink.stream().write(reinterpret_cast<const char*>(bytes.data()),
                            static_cast<std::streamsize>(bytes.size()));
    }
    if (skipped) {
        std::cerr << "note: " << skipped
                  << " superflow(s) have no binary record form, skipped\n";
    }
}

struct DecomposeArgs {
    std::string input = "-";
    std::string format = "csv";
    HypothesisSpec hyp;
    std::string policy = "first-match";
    std::string mode = "per-flow";
    std::string out_decomp = "-";
    std::string out_report = "-";
    std::string out_records;
    std::string shard_by;
    bool oracle = false;
};

int run_decompose(const DecomposeArgs& args) {
    auto flows = read_flows(args.input, parse_format(args.format));
    LoadedHypothesis loaded = load_hypothesis(args.hyp);
    HypothesisClass cls = classify(loaded.hypothesis);

    DecomposeOptions opts;
    opts.policy = parse_policy(args.policy);
    opts.hypothesis_id = loaded.id;

    Decomposition d;
    if (!cls.monitorable && args.oracle) {
        d = brute_force_decompose(flows, loaded.hypothesis, loaded.id);
    } else if (!args.shard_by.empty()) {
        if (args.shard_by != "srcip") {
            throw SpecError("only --shard-by srcip is supported");
        }
        d = decompose_sharded(flows, cls, opts);
    } else {
        d = decompose(flows, cls, opts);
    }

    {
        Sink sink(args.out_decomp);
        write_decomposition(sink.stream(), d);
    }
    FootprintReport report = footprint_report(d, flows, parse_mode(args.mode));
    {
        Sink sink(args.out_report);
        sink.stream() << format_report_kv(report);
    }
    if (!args.out_records.empty()) write_superflow_records(args.out_records, d);
    return kExitOk;
}

struct ReportArgs {
    std::string input = "-";
    std::string format = "csv";
    std::string decomp;
    HypothesisSpec hyp;
    std::string mode = "per-flow";
};

int run_report(const ReportArgs& args) {
    auto flows = read_flows(args.input, parse_format(args.format));
    std::ifstream din(args.decomp);
    if (!din) throw SpecError("cannot open decomposition: " + args.decomp);
    Decomposition d = read_decomposition(din);

    LoadedHypothesis loaded = load_hypothesis(args.hyp);
    HypothesisClass cls = classify(loaded.hypothesis);
    for (auto& sf : d.superflows) {
        sf.summary = summarize_members(flows, sf.member_indices, cls);
    }

    FootprintReport report = footprint_report(d, flows, parse_mode(args.mode));
    std::cout << format_report_table(report);
    std::cout << format_report_kv(report);
    return kExitOk;
}

struct EncodeArgs {
    std::string input = "-";
    std::string output = "-";
    std::string from = "csv";
    std::string to = "compact";
};

int run_encode(const EncodeArgs& args) {
    auto flows = read_flows(args.input, parse_format(args.from));
    Sink sink(args.output);
    write_flow_stream(sink.stream(), flows, parse_format(args.to));
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"flow aggregation into analyst-hypothesis superflows"};
    app.require_subcommand(1);

    // check
    std::string check_path;
    CLI::App* check = app.add_subcommand("check", "classify a hypothesis file");
    check->add_option("file", check_path, "hypothesis (.sf) file")->required();

    // decompose
    DecomposeArgs dec;
    CLI::App* decompose_cmd =
        app.add_subcommand("decompose", "split a flow stream into superflows");
    decompose_cmd->add_option("--input,-i", dec.input, "flow stream path or -");
    decompose_cmd->add_option("--format", dec.format, "csv or compact");
    add_hypothesis_flags(decompose_cmd, dec.hyp);
    decompose_cmd->add_option("--policy", dec.policy,
                              "first-match or best-match");
    decompose_cmd->add_option("--mode", dec.mode,
                              "per-flow or per-destination accounting");
    decompose_cmd->add_option("--out-decomp", dec.out_decomp,
                              "decomposition output path or -");
    decompose_cmd->add_option("--out-report", dec.out_report,
                              "report output path or -");
    decompose_cmd->add_option("--out-records", dec.out_records,
                              "binary superflow records output path");
    decompose_cmd->add_flag("--oracle", dec.oracle,
                            "brute-force decomposition for non-monitorable "
                            "hypotheses (at most 10 flows)");
    decompose_cmd->add_option("--shard-by", dec.shard_by,
                              "srcip: run per-source shards in parallel");

    // report
    ReportArgs rep;
    CLI::App* report_cmd =
        app.add_subcommand("report", "recompute footprint for a decomposition");
    report_cmd->add_option("--input,-i", rep.input, "flow stream path or -");
    report_cmd->add_option("--format", rep.format, "csv or compact");
    report_cmd->add_option("--decomp", rep.decomp, "decomposition file")
        ->required();
    add_hypothesis_flags(report_cmd, rep.hyp);
    report_cmd->add_option("--mode", rep.mode,
                           "per-flow or per-destination accounting");

    // generate
    CLI::App* gen = app.add_subcommand("generate", "emit a synthetic trace as CSV");
    gen->require_subcommand(1);
    uint64_t seed = 1;
    uint64_t base_ms = 1700000000000;

    std::string g_prefix = "192.168.1.0/24", g_scanner = "203.0.113.7",
                g_hits = "all";
    uint32_t g_window = 8;
    CLI::App* gen_scan = gen->add_subcommand("scan", "one source sweeping a /24");
    gen_scan->add_option("--prefix", g_prefix, "target /24");
    gen_scan->add_option("--scanner", g_scanner, "scanner address");
    gen_scan->add_option("--hits", g_hits, "'all', range 'a-b', or list 'a,b,c'");
    gen_scan->add_option("--window-s", g_window, "burst window seconds");

    uint32_t g_sites = 36, g_fps = 5, g_lead = 500;
    std::string g_client = "10.0.0.1";
    CLI::App* gen_web = gen->add_subcommand("web", "webpage fetch with DNS leads");
    gen_web->add_option("--sites", g_sites, "distinct destination sites");
    gen_web->add_option("--flows-per-site", g_fps, "HTTP(S) flows per site");
    gen_web->add_option("--dns-lead-ms", g_lead, "max DNS-to-request lead");
    gen_web->add_option("--client", g_client, "client address");

    uint32_t g_messages = 20, g_payload = 1400;
    std::string g_peer_a = "10.0.0.1", g_peer_b = "10.0.0.2";
    CLI::App* gen_chat = gen->add_subcommand("chat", "alternating small messages");
    gen_chat->add_option("--messages", g_messages, "message count");
    gen_chat->add_option("--max-payload", g_payload, "max message bytes");
    gen_chat->add_option("--peer-a", g_peer_a, "first peer");
    gen_chat->add_option("--peer-b", g_peer_b, "second peer");

    uint32_t g_flows = 100, g_pool = 8;
    CLI::App* gen_noise = gen->add_subcommand("noise", "unstructured background");
    gen_noise->add_option("--flows", g_flows, "flow count");
    gen_noise->add_option("--pool", g_pool, "distinct address pool size");

    for (CLI::App* g : {gen_scan, gen_web, gen_chat, gen_noise}) {
        g->add_option("--seed", seed, "RNG seed");
        g->add_option("--base-ms", base_ms, "epoch ms of the first flow");
    }

    // encode
    EncodeArgs enc;
    CLI::App* encode_cmd =
        app.add_subcommand("encode", "convert a flow stream between formats");
    encode_cmd->add_option("--input,-i", enc.input, "input path or -");
    encode_cmd->add_option("--output,-o", enc.output, "output path or -");
    encode_cmd->add_option("--from", enc.from, "csv or compact");
    encode_cmd->add_option("--to", enc.to, "csv or compact");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);  // prints message or help text
        return code == 0 ? kExitOk : kExitInputError;
    }

    try {
        if (check->parsed()) return run_check(check_path);
        if (decompose_cmd->parsed()) {
            if (!dec.oracle) {
                // Fail the refusal path before any output files are touched.
                HypothesisClass cls =
                    classify(load_hypothesis(dec.hyp).hypothesis);
                if (!cls.monitorable) {
                    std::cerr << "error: hypothesis is not streaming-monitorable ("
                              << cls.reason << "); rerun with --oracle for "
                              << "small inputs\n";
                    return kExitRefused;
                }
            }
            return run_decompose(dec);
        }
        if (report_cmd->parsed()) return run_report(rep);
        if (encode_cmd->parsed()) return run_encode(enc);
        if (gen->parsed()) {
            ScenarioSpec spec;
            spec.seed = seed;
            spec.base_time_ms = base_ms;
            if (gen_scan->parsed()) {
                ScanParams p;
                p.scanner_ip = parse_ip_arg(g_scanner, "scanner address");
                p.target_prefix = parse_cidr_arg(g_prefix);
                p.addresses_hit = parse_hits(g_hits);
                p.window_s = g_window;
                spec.params = p;
            } else if (gen_web->parsed()) {
                WebParams p;
                p.client_ip = parse_ip_arg(g_client, "client address");
                p.site_count = g_sites;
                p.flows_per_site = g_fps;
                p.dns_lead_ms = g_lead;
                spec.params = p;
            } else if (gen_chat->parsed()) {
                ChatParams p;
                p.peer_a = parse_ip_arg(g_peer_a, "peer address");
                p.peer_b = parse_ip_arg(g_peer_b, "peer address");
                p.message_count = g_messages;
                p.max_payload = g_payload;
                spec.params = p;
            } else {
                NoiseParams p;
                p.flow_count = g_flows;
                p.ip_pool = g_pool;
                spec.params = p;
            }
            return run_generate(spec);
        }
    } catch (const UnsupportedHypothesisError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRefused;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    }
    return kExitInputError;
}
