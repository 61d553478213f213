#include <benchmark/benchmark.h>

#include <sstream>
#include <vector>

#include "superflow/builtins.hpp"
#include "superflow/compact.hpp"
#include "superflow/csv.hpp"
#include "superflow/decompose.hpp"
#include "superflow/monitor.hpp"
#include "superflow/parser.hpp"
#include "superflow/scenario.hpp"

using namespace superflow;

namespace {

std::vector<FlowRecord> scan_with_noise(std::size_t noise) {
    ScanParams sp;
    sp.scanner_ip = 0xCB00710A;
    sp.target_prefix = *parse_cidr("192.168.1.0/24");
    for (int a = 0; a < 256; ++a) sp.addresses_hit.push_back(uint8_t(a));
    sp.window_s = 8;
    auto flows = generate_scenario(ScenarioSpec{sp, 7, 1700000000000ull});
    auto bg = generate_scenario(
        ScenarioSpec{NoiseParams{uint32_t(noise), 64}, 9, 1700000000000ull});
    flows.insert(flows.end(), bg.begin(), bg.end());
    return flows;
}

void BM_MonitorOffer(benchmark::State& state) {
    HypothesisClass cls =
        classify(builtin_scan(*parse_cidr("192.168.1.0/24"), 10000, 256));
    auto flows = scan_with_noise(4096);
    for (auto _ : state) {
        Monitor m(cls);
        std::size_t accepted = 0;
        for (const auto& f : flows) {
            accepted += m.offer(f) == OfferOutcome::Accepted;
        }
        benchmark::DoNotOptimize(accepted);
    }
    state.SetItemsProcessed(int64_t(state.iterations()) * int64_t(flows.size()));
}
BENCHMARK(BM_MonitorOffer);

void BM_Decompose(benchmark::State& state) {
    Hypothesis h = builtin_scan(*parse_cidr("192.168.1.0/24"), 10000, 256);
    HypothesisClass cls = classify(h);
    auto flows = scan_with_noise(std::size_t(state.range(0)));
    for (auto _ : state) {
        Decomposition d = decompose(flows, cls, {Policy::FirstMatch, "scan256"});
        benchmark::DoNotOptimize(d.superflows.size());
    }
    state.SetItemsProcessed(int64_t(state.iterations()) * int64_t(flows.size()));
}
BENCHMARK(BM_Decompose)->Arg(1024)->Arg(16384);

void BM_CompactEncode(benchmark::State& state) {
    auto flows = scan_with_noise(1024);
    for (auto _ : state) {
        for (const auto& f : flows) {
            benchmark::DoNotOptimize(encode_compact(f));
        }
    }
    state.SetItemsProcessed(int64_t(state.iterations()) * int64_t(flows.size()));
}
BENCHMARK(BM_CompactEncode);

void BM_CsvParse(benchmark::State& state) {
    auto flows = scan_with_noise(1024);
    std::vector<std::string> lines;
    lines.reserve(flows.size());
    for (const auto& f : flows) lines.push_back(to_csv_line(f));
    for (auto _ : state) {
        for (const auto& line : lines) {
            benchmark::DoNotOptimize(parse_flow_csv(line));
        }
    }
    state.SetItemsProcessed(int64_t(state.iterations()) * int64_t(lines.size()));
}
BENCHMARK(BM_CsvParse);

void BM_ParseHypothesis(benchmark::State& state) {
    std::string text =
        "forall f, g in F: srcip(f) == srcip(g) and dstip(f) in 192.168.1.0/24 "
        "and tstart(g) - tstart(f) <= 10s;\n"
        "require count(distinct dstip(f)) >= 256;\n";
    for (auto _ : state) {
        benchmark::DoNotOptimize(parse_hypothesis(text));
    }
}
BENCHMARK(BM_ParseHypothesis);

} // namespace

BENCHMARK_MAIN();
