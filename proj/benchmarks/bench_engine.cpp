#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include "tsat/bdd.hpp"
#include "tsat/engine.hpp"
#include "tsat/parser.hpp"

namespace {

const char* const kRunning = "[]<>p & []<>~p";
const char* const kRing = "[]<>a & []<>b & []<>c & []~(a & b) & []~(b & c) & []~(a & c)";

void BM_Parse(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(tsat::parse("[]((p -> next <> q) & <>(~p | next q))"));
}
BENCHMARK(BM_Parse);

void BM_Translate(benchmark::State& state) {
    const tsat::Formula x = tsat::parse(kRing);
    for (auto _ : state) benchmark::DoNotOptimize(tsat::translate(x));
}
BENCHMARK(BM_Translate);

void BM_DecideFinite(benchmark::State& state) {
    tsat::DecideOptions o;
    o.mode = tsat::DecisionMode::Finite;
    for (auto _ : state) benchmark::DoNotOptimize(tsat::decide(kRunning, o));
}
BENCHMARK(BM_DecideFinite);

void BM_DecideInfinite(benchmark::State& state) {
    tsat::DecideOptions o;
    o.mode = tsat::DecisionMode::Infinite;
    const char* text = state.range(0) == 0 ? kRunning : kRing;
    for (auto _ : state) benchmark::DoNotOptimize(tsat::decide(text, o));
}
BENCHMARK(BM_DecideInfinite)->Arg(0)->Arg(1);

// Ring counter over n bits: reaching the all-ones state takes 2^n steps.
void BM_Counter(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    std::string text = "~b0";
    for (int i = 1; i < n; ++i) text += " & ~b" + std::to_string(i);
    std::string carry = "true";
    for (int i = 0; i < n; ++i) {
        const std::string b = "b" + std::to_string(i);
        text += " & [](more -> (next " + b + " <-> (" + b + " <-> ~(" + carry + "))))";
        carry = "(" + carry + ") & " + b;
    }
    text += " & <>(" + carry + ")";
    tsat::DecideOptions o;
    o.mode = tsat::DecisionMode::Finite;
    const tsat::Formula x = tsat::parse(text);
    for (auto _ : state) benchmark::DoNotOptimize(tsat::decide(x, o));
}
BENCHMARK(BM_Counter)->DenseRange(2, 6);

void BM_BddXorChain(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) names.push_back("v" + std::to_string(i));
    for (auto _ : state) {
        tsat::BddManager m{tsat::VariableContext(names)};
        tsat::BddRef f = tsat::BddManager::bdd_false();
        for (std::size_t i = 0; i < n; ++i) f = m.apply(tsat::BddOp::Xor, f, m.var(i, false));
        benchmark::DoNotOptimize(m.swap_primed(f));
    }
}
BENCHMARK(BM_BddXorChain)->Range(8, 64);

}  // namespace
BENCHMARK_MAIN();
