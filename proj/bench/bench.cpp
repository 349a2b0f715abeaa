#include <benchmark/benchmark.h>

#include <fstream>
#include <sstream>

#include "tel/datalog.hpp"
#include "tel/parser.hpp"
#include "tel/pipeline.hpp"
#include "tel/semantics/enumerate.hpp"

using namespace tel;

namespace {

syntax::Program load(const char* name) {
    std::ifstream in(std::string(TEL_DATA_DIR) + "/" + name);
    std::ostringstream text;
    text << in.rdbuf();
    return syntax::parse_program(text.str());
}

const semantics::GroundProgram& cars() {
    static const auto g = semantics::from_emitted(pipeline::emit_ground_program(load("cars.tel")).program);
    return g;
}

void BM_EnumerateParallel(benchmark::State& state) {
    const semantics::EnumerateOptions opts{2, static_cast<std::size_t>(state.range(0))};
    for (auto _ : state) benchmark::DoNotOptimize(semantics::enumerate_tsm(cars(), opts));
}

void BM_EnumerateSerial(benchmark::State& state) {
    const semantics::EnumerateOptions opts{2, static_cast<std::size_t>(state.range(0))};
    for (auto _ : state) benchmark::DoNotOptimize(semantics::enumerate_tsm_serial(cars(), opts));
}

// transitive closure of an n-cycle
std::vector<datalog::Rule> closure(std::size_t n) {
    using syntax::Term;
    std::vector<datalog::Rule> rules;
    auto v = [](std::size_t i) { return Term::constant("v" + std::to_string(i)); };
    for (std::size_t i = 0; i < n; ++i) rules.push_back({syntax::Atom{"e", {v(i), v((i + 1) % n)}}, {}, {}});
    const Term x = Term::variable("X"), y = Term::variable("Y"), z = Term::variable("Z");
    rules.push_back({syntax::Atom{"path", {x, y}}, {syntax::Atom{"e", {x, y}}}, {}});
    rules.push_back({syntax::Atom{"path", {x, z}}, {syntax::Atom{"path", {x, y}}, syntax::Atom{"e", {y, z}}}, {}});
    return rules;
}

void BM_SemiNaive(benchmark::State& state) {
    const auto rules = closure(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(datalog::least_model(rules));
}

void BM_Naive(benchmark::State& state) {
    const auto rules = closure(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(datalog::naive_fixpoint(rules));
}

void BM_EmitCars(benchmark::State& state) {
    const auto program = load("cars.tel");
    for (auto _ : state) benchmark::DoNotOptimize(pipeline::emit_ground_program(program));
}

} // namespace

BENCHMARK(BM_EnumerateParallel)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EnumerateSerial)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SemiNaive)->Arg(8)->Arg(16);
BENCHMARK(BM_Naive)->Arg(8)->Arg(16);
BENCHMARK(BM_EmitCars)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
