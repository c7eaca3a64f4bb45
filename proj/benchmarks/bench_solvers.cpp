#include "acvass/cvass.hpp"
#include "acvass/generator.hpp"
#include "acvass/lra.hpp"
#include "acvass/oracle.hpp"
#include "acvass/permreach.hpp"
#include "acvass/reductions.hpp"
#include "acvass/selfloop.hpp"
#include "acvass/statereach.hpp"
#include "test_support.hpp"

#include <benchmark/benchmark.h>

using namespace acvass;

namespace {

std::vector<GeneratedInstance> corpus(Family f, int dim_max, int count) {
    std::vector<GeneratedInstance> out;
    for (int s = 1; s <= count; ++s) {
        GeneratorConfig c;
        c.seed = 1000 + s;
        c.family = f;
        c.dim_max = dim_max;
        c.states_max = 3;
        c.transitions_max = 4;
        out.push_back(testutil::reach_instance(c));
    }
    return out;
}

LinearSystem random_system(std::uint64_t seed, int vars, int rows) {
    Rng rng(seed);
    LinearSystem sys;
    for (int v = 0; v < vars; ++v) sys.add_var();
    for (int r = 0; r < rows; ++r) {
        std::vector<std::pair<int, Rational>> row;
        for (int v = 0; v < vars; ++v)
            if (int c = rng.uniform(-3, 3)) row.emplace_back(v, Rational(c));
        Rel rel = rng.coin() ? Rel::LE : (rng.coin() ? Rel::LT : Rel::EQ);
        sys.add(row, rel, Rational(rng.uniform(-4, 6)));
    }
    return sys;
}

void BM_Simplex(benchmark::State& st) {
    std::vector<LinearSystem> systems;
    for (int s = 0; s < 32; ++s) systems.push_back(random_system(s, static_cast<int>(st.range(0)), 2 * st.range(0)));
    for (auto _ : st)
        for (const auto& sys : systems) benchmark::DoNotOptimize(solve(sys));
}
BENCHMARK(BM_Simplex)->Arg(4)->Arg(8)->Arg(16);

void BM_FourierMotzkin(benchmark::State& st) {
    std::vector<LinearSystem> systems;
    for (int s = 0; s < 32; ++s) systems.push_back(random_system(s, static_cast<int>(st.range(0)), 2 * st.range(0)));
    for (auto _ : st)
        for (const auto& sys : systems) benchmark::DoNotOptimize(fm_satisfiable(sys));
}
BENCHMARK(BM_FourierMotzkin)->Arg(3)->Arg(5);

void BM_CvassReach(benchmark::State& st) {
    auto cs = corpus(Family::Identity, static_cast<int>(st.range(0)), 20);
    for (auto _ : st)
        for (const auto& g : cs) benchmark::DoNotOptimize(cvass_reach(g.machine, g.from, g.to));
}
BENCHMARK(BM_CvassReach)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_PermReach(benchmark::State& st) {
    auto cs = corpus(Family::Permutation, static_cast<int>(st.range(0)), 20);
    for (auto _ : st)
        for (const auto& g : cs) benchmark::DoNotOptimize(perm_reach(g.machine, g.from, g.to));
}
BENCHMARK(BM_PermReach)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_StateReach(benchmark::State& st) {
    auto cs = corpus(Family::NonNegative, static_cast<int>(st.range(0)), 20);
    for (auto _ : st)
        for (const auto& g : cs) benchmark::DoNotOptimize(solve_state_reach(g.machine, g.from, g.to.state));
}
BENCHMARK(BM_StateReach)->Arg(3)->Arg(6)->Unit(benchmark::kMicrosecond);

void BM_SelfLoopCover(benchmark::State& st) {
    auto cs = corpus(Family::SelfLoop, 2, 20);
    for (auto _ : st)
        for (const auto& g : cs) benchmark::DoNotOptimize(selfloop_cover(g.machine, g.from, g.to));
}
BENCHMARK(BM_SelfLoopCover)->Unit(benchmark::kMillisecond);

void BM_Oracle(benchmark::State& st) {
    auto cs = corpus(Family::Identity, 2, 10);
    for (auto _ : st)
        for (const auto& g : cs)
            benchmark::DoNotOptimize(bounded_decide(g.machine, g.from, Target::reach(g.to), static_cast<int>(st.range(0))));
}
BENCHMARK(BM_Oracle)->Arg(3)->Arg(5)->Unit(benchmark::kMillisecond);

void BM_BooleanPipelines(benchmark::State& st) {
    std::vector<GeneratedBoolean> ps;
    for (int s = 1; s <= 20; ++s) {
        GeneratorConfig c;
        c.seed = s;
        c.states_min = 2;
        c.states_max = 4;
        c.transitions_max = 6;
        ps.push_back(generate_boolean(c));
    }
    const IntMatrix swap = perm_matrix({1, 0});
    for (auto _ : st) {
        for (const auto& g : ps) {
            CompiledBoolean r = compile_boolean_to_reset(g.program);
            benchmark::DoNotOptimize(solve_state_reach(r.machine, r.encode(g.from), r.state_map[g.to]));
            CompiledBoolean p = compile_boolean_to_perm(g.program, swap);
            Config zero = make_config(p.state_map[g.to], zeros(p.machine.dim()));
            benchmark::DoNotOptimize(perm_cover(p.machine, p.encode(g.from), zero));
        }
    }
}
BENCHMARK(BM_BooleanPipelines)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
