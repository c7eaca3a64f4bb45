#include "doctest.h"

#include "acvass/oracle.hpp"
#include "acvass/permreach.hpp"
#include "test_support.hpp"

using namespace acvass;
using namespace testutil;

namespace {

IntMatrix swap2() { return perm_matrix({1, 0}); }

}  // namespace

TEST_CASE("normalize") {
    Machine m(2);
    int p = m.add_state("p"), q = m.add_state("q");
    m.add_transition(p, iv({1, 0}), q);
    m.add_transition(q, swap2(), iv({0, 0}), p);
    std::vector<std::vector<int>> chains;
    Machine same = normalize(m, &chains);
    CHECK(same == m);
    CHECK(chains == std::vector<std::vector<int>>{{0}, {1}});

    m.add_transition(p, swap2(), iv({1, -1}), p);
    Machine n = normalize(m, &chains);
    CHECK(n.num_states() == 3);
    CHECK(chains[2].size() == 2);
    for (const auto& t : n.transitions()) CHECK((t.identity || is_zero(to_rational(t.delta))));
}

TEST_CASE("product of a swap machine") {
    Machine m(2);
    int p = m.add_state("p"), q = m.add_state("q");
    m.add_transition(p, swap2(), iv({0, 0}), q);
    m.add_transition(q, swap2(), iv({0, 0}), p);
    m.add_transition(q, iv({1, 0}), q);
    ProductMachine pm = build_product(m, p);
    // state and permutation stay in lockstep without a loop
    CHECK(pm.machine.num_states() == 2);
    CHECK(pm.find(q, {1, 0}) >= 0);
    CHECK(pm.find(q, {0, 1}) < 0);

    m.add_transition(p, swap2(), iv({0, 0}), p);
    pm = build_product(m, p);
    // |Q| times the order of the generated group
    CHECK(pm.machine.num_states() == 4);
    for (const auto& t : pm.machine.transitions()) CHECK(t.identity);
    CHECK(pm.find(q, {1, 0}) >= 0);
    CHECK(pm.find(q, {0, 1}) >= 0);

    Machine id(1);
    id.add_state("p");
    id.add_transition(0, iv({1}), 0);
    CHECK(build_product(id, 0).machine.num_states() == 1);
}

TEST_CASE("perm reach on the swap machine") {
    Machine m(2);
    int p = m.add_state("p"), q = m.add_state("q");
    m.add_transition(p, swap2(), iv({0, 0}), q);
    Config from = make_config(p, rv({1, 0}));
    auto w = perm_reach(m, from, make_config(q, rv({0, 1})));
    REQUIRE(w);
    CHECK(run(m, from, *w).trace.back() == make_config(q, rv({0, 1})));
    CHECK_FALSE(perm_reach(m, from, make_config(q, rv({1, 0}))));
    CHECK(perm_cover(m, from, make_config(q, rv({0, 1}))));
    CHECK(perm_cover(m, from, make_config(q, rv({0, 0}))));
    CHECK_FALSE(perm_cover(m, from, make_config(q, rv({1, 0}))));
}

TEST_CASE("perm reach with a mixed transition") {
    // rotate and add in one step, then drain the first counter
    Machine m(3);
    int p = m.add_state("p");
    m.add_transition(p, perm_matrix({1, 2, 0}), iv({1, 0, 0}), p);
    m.add_transition(p, iv({-1, 0, 0}), p);
    Config from = make_config(p, rv({0, 0, 0}));
    Config to = make_config(p, rv({0, 1, 1}));
    auto w = perm_reach(m, from, to);
    REQUIRE(w);
    CHECK(run(m, from, *w).trace.back() == to);
    CHECK(bounded_decide(m, from, Target::reach(to), 4).found);
}

TEST_CASE("perm reach agrees with cvass on identity machines") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        GeneratorConfig cfg;
        cfg.seed = seed;
        cfg.dim_max = 2;
        cfg.states_max = 2;
        GeneratedInstance g = reach_instance(cfg);
        CAPTURE(seed);
        CHECK(perm_reach(g.machine, g.from, g.to).has_value() == cvass_reach(g.machine, g.from, g.to).has_value());
    }
}

TEST_CASE("perm reach against the bounded oracle") {
    int yes = 0;
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        GeneratorConfig cfg;
        cfg.seed = seed;
        cfg.family = Family::Permutation;
        cfg.dim_min = 2;
        cfg.dim_max = 3;
        cfg.states_max = 2;
        cfg.transitions_max = 3;
        GeneratedInstance g = reach_instance(cfg);
        auto w = perm_reach(g.machine, g.from, g.to);
        OracleAnswer o = bounded_decide(g.machine, g.from, Target::reach(g.to), 5);
        CAPTURE(seed);
        if (w) {
            ++yes;
            CHECK(run(g.machine, g.from, *w).trace.back() == g.to);
        }
        if (o.found) CHECK(w.has_value());
    }
    CHECK(yes > 5);
}
