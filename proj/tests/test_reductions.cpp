#include "doctest.h"

#include "acvass/oracle.hpp"
#include "acvass/permreach.hpp"
#include "acvass/reductions.hpp"
#include "acvass/statereach.hpp"
#include "test_support.hpp"

#include <numeric>

using namespace acvass;
using namespace testutil;

namespace {

RatVector sum_pairs(const RatVector& v, const CounterLayout& l) {
    RatVector s;
    for (std::size_t i = 0; i < l.primary.size(); ++i) s.push_back(v[l.primary[i]] + v[l.complement[i]]);
    return s;
}

GeneratedZeroTest small_zerotest(std::uint64_t seed, int value_max = 2) {
    GeneratorConfig c;
    c.seed = seed;
    c.dim_max = 2;
    c.states_max = 2;
    c.transitions_min = 2;
    c.transitions_max = 4;
    c.value_max = value_max;
    return generate_zerotest(c);
}

}  // namespace

TEST_CASE("bp_solve examples") {
    BooleanProgram bp;
    bp.vars = 1;
    int p = bp.add_state("p"), q = bp.add_state("q"), r = bp.add_state("r");
    bp.transitions.push_back({p, q, BooleanProgram::Op::Test, 0, 1});
    CHECK(bp_solve(bp, {p, {0}}, p));
    CHECK_FALSE(bp_solve(bp, {p, {0}}, q));
    CHECK(bp_solve(bp, {p, {1}}, q));
    bp.transitions.push_back({p, r, BooleanProgram::Op::Set, 0, 1});
    bp.transitions.push_back({r, p, BooleanProgram::Op::Test, 0, 1});
    CHECK(bp_solve(bp, {p, {0}}, q));
    CHECK_THROWS_AS(bp_solve(bp, {p, {2}}, q), UsageError);
}

TEST_CASE("cover to reach") {
    Machine m(1);
    int p = m.add_state("p");
    m.add_transition(p, iv({2}), p);
    Config to = make_config(p, rv({3}));
    CoverToReach c = compile_cover_to_reach(m, to);
    CHECK(c.inst.machine.transitions().size() == m.transitions().size() + 2);
    CHECK(c.inst.machine.num_states() == 2);
    Config from = make_config(p, rv({0}));
    auto o = bounded_decide(c.inst.machine, from, Target::reach(*c.inst.to), 4);
    REQUIRE(o.found);
    FiringSequence back = pull_back_cover(c, o.witness);
    CHECK(run(m, from, back).trace.back().values[0] >= 3);

    // the zero target is plain state reachability
    CoverToReach z = compile_cover_to_reach(m, make_config(p, rv({0})));
    CHECK(bounded_decide(z.inst.machine, from, Target::reach(*z.inst.to), 1).found);

    for (std::uint64_t seed = 1; seed <= 25; ++seed) {
        GeneratorConfig cfg;
        cfg.seed = seed;
        cfg.dim_max = 2;
        cfg.states_max = 2;
        cfg.transitions_max = 3;
        GeneratedInstance g = generate(cfg);
        CoverToReach cr = compile_cover_to_reach(g.machine, g.to);
        bool src = bounded_decide(g.machine, g.from, Target::cover(g.to), 3).found;
        // one bridge plus at most one drain per counter
        bool tgt = bounded_decide(cr.inst.machine, g.from, Target::reach(*cr.inst.to), 3 + 1 + g.machine.dim()).found;
        CAPTURE(seed);
        if (src) CHECK(tgt);
        if (tgt) CHECK(bounded_decide(g.machine, g.from, Target::cover(g.to), 3 + 1 + g.machine.dim()).found);
    }
}

TEST_CASE("zero-test to 1-bounded layout") {
    ZeroTestMachine m;
    m.dim = 1;
    int p = m.add_state("p"), q = m.add_state("q");
    m.transitions.push_back({p, q, iv({3})});
    m.tests.push_back({q, p, 0});
    Config from = make_config(p, {Rational(1, 2)});
    Config to = make_config(q, {Rational(2)});
    CompiledInstance c = compile_zerotest_to_onebounded(m, from, to);
    REQUIRE(c.zmachine);
    CHECK(c.one_bounded);
    CHECK(c.zmachine->dim == 4);
    // p, q, one intermediate state, p_i and q_f
    CHECK(c.zmachine->states.size() == 5);
    CHECK(c.zmachine->transitions.size() == 2 * m.transitions.size() + 2);
    CHECK(c.zmachine->tests.size() == 1);
    RatVector st = {Rational(0), Rational(0), Rational(0), Rational(1)};
    CHECK(c.from->values == st);
    CHECK(c.to->values == st);

    ZSequence src = {{false, 0, Rational(1, 2)}};
    CHECK(zrun(m, from, src).trace.back() == to);
    ZSequence tgt = translate_onebounded_witness(c, m, from, to, src);
    ZRunResult r = zrun(*c.zmachine, *c.from, tgt, true);
    REQUIRE(r.ok);
    CHECK(r.trace.back() == *c.to);
}

TEST_CASE("zero-test chain differentials") {
    const int b = 3, big = 2 * b + 2;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        GeneratedZeroTest g = small_zerotest(seed);
        CompiledInstance ob = compile_zerotest_to_onebounded(g.machine, g.from, g.to);
        CompiledInstance rs = compile_onebounded_to_reset(*ob.zmachine, *ob.from, *ob.to);
        CAPTURE(seed);
        auto src_reach = bounded_decide_zerotest(g.machine, g.from, Target::reach(g.to), b);
        auto src_cover = bounded_decide_zerotest(g.machine, g.from, Target::cover(g.to), b);
        auto ob_reach = bounded_decide_zerotest(*ob.zmachine, *ob.from, Target::reach(*ob.to), big, true);
        auto ob_cover = bounded_decide_zerotest(*ob.zmachine, *ob.from, Target::cover(*ob.to), big, true);
        // covering the complementary encoding forces equality on every pair
        auto rs_cover = bounded_decide(rs.machine, *rs.from, Target::cover(*rs.to), big);
        if (src_reach.found) {
            CHECK(ob_reach.found);
            CHECK(rs_cover.found);
            ZSequence w = translate_onebounded_witness(ob, g.machine, g.from, g.to, src_reach.witness);
            ZRunResult r = zrun(*ob.zmachine, *ob.from, w, true);
            CHECK(r.ok);
            CHECK(r.trace.back() == *ob.to);
        }
        if (src_cover.found) CHECK(ob_cover.found);
        if (ob_reach.found || rs_cover.found)
            CHECK(bounded_decide_zerotest(g.machine, g.from, Target::reach(g.to), big - 2).found);
        if (ob_cover.found) CHECK(bounded_decide_zerotest(g.machine, g.from, Target::cover(g.to), big - 2).found);
    }
}

TEST_CASE("1-bounded to reset") {
    ZeroTestMachine m;
    m.dim = 1;
    int p = m.add_state("p"), q = m.add_state("q");
    m.transitions.push_back({p, p, iv({1})});
    m.transitions.push_back({p, p, iv({-1})});
    m.tests.push_back({p, q, 0});
    Config from = make_config(p, rv({0})), to = make_config(q, rv({0}));
    CompiledInstance c = compile_onebounded_to_reset(m, from, to);
    CHECK(c.machine.dim() == 2);
    CHECK(c.machine.transitions().size() == 3);
    CHECK(c.machine.transition(2).matrix == reset_matrix(2, 0));
    CHECK(c.from->values == rv({0, 1}));

    ZSequence src = {{false, 0, Rational(1, 2)}, {false, 1, Rational(1, 2)}, {true, 0, Rational(0)}};
    REQUIRE(zrun(m, from, src, true).ok);
    FiringSequence tgt = translate_witness(c, src);
    RunResult r = run(c.machine, *c.from, tgt);
    REQUIRE(r.ok);
    for (const auto& cfg : r.trace) CHECK(sum_pairs(cfg.values, c.layout) == rv({1}));
    CHECK(r.trace.back() == *c.to);

    CHECK_THROWS_AS(compile_onebounded_to_reset(m, make_config(p, rv({2})), to), UsageError);
}

TEST_CASE("normalize resets") {
    Machine m(2);
    int p = m.add_state("p");
    IntMatrix both(2);  // resets both counters
    m.add_transition(p, both, iv({1, 0}), p);
    std::vector<std::vector<int>> chains;
    Machine n = normalize_resets(m, &chains);
    CHECK(chains[0].size() == 3);
    for (const auto& t : n.transitions()) {
        int zeros_on_diag = 0;
        for (int i = 0; i < 2; ++i) zeros_on_diag += t.matrix(i, i) == 0;
        CHECK(zeros_on_diag <= 1);
        if (zeros_on_diag) CHECK(is_zero(to_rational(t.delta)));
    }
    Config from = make_config(p, rv({1, 1}));
    FiringSequence orig = {{Rational(1, 2), 0}};
    FiringSequence split;
    for (int id : chains[0]) split.push_back({Rational(1, 2), id});
    CHECK(run(n, from, split).trace.back() == run(m, from, orig).trace.back());
}

TEST_CASE("reset to zero row or column") {
    Machine m(2);
    int p = m.add_state("p"), q = m.add_state("q");
    m.add_transition(p, iv({1, 1}), p);
    m.add_transition(p, reset_matrix(2, 1), iv({0, 0}), q);

    IntMatrix diag{{0, 0}, {0, 1}};
    CompiledInstance c = compile_reset_to_zero_row_col(m, diag, 0);
    CHECK(c.layout.primary == std::vector<int>{0, 2});
    const Transition& t = c.machine.transition(1);
    // restricted to primary counters the compiled move is the original reset
    CHECK(t.matrix(0, 0) == 1);
    CHECK(t.matrix(2, 2) == 0);

    // column case: dummy counters stay zero along translated runs
    IntMatrix col{{0, 1}, {0, 1}};
    Config from = make_config(p, rv({0, 0}));
    CompiledInstance cc = compile_reset_to_zero_row_col(m, col, 0, from);
    CHECK_FALSE(cc.layout.free_dummies);
    FiringSequence src = {{Rational(1, 2), 0}, {Rational(1), 1}};
    RunResult r = run(cc.machine, *cc.from, translate_witness(cc, src));
    REQUIRE(r.ok);
    for (const auto& cfg : r.trace) CHECK(decode(cc.layout, cfg.values).has_value());
    CHECK(*decode(cc.layout, r.trace.back().values) == run(m, from, src).trace.back().values);

    CHECK_THROWS_AS(compile_reset_to_zero_row_col(m, IntMatrix{{1, 1}, {1, 1}}), UsageError);

    // Boolean programs through reset machines into zero-row machines
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        GeneratorConfig cfg;
        cfg.seed = seed;
        cfg.dim_max = 2;
        cfg.states_min = 2;
        cfg.states_max = 3;
        cfg.transitions_max = 5;
        GeneratedBoolean g = generate_boolean(cfg);
        CompiledBoolean rb = compile_boolean_to_reset(g.program);
        Config start = rb.encode(g.from);
        for (const IntMatrix& a : {IntMatrix{{0, 0}, {1, 1}}, IntMatrix{{0, 1}, {0, 1}}}) {
            CompiledInstance z = compile_reset_to_zero_row_col(rb.machine, a, -1, start);
            CAPTURE(seed);
            CHECK(solve_state_reach(z.machine, *z.from, z.state_map[rb.state_map[g.to]]).has_value() ==
                  bp_solve(g.program, g.from, g.to));
        }
    }
}

TEST_CASE("zero-test to negative entry") {
    ZeroTestMachine m;
    m.dim = 1;
    int p = m.add_state("p"), q = m.add_state("q");
    m.transitions.push_back({p, p, iv({1})});
    m.tests.push_back({p, q, 0});
    CompiledInstance c = compile_zerotest_to_negative(m, IntMatrix{{-1}}, -1, make_config(p, rv({0})));
    CHECK(c.machine.dim() == 1);
    const Transition& test = c.machine.transition(1);
    CHECK(test.matrix == IntMatrix{{-1}});
    CHECK(step(c.machine, make_config(p, rv({0})), Rational(1), 1).has_value());
    CHECK_FALSE(step(c.machine, make_config(p, rv({1})), Rational(1), 1).has_value());

    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        GeneratedZeroTest g = small_zerotest(seed + 100);
        for (const IntMatrix& a : {IntMatrix{{-1}}, IntMatrix{{1, -1}, {0, 1}}}) {
            CompiledInstance n = compile_zerotest_to_negative(g.machine, a, -1, g.from);
            CAPTURE(seed);
            bool src = bounded_decide_zerotest(g.machine, g.from, Target::state_only(g.to.state), 3).found;
            bool tgt = bounded_decide(n.machine, *n.from, Target::state_only(g.to.state), 3).found;
            CHECK(src == tgt);
        }
    }
}

TEST_CASE("1-bounded to weighted") {
    ZeroTestMachine m;
    m.dim = 1;
    int p = m.add_state("p");
    m.transitions.push_back({p, p, iv({1})});
    m.tests.push_back({p, p, 0});
    IntMatrix a{{2}};
    Config from = make_config(p, {Rational(1, 2)});
    CompiledInstance c = compile_onebounded_to_weighted(m, a, -1, from);
    CHECK(c.machine.dim() == 2);
    CHECK(c.machine.transition(0).delta == iv({1, -1}));
    CHECK(c.from->values == RatVector{Rational(1, 2), Rational(1, 2)});
    // a good configuration with a positive primary value turns bad
    auto bad = step(c.machine, *c.from, Rational(1), 1);
    REQUIRE(bad);
    CHECK(sum_pairs(bad->values, c.layout)[0] > 1);
    CHECK_FALSE(decode(c.layout, bad->values).has_value());
    CHECK_THROWS_AS(compile_onebounded_to_weighted(m, IntMatrix{{1}}), UsageError);

    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        GeneratedZeroTest g = small_zerotest(seed + 200, 1);
        for (const IntMatrix& w : {IntMatrix{{2}}, IntMatrix{{1, 1}, {1, 0}}}) {
            CompiledInstance n = compile_onebounded_to_weighted(g.machine, w, -1, g.from, g.to);
            CAPTURE(seed);
            bool src = bounded_decide_zerotest(g.machine, g.from, Target::reach(g.to), 3, true).found;
            bool tgt = bounded_decide(n.machine, *n.from, Target::reach(*n.to), 3).found;
            CHECK(src == tgt);
        }
    }
}

TEST_CASE("boolean programs to reset machines") {
    BooleanProgram bp;
    bp.vars = 1;
    int p = bp.add_state("p"), q = bp.add_state("q");
    bp.transitions.push_back({p, q, BooleanProgram::Op::Test, 0, 1});
    CompiledBoolean c = compile_boolean_to_reset(bp);
    CHECK(c.machine.transitions().size() == 2);
    CHECK(c.machine.dim() == 2);
    Config good = c.encode({p, {1}});
    CHECK(c.decode(good)->bits == std::vector<int>{1});
    // both counters zero: the test cannot fire
    CHECK_FALSE(step(c.machine, make_config(p, rv({0, 0})), Rational(1, 2), 0).has_value());
    CHECK(step(c.machine, good, Rational(1, 2), 0).has_value());
}

TEST_CASE("boolean programs to permutation machines") {
    IntMatrix swap = perm_matrix({1, 0});
    CHECK(matrix_order(swap) == 2);
    CHECK(matrix_order(perm_matrix({1, 2, 0})) == 3);
    CHECK(power(swap, matrix_order(swap) - 1) == swap);

    BooleanProgram bp;
    bp.vars = 1;
    int p = bp.add_state("p"), q = bp.add_state("q");
    bp.transitions.push_back({p, q, BooleanProgram::Op::Set, 0, 1});
    CompiledBoolean c = compile_boolean_to_perm(bp, swap);
    CHECK(c.machine.dim() == 2);
    CHECK(c.machine.transitions().size() == 6);
    CHECK_THROWS_AS(compile_boolean_to_perm(bp, identity(2)), UsageError);
    // from a good configuration exactly one branch of the set gadget opens
    for (int bit = 0; bit <= 1; ++bit) {
        Config good = c.encode({p, {bit}});
        bool branch0 = step(c.machine, good, Rational(1), 0).has_value();
        bool branch1 = step(c.machine, good, Rational(1), 1).has_value();
        CHECK(branch0 != branch1);
    }

    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        GeneratorConfig cfg;
        cfg.seed = seed;
        cfg.dim_max = 2;
        cfg.states_min = 2;
        cfg.states_max = 3;
        cfg.transitions_max = 5;
        GeneratedBoolean g = generate_boolean(cfg);
        bool expect = bp_solve(g.program, g.from, g.to);
        CompiledBoolean r = compile_boolean_to_reset(g.program);
        CompiledBoolean pm = compile_boolean_to_perm(g.program, seed % 2 ? swap : perm_matrix({1, 2, 0}));
        CAPTURE(seed);
        CHECK(solve_state_reach(r.machine, r.encode(g.from), r.state_map[g.to]).has_value() == expect);
        Config zero = make_config(pm.state_map[g.to], zeros(pm.machine.dim()));
        auto w = perm_cover(pm.machine, pm.encode(g.from), zero);
        CHECK(w.has_value() == expect);
        if (w) {
            RunResult rr = run(pm.machine, pm.encode(g.from), *w);
            REQUIRE(rr.ok);
            CHECK(rr.trace.back().state == pm.state_map[g.to]);
        }
    }
}
