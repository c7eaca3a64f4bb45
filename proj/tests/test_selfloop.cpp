#include "doctest.h"

#include "acvass/oracle.hpp"
#include "acvass/selfloop.hpp"
#include "test_support.hpp"

using namespace acvass;
using namespace testutil;

namespace {

Machine doubling() {
    Machine m(1);
    int p = m.add_state("p");
    m.add_transition(p, IntMatrix{{2}}, iv({0}), p);
    return m;
}

}  // namespace

TEST_CASE("project") {
    Machine m(2);
    int p = m.add_state("p"), q = m.add_state("q");
    m.add_transition(p, IntMatrix{{2, 1}, {0, 1}}, iv({3, -1}), q);
    Machine all = project(m, {0, 1});
    CHECK(all.transition(0).identity);
    CHECK(all.transition(0).delta == iv({3, -1}));
    Machine one = project(m, {1});
    CHECK(one.dim() == 1);
    CHECK(one.transition(0).delta == iv({-1}));
    Machine none = project(m, {});
    CHECK(none.dim() == 0);
    CHECK(none.transition(0).from == p);
    CHECK(none.transition(0).to == q);
}

TEST_CASE("cyclic cover on the doubling machine") {
    Machine m = doubling();
    auto c = cyclic_cover(m, 0, rv({1}), rv({100}));
    REQUIRE(c);
    CHECK(c->x.empty());
    OracleAnswer o = bounded_decide(m, make_config(0, rv({1})), Target::cover(make_config(0, rv({100}))), 7);
    CHECK(o.found);

    CHECK_FALSE(cyclic_cover(m, 0, rv({0}), rv({1})));
    CHECK_FALSE(bounded_decide(m, make_config(0, rv({0})), Target::cover(make_config(0, rv({1}))), 10).found);

    auto z = cyclic_cover(m, 0, rv({0}), rv({0}));
    REQUIRE(z);
    CHECK(z->s.empty());
}

TEST_CASE("self-loop cover chains through states") {
    // p pumps counter 0 by doubling, the step to q pays 3 from it.
    Machine m(1);
    int p = m.add_state("p"), q = m.add_state("q");
    m.add_transition(p, IntMatrix{{2}}, iv({0}), p);
    m.add_transition(p, iv({-3}), q);
    Config from = make_config(p, rv({1}));
    Config to = make_config(q, rv({5}));
    SelfLoopResult r = selfloop_cover(m, from, to);
    REQUIRE(r.status == CoverStatus::Yes);
    REQUIRE(r.certificate);
    CHECK(r.certificate->cycles.size() == 2);
    CHECK(check_certificate(m, from, to, *r.certificate));
    CHECK(bounded_decide(m, from, Target::cover(to), 10).found);

    // Tampering breaks the certificate.
    CoverCertificate bad = *r.certificate;
    bad.steps[0].alpha = Rational(1, 1000);
    CHECK_FALSE(check_certificate(m, from, to, bad));

    Config empty = make_config(p, rv({0}));
    CHECK(selfloop_cover(m, empty, to).status == CoverStatus::No);
    CHECK_FALSE(bounded_decide(m, empty, Target::cover(to), 10).found);
}

TEST_CASE("self-loop cover rejects other classes") {
    Machine m(2);
    m.add_state("p");
    m.add_transition(0, IntMatrix{{0, 1}, {1, 0}}, iv({0, 0}), 0);
    CHECK_THROWS_AS(selfloop_cover(m, make_config(0, rv({0, 0})), make_config(0, rv({0, 0}))), ClassError);
}

TEST_CASE("pump_sequence") {
    Machine m = doubling();
    Config from = make_config(0, rv({1}));
    FiringSequence pi{{Rational(1), 0}};
    FiringSequence same = pump_sequence(m, from, pi, {}, Rational(100));
    CHECK(same == pi);
    FiringSequence pumped = pump_sequence(m, from, pi, {0}, Rational(100));
    Config end = run(m, from, pumped).trace.back();
    CHECK(end.values[0] > 100);

    Machine inc(1);
    inc.add_state("p");
    inc.add_transition(0, iv({1}), 0);
    CHECK_THROWS_AS(pump_sequence(inc, make_config(0, rv({0})), {{Rational(1), 0}}, {0}, Rational(10)), UsageError);
}

TEST_CASE("self-loop cover against the bounded oracle") {
    int yes = 0;
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
        GeneratorConfig cfg;
        cfg.seed = seed;
        cfg.family = Family::SelfLoop;
        cfg.dim_max = 2;
        cfg.states_max = 2;
        cfg.transitions_min = 2;
        cfg.transitions_max = 4;
        GeneratedInstance g = generate(cfg);
        SelfLoopResult r = selfloop_cover(g.machine, g.from, g.to);
        OracleAnswer o = bounded_decide(g.machine, g.from, Target::cover(g.to), 6);
        CAPTURE(seed);
        CHECK(r.status != CoverStatus::Budget);
        if (r.status == CoverStatus::Yes) ++yes;
        if (o.found) CHECK(r.status == CoverStatus::Yes);
        if (r.status == CoverStatus::No) CHECK_FALSE(bounded_decide(g.machine, g.from, Target::cover(g.to), 8).found);
    }
    CHECK(yes > 5);
}
