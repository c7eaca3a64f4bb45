#include "doctest.h"

#include "acvass/lra.hpp"

#include <random>

using namespace acvass;

namespace {

LinExpr x_(int v) { return LinExpr::var(v); }

}  // namespace

TEST_CASE("solve basic systems") {
    LinearSystem s;
    int x = s.add_var("x");
    s.add_gt(x_(x), 0);
    s.add(x_(x), Rel::LE, 1);
    s.add(LinExpr::var(x, 2), Rel::EQ, 1);
    auto m = solve(s);
    REQUIRE(m);
    CHECK((*m)[0] == Rational(1, 2));

    LinearSystem c;
    int a = c.add_var(), b = c.add_var();
    c.add(x_(a), Rel::LT, x_(b));
    c.add(x_(b), Rel::LT, x_(a));
    CHECK_FALSE(solve(c));

    LinearSystem tiny;
    int t = tiny.add_var();
    tiny.add_gt(x_(t), 0);
    tiny.add(x_(t), Rel::LT, LinExpr(Rational(1, 1000000000)));
    auto tm = solve(tiny);
    REQUIRE(tm);
    CHECK(sgn((*tm)[0]) > 0);
    CHECK((*tm)[0] < Rational(1, 1000000000));
}

TEST_CASE("strictness edge cases") {
    LinearSystem s;
    int x = s.add_var();
    s.add_ge(x_(x), 0);
    s.add(x_(x), Rel::LT, 0);
    CHECK_FALSE(solve(s));
    CHECK_FALSE(fm_satisfiable(s));

    LinearSystem e;
    int y = e.add_var();
    e.add_ge(x_(y), 0);
    e.add(x_(y), Rel::LE, 0);
    e.add(x_(y), Rel::EQ, 0);
    CHECK(solve(e));
    CHECK(fm_satisfiable(e));

    CHECK(solve(LinearSystem{}));
    CHECK(check_model(LinearSystem{}, {}));
}

TEST_CASE("check_model rejects a strict constraint at equality") {
    LinearSystem s;
    int x = s.add_var();
    s.add_gt(x_(x), 0);
    auto m = solve(s);
    REQUIRE(m);
    CHECK(check_model(s, *m));
    CHECK_FALSE(check_model(s, Model{Rational(0)}));
}

TEST_CASE("smt-lib emission") {
    LinearSystem empty;
    std::string e = emit_smtlib(empty);
    CHECK(e.find("(check-sat)") != std::string::npos);
    CHECK(e.find("declare-fun") == std::string::npos);

    LinearSystem s;
    int x = s.add_var("x");
    s.add_gt(x_(x), LinExpr(Rational(-1, 2)));
    CHECK(emit_smtlib(s) == emit_smtlib(s));
    CHECK(emit_smtlib(s).find("(declare-fun x0 () Real)") != std::string::npos);
}

TEST_CASE("eliminate") {
    LinearSystem s;
    int x = s.add_var("x"), y = s.add_var("y");
    s.add(x_(x), Rel::LT, x_(y));
    s.add_gt(x_(x), 0);
    LinearSystem p = eliminate(s, x);
    REQUIRE(p.constraints().size() == 1);
    const Constraint& c = p.constraints()[0];
    CHECK(c.rel == Rel::LT);
    // -y < 0
    REQUIRE(c.coeffs.size() == 1);
    CHECK(c.coeffs[0].first == y);
    CHECK(sgn(c.coeffs[0].second) < 0);
    CHECK(sgn(c.rhs) == 0);

    LinearSystem u;
    int z = u.add_var();
    u.add_gt(x_(z), 1);
    u.add(x_(z), Rel::LT, 0);
    LinearSystem g = eliminate(u, z);
    REQUIRE(g.constraints().size() == 1);
    CHECK(g.constraints()[0].coeffs.empty());
    CHECK_FALSE(holds(g.constraints()[0], {Rational(0)}));
}

TEST_CASE("simplex and Fourier-Motzkin agree on random systems") {
    std::mt19937_64 rng(12345);
    int sat = 0;
    for (int it = 0; it < 500; ++it) {
        LinearSystem s;
        int n = 1 + static_cast<int>(rng() % 6);
        for (int i = 0; i < n; ++i) s.add_var();
        int m = static_cast<int>(rng() % 13);
        for (int c = 0; c < m; ++c) {
            std::vector<std::pair<int, Rational>> co;
            for (int i = 0; i < n; ++i) {
                int k = static_cast<int>(rng() % 11) - 5;
                if (rng() % 2 && k) co.emplace_back(i, k);
            }
            s.add(co, static_cast<Rel>(rng() % 3), static_cast<long>(rng() % 11) - 5);
        }
        auto model = solve(s);
        CHECK(model.has_value() == fm_satisfiable(s));
        if (model) {
            ++sat;
            CHECK(check_model(s, *model));
            // projections of satisfiable systems stay satisfiable
            CHECK(fm_satisfiable(eliminate(s, 0)));
        }
    }
    CHECK(sat > 50);
}
