// Property and differential checks over seeded corpora. Prints one line per
// criterion; exits non-zero if any fails.

#include "acvass/classify.hpp"
#include "acvass/cvass.hpp"
#include "acvass/generator.hpp"
#include "acvass/lra.hpp"
#include "acvass/oracle.hpp"
#include "acvass/permreach.hpp"
#include "acvass/reductions.hpp"
#include "acvass/selfloop.hpp"
#include "acvass/semantics.hpp"
#include "acvass/statereach.hpp"
#include "cli.hpp"
#include "test_support.hpp"

#include <chrono>
#include <algorithm>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

using namespace acvass;
using namespace testutil;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
    std::vector<std::string> failures;

    void fail(const std::string& what) {
        pass = false;
        if (failures.size() < 5) failures.push_back(what);
    }
};

struct Criterion {
    int id;
    const char* name;
    double limit_seconds;  // 0: none
    std::function<Outcome()> check;
};

std::string seed_msg(const char* what, std::uint64_t seed) { return std::string(what) + " (seed " + std::to_string(seed) + ")"; }

// A run of up to `len` random steps; at least one step when possible.
struct SampledRun {
    Machine machine;
    Config from;
    FiringSequence seq;
    std::vector<Config> trace;
};

SampledRun sample_run(const GeneratorConfig& cfg, int len) {
    GeneratedInstance g = generate(cfg);
    Rng rng(cfg.seed * 31 + 7);
    SampledRun s{g.machine, g.from, random_run(g.machine, g.from, len, rng), {}};
    s.trace = run(s.machine, s.from, s.seq).trace;
    return s;
}

// Self-loop runs that return to their start state, cut at the last return.
std::vector<SampledRun> cyclic_runs(int count, std::uint64_t base) {
    std::vector<SampledRun> out;
    for (std::uint64_t seed = base; static_cast<int>(out.size()) < count; ++seed) {
        GeneratorConfig c;
        c.seed = seed;
        c.family = Family::SelfLoop;
        c.dim_max = 3;
        c.states_max = 2;
        c.transitions_min = 2;
        c.transitions_max = 4;
        SampledRun s = sample_run(c, 6);
        std::size_t cut = 0;
        for (std::size_t i = 1; i < s.trace.size(); ++i)
            if (s.trace[i].state == s.from.state) cut = i;
        if (cut == 0) continue;
        s.seq.resize(cut);
        s.trace.resize(cut + 1);
        out.push_back(std::move(s));
    }
    return out;
}

RatVector scaled(const Rational& a, RatVector v) {
    for (auto& x : v) x *= a;
    return v;
}

RatVector plus(RatVector a, const RatVector& b) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
    return a;
}

// Counters x pumped at some step whose pumping support meets supp(end).
std::vector<int> pumpable(const SampledRun& s) {
    const Mask end = support_mask(s.trace.back().values);
    std::set<int> out;
    for (std::size_t i = 0; i < s.seq.size(); ++i) {
        const Transition& t = s.machine.transition(s.seq[i].transition);
        for (int x = 0; x < s.machine.dim(); ++x) {
            Mask p = supp_pump(t, x);
            if ((p & support_mask(s.trace[i].values)) && (p & end)) out.insert(x);
        }
    }
    return {out.begin(), out.end()};
}

// States reachable from `from` in the underlying graph, ignoring counters.
std::vector<int> graph_reachable(const Machine& m, int from) {
    std::vector<bool> seen(m.num_states());
    std::vector<int> stack = {from}, out;
    seen[from] = true;
    while (!stack.empty()) {
        int q = stack.back();
        stack.pop_back();
        out.push_back(q);
        for (const Transition& t : m.transitions())
            if (t.from == q && !seen[t.to]) {
                seen[t.to] = true;
                stack.push_back(t.to);
            }
    }
    std::sort(out.begin(), out.end());
    return out;
}

// Moves the target onto a graph-reachable state so that negative answers
// come from the counters, not the control graph.
void retarget(GeneratedInstance& g, std::uint64_t seed, bool zero_start) {
    Rng rng(seed * 13 + 5);
    std::vector<int> qs = graph_reachable(g.machine, g.from.state);
    g.to.state = qs[rng.uniform(0, static_cast<int>(qs.size()) - 1)];
    if (zero_start && rng.uniform(0, 1) == 0)
        for (auto& v : g.from.values) v = 0;
}

Outcome marking_equation() {
    Outcome o;
    const Family families[] = {Family::Identity,   Family::Permutation, Family::Reset,
                               Family::SelfLoop,   Family::NonNegative, Family::Arbitrary};
    int steps = 0;
    for (std::uint64_t seed = 1; seed <= 500; ++seed) {
        GeneratorConfig c;
        c.seed = seed;
        c.family = families[seed % 6];
        SampledRun s = sample_run(c, 6);
        steps += static_cast<int>(s.seq.size());
        RunResult r = run(s.machine, s.from, s.seq);
        if (!r.ok) o.fail(seed_msg("sampled run does not replay", seed));
        else if (marking_eval(s.machine, s.from.values, s.seq) != r.trace.back().values)
            o.fail(seed_msg("closed form differs from the run", seed));
    }
    o.detail = "500 runs, " + std::to_string(steps) + " steps, exact";
    return o;
}

Outcome basic_facts() {
    Outcome o;
    Rng rng(2024);
    const Rational fracs[] = {Rational(1, 3), Rational(1, 2), Rational(3, 4), Rational(1)};
    int runs = 0;
    for (std::uint64_t seed = 1; runs < 200; ++seed) {
        GeneratorConfig c;
        c.seed = 300 + seed;
        c.family = Family::SelfLoop;
        SampledRun s = sample_run(c, 5);
        if (s.seq.empty()) continue;
        ++runs;
        const RatVector& u = s.from.values;
        const Config& v = s.trace.back();
        const Rational a = fracs[rng.uniform(0, 3)];
        RatVector w = random_values(rng, s.machine.dim(), 3, 2);

        RunResult r1 = run(s.machine, Config{s.from.state, scaled(a, u)}, scale_seq(a, s.seq));
        if (!r1.ok || r1.trace.back() != Config{v.state, scaled(a, v.values)}) o.fail(seed_msg("scaling", c.seed));

        RunResult r2 = run(s.machine, Config{s.from.state, plus(u, w)}, s.seq);
        if (!r2.ok || !geq(r2.trace.back().values, plus(v.values, w))) o.fail(seed_msg("monotonicity", c.seed));

        RunResult r3 = run(s.machine, s.from, scale_seq(a, s.seq));
        if (!r3.ok || !geq(r3.trace.back().values, plus(scaled(a, v.values), scaled(1 - a, u))))
            o.fail(seed_msg("convexity", c.seed));
    }
    o.detail = "200 runs x 3 claims";
    return o;
}

Outcome rep_half_checks() {
    Outcome o;
    int checks = 0;
    for (const SampledRun& s : cyclic_runs(200, 1)) {
        FiringSequence h = rep_half(s.seq);
        Rational scale = 1;
        for (std::size_t i = 0; i < h.size(); ++i) {
            scale /= 2;
            if (h[i].transition != s.seq[i].transition || h[i].alpha != s.seq[i].alpha * scale)
                o.fail("fractions are not halved");
        }
        RunResult r = run(s.machine, s.from, h);
        if (!r.ok || r.trace.back().state != s.from.state) {
            o.fail("halved run does not replay");
            continue;
        }
        const Mask w = support_mask(r.trace.back().values);
        if ((support_mask(s.from.values) & ~w) != 0) o.fail("support shrinks");
        for (std::size_t i = 0; i < s.seq.size(); ++i) {
            const Transition& t = s.machine.transition(s.seq[i].transition);
            for (int x = 0; x < s.machine.dim(); ++x) {
                if (sgn(t.delta[x]) > 0 && !(w & (1UL << x))) o.fail("increment leaves no residue");
                if (sgn(t.delta[x]) < 0 && !(supp_minus(t, x) & w)) o.fail("decrement support lost");
                Mask p = supp_pump(t, x);
                if ((p & support_mask(s.trace[i].values)) && !(p & w)) o.fail("pumping support lost");
                ++checks;
            }
        }
    }
    o.detail = "200 cyclic runs, " + std::to_string(checks) + " counter checks";
    return o;
}

Outcome pumping() {
    Outcome o;
    int instances = 0, pumped = 0;
    for (std::uint64_t base = 1000; instances < 100; base += 50) {
        for (const SampledRun& s : cyclic_runs(50, base)) {
            if (instances == 100) break;
            std::vector<int> xs = pumpable(s);
            if (xs.empty()) continue;
            ++instances;
            pumped += static_cast<int>(xs.size());
            for (long k : {10L, 1000L}) {
                FiringSequence p = pump_sequence(s.machine, s.from, s.seq, xs, Rational(k));
                const std::size_t l = s.seq.size();
                if (p.size() % l != 0 || p.size() < 2 * l) {
                    o.fail("unexpected sequence shape");
                    continue;
                }
                const long n = static_cast<long>(p.size() / l) - 1;
                for (std::size_t i = 0; i < p.size(); ++i) {
                    const FiringStep& orig = s.seq[i % l];
                    Rational want = i < l ? orig.alpha / 2 : orig.alpha / (2 * n);
                    if (p[i].transition != orig.transition || p[i].alpha != want) {
                        o.fail("sequence is not pi/2 (pi/2n)^n");
                        break;
                    }
                }
                RunResult r = run(s.machine, s.from, p);
                if (!r.ok || r.trace.back().state != s.from.state) {
                    o.fail("pumped run does not replay");
                    continue;
                }
                if (!geq(r.trace.back().values, s.trace.back().values)) o.fail("pumped run loses the end values");
                for (int x : xs)
                    if (r.trace.back().values[x] <= k) o.fail("pumped counter stays below K");
            }
        }
    }
    o.detail = "100 runs, " + std::to_string(pumped) + " pumped counters, K in {10, 1000}";
    return o;
}

Outcome derived_permutations() {
    Outcome o;
    long total = 0, antecedent = 0;
    for (int n = 1; n <= 3; ++n) {
        const int cells = n * n;
        long count = 1;
        for (int i = 0; i < cells; ++i) count *= 3;
        for (long code = 0; code < count; ++code) {
            IntMatrix a(n);
            long c = code;
            for (int i = 0; i < cells; ++i, c /= 3) a(i / n, i % n) = c % 3;
            ++total;
            try {
                if (derived_permutation_check(a)) ++antecedent;
            } catch (const InternalError& e) {
                o.fail(e.what());
            }
        }
    }
    // 1! + 2! + 3! permutation matrices
    if (antecedent != 9) o.fail("expected exactly 9 matrices to satisfy the antecedent");
    o.detail = std::to_string(total) + " matrices, " + std::to_string(antecedent) + " permutations, 0 counterexamples";
    return o;
}

Outcome state_reach() {
    Outcome o;
    int yes = 0;
    long paths = 0;
    for (std::uint64_t seed = 1; seed <= 200; ++seed) {
        GeneratorConfig c;
        c.seed = 5000 + seed;
        c.family = Family::NonNegative;
        c.states_min = 2;
        c.transitions_min = 3;
        c.transitions_max = 6;
        GeneratedInstance g = generate(c);
        retarget(g, c.seed, true);
        const int q = g.to.state;
        auto path = solve_state_reach(g.machine, g.from, q);
        if (path) {
            ++yes;
            RunResult r = run(g.machine, g.from, concretize(g.machine, g.from, *path));
            if (!r.ok || r.trace.back().state != q) o.fail(seed_msg("witness does not replay", c.seed));
        } else {
            OracleAnswer a = bounded_decide(g.machine, g.from, Target::state_only(q), 8);
            paths += a.paths_checked;
            if (a.found) o.fail(seed_msg("oracle finds a witness for a No", c.seed));
        }
    }
    o.detail = "200 machines, " + std::to_string(yes) + " yes, " + std::to_string(200 - yes) +
               " no confirmed to length 8 (" + std::to_string(paths) + " oracle paths)";
    return o;
}

Outcome cvass_vs_oracle() {
    Outcome o;
    int yes = 0;
    for (std::uint64_t seed = 1; seed <= 200; ++seed) {
        GeneratorConfig c;
        c.seed = 7000 + seed;
        c.transitions_max = 5;
        GeneratedInstance g = reach_instance(c);
        auto w = cvass_reach(g.machine, g.from, g.to);
        if (w) {
            ++yes;
            RunResult r = run(g.machine, g.from, *w);
            if (!r.ok || r.trace.back() != g.to) o.fail(seed_msg("witness does not reach the target", c.seed));
        } else if (bounded_decide(g.machine, g.from, Target::reach(g.to), 8).found) {
            o.fail(seed_msg("oracle finds a witness for a No", c.seed));
        }
    }
    o.detail = "200 machines, " + std::to_string(yes) + " yes, " + std::to_string(200 - yes) + " no confirmed to length 8";
    return o;
}

Outcome selfloop_vs_oracle() {
    Outcome o;
    int yes = 0, pairs = 0;
    long paths = 0;
    std::vector<GeneratedInstance> yes_cases, no_cases;
    for (std::uint64_t seed = 1; seed <= 150; ++seed) {
        GeneratorConfig c;
        c.seed = 8000 + seed;
        c.family = Family::SelfLoop;
        c.dim_max = 2;
        c.states_max = 2;
        c.transitions_min = 2;
        c.transitions_max = 5;
        c.value_max = 3;
        c.delta_max = 1;
        GeneratedInstance g = generate(c);
        retarget(g, c.seed, false);
        SelfLoopResult r = selfloop_cover(g.machine, g.from, g.to);
        if (r.status == CoverStatus::Budget) {
            o.fail(seed_msg("search budget exceeded", c.seed));
        } else if (r.status == CoverStatus::Yes) {
            ++yes;
            if (!check_certificate(g.machine, g.from, g.to, *r.certificate))
                o.fail(seed_msg("certificate rejected", c.seed));
            yes_cases.push_back(g);
        } else {
            OracleAnswer a = bounded_decide(g.machine, g.from, Target::cover(g.to), 10);
            paths += a.paths_checked;
            if (a.found) o.fail(seed_msg("oracle finds a witness for a No", c.seed));
            no_cases.push_back(g);
        }
    }
    // coverability is downward closed in the target
    for (std::size_t i = 0; pairs < 100 && i < std::max(yes_cases.size(), no_cases.size()); ++i) {
        if (i < yes_cases.size()) {
            GeneratedInstance g = yes_cases[i];
            Config lower = g.to;
            for (auto& v : lower.values) v /= 2;
            if (selfloop_cover(g.machine, g.from, lower).status != CoverStatus::Yes) o.fail("smaller target lost");
            ++pairs;
        }
        if (i < no_cases.size() && pairs < 100) {
            GeneratedInstance g = no_cases[i];
            Config higher = g.to;
            for (auto& v : higher.values) v += 1;
            if (selfloop_cover(g.machine, g.from, higher).status != CoverStatus::No) o.fail("larger target gained");
            ++pairs;
        }
    }
    if (pairs < 100) o.fail("fewer than 100 target pairs");
    o.detail = "150 machines, " + std::to_string(yes) + " yes, " + std::to_string(150 - yes) +
               " no confirmed to length 10 (" + std::to_string(paths) + " oracle paths); " + std::to_string(pairs) + " monotone target pairs";
    return o;
}

Outcome perm_vs_oracle() {
    Outcome o;
    int yes = 0;
    for (std::uint64_t seed = 1; seed <= 150; ++seed) {
        GeneratorConfig c;
        c.seed = 9000 + seed;
        c.family = Family::Permutation;
        c.dim_max = 4;
        c.states_max = 3;
        c.transitions_max = 4;
        GeneratedInstance g = reach_instance(c, 6);
        auto w = perm_reach(g.machine, g.from, g.to);
        if (w) {
            ++yes;
            RunResult r = run(g.machine, g.from, *w);
            if (!r.ok || r.trace.back() != g.to) o.fail(seed_msg("pulled-back witness does not reach the target", c.seed));
        } else if (bounded_decide(g.machine, g.from, Target::reach(g.to), 8).found) {
            o.fail(seed_msg("oracle finds a witness for a No", c.seed));
        }
    }
    o.detail = "150 machines, " + std::to_string(yes) + " yes, " + std::to_string(150 - yes) + " no confirmed to length 8";
    return o;
}

Outcome boolean_programs() {
    Outcome o;
    int yes = 0;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        GeneratorConfig c;
        c.seed = 5000 + seed;
        c.dim_max = 3;
        c.states_min = 2;
        c.states_max = 4;
        c.transitions_min = 2;
        c.transitions_max = 6;
        GeneratedBoolean g = generate_boolean(c);
        const bool expect = bp_solve(g.program, g.from, g.to);
        yes += expect;

        CompiledBoolean r = compile_boolean_to_reset(g.program);
        auto path = solve_state_reach(r.machine, r.encode(g.from), r.state_map[g.to]);
        if (path.has_value() != expect) o.fail(seed_msg("reset compilation disagrees", c.seed));

        Rng rng(c.seed * 7 + 1);
        const int k = rng.uniform(2, 3);
        Permutation sigma = identity_perm(k);
        while (sigma == identity_perm(k)) std::shuffle(sigma.begin(), sigma.end(), rng.engine());
        CompiledBoolean p = compile_boolean_to_perm(g.program, perm_matrix(sigma));
        Config zero = make_config(p.state_map[g.to], zeros(p.machine.dim()));
        auto w = perm_cover(p.machine, p.encode(g.from), zero);
        if (w.has_value() != expect) o.fail(seed_msg("permutation compilation disagrees", c.seed));
        if (w) {
            RunResult rr = run(p.machine, p.encode(g.from), *w);
            if (!rr.ok || rr.trace.back().state != zero.state) o.fail(seed_msg("cover witness does not replay", c.seed));
        }
    }
    o.detail = "100 programs, " + std::to_string(yes) + " reachable, 0 disagreements across 3 deciders";
    if (!o.pass) o.detail = "100 programs, disagreements found";
    return o;
}

Outcome zero_test_chain() {
    Outcome o;
    const int b = 4, big = 2 * b + 2;
    int resolved = 0, reach = 0, cover = 0;
    for (std::uint64_t seed = 1; seed <= 60; ++seed) {
        GeneratorConfig c;
        c.seed = 7000 + seed;
        c.dim_max = 2;
        c.states_max = 2;
        c.transitions_min = 2;
        c.transitions_max = 4;
        GeneratedZeroTest g = generate_zerotest(c);
        CompiledInstance ob = compile_zerotest_to_onebounded(g.machine, g.from, g.to);
        CompiledInstance rs = compile_onebounded_to_reset(*ob.zmachine, *ob.from, *ob.to);

        const bool sr = bounded_decide_zerotest(g.machine, g.from, Target::reach(g.to), b).found;
        const bool sc = bounded_decide_zerotest(g.machine, g.from, Target::cover(g.to), b).found;
        const bool tr = bounded_decide_zerotest(*ob.zmachine, *ob.from, Target::reach(*ob.to), big, true).found;
        const bool tc = bounded_decide_zerotest(*ob.zmachine, *ob.from, Target::cover(*ob.to), big, true).found;
        const bool rc = bounded_decide(rs.machine, *rs.from, Target::cover(*rs.to), big).found;
        // reset-machine state reachability over-approximates: a No there is a No everywhere
        const bool st = solve_state_reach(rs.machine, *rs.from, rs.to->state).has_value();
        reach += sr;
        cover += sc;

        auto source_within = [&](const Target& t) { return bounded_decide_zerotest(g.machine, g.from, t, big - 2).found; };
        if (sr && !tr) o.fail(seed_msg("1-bounded reach misses a source witness", c.seed));
        if (sc && !tc) o.fail(seed_msg("1-bounded cover misses a source witness", c.seed));
        if (sr && !rc) o.fail(seed_msg("reset cover misses a source witness", c.seed));
        if ((sr || sc) && !st) o.fail(seed_msg("reset state reachability says No", c.seed));
        if ((tr || rc) && !sr && !source_within(Target::reach(g.to)))
            o.fail(seed_msg("target witness without a source run", c.seed));
        if (tc && !sc && !source_within(Target::cover(g.to))) o.fail(seed_msg("target cover without a source run", c.seed));
        resolved += (sr == tr) && (sr == rc) && (sc == tc);
    }
    o.detail = "60 instances, " + std::to_string(reach) + " reach / " + std::to_string(cover) + " cover witnesses, " +
               std::to_string(resolved) + " agree at the paired bounds, 0 contradictions";
    if (!o.pass) o.detail = "60 instances, contradictions found";
    return o;
}

Outcome lra() {
    Outcome o;
    std::mt19937_64 rng(777);
    int sat = 0;
    for (int it = 0; it < 500; ++it) {
        LinearSystem s;
        const int n = 1 + static_cast<int>(rng() % 6);
        for (int i = 0; i < n; ++i) s.add_var();
        const int m = static_cast<int>(rng() % 13);
        for (int c = 0; c < m; ++c) {
            std::vector<std::pair<int, Rational>> co;
            for (int i = 0; i < n; ++i) {
                int k = static_cast<int>(rng() % 11) - 5;
                if (rng() % 2 && k) co.emplace_back(i, k);
            }
            s.add(co, static_cast<Rel>(rng() % 3), static_cast<long>(rng() % 11) - 5);
        }
        auto model = solve(s);
        if (model.has_value() != fm_satisfiable(s)) o.fail("simplex and Fourier-Motzkin disagree (system " + std::to_string(it) + ")");
        if (model) {
            ++sat;
            if (!check_model(s, *model)) o.fail("model violates a constraint (system " + std::to_string(it) + ")");
        }
    }
    // {x >= 0, x < 0}, {x > 0, x < 1/10^9}, {x < y, y < x}, {x <= 0, x >= 0}
    auto x = LinExpr::var(0), y = LinExpr::var(1);
    LinearSystem a, b, c, d;
    for (LinearSystem* s : {&a, &b, &c, &d}) {
        s->add_var();
        s->add_var();
    }
    a.add_ge(x, 0);
    a.add(x, Rel::LT, 0);
    b.add_gt(x, 0);
    b.add(x, Rel::LT, LinExpr(Rational(1, 1000000000)));
    c.add(x, Rel::LT, y);
    c.add(y, Rel::LT, x);
    d.add(x, Rel::LE, 0);
    d.add_ge(x, 0);
    int edges = 0;
    auto expect = [&](const LinearSystem& s, bool want) {
        auto m = solve(s);
        if (m.has_value() != want || fm_satisfiable(s) != want || (m && !check_model(s, *m))) o.fail("strictness edge case");
        ++edges;
    };
    expect(a, false);
    expect(b, true);
    expect(c, false);
    expect(d, true);
    o.detail = "500 random systems (" + std::to_string(sat) + " sat), " + std::to_string(edges) + " strictness edge cases";
    return o;
}

std::vector<Criterion> criteria() {
    return {
        {1, "marking equation", 10, marking_equation},
        {2, "scaling, monotonicity and convexity", 30, basic_facts},
        {3, "halved runs", 0, rep_half_checks},
        {4, "pumping counters", 0, pumping},
        {5, "edge-free matrices are permutations", 5, derived_permutations},
        {6, "state reachability vs oracle", 300, state_reach},
        {7, "identity-class reachability vs oracle", 0, cvass_vs_oracle},
        {8, "self-loop coverability vs oracle", 600, selfloop_vs_oracle},
        {9, "permutation-class reachability vs oracle", 0, perm_vs_oracle},
        {10, "Boolean program differentials", 0, boolean_programs},
        {11, "zero-test chain differentials", 0, zero_test_chain},
        {12, "linear arithmetic", 30, lra},
    };
}

std::string line(const Criterion& c, const Outcome& o) {
    std::ostringstream s;
    s << (o.pass ? "PASS" : "FAIL") << " criterion " << c.id << " (" << c.name << "): " << o.detail;
    for (const auto& f : o.failures) s << "\n    " << f;
    return s.str();
}

Outcome guarded(const Criterion& c) {
    try {
        return c.check();
    } catch (const std::exception& e) {
        Outcome o;
        o.fail(std::string("exception: ") + e.what());
        o.detail = "aborted";
        return o;
    }
}

// CLI transcripts for a handful of generated instances.
std::string cli_transcript() {
    auto dir = std::filesystem::temp_directory_path() / "acvass_acceptance";
    std::filesystem::create_directories(dir);
    std::ostringstream log;
    auto call = [&](std::vector<std::string> args) {
        args.insert(args.begin(), "acvass");
        std::ostringstream out, err;
        int code = cli::run(args, out, err);
        log << code << "\n" << out.str() << err.str() << '\x1e';
        return out.str();
    };
    const char* families[] = {"identity", "permutation", "self-loop", "non-negative"};
    for (int seed = 1; seed <= 20; ++seed) {
        std::string text = call({"gen-random", "--seed", std::to_string(seed), "--family", families[seed % 4]});
        std::string path = (dir / ("g" + std::to_string(seed) + ".json")).string();
        std::ofstream(path) << text;
        call({"classify", path});
        call({"reach", path, "--witness"});
        call({"cover", path, "--witness", "--certificate"});
        call({"state-reach", path, "--witness"});
        call({"oracle", path, "--max-len", "4", "--witness"});
    }
    return log.str();
}

}  // namespace

int main(int argc, char** argv) {
    std::set<int> only;
    for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));
    const bool full = only.empty();

    std::string first, second;
    bool all = true;
    for (const Criterion& c : criteria()) {
        if (!full && !only.count(c.id)) continue;
        auto t0 = std::chrono::steady_clock::now();
        Outcome o = guarded(c);
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::string l = line(c, o);
        first += l + "\n";
        if (c.limit_seconds > 0 && secs > c.limit_seconds) {
            o.pass = false;
            l = line(c, o) + "\n    runtime above " + std::to_string(static_cast<int>(c.limit_seconds)) + " s";
        }
        all = all && o.pass;
        char buf[32];
        std::snprintf(buf, sizeof buf, " [%.1f s]", secs);
        std::cout << l << buf << std::endl;
    }
    if (full) {
        auto t0 = std::chrono::steady_clock::now();
        for (const Criterion& c : criteria()) second += line(c, guarded(c)) + "\n";
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const std::string transcript = cli_transcript();
        const long cli_calls = std::count(transcript.begin(), transcript.end(), '\x1e');
        const bool same = first == second && transcript == cli_transcript();
        all = all && same;
        char buf[32];
        std::snprintf(buf, sizeof buf, " [%.1f s]", secs);
        std::cout << (same ? "PASS" : "FAIL") << " criterion 13 (determinism): second run of criteria 1-12 and of " << cli_calls << " CLI calls "
                  << (same ? "matches the first byte for byte" : "differs from the first") << buf << std::endl;
    }
    std::cout << (all ? "all criteria passed" : "some criteria failed") << std::endl;
    return all ? 0 : 1;
}
