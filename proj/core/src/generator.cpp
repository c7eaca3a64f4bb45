#include "acvass/generator.hpp"

#include "acvass/classify.hpp"

#include <algorithm>

namespace acvass {

Family parse_family(const std::string& s) {
    if (s == "identity") return Family::Identity;
    if (s == "permutation") return Family::Permutation;
    if (s == "reset") return Family::Reset;
    if (s == "self-loop") return Family::SelfLoop;
    if (s == "non-negative") return Family::NonNegative;
    if (s == "arbitrary") return Family::Arbitrary;
    throw UsageError("unknown family '" + s + "'");
}

std::string to_string(Family f) {
    switch (f) {
        case Family::Identity: return "identity";
        case Family::Permutation: return "permutation";
        case Family::Reset: return "reset";
        case Family::SelfLoop: return "self-loop";
        case Family::NonNegative: return "non-negative";
        case Family::Arbitrary: return "arbitrary";
    }
    return "?";
}

RatVector random_values(Rng& rng, int dim, int den, int max) {
    RatVector v;
    for (int i = 0; i < dim; ++i) {
        // zero with probability one half keeps supports interesting
        int k = rng.coin() ? 0 : rng.uniform(1, den * max);
        v.push_back(Rational(k, den));
        v.back().canonicalize();
    }
    return v;
}

namespace {

void check_config(const GeneratorConfig& c) {
    if (c.dim_min < 0 || c.dim_min > c.dim_max || c.states_min < 1 || c.states_min > c.states_max ||
        c.transitions_min < 0 || c.transitions_min > c.transitions_max || c.entry_max < 0 ||
        c.delta_min > c.delta_max || c.value_den < 1 || c.value_max < 0)
        throw UsageError("inconsistent generator ranges");
}

IntVector random_delta(Rng& rng, int d, const GeneratorConfig& c) {
    IntVector b;
    for (int i = 0; i < d; ++i) b.emplace_back(rng.uniform(c.delta_min, c.delta_max));
    return b;
}

IntMatrix random_matrix(Rng& rng, int d, const GeneratorConfig& c, const IntMatrix& perm) {
    IntMatrix a(d);
    switch (c.family) {
        case Family::Identity: return identity(d);
        case Family::Permutation: return rng.coin() ? identity(d) : perm;
        case Family::Reset:
            for (int i = 0; i < d; ++i) a(i, i) = rng.coin(2, 3) ? 1 : 0;
            return a;
        case Family::SelfLoop:
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j)
                    a(i, j) = i == j ? rng.uniform(1, std::max(1, c.entry_max)) : (rng.coin(1, 3) ? rng.uniform(0, c.entry_max) : 0);
            return a;
        case Family::NonNegative:
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j) a(i, j) = rng.uniform(0, c.entry_max);
            return a;
        case Family::Arbitrary:
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j) a(i, j) = rng.uniform(-c.entry_max, c.entry_max);
            return a;
    }
    return a;
}

bool family_holds(const Machine& m, Family f) {
    MachineProfile p = machine_profile(m);
    switch (f) {
        case Family::Identity: return p.all_identity;
        case Family::Permutation: return p.all_permutation;
        case Family::Reset:
            for (const auto& t : m.transitions())
                if (!t.identity && !profile(t.matrix).is_reset_diagonal) return false;
            return true;
        case Family::SelfLoop: return !p.any_negative && p.all_self_loop;
        case Family::NonNegative: return !p.any_negative;
        case Family::Arbitrary: return true;
    }
    return false;
}

}  // namespace

GeneratedInstance generate(const GeneratorConfig& c) {
    check_config(c);
    Rng rng(c.seed);
    const int d = rng.uniform(c.dim_min, c.dim_max);
    const int q = rng.uniform(c.states_min, c.states_max);
    const int n = rng.uniform(c.transitions_min, c.transitions_max);
    IntMatrix perm = identity(d);
    if (c.family == Family::Permutation) {
        Permutation s = identity_perm(d);
        std::shuffle(s.begin(), s.end(), rng.engine());
        perm = perm_matrix(s);
    }
    GeneratedInstance g;
    g.machine = Machine(d);
    for (int i = 0; i < q; ++i) g.machine.add_state("q" + std::to_string(i));
    for (int k = 0; k < n; ++k) {
        int from = rng.uniform(0, q - 1), to = rng.uniform(0, q - 1);
        IntMatrix a = random_matrix(rng, d, c, perm);
        g.machine.add_transition(from, a, random_delta(rng, d, c), to);
    }
    g.machine.validate();
    if (!family_holds(g.machine, c.family)) throw InternalError("generated machine left its family");
    g.from = make_config(rng.uniform(0, q - 1), random_values(rng, d, c.value_den, c.value_max));
    g.to = make_config(rng.uniform(0, q - 1), random_values(rng, d, c.value_den, c.value_max));
    return g;
}

GeneratedZeroTest generate_zerotest(const GeneratorConfig& c) {
    check_config(c);
    Rng rng(c.seed);
    const int d = std::max(1, rng.uniform(c.dim_min, c.dim_max));
    const int q = rng.uniform(c.states_min, c.states_max);
    const int n = rng.uniform(c.transitions_min, c.transitions_max);
    GeneratedZeroTest g;
    g.machine.dim = d;
    for (int i = 0; i < q; ++i) g.machine.add_state("q" + std::to_string(i));
    for (int k = 0; k < n; ++k) {
        int from = rng.uniform(0, q - 1), to = rng.uniform(0, q - 1);
        if (rng.coin(1, 3))
            g.machine.tests.push_back({from, to, rng.uniform(0, d - 1)});
        else
            g.machine.transitions.push_back({from, to, random_delta(rng, d, c)});
    }
    g.machine.validate();
    g.from = make_config(rng.uniform(0, q - 1), random_values(rng, d, c.value_den, c.value_max));
    g.to = make_config(rng.uniform(0, q - 1), random_values(rng, d, c.value_den, c.value_max));
    return g;
}

GeneratedBoolean generate_boolean(const GeneratorConfig& c) {
    check_config(c);
    Rng rng(c.seed);
    GeneratedBoolean g;
    BooleanProgram& bp = g.program;
    bp.vars = std::max(1, rng.uniform(c.dim_min, c.dim_max));
    const int q = rng.uniform(c.states_min, c.states_max);
    const int n = rng.uniform(c.transitions_min, c.transitions_max);
    for (int i = 0; i < q; ++i) bp.add_state("q" + std::to_string(i));
    for (int k = 0; k < n; ++k) {
        BooleanProgram::Transition t;
        t.from = rng.uniform(0, q - 1);
        t.to = rng.uniform(0, q - 1);
        t.op = rng.coin() ? BooleanProgram::Op::Test : BooleanProgram::Op::Set;
        t.var = rng.uniform(0, bp.vars - 1);
        t.value = rng.uniform(0, 1);
        bp.transitions.push_back(t);
    }
    bp.validate();
    g.from.state = rng.uniform(0, q - 1);
    for (int i = 0; i < bp.vars; ++i) g.from.bits.push_back(rng.uniform(0, 1));
    g.to = rng.uniform(0, q - 1);
    return g;
}

}  // namespace acvass
