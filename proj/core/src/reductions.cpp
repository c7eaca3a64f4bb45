#include "acvass/reductions.hpp"

#include "acvass/semantics.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>

namespace acvass {

RatVector encode(const CounterLayout& l, const RatVector& u) {
    if (u.size() != l.primary.size()) throw UsageError("configuration dimension mismatch");
    RatVector v = zeros(l.dim);
    for (std::size_t i = 0; i < u.size(); ++i) {
        v[l.primary[i]] = u[i];
        if (!l.complement.empty()) {
            if (u[i] > 1) throw UsageError("complementary encoding needs values at most 1");
            v[l.complement[i]] = 1 - u[i];
        }
    }
    for (const auto& [x, val] : l.fixed) v[x] = val;
    return v;
}

std::optional<RatVector> decode(const CounterLayout& l, const RatVector& v) {
    if (static_cast<int>(v.size()) != l.dim) return std::nullopt;
    std::vector<char> claimed(l.dim, 0);
    RatVector u(l.primary.size());
    for (std::size_t i = 0; i < l.primary.size(); ++i) {
        u[i] = v[l.primary[i]];
        claimed[l.primary[i]] = 1;
        if (!l.complement.empty()) {
            if (v[l.complement[i]] != 1 - u[i]) return std::nullopt;
            claimed[l.complement[i]] = 1;
        }
    }
    for (const auto& [x, val] : l.fixed) {
        if (v[x] != val) return std::nullopt;
        claimed[x] = 1;
    }
    if (!l.free_dummies)
        for (int x = 0; x < l.dim; ++x)
            if (!claimed[x] && sgn(v[x]) != 0) return std::nullopt;
    return u;
}

namespace {

IntVector zero_vec(int n) { return IntVector(n, Integer(0)); }

CounterLayout identity_layout(int d) {
    CounterLayout l;
    l.dim = d;
    l.primary.resize(d);
    std::iota(l.primary.begin(), l.primary.end(), 0);
    return l;
}

std::string fresh_name(const std::vector<std::string>& taken, const std::string& base) {
    auto used = [&](const std::string& s) { return std::find(taken.begin(), taken.end(), s) != taken.end(); };
    if (!used(base)) return base;
    for (int k = 1;; ++k) {
        std::string c = base + "#" + std::to_string(k);
        if (!used(c)) return c;
    }
}

int add_fresh(Machine& m, const std::string& base) { return m.add_state(m.fresh_state_name(base)); }
int add_fresh(ZeroTestMachine& m, const std::string& base) { return m.add_state(fresh_name(m.states, base)); }

void copy_states(const std::vector<std::string>& from, Machine& to) {
    for (const auto& s : from) to.add_state(s);
}

std::vector<int> identity_states(int n) {
    std::vector<int> v(n);
    std::iota(v.begin(), v.end(), 0);
    return v;
}

void check_source_config(const std::optional<Config>& c, int dim, int states) {
    if (!c) return;
    if (static_cast<int>(c->values.size()) != dim) throw UsageError("configuration dimension mismatch");
    if (c->state < 0 || c->state >= states) throw UsageError("configuration state out of range");
}

bool nonnegative(const IntMatrix& a) {
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j)
            if (sgn(a(i, j)) < 0) return false;
    return true;
}

bool zero_row(const IntMatrix& a, int j) {
    for (int c = 0; c < a.dim(); ++c)
        if (sgn(a(j, c)) != 0) return false;
    return true;
}

bool zero_col(const IntMatrix& a, int j) {
    for (int r = 0; r < a.dim(); ++r)
        if (sgn(a(r, j)) != 0) return false;
    return true;
}

}  // namespace

CoverToReach compile_cover_to_reach(const Machine& m, const Config& to) {
    if (static_cast<int>(to.values.size()) != m.dim()) throw UsageError("configuration dimension mismatch");
    if (to.state < 0 || to.state >= m.num_states()) throw UsageError("configuration state out of range");
    CoverToReach c;
    CompiledInstance& inst = c.inst;
    inst.kind = "cover-to-reach";
    inst.machine = m;
    c.sink = add_fresh(inst.machine, m.states()[to.state] + "_sink");
    c.bridge = inst.machine.add_transition(to.state, zero_vec(m.dim()), c.sink);
    for (int x = 0; x < m.dim(); ++x) inst.machine.add_transition(c.sink, unit(m.dim(), x, -1), c.sink);
    inst.state_map = identity_states(m.num_states());
    inst.layout = identity_layout(m.dim());
    for (const auto& t : m.transitions()) inst.transition_map.push_back({t.id});
    inst.to = Config{c.sink, to.values};
    return c;
}

FiringSequence pull_back_cover(const CoverToReach& c, const FiringSequence& seq) {
    for (std::size_t i = 0; i < seq.size(); ++i)
        if (seq[i].transition == c.bridge) return FiringSequence(seq.begin(), seq.begin() + i);
    throw UsageError("sequence never enters the sink");
}

CompiledInstance compile_zerotest_to_onebounded(const ZeroTestMachine& m, const Config& from, const Config& to) {
    m.validate();
    const int d = m.dim;
    check_source_config(from, d, static_cast<int>(m.states.size()));
    check_source_config(to, d, static_cast<int>(m.states.size()));
    const int z = d, zt = d + 1, st = d + 2, n = d + 3;

    CompiledInstance inst;
    inst.kind = "zerotest-to-onebounded";
    inst.one_bounded = true;
    ZeroTestMachine t;
    t.dim = n;
    t.states = m.states;
    inst.state_map = identity_states(static_cast<int>(m.states.size()));
    const int nadd = static_cast<int>(m.transitions.size());
    for (int k = 0; k < nadd; ++k) {
        const auto& tr = m.transitions[k];
        int s = add_fresh(t, "s_" + std::to_string(k));
        IntVector first = zero_vec(n), second = zero_vec(n);
        for (int x = 0; x < d; ++x) first[x] = tr.delta[x];
        // z holds the scale; each move borrows its fraction from z into z~
        first[z] = -1;
        first[zt] = 1;
        second[z] = 1;
        second[zt] = -1;
        t.transitions.push_back({tr.from, s, first});
        t.transitions.push_back({s, tr.to, second});
        inst.transition_map.push_back({2 * k, 2 * k + 1});
    }
    inst.source_additive = nadd;
    for (std::size_t k = 0; k < m.tests.size(); ++k) {
        t.tests.push_back(m.tests[k]);
        // zero-test items are numbered after every additive target transition
        inst.transition_map.push_back({nadd * 2 + 2 + static_cast<int>(k)});
    }
    int pi = add_fresh(t, "p_i");
    int qf = add_fresh(t, "q_f");
    // values may be fractions: scale the vector by its common denominator and
    // fire the transition with a correspondingly smaller fraction
    auto denom = [](const RatVector& v) {
        Integer l = 1;
        for (const auto& q : v) l = lcm(l, Integer(q.get_den()));
        return l;
    };
    const Integer lin = denom(from.values), lout = denom(to.values);
    IntVector in = zero_vec(n), out = zero_vec(n);
    for (int x = 0; x < d; ++x) {
        in[x] = from.values[x].get_num() * (lin / from.values[x].get_den());
        out[x] = -(to.values[x].get_num() * (lout / to.values[x].get_den()));
    }
    in[z] = lin;
    in[st] = -lin;
    out[z] = -lout;
    out[st] = lout;
    t.transitions.push_back({pi, from.state, in});
    t.transitions.push_back({to.state, qf, out});
    inst.transition_map.push_back({2 * nadd});
    inst.transition_map.push_back({2 * nadd + 1});
    t.validate();

    inst.layout = identity_layout(d);
    inst.layout.dim = n;
    inst.layout.fixed = {{st, Rational(1)}};
    RatVector c1 = zeros(n);
    c1[st] = 1;
    inst.from = Config{pi, c1};
    inst.to = Config{qf, c1};
    inst.zmachine = std::move(t);
    return inst;
}

ZSequence translate_onebounded_witness(const CompiledInstance& inst, const ZeroTestMachine& m, const Config& from,
                                       const Config& to, const ZSequence& seq) {
    if (!inst.zmachine || inst.kind != "zerotest-to-onebounded") throw UsageError("not a 1-bounded instance");
    ZRunResult r = zrun(m, from, seq);
    if (!r.ok) throw UsageError("source witness does not replay");
    Rational top = 1;
    for (const auto& c : r.trace)
        for (const auto& v : c.values) top = std::max(top, v);
    for (const auto& v : to.values) top = std::max(top, v);
    const Rational beta = 1 / top;

    const int nadd = static_cast<int>(m.transitions.size());
    const auto& map = inst.transition_map;
    ZSequence out;
    const auto& tr = inst.zmachine->transitions;
    const int st = inst.zmachine->dim - 1;
    out.push_back({false, map[map.size() - 2][0], beta / Rational(-tr[map[map.size() - 2][0]].delta[st])});
    for (const auto& s : seq) {
        if (s.is_test) {
            out.push_back({true, map[nadd + s.index][0] - static_cast<int>(tr.size()), 0});
        } else {
            for (int id : map[s.index]) out.push_back({false, id, beta * s.alpha});
        }
    }
    out.push_back({false, map.back()[0], beta / Rational(tr[map.back()[0]].delta[st])});
    return out;
}

CompiledInstance compile_onebounded_to_reset(const ZeroTestMachine& m, const Config& from, const Config& to) {
    m.validate();
    const int d = m.dim;
    check_source_config(from, d, static_cast<int>(m.states.size()));
    check_source_config(to, d, static_cast<int>(m.states.size()));
    CompiledInstance inst;
    inst.kind = "onebounded-to-reset";
    inst.machine = Machine(2 * d);
    copy_states(m.states, inst.machine);
    inst.state_map = identity_states(static_cast<int>(m.states.size()));
    for (const auto& tr : m.transitions) {
        IntVector b = zero_vec(2 * d);
        for (int x = 0; x < d; ++x) {
            b[x] = tr.delta[x];
            b[d + x] = -tr.delta[x];
        }
        inst.transition_map.push_back({inst.machine.add_transition(tr.from, b, tr.to)});
    }
    inst.source_additive = static_cast<int>(m.transitions.size());
    for (const auto& te : m.tests)
        inst.transition_map.push_back(
            {inst.machine.add_transition(te.from, reset_matrix(2 * d, te.counter), zero_vec(2 * d), te.to)});
    inst.layout = identity_layout(d);
    inst.layout.dim = 2 * d;
    for (int x = 0; x < d; ++x) inst.layout.complement.push_back(d + x);
    inst.from = Config{from.state, encode(inst.layout, from.values)};
    inst.to = Config{to.state, encode(inst.layout, to.values)};
    return inst;
}

Machine normalize_resets(const Machine& m, std::vector<std::vector<int>>* chains) {
    const int d = m.dim();
    Machine out(d);
    copy_states(m.states(), out);
    if (chains) chains->clear();
    for (const auto& t : m.transitions()) {
        std::vector<int> zeros_at;
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                const Integer& a = t.matrix(i, j);
                if (i != j && sgn(a) != 0) throw UsageError("not a reset machine: off-diagonal entry");
                if (i == j && a != 0 && a != 1) throw UsageError("not a reset machine: diagonal entry outside {0,1}");
                if (i == j && a == 0) zeros_at.push_back(i);
            }
        bool additive = std::any_of(t.delta.begin(), t.delta.end(), [](const Integer& b) { return sgn(b) != 0; });
        std::vector<int> chain;
        if (zeros_at.empty() || (zeros_at.size() == 1 && !additive)) {
            chain.push_back(out.add_transition(t.from, t.matrix, t.delta, t.to));
        } else {
            int cur = t.from;
            for (std::size_t r = 0; r < zeros_at.size(); ++r) {
                bool last = r + 1 == zeros_at.size() && !additive;
                int nxt = last ? t.to : add_fresh(out, "n" + std::to_string(t.id) + "_" + std::to_string(r));
                chain.push_back(out.add_transition(cur, reset_matrix(d, zeros_at[r]), zero_vec(d), nxt));
                cur = nxt;
            }
            if (additive) chain.push_back(out.add_transition(cur, t.delta, t.to));
        }
        if (chains) chains->push_back(chain);
    }
    return out;
}

CompiledInstance compile_reset_to_zero_row_col(const Machine& m, const IntMatrix& a, int j,
                                               const std::optional<Config>& from, const std::optional<Config>& to) {
    m.validate();
    check_source_config(from, m.dim(), m.num_states());
    check_source_config(to, m.dim(), m.num_states());
    const int k = a.dim();
    if (k < 1 || !nonnegative(a)) throw UsageError("matrix must be non-negative");
    bool row = false;
    if (j < 0) {
        for (int r = 0; r < k && j < 0; ++r)
            if (zero_row(a, r)) j = r, row = true;
        for (int c = 0; c < k && j < 0; ++c)
            if (zero_col(a, c)) j = c;
        if (j < 0) throw UsageError("matrix has no zero row or zero column");
    } else {
        if (j >= k) throw UsageError("index outside the matrix");
        row = zero_row(a, j);
        if (!row && !zero_col(a, j)) throw UsageError("chosen index is neither a zero row nor a zero column");
    }

    std::vector<std::vector<int>> chains;
    Machine norm = normalize_resets(m, &chains);
    const int d = m.dim(), n = d * k;
    CompiledInstance inst;
    inst.kind = "reset-to-zero-row-col";
    inst.machine = Machine(n);
    copy_states(norm.states(), inst.machine);
    inst.state_map = identity_states(m.num_states());
    inst.layout.dim = n;
    for (int i = 0; i < d; ++i) inst.layout.primary.push_back(j + i * k);
    inst.layout.free_dummies = row;
    for (const auto& t : norm.transitions()) {
        if (t.identity) {
            IntVector b = zero_vec(n);
            for (int i = 0; i < d; ++i) b[j + i * k] = t.delta[i];
            inst.machine.add_transition(t.from, b, t.to);
        } else {
            int i = 0;
            while (t.matrix(i, i) != 0) ++i;
            inst.machine.add_transition(t.from, apply(n, a, i * k), zero_vec(n), t.to);
        }
    }
    inst.transition_map = chains;
    if (from) inst.from = Config{from->state, encode(inst.layout, from->values)};
    if (to) inst.to = Config{to->state, encode(inst.layout, to->values)};
    return inst;
}

CompiledInstance compile_zerotest_to_negative(const ZeroTestMachine& m, const IntMatrix& a, int j,
                                              const std::optional<Config>& from, const std::optional<Config>& to) {
    m.validate();
    const int states = static_cast<int>(m.states.size());
    check_source_config(from, m.dim, states);
    check_source_config(to, m.dim, states);
    const int k = a.dim();
    auto negative_col = [&](int c) {
        for (int r = 0; r < k; ++r)
            if (sgn(a(r, c)) < 0) return true;
        return false;
    };
    if (j < 0) {
        for (int c = 0; c < k && j < 0; ++c)
            if (negative_col(c)) j = c;
        if (j < 0) throw UsageError("matrix has no negative entry");
    } else if (j >= k || !negative_col(j)) {
        throw UsageError("chosen column has no negative entry");
    }
    const int d = m.dim, n = d * k;
    CompiledInstance inst;
    inst.kind = "zerotest-to-negative";
    inst.machine = Machine(n);
    copy_states(m.states, inst.machine);
    inst.state_map = identity_states(states);
    inst.layout.dim = n;
    for (int i = 0; i < d; ++i) inst.layout.primary.push_back(j + i * k);
    for (const auto& tr : m.transitions) {
        IntVector b = zero_vec(n);
        for (int i = 0; i < d; ++i) b[j + i * k] = tr.delta[i];
        inst.transition_map.push_back({inst.machine.add_transition(tr.from, b, tr.to)});
    }
    inst.source_additive = static_cast<int>(m.transitions.size());
    for (const auto& te : m.tests)
        inst.transition_map.push_back(
            {inst.machine.add_transition(te.from, apply(n, a, te.counter * k), zero_vec(n), te.to)});
    if (from) inst.from = Config{from->state, encode(inst.layout, from->values)};
    if (to) inst.to = Config{to->state, encode(inst.layout, to->values)};
    return inst;
}

CompiledInstance compile_onebounded_to_weighted(const ZeroTestMachine& m, const IntMatrix& a, int z,
                                                const std::optional<Config>& from, const std::optional<Config>& to) {
    m.validate();
    const int states = static_cast<int>(m.states.size());
    check_source_config(from, m.dim, states);
    check_source_config(to, m.dim, states);
    const int k = a.dim();
    if (k < 1 || !nonnegative(a)) throw UsageError("matrix must be non-negative");
    for (int c = 0; c < k; ++c)
        if (zero_col(a, c)) throw UsageError("matrix must not have a zero column");
    auto heavy = [&](int c) {
        Integer s = 0;
        for (int r = 0; r < k; ++r) s += a(r, c);
        return s > 1;
    };
    if (z < 0) {
        for (int c = 0; c < k && z < 0; ++c)
            if (heavy(c)) z = c;
        if (z < 0) throw UsageError("no column of the matrix sums above 1");
    } else if (z >= k || !heavy(z)) {
        throw UsageError("chosen column does not sum above 1");
    }
    const int d = m.dim, block = k + 1, n = d * block;
    CompiledInstance inst;
    inst.kind = "onebounded-to-weighted";
    inst.machine = Machine(n);
    copy_states(m.states, inst.machine);
    inst.state_map = identity_states(states);
    inst.layout.dim = n;
    for (int i = 0; i < d; ++i) {
        inst.layout.primary.push_back(i * block + z);
        inst.layout.complement.push_back(i * block + k);
    }
    for (const auto& tr : m.transitions) {
        IntVector b = zero_vec(n);
        for (int i = 0; i < d; ++i) {
            b[i * block + z] = tr.delta[i];
            b[i * block + k] = -tr.delta[i];
        }
        inst.transition_map.push_back({inst.machine.add_transition(tr.from, b, tr.to)});
    }
    inst.source_additive = static_cast<int>(m.transitions.size());
    for (const auto& te : m.tests)
        inst.transition_map.push_back(
            {inst.machine.add_transition(te.from, apply(n, a, te.counter * block), zero_vec(n), te.to)});
    if (from) inst.from = Config{from->state, encode(inst.layout, from->values)};
    if (to) inst.to = Config{to->state, encode(inst.layout, to->values)};
    return inst;
}

FiringSequence translate_witness(const CompiledInstance& inst, const ZSequence& seq) {
    if (inst.zmachine) throw UsageError("target keeps zero-tests; use the 1-bounded translation");
    const int nadd = inst.source_additive;
    FiringSequence out;
    for (const auto& s : seq) {
        int item = s.is_test ? nadd + s.index : s.index;
        if (item < 0 || item >= static_cast<int>(inst.transition_map.size()))
            throw UsageError("sequence refers to an unknown transition");
        for (int id : inst.transition_map[item]) out.push_back({s.is_test ? Rational(1) : s.alpha, id});
    }
    return out;
}

FiringSequence translate_witness(const CompiledInstance& inst, const FiringSequence& seq) {
    FiringSequence out;
    for (const auto& s : seq) {
        if (s.transition < 0 || s.transition >= static_cast<int>(inst.transition_map.size()))
            throw UsageError("sequence refers to an unknown transition");
        for (int id : inst.transition_map[s.transition]) out.push_back({s.alpha, id});
    }
    return out;
}

int BooleanProgram::add_state(const std::string& name) {
    if (std::find(states.begin(), states.end(), name) != states.end())
        throw UsageError("duplicate state '" + name + "'");
    states.push_back(name);
    return static_cast<int>(states.size()) - 1;
}

int BooleanProgram::state(const std::string& name) const {
    for (std::size_t i = 0; i < states.size(); ++i)
        if (states[i] == name) return static_cast<int>(i);
    throw UsageError("unknown state '" + name + "'");
}

void BooleanProgram::validate() const {
    const int q = static_cast<int>(states.size());
    if (vars < 0 || vars > 30) throw UsageError("boolean programs support 0..30 variables");
    for (const auto& t : transitions)
        if (t.from < 0 || t.from >= q || t.to < 0 || t.to >= q || t.var < 0 || t.var >= vars ||
            (t.value != 0 && t.value != 1))
            throw UsageError("malformed boolean program transition");
}

namespace {

unsigned long bits_to_mask(const BooleanProgram& bp, const BPConfig& c) {
    if (static_cast<int>(c.bits.size()) != bp.vars) throw UsageError("boolean configuration size mismatch");
    unsigned long m = 0;
    for (int i = 0; i < bp.vars; ++i) {
        if (c.bits[i] != 0 && c.bits[i] != 1) throw UsageError("boolean values must be 0 or 1");
        if (c.bits[i]) m |= 1UL << i;
    }
    return m;
}

}  // namespace

bool bp_solve(const BooleanProgram& bp, const BPConfig& from, int to_state) {
    bp.validate();
    const int q = static_cast<int>(bp.states.size());
    if (from.state < 0 || from.state >= q || to_state < 0 || to_state >= q) throw UsageError("state out of range");
    std::set<std::pair<int, unsigned long>> seen;
    std::deque<std::pair<int, unsigned long>> queue;
    seen.insert({from.state, bits_to_mask(bp, from)});
    queue.push_back(*seen.begin());
    while (!queue.empty()) {
        auto [s, m] = queue.front();
        queue.pop_front();
        if (s == to_state) return true;
        for (const auto& t : bp.transitions) {
            if (t.from != s) continue;
            unsigned long bit = 1UL << t.var, m2 = m;
            if (t.op == BooleanProgram::Op::Test) {
                if (((m & bit) != 0) != (t.value == 1)) continue;
            } else {
                m2 = t.value ? (m | bit) : (m & ~bit);
            }
            if (seen.insert({t.to, m2}).second) queue.push_back({t.to, m2});
        }
    }
    return false;
}

Config CompiledBoolean::encode(const BPConfig& c) const {
    if (c.bits.size() != true_counter.size()) throw UsageError("boolean configuration size mismatch");
    RatVector v = zeros(machine.dim());
    for (std::size_t i = 0; i < c.bits.size(); ++i) v[c.bits[i] ? true_counter[i] : false_counter[i]] = 1;
    return Config{state_map.at(c.state), v};
}

std::optional<BPConfig> CompiledBoolean::decode(const Config& c) const {
    auto it = std::find(state_map.begin(), state_map.end(), c.state);
    if (it == state_map.end()) return std::nullopt;
    if (static_cast<int>(c.values.size()) != machine.dim()) return std::nullopt;
    BPConfig out;
    out.state = static_cast<int>(it - state_map.begin());
    std::vector<char> claimed(machine.dim(), 0);
    for (std::size_t i = 0; i < true_counter.size(); ++i) {
        bool t = sgn(c.values[true_counter[i]]) != 0, f = sgn(c.values[false_counter[i]]) != 0;
        if (t == f) return std::nullopt;
        out.bits.push_back(t ? 1 : 0);
        claimed[true_counter[i]] = claimed[false_counter[i]] = 1;
    }
    for (int x = 0; x < machine.dim(); ++x)
        if (!claimed[x] && sgn(c.values[x]) != 0) return std::nullopt;
    return out;
}

CompiledBoolean compile_boolean_to_reset(const BooleanProgram& bp) {
    bp.validate();
    const int d = bp.vars, n = 2 * d;
    CompiledBoolean out;
    out.kind = "boolean-to-reset";
    out.machine = Machine(n);
    copy_states(bp.states, out.machine);
    out.state_map = identity_states(static_cast<int>(bp.states.size()));
    // counter d*j + i is non-zero exactly when variable i holds j
    for (int i = 0; i < d; ++i) {
        out.false_counter.push_back(i);
        out.true_counter.push_back(d + i);
    }
    for (std::size_t k = 0; k < bp.transitions.size(); ++k) {
        const auto& t = bp.transitions[k];
        int mid = add_fresh(out.machine, "q_" + std::to_string(k));
        int held = d * t.value + t.var;
        if (t.op == BooleanProgram::Op::Test) {
            out.machine.add_transition(t.from, unit(n, held, -1), mid);
            out.machine.add_transition(mid, unit(n, held, 1), t.to);
        } else {
            int other = d * (1 - t.value) + t.var;
            out.machine.add_transition(t.from, reset_matrix(n, other), unit(n, held, 1), mid);
            out.machine.add_transition(mid, zero_vec(n), t.to);
        }
    }
    return out;
}

int matrix_order(const IntMatrix& p) {
    Permutation s = perm_of(p);
    std::vector<char> seen(s.size(), 0);
    long order = 1;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (seen[i]) continue;
        long len = 0;
        for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(s[j])) {
            seen[j] = 1;
            ++len;
        }
        order = std::lcm(order, len);
    }
    return static_cast<int>(order);
}

CompiledBoolean compile_boolean_to_perm(const BooleanProgram& bp, const IntMatrix& p) {
    bp.validate();
    Permutation sigma = perm_of(p);
    const int k = p.dim();
    int z = -1;
    for (int i = 0; i < k && z < 0; ++i)
        if (sigma[i] != i) z = i;
    if (z < 0) throw UsageError("permutation matrix must not be the identity");
    const int order = matrix_order(p);
    const int d = bp.vars, n = d * k;
    CompiledBoolean out;
    out.kind = "boolean-to-perm";
    out.machine = Machine(n);
    copy_states(bp.states, out.machine);
    out.state_map = identity_states(static_cast<int>(bp.states.size()));
    for (int i = 0; i < d; ++i) {
        out.true_counter.push_back(z + i * k);
        out.false_counter.push_back(sigma[z] + i * k);
    }
    const IntMatrix forward = p, backward = power(p, order - 1);
    for (std::size_t idx = 0; idx < bp.transitions.size(); ++idx) {
        const auto& t = bp.transitions[idx];
        const std::string tag = "q_" + std::to_string(idx);
        int x = out.true_counter[t.var], xbar = out.false_counter[t.var];
        if (t.op == BooleanProgram::Op::Test) {
            int held = t.value ? x : xbar;
            int mid = add_fresh(out.machine, tag);
            out.machine.add_transition(t.from, unit(n, held, -1), mid);
            out.machine.add_transition(mid, unit(n, held, 1), t.to);
            continue;
        }
        int a0 = add_fresh(out.machine, tag + "_0-");
        int a1 = add_fresh(out.machine, tag + "_1-");
        int b0 = add_fresh(out.machine, tag + "_0+");
        int b1 = add_fresh(out.machine, tag + "_1+");
        IntMatrix plus = t.value ? identity(n) : apply(n, forward, t.var * k);
        IntMatrix minus = t.value ? apply(n, backward, t.var * k) : identity(n);
        out.machine.add_transition(t.from, unit(n, x, -1), a0);
        out.machine.add_transition(t.from, unit(n, xbar, -1), a1);
        out.machine.add_transition(a0, unit(n, x, 1), b0);
        out.machine.add_transition(a1, unit(n, xbar, 1), b1);
        out.machine.add_transition(b0, plus, zero_vec(n), t.to);
        out.machine.add_transition(b1, minus, zero_vec(n), t.to);
    }
    return out;
}

}  // namespace acvass
