#include "acvass/permreach.hpp"

#include "acvass/reductions.hpp"
#include "acvass/semantics.hpp"

#include <deque>
#include <map>

namespace acvass {

void require_permutation(const Machine& m) {
    for (const auto& t : m.transitions()) {
        if (t.identity) continue;
        try {
            perm_of(t.matrix);
        } catch (const UsageError&) {
            throw ClassError("transition " + std::to_string(t.id) + " is not a permutation matrix");
        }
    }
}

Machine normalize(const Machine& m, std::vector<std::vector<int>>* chains) {
    Machine out(m.dim());
    for (const auto& s : m.states()) out.add_state(s);
    if (chains) chains->clear();
    const IntVector zero(m.dim());
    for (const auto& t : m.transitions()) {
        std::vector<int> ids;
        bool mixed = !t.identity && t.delta != zero;
        if (!mixed) {
            ids.push_back(out.add_transition(t.from, t.matrix, t.delta, t.to));
        } else {
            int mid = out.add_state(out.fresh_state_name(m.states()[t.from] + "_t" + std::to_string(t.id)));
            ids.push_back(out.add_transition(t.from, t.matrix, zero, mid));
            ids.push_back(out.add_transition(mid, t.delta, t.to));
        }
        if (chains) chains->push_back(ids);
    }
    return out;
}

int ProductMachine::find(int state, const Permutation& p) const {
    for (std::size_t i = 0; i < base.size(); ++i)
        if (base[i] == state && perm[i] == p) return static_cast<int>(i);
    return -1;
}

RatVector to_product(const Permutation& q, const RatVector& v) {
    // (Q^-1 v)(j) = v(q(j))
    RatVector out(v.size());
    for (std::size_t j = 0; j < v.size(); ++j) out[j] = v[q[j]];
    return out;
}

namespace {

std::string perm_name(const Permutation& p) {
    std::string s;
    for (int x : p) s += (s.empty() ? "" : ",") + std::to_string(x);
    return "[" + s + "]";
}

IntVector permuted_delta(const Permutation& q, const IntVector& b) {
    IntVector out(b.size());
    for (std::size_t j = 0; j < b.size(); ++j) out[j] = b[q[j]];
    return out;
}

}  // namespace

ProductMachine build_product(const Machine& m, int start) {
    require_permutation(m);
    if (start < 0 || start >= m.num_states()) throw UsageError("start state out of range");
    const IntVector zero(m.dim());
    for (const auto& t : m.transitions())
        if (!t.identity && t.delta != zero) throw UsageError("machine is not normalized");
    ProductMachine pm;
    pm.machine = Machine(m.dim());
    std::map<std::pair<int, Permutation>, int> index;
    auto node = [&](int q, const Permutation& p) {
        auto key = std::make_pair(q, p);
        auto it = index.find(key);
        if (it != index.end()) return std::make_pair(it->second, false);
        int id = pm.machine.add_state(m.states()[q] + "@" + perm_name(p));
        pm.base.push_back(q);
        pm.perm.push_back(p);
        index.emplace(key, id);
        return std::make_pair(id, true);
    };
    pm.start = node(start, identity_perm(m.dim())).first;
    std::deque<int> queue{pm.start};
    while (!queue.empty()) {
        int s = queue.front();
        queue.pop_front();
        const int q = pm.base[s];
        const Permutation cur = pm.perm[s];
        for (const auto& t : m.transitions()) {
            if (t.from != q) continue;
            Permutation next = t.identity ? cur : compose(perm_of(t.matrix), cur);
            if (!is_bijection(next)) throw InternalError("composed permutation is not bijective");
            auto [to, fresh] = node(t.to, next);
            if (fresh) queue.push_back(to);
            IntVector b = t.identity ? permuted_delta(cur, t.delta) : zero;
            pm.machine.add_transition(s, b, to);
            pm.source.push_back(t.id);
        }
    }
    return pm;
}

namespace {

// Product witness to a witness of the normalized machine.
FiringSequence pull_back_product(const ProductMachine& pm, const Machine& norm, const FiringSequence& seq) {
    FiringSequence out;
    for (const auto& s : seq) {
        int id = pm.source.at(s.transition);
        out.push_back({norm.transition(id).identity ? s.alpha : Rational(1), id});
    }
    return out;
}

// Normalized witness to a witness of the original machine.
FiringSequence pull_back_normal(const std::vector<std::vector<int>>& chains,
                                const FiringSequence& seq) {
    std::map<int, std::pair<int, int>> where;  // normalized id -> (original, position)
    for (std::size_t i = 0; i < chains.size(); ++i)
        for (std::size_t k = 0; k < chains[i].size(); ++k) where[chains[i][k]] = {static_cast<int>(i), static_cast<int>(k)};
    FiringSequence out;
    for (std::size_t i = 0; i < seq.size(); ++i) {
        auto [orig, pos] = where.at(seq[i].transition);
        if (chains[orig].size() == 1) {
            out.push_back({seq[i].alpha, orig});
            continue;
        }
        // the split pair always fires back to back
        if (pos != 0 || i + 1 >= seq.size() || seq[i + 1].transition != chains[orig][1])
            throw InternalError("split transition fired out of order");
        out.push_back({seq[i + 1].alpha, orig});
        ++i;
    }
    return out;
}

}  // namespace

std::optional<FiringSequence> perm_reach(const Machine& m, const Config& from, const Config& to,
                                         const ReachOptions& opt) {
    require_permutation(m);
    if (static_cast<int>(from.values.size()) != m.dim() || static_cast<int>(to.values.size()) != m.dim())
        throw UsageError("configuration dimension mismatch");
    if (from.state < 0 || from.state >= m.num_states() || to.state < 0 || to.state >= m.num_states())
        throw UsageError("configuration refers to an unknown state");
    std::vector<std::vector<int>> chains;
    Machine norm = normalize(m, &chains);
    ProductMachine pm = build_product(norm, from.state);
    Config start{pm.start, from.values};
    for (std::size_t s = 0; s < pm.base.size(); ++s) {
        if (pm.base[s] != to.state) continue;
        Config target{static_cast<int>(s), to_product(pm.perm[s], to.values)};
        auto w = cvass_reach(pm.machine, start, target, opt);
        if (!w) continue;
        FiringSequence seq = pull_back_normal(chains, pull_back_product(pm, norm, *w));
        RunResult r = run(m, from, seq);
        if (!r.ok || !(r.trace.back() == to)) throw InternalError("pulled-back witness does not replay");
        return seq;
    }
    return std::nullopt;
}

std::optional<FiringSequence> perm_cover(const Machine& m, const Config& from, const Config& to,
                                         const ReachOptions& opt) {
    require_permutation(m);
    CoverToReach c = compile_cover_to_reach(m, to);
    auto w = perm_reach(c.inst.machine, from, *c.inst.to, opt);
    if (!w) return std::nullopt;
    FiringSequence seq = pull_back_cover(c, *w);
    RunResult r = run(m, from, seq);
    if (!r.ok || r.trace.back().state != to.state || !geq(r.trace.back().values, to.values))
        throw InternalError("cover witness does not replay");
    return seq;
}

}  // namespace acvass
