#include "acvass/statereach.hpp"

#include "acvass/semantics.hpp"

#include <deque>
#include <map>

namespace acvass {

void require_nonnegative(const Machine& m) {
    if (m.dim() > 64) throw UsageError("support abstraction supports at most 64 counters");
    for (const auto& t : m.transitions()) {
        if (t.identity) continue;
        for (int i = 0; i < m.dim(); ++i)
            for (int j = 0; j < m.dim(); ++j)
                if (sgn(t.matrix(i, j)) < 0)
                    throw ClassError("state reachability is undecidable with negative matrix entries");
    }
}

Mask supp_minus(const Transition& t, int x) {
    if (t.identity) return 1UL << x;
    Mask s = 0;
    for (int y = 0; y < t.matrix.dim(); ++y)
        if (sgn(t.matrix(x, y)) > 0) s |= 1UL << y;
    return s;
}

bool abstract_edge(const Transition& t, Mask s, Mask s2) {
    const int d = static_cast<int>(t.delta.size());
    for (int x = 0; x < d; ++x) {
        int b = sgn(t.delta[x]);
        bool fed = (supp_minus(t, x) & s) != 0;
        bool in = (s2 >> x) & 1UL;
        if (b < 0 && !fed) return false;
        if (b > 0 && !in) return false;
        if (in && b <= 0 && !fed) return false;
    }
    return true;
}

std::optional<Mask> max_successor(const Transition& t, Mask s) {
    const int d = static_cast<int>(t.delta.size());
    Mask out = 0;
    for (int x = 0; x < d; ++x) {
        int b = sgn(t.delta[x]);
        bool fed = (supp_minus(t, x) & s) != 0;
        if (b < 0 && !fed) return std::nullopt;
        if (b > 0 || fed) out |= 1UL << x;
    }
    return out;
}

std::optional<AbstractPath> solve_state_reach(const Machine& m, const Config& from, int q) {
    if (q < 0 || q >= m.num_states()) throw UsageError("unknown target state");
    return solve_state_reach(m, from, [q](int s) { return s == q; });
}

std::optional<AbstractPath> solve_state_reach(const Machine& m, const Config& from,
                                              const std::function<bool(int)>& accept) {
    require_nonnegative(m);
    if (static_cast<int>(from.values.size()) != m.dim()) throw UsageError("configuration dimension mismatch");
    std::vector<std::vector<int>> out(m.num_states());
    for (const auto& t : m.transitions()) out[t.from].push_back(t.id);

    using Key = std::pair<int, Mask>;
    struct Back {
        Key prev;
        int transition;
    };
    SupportNode start{from.state, support_mask(from.values)};
    std::map<Key, Back> seen;
    Key sk{start.state, start.supp};
    seen.emplace(sk, Back{sk, -1});
    std::deque<Key> queue{sk};
    auto rebuild = [&](Key k) {
        AbstractPath p;
        p.start = start;
        while (seen.at(k).transition >= 0) {
            const Back& b = seen.at(k);
            p.steps.push_back(AbstractStep{b.transition, SupportNode{k.first, k.second}});
            k = b.prev;
        }
        std::reverse(p.steps.begin(), p.steps.end());
        return p;
    };
    if (accept(start.state)) return rebuild(sk);
    while (!queue.empty()) {
        Key k = queue.front();
        queue.pop_front();
        for (int id : out[k.first]) {
            const Transition& t = m.transition(id);
            auto s2 = max_successor(t, k.second);
            if (!s2) continue;
            Key nk{t.to, *s2};
            if (!seen.emplace(nk, Back{k, id}).second) continue;
            if (accept(t.to)) return rebuild(nk);
            queue.push_back(nk);
        }
    }
    return std::nullopt;
}

FiringSequence concretize(const Machine& m, const Config& from, const AbstractPath& path) {
    if (path.start.state != from.state || (path.start.supp & ~support_mask(from.values)) != 0)
        throw UsageError("abstract path does not start at the configuration");
    FiringSequence seq;
    Config cur = from;
    Mask s = path.start.supp;
    for (const auto& st : path.steps) {
        const Transition& t = m.transition(st.transition);
        if (t.from != cur.state || !abstract_edge(t, s, st.to.supp))
            throw UsageError("abstract path contains a non-edge");
        RatVector au = t.identity ? cur.values : t.matrix * cur.values;
        Rational alpha(1);
        for (int x = 0; x < m.dim(); ++x)
            if (sgn(t.delta[x]) < 0) {
                Rational c = au[x] / Rational(-t.delta[x]) / 2;
                if (c < alpha) alpha = c;
            }
        if (sgn(alpha) <= 0) throw InternalError("no admissible fraction for an abstract edge");
        auto next = step(m, cur, alpha, t.id);
        if (!next || (st.to.supp & ~support_mask(next->values)) != 0)
            throw InternalError("concretized step does not realize the abstract edge");
        seq.push_back(FiringStep{alpha, t.id});
        cur = std::move(*next);
        s = st.to.supp;
    }
    return seq;
}

std::vector<int> mask_to_set(Mask s) {
    std::vector<int> out;
    for (int i = 0; i < 64; ++i)
        if ((s >> i) & 1UL) out.push_back(i);
    return out;
}

Mask set_to_mask(const std::vector<int>& s) {
    Mask m = 0;
    for (int i : s) m |= 1UL << i;
    return m;
}

}  // namespace acvass
