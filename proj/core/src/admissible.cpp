#include "acvass/cvass.hpp"

#include "acvass/semantics.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <set>
#include <tuple>

namespace acvass {

Mask supp_plus(const Transition& t) {
    Mask s = 0;
    for (std::size_t x = 0; x < t.delta.size(); ++x)
        if (sgn(t.delta[x]) > 0) s |= 1UL << x;
    return s;
}

Mask supp_pump(const Transition& t, int x) {
    if (t.identity) return 0;
    Mask s = 0;
    for (int y = 0; y < t.matrix.dim(); ++y) {
        const Integer& a = t.matrix(x, y);
        if ((y != x && sgn(a) > 0) || (y == x && a > 1)) s |= 1UL << y;
    }
    return s;
}

namespace {

bool all_identity(const Machine& m) {
    for (const auto& t : m.transitions())
        if (!t.identity) return false;
    return true;
}

bool all_self_loop_nonneg(const Machine& m) {
    for (const auto& t : m.transitions()) {
        if (t.identity) continue;
        for (int i = 0; i < m.dim(); ++i) {
            if (sgn(t.matrix(i, i)) <= 0) return false;
            for (int j = 0; j < m.dim(); ++j)
                if (sgn(t.matrix(i, j)) < 0) return false;
        }
    }
    return true;
}

// Is `to` reachable from `from` using only transitions in `allowed`?
bool reachable(const Machine& m, const std::vector<int>& allowed, int from, int to) {
    if (from == to) return true;
    std::vector<char> seen(m.num_states(), 0);
    std::deque<int> q{from};
    seen[from] = 1;
    while (!q.empty()) {
        int s = q.front();
        q.pop_front();
        for (int id : allowed) {
            const Transition& t = m.transition(id);
            if (t.from != s || seen[t.to]) continue;
            if (t.to == to) return true;
            seen[t.to] = 1;
            q.push_back(t.to);
        }
    }
    return false;
}

bool pump_condition(const Machine& m, const AdmissibilityQuery& q) {
    Mask avail = q.start_support;
    for (int id : q.transitions) avail |= supp_plus(m.transition(id));
    for (int y = 0; y < m.dim(); ++y) {
        if (!((q.pump >> y) & 1UL)) continue;
        bool ok = false;
        for (int id : q.transitions)
            if (supp_pump(m.transition(id), y) & avail) ok = true;
        if (!ok) return false;
    }
    return true;
}

void check_query(const Machine& m, const AdmissibilityQuery& q) {
    if (m.dim() > 64) throw UsageError("admissibility supports at most 64 counters");
    if (q.anchor < 0 || q.anchor >= m.num_states() || q.end < 0 || q.end >= m.num_states())
        throw UsageError("unknown state in admissibility query");
    for (int id : q.transitions) m.transition(id);
}

// Conditions for appending t after the transitions in `prior`.
bool can_append(const Machine& m, const AdmissibilityQuery& q, const std::vector<int>& prior, int id) {
    const Transition& t = m.transition(id);
    if (prior.empty() && t.from != q.anchor) return false;
    for (int s : prior)
        if (!reachable(m, prior, m.transition(s).to, t.from)) return false;
    Mask avail = q.start_support;
    for (int s : prior) avail |= supp_plus(m.transition(s));
    for (int y = 0; y < m.dim(); ++y)
        if (sgn(t.delta[y]) < 0 && !(supp_minus(t, y) & avail)) return false;
    return true;
}

}  // namespace

bool admissible_order_holds(const Machine& m, const AdmissibilityQuery& q, const std::vector<int>& order) {
    check_query(m, q);
    std::vector<int> a = order, b = q.transitions;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    b.erase(std::unique(b.begin(), b.end()), b.end());
    if (a != b || std::adjacent_find(a.begin(), a.end()) != a.end()) return false;
    if (order.empty()) return q.anchor == q.end && q.pump == 0;
    std::vector<int> prior;
    for (int id : order) {
        if (!can_append(m, q, prior, id)) return false;
        prior.push_back(id);
    }
    if (!reachable(m, order, m.transition(order.back()).to, q.end)) return false;
    return pump_condition(m, q);
}

std::optional<std::vector<int>> admissible_ordered(const Machine& m, const AdmissibilityQuery& q) {
    check_query(m, q);
    std::vector<int> s = q.transitions;
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    if (s.empty()) {
        if (q.anchor == q.end && q.pump == 0) return std::vector<int>{};
        return std::nullopt;
    }
    if (!pump_condition(m, q)) return std::nullopt;
    if (s.size() > 20) throw UsageError("transition support too large for ordered search");

    std::set<unsigned long> dead;
    std::vector<int> order;
    const unsigned long full = (1UL << s.size()) - 1;
    // depth-first over prefixes; a prefix's future depends only on its set
    std::function<bool(unsigned long)> dfs = [&](unsigned long used) -> bool {
        if (used == full) return reachable(m, s, m.transition(order.back()).to, q.end);
        if (dead.count(used)) return false;
        for (std::size_t i = 0; i < s.size(); ++i) {
            if ((used >> i) & 1UL) continue;
            if (!can_append(m, q, order, s[i])) continue;
            order.push_back(s[i]);
            if (dfs(used | (1UL << i))) return true;
            order.pop_back();
        }
        dead.insert(used);
        return false;
    };
    if (dfs(0)) return order;
    return std::nullopt;
}

namespace {

struct SearchNode {
    int state;
    Mask supp;
    unsigned long used;  // bits over the order / support index
    Mask pumped;
    bool operator<(const SearchNode& o) const {
        return std::tie(state, supp, used, pumped) < std::tie(o.state, o.supp, o.used, o.pumped);
    }
};

// Breadth-first search in the support abstraction restricted to `s`. With
// `ordered`, new transitions must appear in the order given by `s`.
std::optional<AbstractPath> constrained_search(const Machine& m, const AdmissibilityQuery& q,
                                               const std::vector<int>& s, bool ordered) {
    if (s.size() > 60) throw UsageError("transition support too large for search");
    const unsigned long full = s.empty() ? 0 : ((1UL << s.size()) - 1);
    SearchNode start{q.anchor, q.start_support, 0, 0};
    std::map<SearchNode, std::pair<SearchNode, int>> back;
    back.emplace(start, std::make_pair(start, -1));
    std::deque<SearchNode> queue{start};
    auto accept = [&](const SearchNode& n) {
        return n.state == q.end && n.used == full && (n.pumped & q.pump) == q.pump;
    };
    auto rebuild = [&](SearchNode n) {
        AbstractPath p;
        p.start = SupportNode{q.anchor, q.start_support};
        while (back.at(n).second >= 0) {
            auto [prev, id] = back.at(n);
            p.steps.push_back(AbstractStep{id, SupportNode{n.state, n.supp}});
            n = prev;
        }
        std::reverse(p.steps.begin(), p.steps.end());
        return p;
    };
    if (accept(start)) return rebuild(start);
    while (!queue.empty()) {
        SearchNode n = queue.front();
        queue.pop_front();
        for (std::size_t i = 0; i < s.size(); ++i) {
            bool fresh = !((n.used >> i) & 1UL);
            if (ordered && fresh && n.used != ((1UL << i) - 1)) continue;
            const Transition& t = m.transition(s[i]);
            if (t.from != n.state) continue;
            auto s2 = max_successor(t, n.supp);
            if (!s2) continue;
            Mask pumped = n.pumped;
            for (int y = 0; y < m.dim(); ++y)
                if (((q.pump >> y) & 1UL) && (supp_pump(t, y) & n.supp)) pumped |= 1UL << y;
            SearchNode c{t.to, *s2, n.used | (1UL << i), pumped};
            if (!back.emplace(c, std::make_pair(n, s[i])).second) continue;
            if (accept(c)) return rebuild(c);
            queue.push_back(c);
        }
    }
    return std::nullopt;
}

}  // namespace

std::optional<std::vector<int>> admissible_search(const Machine& m, const AdmissibilityQuery& q) {
    check_query(m, q);
    require_nonnegative(m);
    std::vector<int> s = q.transitions;
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    auto path = constrained_search(m, q, s, false);
    if (!path) return std::nullopt;
    std::vector<int> order;
    for (const auto& st : path->steps)
        if (std::find(order.begin(), order.end(), st.transition) == order.end()) order.push_back(st.transition);
    return order;
}

std::optional<std::vector<int>> admissible(const Machine& m, const AdmissibilityQuery& q) {
    if (all_identity(m)) return admissible_ordered(m, q);
    return admissible_search(m, q);
}

FiringSequence build_admissible_run(const Machine& m, const AdmissibilityQuery& q, const std::vector<int>& order,
                                    const RatVector& u) {
    check_query(m, q);
    if (!all_self_loop_nonneg(m)) throw ClassError("admissible runs are built for non-negative self-loop matrices");
    if (static_cast<int>(u.size()) != m.dim()) throw UsageError("configuration dimension mismatch");
    if ((q.start_support & ~support_mask(u)) != 0) throw UsageError("start support not contained in the configuration");
    AdmissibilityQuery qq = q;
    qq.start_support = support_mask(u);
    auto path = constrained_search(m, qq, order, true);
    if (!path) throw UsageError("order is not realizable from the given configuration");
    Config from{q.anchor, u};
    FiringSequence seq = concretize(m, from, *path);

    RunResult r = run(m, from, seq);
    if (!r.ok || r.trace.back().state != q.end) throw InternalError("admissible run does not replay");
    Mask final = support_mask(r.trace.back().values);
    Mask want = support_mask(u);
    for (int id : order) want |= supp_plus(m.transition(id));
    if ((want & ~final) != 0) throw InternalError("admissible run lost support");
    Mask pumped = 0;
    for (std::size_t i = 0; i < seq.size(); ++i) {
        const Transition& t = m.transition(seq[i].transition);
        Mask before = support_mask(r.trace[i].values);
        for (int y = 0; y < m.dim(); ++y)
            if (supp_pump(t, y) & before) pumped |= 1UL << y;
    }
    if ((q.pump & ~pumped) != 0) throw InternalError("admissible run does not pump the requested counters");
    return seq;
}

}  // namespace acvass
