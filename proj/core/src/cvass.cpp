#include "acvass/cvass.hpp"

#include "acvass/reductions.hpp"
#include "acvass/semantics.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <set>

namespace acvass {

void require_identity(const Machine& m) {
    if (m.dim() > 64) throw UsageError("at most 64 counters are supported");
    for (const auto& t : m.transitions())
        if (!t.identity) throw ClassError("machine has a non-identity matrix");
}

namespace {

// A transition seen in the support abstraction, possibly walked backwards.
struct Move {
    int id = 0;
    int from = 0, to = 0;
    Mask dec = 0, inc = 0;
};

Move make_move(const Transition& t, bool reversed) {
    Move mv;
    mv.id = t.id;
    mv.from = reversed ? t.to : t.from;
    mv.to = reversed ? t.from : t.to;
    for (std::size_t x = 0; x < t.delta.size(); ++x) {
        int s = sgn(t.delta[x]) * (reversed ? -1 : 1);
        if (s < 0) mv.dec |= 1UL << x;
        if (s > 0) mv.inc |= 1UL << x;
    }
    return mv;
}

std::optional<Mask> successor(const Machine& m, const Move& mv, Mask s) {
    const Transition& t = m.transition(mv.id);
    if (t.identity) {
        if ((mv.dec & ~s) != 0) return std::nullopt;
        return s | mv.inc;
    }
    return max_successor(t, s);
}

using Node = std::pair<int, Mask>;

// Explores the abstraction from (a, s) with the given moves.
struct Exploration {
    std::map<Node, int> index;
    std::vector<Node> nodes;
    std::vector<std::tuple<int, int, int>> edges;  // (from node, to node, transition)
};

Exploration explore(const Machine& m, const std::vector<Move>& moves, int a, Mask s) {
    Exploration ex;
    ex.index.emplace(Node{a, s}, 0);
    ex.nodes.push_back({a, s});
    for (std::size_t i = 0; i < ex.nodes.size(); ++i) {
        Node n = ex.nodes[i];
        for (const Move& mv : moves) {
            if (mv.from != n.first) continue;
            auto s2 = successor(m, mv, n.second);
            if (!s2) continue;
            Node c{mv.to, *s2};
            auto [it, fresh] = ex.index.emplace(c, static_cast<int>(ex.nodes.size()));
            if (fresh) ex.nodes.push_back(c);
            ex.edges.emplace_back(static_cast<int>(i), it->second, mv.id);
        }
    }
    return ex;
}

std::vector<Move> moves_of(const Machine& m, const std::vector<int>& ids, bool reversed) {
    std::vector<Move> out;
    for (int id : ids) out.push_back(make_move(m.transition(id), reversed));
    return out;
}

std::vector<int> sorted_unique(std::vector<int> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

// Nodes of the exploration from which a node with state a is reachable.
std::vector<char> co_reaching(const Exploration& ex, int a) {
    const int n = static_cast<int>(ex.nodes.size());
    std::vector<std::vector<int>> back(n);
    for (const auto& [u, v, id] : ex.edges) back[v].push_back(u);
    std::vector<char> co(n, 0);
    std::deque<int> q;
    for (int i = 0; i < n; ++i)
        if (ex.nodes[i].first == a) {
            co[i] = 1;
            q.push_back(i);
        }
    while (!q.empty()) {
        int v = q.front();
        q.pop_front();
        for (int u : back[v])
            if (!co[u]) {
                co[u] = 1;
                q.push_back(u);
            }
    }
    return co;
}

}  // namespace

std::vector<int> open_transitions(const Machine& m, const std::vector<int>& t, int a, Mask s, bool reversed) {
    if (reversed) require_identity(m);
    Exploration ex = explore(m, moves_of(m, sorted_unique(t), reversed), a, s);
    std::vector<char> co = co_reaching(ex, a);
    std::vector<int> out;
    for (const auto& [u, v, id] : ex.edges)
        if (co[v]) out.push_back(id);
    return sorted_unique(out);
}

namespace {

// States strongly connected with a in the graph of `ids`.
std::vector<char> scc_of(const Machine& m, const std::vector<int>& ids, int a) {
    const int q = m.num_states();
    auto reach = [&](bool fwd) {
        std::vector<char> seen(q, 0);
        seen[a] = 1;
        std::deque<int> queue{a};
        while (!queue.empty()) {
            int s = queue.front();
            queue.pop_front();
            for (int id : ids) {
                const Transition& t = m.transition(id);
                int from = fwd ? t.from : t.to, to = fwd ? t.to : t.from;
                if (from == s && !seen[to]) {
                    seen[to] = 1;
                    queue.push_back(to);
                }
            }
        }
        return seen;
    };
    auto f = reach(true), b = reach(false);
    for (int i = 0; i < q; ++i) f[i] = f[i] && b[i];
    return f;
}

std::vector<int> edges_within(const Machine& m, const std::vector<int>& ids, const std::vector<char>& states) {
    std::vector<int> out;
    for (int id : ids) {
        const Transition& t = m.transition(id);
        if (states[t.from] && states[t.to]) out.push_back(id);
    }
    return out;
}

Rational eval(const LinExpr& e, const Model& model) {
    Rational r = e.constant;
    for (const auto& [v, c] : e.terms) r += c * model[v];
    return r;
}

struct Segment {
    int a = 0, b = 0;
    int bridge = -1;  // transition leaving b, -1 for the last segment
};

struct SkeletonModel {
    std::vector<std::map<int, Rational>> flow;  // per segment, transition -> total fraction
    std::vector<Rational> bridge;               // per bridge
    std::vector<RatVector> u, v;                // per segment entry and exit values
};

class SkeletonLp {
public:
    SkeletonLp(const Machine& m, const RatVector& from, const RatVector& to, const std::vector<Segment>& sk,
               const std::vector<std::vector<int>>& t)
        : m_(m), sk_(sk), t_(t) {
        const int d = m.dim();
        LinExpr zero;
        std::vector<LinExpr> cur(d);
        for (int x = 0; x < d; ++x) cur[x] = LinExpr(from[x]);
        for (std::size_t i = 0; i < sk.size(); ++i) {
            if (i > 0)
                for (int x = 0; x < d; ++x) sys_.add_ge(cur[x], zero);
            u_.push_back(cur);
            std::map<int, int> vars;
            for (int id : t[i]) {
                int v = sys_.add_var("x" + std::to_string(i) + "_" + std::to_string(id));
                vars[id] = v;
                sys_.add_ge(LinExpr::var(v), zero);
                quantities_.push_back(LinExpr::var(v));
                const Transition& tr = m.transition(id);
                for (int x = 0; x < d; ++x)
                    if (sgn(tr.delta[x]) != 0) cur[x] += LinExpr::var(v, Rational(tr.delta[x]));
            }
            vars_.push_back(vars);
            for (int x = 0; x < d; ++x) sys_.add_ge(cur[x], zero);
            v_.push_back(cur);
            if (sk[i].bridge >= 0) {
                int v = sys_.add_var("e" + std::to_string(i));
                bridge_vars_.push_back(v);
                sys_.add_gt(LinExpr::var(v), zero);
                sys_.add(LinExpr::var(v), Rel::LE, LinExpr(1L));
                const Transition& tr = m.transition(sk[i].bridge);
                for (int x = 0; x < d; ++x)
                    if (sgn(tr.delta[x]) != 0) cur[x] += LinExpr::var(v, Rational(tr.delta[x]));
            }
        }
        for (int x = 0; x < d; ++x) sys_.add(cur[x], Rel::EQ, LinExpr(to[x]));
        for (const auto& vec : {&u_, &v_})
            for (const auto& seg : *vec)
                for (const auto& e : seg)
                    if (!e.is_constant()) quantities_.push_back(e);
    }

    // A model whose support is maximal among all models.
    std::optional<SkeletonModel> solve_max(LinearSystem* dump) {
        LinearSystem all = sys_;
        for (const auto& q : quantities_) all.add_gt(q, LinExpr());
        if (dump) *dump = all;
        if (auto mod = solve(all)) return unpack(*mod);
        if (dump) *dump = sys_;
        auto base = solve(sys_);
        if (!base) return std::nullopt;
        std::vector<Model> models{*base};
        std::vector<char> pos(quantities_.size(), 0);
        auto mark = [&](const Model& mod) {
            for (std::size_t k = 0; k < quantities_.size(); ++k)
                if (sgn(eval(quantities_[k], mod)) > 0) pos[k] = 1;
        };
        mark(*base);
        for (std::size_t k = 0; k < quantities_.size(); ++k) {
            if (pos[k]) continue;
            LinearSystem one = sys_;
            one.add_gt(quantities_[k], LinExpr());
            if (auto mod = solve(one)) {
                mark(*mod);
                models.push_back(*mod);
            }
        }
        Model avg(sys_.num_vars(), Rational(0));
        for (const auto& mod : models)
            for (int v = 0; v < sys_.num_vars(); ++v) avg[v] += mod[v];
        for (auto& x : avg) x /= static_cast<long>(models.size());
        if (!check_model(sys_, avg)) throw InternalError("averaged model violates the flow system");
        return unpack(avg);
    }

private:
    SkeletonModel unpack(const Model& mod) const {
        SkeletonModel out;
        for (std::size_t i = 0; i < sk_.size(); ++i) {
            std::map<int, Rational> f;
            for (const auto& [id, v] : vars_[i]) f[id] = mod[v];
            out.flow.push_back(f);
            RatVector u, v;
            for (const auto& e : u_[i]) u.push_back(eval(e, mod));
            for (const auto& e : v_[i]) v.push_back(eval(e, mod));
            out.u.push_back(u);
            out.v.push_back(v);
        }
        for (int v : bridge_vars_) out.bridge.push_back(mod[v]);
        return out;
    }

    const Machine& m_;
    const std::vector<Segment>& sk_;
    const std::vector<std::vector<int>>& t_;
    LinearSystem sys_;
    std::vector<std::map<int, int>> vars_;
    std::vector<int> bridge_vars_;
    std::vector<std::vector<LinExpr>> u_, v_;
    std::vector<LinExpr> quantities_;
};

// A walk in the abstraction from (a, s) that fires every transition of S and
// returns to a. Masks only grow for identity machines, so a greedy walk that
// never leaves the nodes co-reaching a works.
std::vector<int> covering_walk(const Machine& m, const std::vector<int>& s_ids, int a, Mask s, bool reversed) {
    std::vector<Move> moves = moves_of(m, s_ids, reversed);
    Exploration ex = explore(m, moves, a, s);
    std::vector<char> co = co_reaching(ex, a);
    auto alive = [&](const Node& n) {
        auto it = ex.index.find(n);
        return it != ex.index.end() && co[it->second];
    };
    std::vector<int> walk;
    int state = a;
    Mask mask = s;
    auto bfs_to = [&](const std::function<bool(int, Mask)>& goal) {
        std::map<Node, std::pair<Node, int>> back;
        Node start{state, mask};
        back.emplace(start, std::make_pair(start, -1));
        std::deque<Node> q{start};
        std::optional<Node> hit;
        if (goal(state, mask)) hit = start;
        while (!hit && !q.empty()) {
            Node n = q.front();
            q.pop_front();
            for (const Move& mv : moves) {
                if (mv.from != n.first) continue;
                auto s2 = successor(m, mv, n.second);
                if (!s2) continue;
                Node c{mv.to, *s2};
                if (!alive(c) || !back.emplace(c, std::make_pair(n, mv.id)).second) continue;
                if (goal(c.first, c.second)) {
                    hit = c;
                    break;
                }
                q.push_back(c);
            }
        }
        if (!hit) throw InternalError("support walk does not exist");
        std::vector<int> path;
        for (Node n = *hit; back.at(n).second >= 0; n = back.at(n).first) path.push_back(back.at(n).second);
        std::reverse(path.begin(), path.end());
        for (int id : path) {
            const Move& mv = *std::find_if(moves.begin(), moves.end(), [&](const Move& x) { return x.id == id; });
            mask = *successor(m, mv, mask);
            state = mv.to;
            walk.push_back(id);
        }
    };
    for (const Move& t : moves) {
        if (std::find(walk.begin(), walk.end(), t.id) != walk.end()) continue;
        bfs_to([&](int st, Mask mk) {
            return st == t.from && (t.dec & ~mk) == 0 && alive(Node{t.to, *successor(m, t, mk)});
        });
        mask = *successor(m, t, mask);
        state = t.to;
        walk.push_back(t.id);
    }
    bfs_to([&](int st, Mask) { return st == a; });
    return walk;
}

// Fractions along a walk from u following the completeness recipe.
std::pair<std::vector<Rational>, RatVector> concretize_walk(const Machine& m, const std::vector<int>& walk,
                                                            RatVector u, bool reversed) {
    std::vector<Rational> alphas;
    for (int id : walk) {
        const Transition& t = m.transition(id);
        Rational alpha = 1;
        for (std::size_t x = 0; x < u.size(); ++x) {
            Rational b(t.delta[x]);
            if (reversed) b = -b;
            if (sgn(b) < 0) alpha = std::min(alpha, Rational(u[x] / (-b) / 2));
        }
        if (sgn(alpha) <= 0) throw InternalError("walk step has no positive fraction");
        for (std::size_t x = 0; x < u.size(); ++x) {
            Rational b(t.delta[x]);
            u[x] += alpha * (reversed ? -b : b);
        }
        alphas.push_back(alpha);
    }
    return {alphas, u};
}

std::vector<int> shortest_path(const Machine& m, const std::vector<int>& ids, int a, int b) {
    std::vector<int> prev(m.num_states(), -2);
    prev[a] = -1;
    std::deque<int> q{a};
    while (!q.empty() && prev[b] == -2) {
        int s = q.front();
        q.pop_front();
        for (int id : ids) {
            const Transition& t = m.transition(id);
            if (t.from == s && prev[t.to] == -2) {
                prev[t.to] = id;
                q.push_back(t.to);
            }
        }
    }
    if (prev[b] == -2) throw InternalError("no path inside a segment");
    std::vector<int> path;
    for (int s = b; s != a; s = m.transition(prev[s]).from) path.push_back(prev[s]);
    std::reverse(path.begin(), path.end());
    return path;
}

// Closed walk from a visiting every transition of ids.
std::vector<int> closed_cover(const Machine& m, const std::vector<int>& ids, int a) {
    std::vector<int> walk;
    for (int id : ids) {
        const Transition& t = m.transition(id);
        auto p = shortest_path(m, ids, a, t.from);
        walk.insert(walk.end(), p.begin(), p.end());
        walk.push_back(id);
        auto r = shortest_path(m, ids, t.to, a);
        walk.insert(walk.end(), r.begin(), r.end());
    }
    return walk;
}

void add_effect(RatVector& v, const Transition& t, const Rational& alpha) {
    for (std::size_t x = 0; x < v.size(); ++x) v[x] += alpha * Rational(t.delta[x]);
}

// Run from a(u) to b(v) with total fractions `flow` (all positive) on a
// strongly connected support opened forwards from supp(u) and backwards
// from supp(v).
FiringSequence segment_run(const Machine& m, int a, int b, const std::map<int, Rational>& flow, const RatVector& u,
                           const RatVector& v) {
    std::vector<int> s_ids;
    for (const auto& [id, x] : flow) s_ids.push_back(id);
    if (s_ids.empty()) return {};
    const int d = m.dim();

    auto fwd = covering_walk(m, s_ids, a, support_mask(u), false);
    auto [f_alpha, f_end] = concretize_walk(m, fwd, u, false);
    auto bwd = covering_walk(m, s_ids, b, support_mask(v), true);
    auto [b_alpha, b_end] = concretize_walk(m, bwd, v, true);
    auto path = shortest_path(m, s_ids, a, b);
    auto cyc = closed_cover(m, s_ids, a);

    std::map<int, Rational> f_tot, b_tot, p_tot;
    std::map<int, long> c_cnt;
    for (std::size_t i = 0; i < fwd.size(); ++i) f_tot[fwd[i]] += f_alpha[i];
    for (std::size_t i = 0; i < bwd.size(); ++i) b_tot[bwd[i]] += b_alpha[i];
    for (int id : path) p_tot[id] += 1;
    for (int id : cyc) c_cnt[id] += 1;

    Rational lambda(1, 2);
    for (const auto& [id, x] : flow) {
        Rational used = f_tot[id] + b_tot[id];
        if (sgn(used) > 0) lambda = std::min(lambda, Rational(x / used / 2));
    }
    // z: where the reversed backward walk starts when replayed forwards
    RatVector w = u, z = v;
    for (int x = 0; x < d; ++x) {
        w[x] = (1 - lambda) * u[x] + lambda * f_end[x];
        z[x] = (1 - lambda) * v[x] + lambda * b_end[x];
    }
    Rational mu = lambda;
    for (const auto& [id, n] : p_tot) mu = std::min(mu, Rational(flow.at(id) / n / 4));
    for (int x = 0; x < d; ++x) {
        Rational spread = 0;
        for (int id : path) spread += abs(Rational(m.transition(id).delta[x]));
        if (sgn(spread) > 0) mu = std::min(mu, Rational(z[x] / spread / 2));
    }
    if (sgn(mu) <= 0) throw InternalError("segment path has no positive fraction");
    RatVector zp = z;
    for (int id : path) add_effect(zp, m.transition(id), -mu);

    std::map<int, Rational> rest;
    for (const auto& [id, x] : flow) {
        rest[id] = x - lambda * (f_tot[id] + b_tot[id]) - mu * p_tot[id];
        if (sgn(rest[id]) <= 0) throw InternalError("segment flow exhausted by the opening walks");
    }
    Integer n = 1;
    auto need = [&](const Rational& q) {
        Integer c = q.get_num() / q.get_den();
        if (c * q.get_den() < q.get_num()) c += 1;
        if (c > n) n = c;
    };
    for (const auto& [id, y] : rest) need(y / c_cnt.at(id));
    for (int x = 0; x < d; ++x) {
        Rational drop = 0;
        for (const auto& [id, y] : rest) {
            const Integer& bx = m.transition(id).delta[x];
            if (sgn(bx) < 0) drop += y * Rational(-bx);
        }
        if (sgn(drop) == 0) continue;
        Rational floor_val = std::min(w[x], zp[x]);
        if (sgn(floor_val) <= 0) throw InternalError("decremented counter is empty inside a segment");
        need(drop / floor_val);
    }
    if (n > 100000) throw InternalError("segment needs too many rounds");
    const long rounds = n.get_si();

    FiringSequence seq;
    for (std::size_t i = 0; i < fwd.size(); ++i) seq.push_back({lambda * f_alpha[i], fwd[i]});
    for (long r = 0; r < rounds; ++r)
        for (int id : cyc) seq.push_back({rest[id] / (Rational(rounds) * c_cnt[id]), id});
    for (int id : path) seq.push_back({mu, id});
    for (std::size_t i = bwd.size(); i-- > 0;) seq.push_back({lambda * b_alpha[i], bwd[i]});
    return seq;
}

// Transitions that fire somewhere in the abstraction explored from (a, s).
std::vector<int> fired(const Machine& m, const std::vector<int>& ids, int a, Mask s, bool reversed) {
    Exploration ex = explore(m, moves_of(m, ids, reversed), a, s);
    std::vector<int> out;
    for (const auto& [u, v, id] : ex.edges) out.push_back(id);
    return sorted_unique(out);
}

class ReachSearch {
public:
    ReachSearch(const Machine& m, const Config& from, const Config& to, const ReachOptions& opt)
        : m_(m), from_(from), to_(to), opt_(opt) {}

    std::optional<FiringSequence> run() {
        std::vector<int> all;
        for (const auto& t : m_.transitions()) all.push_back(t.id);
        auto f = fired(m_, all, from_.state, support_mask(from_.values), false);
        auto b = fired(m_, f, to_.state, support_mask(to_.values), true);
        usable_ = b;
        const int q = m_.num_states();
        for (int depth = 1; depth <= q; ++depth) {
            std::vector<char> used(q, 0);
            skeleton_.clear();
            if (auto r = dfs(from_.state, used, depth)) return r;
        }
        return std::nullopt;
    }

private:
    std::optional<FiringSequence> dfs(int a, std::vector<char>& used, int depth) {
        std::vector<char> open(m_.num_states(), 1);
        for (int s = 0; s < m_.num_states(); ++s)
            if (used[s]) open[s] = 0;
        auto scc = scc_of(m_, edges_within(m_, usable_, open), a);
        const bool last = static_cast<int>(skeleton_.size()) + 1 == depth;
        for (int bstate = 0; bstate < m_.num_states(); ++bstate) {
            if (!scc[bstate]) continue;
            if (last) {
                if (bstate != to_.state) continue;
                skeleton_.push_back({a, bstate, -1});
                auto r = try_skeleton();
                skeleton_.pop_back();
                if (r) return r;
                continue;
            }
            if (bstate == to_.state) continue;
            used[a] = used[bstate] = 1;
            for (int id : usable_) {
                const Transition& t = m_.transition(id);
                if (t.from != bstate || used[t.to]) continue;
                skeleton_.push_back({a, bstate, id});
                auto r = dfs(t.to, used, depth);
                skeleton_.pop_back();
                if (r) {
                    used[a] = used[bstate] = 0;
                    return r;
                }
            }
            used[a] = used[bstate] = 0;
        }
        return std::nullopt;
    }

    std::optional<FiringSequence> try_skeleton() {
        const int q = m_.num_states();
        const std::size_t k = skeleton_.size();
        std::vector<std::vector<int>> t(k);
        for (std::size_t i = 0; i < k; ++i) {
            std::vector<char> open(q, 1);
            for (std::size_t j = 0; j < k; ++j)
                if (j != i) open[skeleton_[j].a] = open[skeleton_[j].b] = 0;
            auto scc = scc_of(m_, edges_within(m_, usable_, open), skeleton_[i].a);
            if (!scc[skeleton_[i].b]) return std::nullopt;
            t[i] = edges_within(m_, usable_, scc);
        }
        for (;;) {
            SkeletonLp lp(m_, from_.values, to_.values, skeleton_, t);
            auto mod = lp.solve_max(opt_.dump);
            if (!mod) return std::nullopt;
            bool changed = false;
            for (std::size_t i = 0; i < k; ++i) {
                const Segment& sg = skeleton_[i];
                std::vector<int> s;
                for (const auto& [id, x] : mod->flow[i])
                    if (sgn(x) > 0) s.push_back(id);
                auto of = open_transitions(m_, s, sg.a, support_mask(mod->u[i]), false);
                auto ob = open_transitions(m_, s, sg.b, support_mask(mod->v[i]), true);
                std::vector<int> keep;
                for (int id : s)
                    if (std::binary_search(of.begin(), of.end(), id) && std::binary_search(ob.begin(), ob.end(), id))
                        keep.push_back(id);
                auto scc = scc_of(m_, keep, sg.a);
                keep = edges_within(m_, keep, scc);
                if (keep.empty() ? sg.a != sg.b : !scc[sg.b]) return std::nullopt;
                if (keep != t[i]) {
                    t[i] = keep;
                    changed = true;
                }
            }
            if (!changed) return build(*mod);
        }
    }

    FiringSequence build(const SkeletonModel& mod) {
        FiringSequence seq;
        for (std::size_t i = 0; i < skeleton_.size(); ++i) {
            const Segment& sg = skeleton_[i];
            auto part = segment_run(m_, sg.a, sg.b, mod.flow[i], mod.u[i], mod.v[i]);
            seq.insert(seq.end(), part.begin(), part.end());
            if (sg.bridge >= 0) seq.push_back({mod.bridge[i], sg.bridge});
        }
        RunResult r = acvass::run(m_, from_, seq);
        if (!r.ok || !(r.trace.back() == to_)) throw InternalError("reachability witness does not replay");
        return seq;
    }

    const Machine& m_;
    Config from_, to_;
    ReachOptions opt_;
    std::vector<int> usable_;
    std::vector<Segment> skeleton_;
};

void check_configs(const Machine& m, const Config& from, const Config& to) {
    for (const Config* c : {&from, &to}) {
        if (static_cast<int>(c->values.size()) != m.dim()) throw UsageError("configuration dimension mismatch");
        if (c->state < 0 || c->state >= m.num_states()) throw UsageError("configuration state out of range");
        if (!all_nonnegative(c->values)) throw UsageError("configuration has a negative component");
    }
}

}  // namespace

std::optional<FiringSequence> cvass_reach(const Machine& m, const Config& from, const Config& to,
                                          const ReachOptions& opt) {
    require_identity(m);
    check_configs(m, from, to);
    if (from == to) return FiringSequence{};
    return ReachSearch(m, from, to, opt).run();
}

std::optional<FiringSequence> cvass_cover(const Machine& m, const Config& from, const Config& to,
                                          const ReachOptions& opt) {
    require_identity(m);
    check_configs(m, from, to);
    FiringSequence seq;
    if (is_zero(to.values)) {
        auto path = solve_state_reach(m, from, to.state);
        if (!path) return std::nullopt;
        seq = concretize(m, from, *path);
    } else {
        CoverToReach c = compile_cover_to_reach(m, to);
        auto r = cvass_reach(c.inst.machine, from, *c.inst.to, opt);
        if (!r) return std::nullopt;
        seq = pull_back_cover(c, *r);
    }
    RunResult r = run(m, from, seq);
    if (!r.ok || r.trace.back().state != to.state || !geq(r.trace.back().values, to.values))
        throw InternalError("cover witness does not replay");
    return seq;
}

}  // namespace acvass
