#include "acvass/oracle.hpp"

#include "acvass/semantics.hpp"

#include <deque>

namespace acvass {

bool Target::met_by(const Config& c) const {
    if (c.state != state) return false;
    switch (kind) {
        case Kind::ReachExact: return c.values == values;
        case Kind::Cover: return geq(c.values, values);
        case Kind::ReachState: return true;
    }
    return false;
}

namespace {

// A step of either an affine machine or a zero-test machine.
struct Edge {
    int from = 0, to = 0;
    const IntMatrix* a = nullptr;  // nullptr: identity
    const IntVector* b = nullptr;  // nullptr: zero-test
    int test = -1;
};

struct Problem {
    int dim = 0;
    int num_states = 0;
    std::vector<Edge> edges;
    bool nonneg = true;  // every matrix non-negative
    bool one_bounded = false;
};

std::vector<LinExpr> image(const Edge& e, const std::vector<LinExpr>& cur) {
    if (!e.a) return cur;
    const int d = static_cast<int>(cur.size());
    std::vector<LinExpr> out(d);
    for (int x = 0; x < d; ++x)
        for (int y = 0; y < d; ++y) {
            const Integer& k = (*e.a)(x, y);
            if (sgn(k) == 0) continue;
            out[x] += Rational(k) * cur[y];
        }
    return out;
}

bool nonneg_form(const LinExpr& e) {
    if (sgn(e.constant) < 0) return false;
    for (const auto& [v, k] : e.terms)
        if (sgn(k) < 0) return false;
    return true;
}

bool at_most_one_form(const LinExpr& e) {
    if (e.constant > 1) return false;
    for (const auto& [v, k] : e.terms)
        if (sgn(k) > 0) return false;
    return true;
}

// Builds the path system; returns false on a ground contradiction.
bool build_system(const Problem& p, const RatVector& u, const std::vector<int>& path, const Target* target,
                  LinearSystem& sys) {
    std::vector<LinExpr> cur(p.dim);
    for (int x = 0; x < p.dim; ++x) cur[x] = LinExpr(u[x]);
    int k = 0;
    for (int id : path) {
        const Edge& e = p.edges[id];
        if (e.test >= 0) {
            const LinExpr& v = cur[e.test];
            if (v.is_constant()) {
                if (sgn(v.constant) != 0) return false;
            } else {
                sys.add(v, Rel::EQ, LinExpr(0));
            }
            continue;
        }
        int a = sys.add_var("alpha" + std::to_string(++k));
        sys.add_gt(LinExpr::var(a), LinExpr(0));
        sys.add(LinExpr::var(a), Rel::LE, LinExpr(1));
        cur = image(e, cur);
        for (int x = 0; x < p.dim; ++x) {
            const Integer& bx = (*e.b)[x];
            if (sgn(bx) != 0) cur[x] += LinExpr::var(a, Rational(bx));
            const LinExpr& v = cur[x];
            if (v.is_constant()) {
                if (sgn(v.constant) < 0) return false;
                if (p.one_bounded && v.constant > 1) return false;
                continue;
            }
            if (!nonneg_form(v)) sys.add_ge(v, LinExpr(0));
            if (p.one_bounded && !at_most_one_form(v)) sys.add(v, Rel::LE, LinExpr(1));
        }
    }
    if (target && target->kind != Target::Kind::ReachState) {
        for (int x = 0; x < p.dim; ++x) {
            const LinExpr& v = cur[x];
            const Rational& want = target->values[x];
            if (v.is_constant()) {
                bool ok = target->kind == Target::Kind::ReachExact ? v.constant == want : v.constant >= want;
                if (!ok) return false;
                continue;
            }
            if (target->kind == Target::Kind::ReachExact)
                sys.add(v, Rel::EQ, LinExpr(want));
            else
                sys.add_ge(v, LinExpr(want));
        }
    }
    return true;
}

std::optional<Model> path_model(const Problem& p, const RatVector& u, const std::vector<int>& path,
                                const Target* target, LinearSystem* dump) {
    LinearSystem sys;
    bool ok = build_system(p, u, path, target, sys);
    if (dump) *dump = sys;
    if (!ok) return std::nullopt;
    return solve(sys);
}

bool one_bounded_ok(const RatVector& v) {
    for (const auto& x : v)
        if (x > 1) return false;
    return true;
}

// Concrete replay of one step; nullopt if infeasible.
std::optional<RatVector> fire(const Problem& p, const Edge& e, const RatVector& v, const Rational& alpha) {
    if (e.test >= 0) {
        if (sgn(v[e.test]) != 0) return std::nullopt;
        return v;
    }
    RatVector w = e.a ? (*e.a) * v : v;
    for (int x = 0; x < p.dim; ++x) w[x] += alpha * (*e.b)[x];
    if (!all_nonnegative(w)) return std::nullopt;
    if (p.one_bounded && !one_bounded_ok(w)) return std::nullopt;
    return w;
}

// A fraction that keeps every decremented counter positive when possible.
std::optional<Rational> pick_alpha(const Problem& p, const Edge& e, const RatVector& v) {
    RatVector av = e.a ? (*e.a) * v : v;
    std::optional<Rational> cap;
    for (int x = 0; x < p.dim; ++x) {
        const Integer& bx = (*e.b)[x];
        if (sgn(av[x]) < 0) return std::nullopt;
        if (sgn(bx) < 0) {
            Rational c = av[x] / Rational(-bx) / 2;
            if (sgn(c) == 0) return std::nullopt;
            if (!cap || c < *cap) cap = c;
        } else if (sgn(bx) > 0 && p.one_bounded) {
            Rational c = (1 - av[x]) / Rational(bx);
            if (sgn(c) <= 0) return std::nullopt;
            if (!cap || c < *cap) cap = c;
        }
    }
    if (!cap || *cap > 1) return Rational(1);
    return *cap;
}

struct Node {
    std::vector<int> path;
    int state = 0;
    unsigned long mask = 0;     // maximal reachable support (non-negative case)
    RatVector val;              // a concrete configuration reached along the path
    std::vector<Rational> alphas;
    RatVector upper;            // componentwise upper bound along the path
};

struct SearchResult {
    bool found = false;
    std::vector<int> path;
    std::vector<Rational> alphas;  // one per non-test step
    long checked = 0;
};

std::vector<Rational> model_alphas(const Model& m) { return m; }

std::vector<Rational> replay_alphas(const Problem& p, const Node& n) {
    std::vector<Rational> out;
    for (std::size_t i = 0; i < n.path.size(); ++i)
        if (p.edges[n.path[i]].test < 0) out.push_back(n.alphas[i]);
    return out;
}

SearchResult search(const Problem& p, const Config& from, const Target& target, int max_len) {
    SearchResult res;
    if (max_len < 0) throw UsageError("negative length bound");
    if (target.kind != Target::Kind::ReachState && static_cast<int>(target.values.size()) != p.dim)
        throw UsageError("target dimension mismatch");
    if (p.one_bounded && !one_bounded_ok(from.values)) return res;

    // distance to the target state in the state graph
    std::vector<int> dist(p.num_states, -1);
    std::vector<std::vector<int>> rev(p.num_states), out(p.num_states);
    for (int i = 0; i < static_cast<int>(p.edges.size()); ++i) {
        rev[p.edges[i].to].push_back(p.edges[i].from);
        out[p.edges[i].from].push_back(i);
    }
    std::deque<int> q{target.state};
    dist[target.state] = 0;
    while (!q.empty()) {
        int s = q.front();
        q.pop_front();
        for (int r : rev[s])
            if (dist[r] < 0) {
                dist[r] = dist[s] + 1;
                q.push_back(r);
            }
    }

    bool has_tests = false;
    for (const auto& e : p.edges) has_tests |= e.test >= 0;
    const bool exact_masks = p.nonneg && !p.one_bounded && !has_tests && p.dim <= 64;
    unsigned long want_mask = 0;
    if (target.kind != Target::Kind::ReachState) want_mask = support_mask(target.values);

    auto candidate = [&](const Node& n) -> bool {
        ++res.checked;
        if (n.state != target.state) return false;
        std::vector<Rational> alphas = replay_alphas(p, n);
        if (target.kind == Target::Kind::ReachState || target.met_by(Config{n.state, n.val})) {
            res.found = true;
            res.path = n.path;
            res.alphas = alphas;
            return true;
        }
        if (p.nonneg) {
            if (exact_masks && (want_mask & ~n.mask)) return false;
            if (!geq(n.upper, target.values)) return false;
        }
        auto m = path_model(p, from.values, n.path, &target, nullptr);
        if (!m) return false;
        res.found = true;
        res.path = n.path;
        res.alphas = model_alphas(*m);
        return true;
    };

    Node root;
    root.state = from.state;
    root.val = from.values;
    root.upper = from.values;
    if (exact_masks) root.mask = support_mask(from.values);
    if (candidate(root)) return res;

    std::vector<Node> frontier{root};
    for (int len = 1; len <= max_len && !frontier.empty(); ++len) {
        std::vector<Node> next;
        for (const Node& n : frontier) {
            for (int id : out[n.state]) {
                const Edge& e = p.edges[id];
                if (dist[e.to] < 0 || dist[e.to] > max_len - len) continue;
                Node c;
                c.path = n.path;
                c.path.push_back(id);
                c.state = e.to;
                if (exact_masks) {
                    unsigned long s = n.mask, s2 = 0;
                    bool ok = true;
                    for (int x = 0; x < p.dim && ok; ++x) {
                        unsigned long pre = 0;
                        if (e.a) {
                            for (int y = 0; y < p.dim; ++y)
                                if (sgn((*e.a)(x, y)) > 0) pre |= 1UL << y;
                        } else {
                            pre = 1UL << x;
                        }
                        int bs = sgn((*e.b)[x]);
                        if (bs < 0 && !(pre & s)) ok = false;
                        if (bs > 0 || (pre & s)) s2 |= 1UL << x;
                    }
                    if (!ok) continue;
                    c.mask = s2;
                }
                // concrete extension of the stored run, falling back to the solver
                std::optional<RatVector> w;
                Rational alpha(1);
                if (e.test >= 0) {
                    w = fire(p, e, n.val, alpha);
                } else if (auto a = pick_alpha(p, e, n.val)) {
                    alpha = *a;
                    w = fire(p, e, n.val, alpha);
                }
                if (w) {
                    c.val = std::move(*w);
                    c.alphas = n.alphas;
                    c.alphas.push_back(alpha);
                } else {
                    if (exact_masks) throw InternalError("support bookkeeping disagrees with replay");
                    auto m = path_model(p, from.values, c.path, nullptr, nullptr);
                    if (!m) continue;
                    // replay the model to refresh the stored run
                    RatVector v = from.values;
                    std::size_t k = 0;
                    c.alphas.clear();
                    for (int sid : c.path) {
                        const Edge& se = p.edges[sid];
                        Rational al = se.test >= 0 ? Rational(1) : (*m)[k++];
                        auto nv = fire(p, se, v, al);
                        if (!nv) throw InternalError("solver model does not replay");
                        v = std::move(*nv);
                        c.alphas.push_back(al);
                    }
                    c.val = std::move(v);
                }
                if (p.nonneg) {
                    c.upper = e.a ? (*e.a) * n.upper : n.upper;
                    if (e.b && e.test < 0)
                        for (int x = 0; x < p.dim; ++x)
                            if (sgn((*e.b)[x]) > 0) c.upper[x] += (*e.b)[x];
                    if (p.one_bounded)
                        for (auto& x : c.upper)
                            if (x > 1) x = 1;
                }
                if (candidate(c)) return res;
                next.push_back(std::move(c));
            }
        }
        frontier = std::move(next);
    }
    return res;
}

Problem problem_of(const Machine& m) {
    Problem p;
    p.dim = m.dim();
    p.num_states = m.num_states();
    for (const auto& t : m.transitions()) {
        Edge e{t.from, t.to, t.identity ? nullptr : &t.matrix, &t.delta, -1};
        p.edges.push_back(e);
        if (!t.identity)
            for (int i = 0; i < p.dim; ++i)
                for (int j = 0; j < p.dim; ++j)
                    if (sgn(t.matrix(i, j)) < 0) p.nonneg = false;
    }
    return p;
}

Problem problem_of(const ZeroTestMachine& m, bool one_bounded) {
    Problem p;
    p.dim = m.dim;
    p.num_states = static_cast<int>(m.states.size());
    p.one_bounded = one_bounded;
    for (const auto& t : m.transitions) p.edges.push_back(Edge{t.from, t.to, nullptr, &t.delta, -1});
    for (const auto& t : m.tests) p.edges.push_back(Edge{t.from, t.to, nullptr, nullptr, t.counter});
    return p;
}

void check_path_chain(const Problem& p, int start, const std::vector<int>& path) {
    int s = start;
    for (int id : path) {
        if (id < 0 || id >= static_cast<int>(p.edges.size())) throw UsageError("unknown transition in path");
        if (p.edges[id].from != s) throw UsageError("path does not chain through the state graph");
        s = p.edges[id].to;
    }
}

}  // namespace

std::optional<Model> seq_feasible(const Machine& m, const Config& from, const std::vector<int>& path,
                                  const Target& target, LinearSystem* dump) {
    Problem p = problem_of(m);
    if (static_cast<int>(from.values.size()) != p.dim) throw UsageError("configuration dimension mismatch");
    check_path_chain(p, from.state, path);
    int end = path.empty() ? from.state : p.edges[path.back()].to;
    if (end != target.state) {
        if (dump) *dump = LinearSystem{};
        return std::nullopt;
    }
    return path_model(p, from.values, path, &target, dump);
}

FiringSequence model_to_sequence(const std::vector<int>& path, const Model& model) {
    if (model.size() != path.size()) throw UsageError("model does not match path length");
    FiringSequence seq;
    for (std::size_t i = 0; i < path.size(); ++i) seq.push_back(FiringStep{model[i], path[i]});
    return seq;
}

OracleAnswer bounded_decide(const Machine& m, const Config& from, const Target& target, int max_len) {
    Problem p = problem_of(m);
    if (static_cast<int>(from.values.size()) != p.dim) throw UsageError("configuration dimension mismatch");
    SearchResult r = search(p, from, target, max_len);
    OracleAnswer ans;
    ans.bound = max_len;
    ans.paths_checked = r.checked;
    if (!r.found) return ans;
    ans.found = true;
    ans.witness = model_to_sequence(r.path, r.alphas);
    RunResult rr = run(m, from, ans.witness);
    if (!rr.ok || !target.met_by(rr.trace.back())) throw InternalError("oracle witness fails to replay");
    return ans;
}

ZOracleAnswer bounded_decide_zerotest(const ZeroTestMachine& m, const Config& from, const Target& target,
                                      int max_len, bool one_bounded) {
    Problem p = problem_of(m, one_bounded);
    if (static_cast<int>(from.values.size()) != p.dim) throw UsageError("configuration dimension mismatch");
    SearchResult r = search(p, from, target, max_len);
    ZOracleAnswer ans;
    ans.bound = max_len;
    ans.paths_checked = r.checked;
    if (!r.found) return ans;
    ans.found = true;
    const int nt = static_cast<int>(m.transitions.size());
    std::size_t k = 0;
    for (int id : r.path) {
        if (id < nt)
            ans.witness.push_back(ZStep{false, id, r.alphas.at(k++)});
        else
            ans.witness.push_back(ZStep{true, id - nt, Rational(0)});
    }
    ZRunResult rr = zrun(m, from, ans.witness, one_bounded);
    if (!rr.ok || !target.met_by(rr.trace.back())) throw InternalError("oracle witness fails to replay");
    return ans;
}

}  // namespace acvass
