#include "acvass/selfloop.hpp"

#include "acvass/semantics.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <map>

namespace acvass {

void require_selfloop(const Machine& m) {
    if (m.dim() > 64) throw UsageError("at most 64 counters are supported");
    for (const auto& t : m.transitions()) {
        if (t.identity) continue;
        for (int i = 0; i < m.dim(); ++i) {
            if (sgn(t.matrix(i, i)) <= 0)
                throw ClassError("transition " + std::to_string(t.id) + " is not a self-loop matrix");
            for (int j = 0; j < m.dim(); ++j)
                if (sgn(t.matrix(i, j)) < 0)
                    throw ClassError("transition " + std::to_string(t.id) + " has a negative entry");
        }
    }
}

Machine project(const Machine& m, const std::vector<int>& x) {
    for (int c : x)
        if (c < 0 || c >= m.dim()) throw UsageError("projection counter out of range");
    Machine out(static_cast<int>(x.size()));
    for (const auto& s : m.states()) out.add_state(s);
    for (const auto& t : m.transitions()) {
        IntVector b;
        for (int c : x) b.push_back(t.delta[c]);
        out.add_transition(t.from, b, t.to);
    }
    return out;
}

namespace {

// Full-dimension identity machine whose deltas vanish outside `x`; with
// `reversed`, transitions run backwards with negated deltas.
Machine masked(const Machine& m, Mask x, bool reversed) {
    Machine out(m.dim());
    for (const auto& s : m.states()) out.add_state(s);
    for (const auto& t : m.transitions()) {
        IntVector b(m.dim());
        for (int c = 0; c < m.dim(); ++c)
            if ((x >> c) & 1UL) b[c] = reversed ? Integer(-t.delta[c]) : t.delta[c];
        if (reversed)
            out.add_transition(t.to, b, t.from);
        else
            out.add_transition(t.from, b, t.to);
    }
    return out;
}

Mask all_counters(int d) { return d == 64 ? ~0UL : ((1UL << d) - 1); }

Rational eval(const LinExpr& e, const Model& model) {
    Rational r = e.constant;
    for (const auto& [v, k] : e.terms) r += k * model.at(v);
    return r;
}

// States reachable from p and co-reachable to p.
std::vector<char> scc_of(const Machine& m, int p) {
    auto sweep = [&](bool back) {
        std::vector<char> seen(m.num_states(), 0);
        std::deque<int> q{p};
        seen[p] = 1;
        while (!q.empty()) {
            int s = q.front();
            q.pop_front();
            for (const auto& t : m.transitions()) {
                int a = back ? t.to : t.from, b = back ? t.from : t.to;
                if (a == s && !seen[b]) {
                    seen[b] = 1;
                    q.push_back(b);
                }
            }
        }
        return seen;
    };
    auto f = sweep(false), b = sweep(true);
    for (std::size_t i = 0; i < f.size(); ++i) f[i] = f[i] && b[i];
    return f;
}

struct Option {
    std::vector<int> s;
    Mask x = 0, w = 0;
    std::vector<int> order, fwd, bwd;
};

// Subsets of {0..n-1} by size, then lexicographically by bit pattern.
std::vector<unsigned long> subsets_by_size(int n) {
    std::vector<unsigned long> out;
    for (unsigned long s = 0; s < (1UL << n); ++s) out.push_back(s);
    std::stable_sort(out.begin(), out.end(),
                     [](unsigned long a, unsigned long b) { return std::popcount(a) < std::popcount(b); });
    return out;
}

// Spreads the low bits of `bits` over the set bits of `mask`.
Mask deposit(unsigned long bits, Mask mask) {
    Mask out = 0;
    for (int i = 0; mask; ++i) {
        Mask low = mask & (~mask + 1);
        if ((bits >> i) & 1UL) out |= low;
        mask &= mask - 1;
    }
    return out;
}

class Solver {
public:
    Solver(const Machine& m, const SelfLoopOptions& opt) : m_(m), opt_(opt), d_(m.dim()) {}

    SelfLoopResult solve(const Config& from, const Config& to, bool single_state) {
        from_ = from;
        to_ = to;
        single_ = single_state;
        SelfLoopResult res;
        if (single_state && from.state != to.state) return res;
        LinearSystem sys;
        std::vector<LinExpr> start;
        for (const auto& v : from.values) start.emplace_back(v);
        std::vector<char> visited(m_.num_states(), 0);
        visited[from.state] = 1;
        if (dfs(from.state, start, support_mask(from.values), sys, visited)) {
            res.status = CoverStatus::Yes;
            res.certificate = build_certificate();
        } else {
            res.status = budget_hit_ ? CoverStatus::Budget : CoverStatus::No;
        }
        return res;
    }

private:
    struct Frame {
        int state;
        std::vector<LinExpr> start;
        const Option* opt;
        std::vector<int> flow_vars;
        std::vector<int> covered_vars;
        int step_transition = -1;
        int alpha_var = -1;
    };

    const std::vector<Option>& options(int p, Mask u0) {
        auto key = std::make_pair(p, u0);
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;
        std::vector<Option>& out = cache_[key];
        auto scc = scc_of(m_, p);
        std::vector<int> inner;
        for (const auto& t : m_.transitions())
            if (scc[t.from] && scc[t.to]) inner.push_back(t.id);
        if (static_cast<int>(inner.size()) > opt_.max_support) {
            budget_hit_ = true;
            return out;
        }
        const Mask full = all_counters(d_);
        for (unsigned long bits : subsets_by_size(static_cast<int>(inner.size()))) {
            Option o;
            for (std::size_t i = 0; i < inner.size(); ++i)
                if ((bits >> i) & 1UL) o.s.push_back(inner[i]);
            AdmissibilityQuery q{p, u0, o.s, 0, p};
            auto base = admissible(m_, q);
            if (!base) continue;
            Mask pumpable = 0;
            for (int y = 0; y < d_; ++y) {
                q.pump = 1UL << y;
                if (admissible(m_, q)) pumpable |= q.pump;
            }
            q.pump = pumpable;
            auto ord = pumpable ? admissible(m_, q) : base;
            if (!ord) {
                pumpable = 0;
                ord = base;
            }
            o.order = *ord;
            o.x = full & ~pumpable;
            Machine fwd = masked(m_, o.x, false);
            auto f = admissible(fwd, AdmissibilityQuery{p, u0 & o.x, o.s, 0, p});
            if (!f) continue;
            o.fwd = *f;
            Mask reachable_w = u0;
            for (int id : o.s) reachable_w |= supp_plus(m_.transition(id));
            reachable_w &= o.x;
            Machine bwd = masked(m_, o.x, true);
            // every candidate support of w, smallest first
            std::vector<Mask> ws;
            if (o.s.empty()) {
                ws.push_back(u0 & o.x);
            } else {
                for (Mask w = reachable_w;; w = (w - 1) & reachable_w) {
                    ws.push_back(w);
                    if (w == 0) break;
                }
                std::reverse(ws.begin(), ws.end());
            }
            for (Mask w : ws) {
                auto b = admissible(bwd, AdmissibilityQuery{p, w, o.s, 0, p});
                if (!b) continue;
                Option ow = o;
                ow.w = w;
                ow.bwd = *b;
                out.push_back(std::move(ow));
            }
        }
        return out;
    }

    // Adds the cycle constraints for `o` and records its variables in `f`.
    void add_cycle(LinearSystem& sys, Frame& f, const Option& o) {
        f.opt = &o;
        std::vector<LinExpr> w = f.start;
        for (int id : o.s) {
            int v = sys.add_var("x" + std::to_string(id));
            f.flow_vars.push_back(v);
            sys.add_gt(LinExpr::var(v), LinExpr(0));
            const Transition& t = m_.transition(id);
            for (int c = 0; c < d_; ++c)
                if (sgn(t.delta[c]) != 0) w[c] += LinExpr::var(v, Rational(t.delta[c]));
        }
        for (int c = 0; c < d_; ++c) {
            int v = sys.add_var("c" + std::to_string(c));
            f.covered_vars.push_back(v);
            sys.add_ge(LinExpr::var(v), LinExpr(0));
            if (!((o.x >> c) & 1UL)) continue;
            if ((o.w >> c) & 1UL)
                sys.add_gt(w[c], LinExpr(0));
            else
                sys.add(w[c], Rel::EQ, LinExpr(0));
            sys.add_ge(w[c], LinExpr::var(v));
        }
    }

    bool feasible(const LinearSystem& sys) {
        if (opt_.dump) *opt_.dump = sys;
        auto mdl = acvass::solve(sys);
        if (mdl) model_ = *mdl;
        return mdl.has_value();
    }

    bool dfs(int p, const std::vector<LinExpr>& start, Mask u0, const LinearSystem& sys, std::vector<char>& visited) {
        for (const Option& o : options(p, u0)) {
            LinearSystem s1 = sys;
            Frame f{p, start, nullptr, {}, {}};
            add_cycle(s1, f, o);
            stack_.push_back(f);
            if (p == to_.state) {
                LinearSystem s2 = s1;
                for (int c = 0; c < d_; ++c) s2.add_ge(LinExpr::var(f.covered_vars[c]), LinExpr(to_.values[c]));
                if (feasible(s2)) return true;
                stack_.pop_back();
                continue;
            }
            if (single_ || !feasible(s1)) {
                stack_.pop_back();
                continue;
            }
            for (const auto& t : m_.transitions()) {
                if (t.from != p || visited[t.to] || !reaches_target(t.to, visited)) continue;
                LinearSystem s2 = s1;
                int a = s2.add_var("a" + std::to_string(t.id));
                s2.add_gt(LinExpr::var(a), LinExpr(0));
                s2.add(LinExpr::var(a), Rel::LE, LinExpr(1));
                std::vector<LinExpr> next(d_);
                Mask possible = 0;
                for (int r = 0; r < d_; ++r) {
                    for (int c = 0; c < d_; ++c)
                        if (sgn(t.matrix(r, c)) != 0) next[r] += LinExpr::var(stack_.back().covered_vars[c], Rational(t.matrix(r, c)));
                    if (sgn(t.delta[r]) != 0) next[r] += LinExpr::var(a, Rational(t.delta[r]));
                    s2.add_ge(next[r], LinExpr(0));
                    if (!next[r].is_constant()) possible |= 1UL << r;
                }
                stack_.back().step_transition = t.id;
                stack_.back().alpha_var = a;
                for (unsigned long bits : subsets_by_size(std::popcount(possible))) {
                    Mask u1 = deposit(bits, possible);
                    LinearSystem s3 = s2;
                    for (int r = 0; r < d_; ++r) {
                        if ((u1 >> r) & 1UL)
                            s3.add_gt(next[r], LinExpr(0));
                        else
                            s3.add(next[r], Rel::EQ, LinExpr(0));
                    }
                    if (options(t.to, u1).empty() || !feasible(s3)) continue;
                    visited[t.to] = 1;
                    bool ok = dfs(t.to, next, u1, s3, visited);
                    visited[t.to] = 0;
                    if (ok) return true;
                }
            }
            stack_.pop_back();
        }
        return false;
    }

    bool reaches_target(int q, const std::vector<char>& visited) const {
        std::vector<char> seen(visited);
        std::deque<int> d{q};
        seen[q] = 1;
        while (!d.empty()) {
            int s = d.front();
            d.pop_front();
            if (s == to_.state) return true;
            for (const auto& t : m_.transitions())
                if (t.from == s && !seen[t.to]) {
                    seen[t.to] = 1;
                    d.push_back(t.to);
                }
        }
        return false;
    }

    CoverCertificate build_certificate() const {
        CoverCertificate c;
        for (const Frame& f : stack_) {
            CycleCoverCertificate cy;
            cy.anchor = f.state;
            cy.x = mask_to_set(f.opt->x);
            cy.s = f.opt->s;
            cy.order = f.opt->order;
            cy.projected_fwd = f.opt->fwd;
            cy.projected_bwd = f.opt->bwd;
            for (const auto& e : f.start) cy.start.push_back(eval(e, model_));
            cy.w = cy.start;
            for (std::size_t i = 0; i < f.opt->s.size(); ++i) {
                Rational x = model_.at(f.flow_vars[i]);
                cy.flow.push_back(x);
                const Transition& t = m_.transition(f.opt->s[i]);
                for (int k = 0; k < d_; ++k) cy.w[k] += x * Rational(t.delta[k]);
            }
            for (int k = 0; k < d_; ++k) {
                if (!((f.opt->x >> k) & 1UL)) cy.w[k] = 0;
                cy.covered.push_back(model_.at(f.covered_vars[k]));
            }
            c.cycles.push_back(std::move(cy));
            if (f.step_transition >= 0 && &f != &stack_.back())
                c.steps.push_back({f.step_transition, model_.at(f.alpha_var)});
        }
        return c;
    }

    const Machine& m_;
    const SelfLoopOptions& opt_;
    int d_;
    Config from_, to_;
    bool single_ = false;
    bool budget_hit_ = false;
    std::map<std::pair<int, Mask>, std::vector<Option>> cache_;
    std::vector<Frame> stack_;
    Model model_;
};

void check_target(const Machine& m, const Config& from, const Config& to) {
    if (static_cast<int>(from.values.size()) != m.dim() || static_cast<int>(to.values.size()) != m.dim())
        throw UsageError("configuration dimension mismatch");
    if (from.state < 0 || from.state >= m.num_states() || to.state < 0 || to.state >= m.num_states())
        throw UsageError("configuration refers to an unknown state");
}

}  // namespace

SelfLoopResult selfloop_cover(const Machine& m, const Config& from, const Config& to, const SelfLoopOptions& opt) {
    require_selfloop(m);
    check_target(m, from, to);
    Solver s(m, opt);
    SelfLoopResult r = s.solve(from, to, false);
    if (r.certificate && !check_certificate(m, from, to, *r.certificate))
        throw InternalError("cover certificate fails its own check");
    return r;
}

std::optional<CycleCoverCertificate> cyclic_cover(const Machine& m, int p, const RatVector& u, const RatVector& v,
                                                  const SelfLoopOptions& opt) {
    require_selfloop(m);
    Config from{p, u}, to{p, v};
    check_target(m, from, to);
    Solver s(m, opt);
    SelfLoopResult r = s.solve(from, to, true);
    if (!r.certificate) return std::nullopt;
    if (!check_certificate(m, from, to, *r.certificate)) throw InternalError("cycle certificate fails its own check");
    return r.certificate->cycles.front();
}

bool check_certificate(const Machine& m, const Config& from, const Config& to, const CoverCertificate& c) {
    const int d = m.dim();
    if (c.cycles.empty() || c.steps.size() + 1 != c.cycles.size()) return false;
    if (c.cycles.front().anchor != from.state || c.cycles.front().start != from.values) return false;
    if (c.cycles.back().anchor != to.state || !geq(c.cycles.back().covered, to.values)) return false;
    std::vector<char> seen(m.num_states(), 0);
    for (std::size_t i = 0; i < c.cycles.size(); ++i) {
        const CycleCoverCertificate& cy = c.cycles[i];
        if (cy.anchor < 0 || cy.anchor >= m.num_states() || seen[cy.anchor]) return false;
        seen[cy.anchor] = 1;
        if (static_cast<int>(cy.start.size()) != d || static_cast<int>(cy.w.size()) != d ||
            static_cast<int>(cy.covered.size()) != d || cy.flow.size() != cy.s.size())
            return false;
        if (!all_nonnegative(cy.start) || !all_nonnegative(cy.covered) || !all_nonnegative(cy.w)) return false;
        Mask x = set_to_mask(cy.x);
        Mask pump = all_counters(d) & ~x;
        RatVector w = cy.start;
        for (std::size_t k = 0; k < cy.s.size(); ++k) {
            if (sgn(cy.flow[k]) <= 0) return false;
            const Transition& t = m.transition(cy.s[k]);
            for (int j = 0; j < d; ++j) w[j] += cy.flow[k] * Rational(t.delta[j]);
        }
        for (int j = 0; j < d; ++j) {
            if ((x >> j) & 1UL) {
                if (w[j] != cy.w[j] || cy.covered[j] > w[j]) return false;
            } else if (sgn(cy.w[j]) != 0) {
                return false;
            }
        }
        AdmissibilityQuery q{cy.anchor, support_mask(cy.start), cy.s, pump, cy.anchor};
        try {
            build_admissible_run(m, q, cy.order, cy.start);
        } catch (const UsageError&) {
            return false;
        }
        Machine fwd = masked(m, x, false), bwd = masked(m, x, true);
        if (!admissible_order_holds(fwd, {cy.anchor, support_mask(cy.start) & x, cy.s, 0, cy.anchor}, cy.projected_fwd))
            return false;
        if (!admissible_order_holds(bwd, {cy.anchor, support_mask(cy.w) & x, cy.s, 0, cy.anchor}, cy.projected_bwd))
            return false;
        if (i + 1 < c.cycles.size()) {
            const ChainStep& s = c.steps[i];
            if (s.transition < 0 || s.transition >= static_cast<int>(m.transitions().size())) return false;
            auto next = step(m, Config{cy.anchor, cy.covered}, s.alpha, s.transition);
            if (!next || !(*next == Config{c.cycles[i + 1].anchor, c.cycles[i + 1].start})) return false;
        }
    }
    return true;
}

FiringSequence pump_sequence(const Machine& m, const Config& from, const FiringSequence& seq,
                             const std::vector<int>& pumped, const Rational& k) {
    require_selfloop(m);
    RunResult r = run(m, from, seq);
    if (!r.ok) throw UsageError("run does not replay");
    const Config& end = r.trace.back();
    if (end.state != from.state) throw UsageError("run must return to its start state");
    if (pumped.empty()) return seq;
    if (sgn(k) <= 0) throw UsageError("bound must be positive");
    const Mask vs = support_mask(end.values);
    for (int x : pumped) {
        if (x < 0 || x >= m.dim()) throw UsageError("pumped counter out of range");
        bool ok = false;
        for (std::size_t i = 0; i < seq.size(); ++i) {
            const Transition& t = m.transition(seq[i].transition);
            Mask p = supp_pump(t, x);
            if ((p & support_mask(r.trace[i].values)) && (p & vs)) ok = true;
        }
        if (!ok) throw UsageError("counter " + std::to_string(x) + " is not pumped into the final support");
    }
    Rational mn;
    for (const auto& v : end.values)
        if (sgn(v) > 0 && (sgn(mn) == 0 || v < mn)) mn = v;
    // n * mn / 2 > k
    Rational bound = 2 * k / mn;
    Integer n = bound.get_num() / bound.get_den() + 1;
    if (n > 1000000) throw UsageError("pumping bound too large");
    const long reps = n.get_si();
    FiringSequence out = scale_seq(Rational(1, 2), seq);
    FiringSequence piece = scale_seq(Rational(1, 2 * reps), seq);
    for (long i = 0; i < reps; ++i) out.insert(out.end(), piece.begin(), piece.end());
    RunResult rr = run(m, from, out);
    if (!rr.ok || !geq(rr.trace.back().values, end.values)) throw InternalError("pumped run does not cover the original end");
    for (int x : pumped)
        if (rr.trace.back().values[x] <= k) throw InternalError("pumped counter stays below the bound");
    return out;
}

}  // namespace acvass
