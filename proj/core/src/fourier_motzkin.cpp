#include "acvass/lra.hpp"

#include <boost/dynamic_bitset.hpp>

#include <map>
#include <optional>

namespace acvass {

namespace {

Rational coeff_of(const Constraint& c, int var) {
    for (const auto& [v, k] : c.coeffs)
        if (v == var) return k;
    return 0;
}

std::vector<std::pair<int, Rational>> combine(const Constraint& a, const Rational& ka, const Constraint& b,
                                              const Rational& kb) {
    std::map<int, Rational> acc;
    for (const auto& [v, k] : a.coeffs) acc[v] += ka * k;
    for (const auto& [v, k] : b.coeffs) acc[v] += kb * k;
    std::vector<std::pair<int, Rational>> out;
    for (auto& [v, k] : acc)
        if (sgn(k) != 0) out.emplace_back(v, k);
    return out;
}

}  // namespace

LinearSystem eliminate(const LinearSystem& sys, int var) {
    if (var < 0 || var >= sys.num_vars()) throw UsageError("eliminate: undeclared variable");
    LinearSystem out;
    for (int v = 0; v < sys.num_vars(); ++v) out.add_var(sys.name(v));
    const auto& cons = sys.constraints();

    int eq = -1;
    for (std::size_t i = 0; i < cons.size(); ++i)
        if (cons[i].rel == Rel::EQ && sgn(coeff_of(cons[i], var)) != 0) {
            eq = static_cast<int>(i);
            break;
        }
    if (eq >= 0) {
        const Constraint& e = cons[eq];
        Rational k = coeff_of(e, var);
        for (std::size_t i = 0; i < cons.size(); ++i) {
            if (static_cast<int>(i) == eq) continue;
            Rational a = coeff_of(cons[i], var);
            if (sgn(a) == 0) {
                out.add(cons[i].coeffs, cons[i].rel, cons[i].rhs);
                continue;
            }
            Rational f = -a / k;
            out.add(combine(cons[i], 1, e, f), cons[i].rel, cons[i].rhs + f * e.rhs);
        }
        return out;
    }

    std::vector<const Constraint*> upper, lower;
    for (const auto& c : cons) {
        Rational a = coeff_of(c, var);
        if (sgn(a) == 0)
            out.add(c.coeffs, c.rel, c.rhs);
        else if (sgn(a) > 0)
            upper.push_back(&c);
        else
            lower.push_back(&c);
    }
    for (const Constraint* u : upper)
        for (const Constraint* l : lower) {
            Rational p = coeff_of(*u, var), n = -coeff_of(*l, var);
            Rel rel = (u->rel == Rel::LT || l->rel == Rel::LT) ? Rel::LT : Rel::LE;
            out.add(combine(*u, n, *l, p), rel, n * u->rhs + p * l->rhs);
        }
    return out;
}

namespace {

struct Row {
    std::vector<Rational> a;  // last slot is the strictness variable
    Rational rhs;
    boost::dynamic_bitset<> history;
};

bool is_ground(const Row& r) {
    for (const auto& x : r.a)
        if (sgn(x) != 0) return false;
    return true;
}

void normalize(Row& r) {
    for (const auto& x : r.a)
        if (sgn(x) != 0) {
            Rational s = abs(x);
            for (auto& y : r.a) y /= s;
            r.rhs /= s;
            return;
        }
}

}  // namespace

bool fm_satisfiable(const LinearSystem& sys) {
    const int n = sys.num_vars();
    const int eps = n;
    std::vector<Row> rows;
    std::size_t originals = 0;
    for (const auto& c : sys.constraints()) originals += c.rel == Rel::EQ ? 2 : 1;
    auto push = [&](const Constraint& c, int sign, bool strict) {
        Row r;
        r.a.assign(n + 1, Rational(0));
        for (const auto& [v, k] : c.coeffs) r.a[v] = sign * k;
        r.rhs = sign * c.rhs;
        if (strict) r.a[eps] = 1;
        r.history.resize(originals);
        r.history.set(rows.size());
        rows.push_back(std::move(r));
    };
    for (const auto& c : sys.constraints()) {
        if (c.rel == Rel::EQ) {
            push(c, 1, false);
            push(c, -1, false);
        } else {
            push(c, 1, c.rel == Rel::LT);
        }
    }

    for (int var = 0; var < n; ++var) {
        std::vector<Row> next, pos, neg;
        for (auto& r : rows) {
            int s = sgn(r.a[var]);
            (s == 0 ? next : s > 0 ? pos : neg).push_back(std::move(r));
        }
        const std::size_t limit = static_cast<std::size_t>(var) + 2;
        for (const auto& p : pos)
            for (const auto& q : neg) {
                boost::dynamic_bitset<> h = p.history | q.history;
                if (h.count() > limit) continue;  // Chernikov: redundant
                Rational kp = -q.a[var], kq = p.a[var];
                Row r;
                r.a.resize(n + 1);
                for (int i = 0; i <= n; ++i) r.a[i] = kp * p.a[i] + kq * q.a[i];
                r.a[var] = 0;
                r.rhs = kp * p.rhs + kq * q.rhs;
                r.history = std::move(h);
                next.push_back(std::move(r));
            }
        // ground rows are decided now; duplicates are dropped
        rows.clear();
        std::map<std::pair<std::vector<std::string>, std::string>, std::size_t> seen;
        for (auto& r : next) {
            if (is_ground(r)) {
                if (sgn(r.rhs) < 0) return false;
                continue;
            }
            normalize(r);
            std::vector<std::string> key;
            for (const auto& x : r.a) key.push_back(x.get_str());
            auto [it, fresh] = seen.emplace(std::make_pair(std::move(key), r.rhs.get_str()), rows.size());
            if (!fresh) {
                // keep the copy with the smaller history
                if (r.history.count() < rows[it->second].history.count()) rows[it->second] = std::move(r);
                continue;
            }
            rows.push_back(std::move(r));
        }
    }

    // remaining rows mention only the strictness variable: c*eps <= rhs, eps > 0
    std::optional<Rational> lo, hi;
    for (const auto& r : rows) {
        if (is_ground(r)) {
            if (sgn(r.rhs) < 0) return false;
            continue;
        }
        const Rational& c = r.a[eps];
        Rational b = r.rhs / c;
        if (sgn(c) > 0) {
            if (!hi || b < *hi) hi = b;
        } else {
            if (!lo || b > *lo) lo = b;
        }
    }
    if (hi && sgn(*hi) <= 0) return false;
    if (lo && hi && *lo > *hi) return false;
    return true;
}

}  // namespace acvass
