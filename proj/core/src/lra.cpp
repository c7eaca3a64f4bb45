#include "acvass/lra.hpp"

#include <algorithm>
#include <sstream>

namespace acvass {

LinExpr LinExpr::var(int v, const Rational& c) {
    LinExpr e;
    if (sgn(c) != 0) e.terms[v] = c;
    return e;
}

LinExpr& LinExpr::operator+=(const LinExpr& o) {
    for (const auto& [v, c] : o.terms) {
        Rational& slot = terms[v];
        slot += c;
        if (sgn(slot) == 0) terms.erase(v);
    }
    constant += o.constant;
    return *this;
}

LinExpr& LinExpr::operator-=(const LinExpr& o) {
    for (const auto& [v, c] : o.terms) {
        Rational& slot = terms[v];
        slot -= c;
        if (sgn(slot) == 0) terms.erase(v);
    }
    constant -= o.constant;
    return *this;
}

LinExpr& LinExpr::operator*=(const Rational& c) {
    if (sgn(c) == 0) {
        terms.clear();
        constant = 0;
        return *this;
    }
    for (auto& [v, x] : terms) x *= c;
    constant *= c;
    return *this;
}

LinExpr operator+(LinExpr a, const LinExpr& b) { return a += b; }
LinExpr operator-(LinExpr a, const LinExpr& b) { return a -= b; }
LinExpr operator*(const Rational& c, LinExpr a) { return a *= c; }

int LinearSystem::add_var(const std::string& name) {
    names_.push_back(name.empty() ? "x" + std::to_string(names_.size()) : name);
    return static_cast<int>(names_.size()) - 1;
}

void LinearSystem::add(std::vector<std::pair<int, Rational>> coeffs, Rel rel, const Rational& rhs) {
    std::sort(coeffs.begin(), coeffs.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    Constraint c;
    c.rel = rel;
    c.rhs = rhs;
    for (auto& [v, x] : coeffs) {
        if (v < 0 || v >= num_vars()) throw UsageError("constraint references an undeclared variable");
        if (!c.coeffs.empty() && c.coeffs.back().first == v)
            c.coeffs.back().second += x;
        else
            c.coeffs.emplace_back(v, x);
        if (sgn(c.coeffs.back().second) == 0) c.coeffs.pop_back();
    }
    cons_.push_back(std::move(c));
}

void LinearSystem::add(const LinExpr& lhs, Rel rel, const LinExpr& rhs) {
    LinExpr d = lhs - rhs;
    std::vector<std::pair<int, Rational>> coeffs(d.terms.begin(), d.terms.end());
    add(std::move(coeffs), rel, -d.constant);
}

namespace {

bool ground_holds(Rel rel, const Rational& lhs, const Rational& rhs) {
    switch (rel) {
        case Rel::LE: return lhs <= rhs;
        case Rel::LT: return lhs < rhs;
        case Rel::EQ: return lhs == rhs;
    }
    return false;
}

// a + b*delta for a symbolic positive infinitesimal delta
struct DR {
    Rational a, b;
};
bool operator<(const DR& x, const DR& y) { return x.a < y.a || (x.a == y.a && x.b < y.b); }

class Simplex {
public:
    explicit Simplex(const LinearSystem& sys) : n_(sys.num_vars()) {
        lo_.resize(n_);
        hi_.resize(n_);
        for (const auto& c : sys.constraints()) {
            if (c.coeffs.empty()) {
                if (!ground_holds(c.rel, Rational(0), c.rhs)) trivially_unsat_ = true;
                continue;
            }
            if (c.coeffs.size() == 1) {
                const auto& [v, k] = c.coeffs[0];
                Rational bound = c.rhs / k;
                bound_var(v, c.rel, bound, sgn(k) < 0);
                continue;
            }
            int s = new_slack(c.coeffs);
            bound_var(s, c.rel, c.rhs, false);
        }
    }

    std::optional<Model> run() {
        if (trivially_unsat_) return std::nullopt;
        const int total = static_cast<int>(val_.size());
        for (int v = 0; v < total; ++v) {
            if (lo_[v] && hi_[v] && *hi_[v] < *lo_[v]) return std::nullopt;
        }
        // nonbasic variables must sit inside their bounds
        for (int v = 0; v < total; ++v) {
            if (row_of_[v] >= 0) continue;
            if (lo_[v] && val_[v] < *lo_[v]) update(v, *lo_[v]);
            else if (hi_[v] && *hi_[v] < val_[v]) update(v, *hi_[v]);
        }
        for (;;) {
            int xi = -1;
            bool below = false;
            for (int v = 0; v < total; ++v) {
                if (row_of_[v] < 0) continue;
                if (lo_[v] && val_[v] < *lo_[v]) { xi = v; below = true; break; }
                if (hi_[v] && *hi_[v] < val_[v]) { xi = v; below = false; break; }
            }
            if (xi < 0) return model();
            const auto& row = rows_[row_of_[xi]];
            int xj = -1;
            for (int v = 0; v < total; ++v) {
                if (row_of_[v] >= 0 || sgn(row[v]) == 0) continue;
                bool pos = sgn(row[v]) > 0;
                bool can_inc = !hi_[v] || val_[v] < *hi_[v];
                bool can_dec = !lo_[v] || *lo_[v] < val_[v];
                if (below ? (pos ? can_inc : can_dec) : (pos ? can_dec : can_inc)) { xj = v; break; }
            }
            if (xj < 0) return std::nullopt;
            pivot_and_update(xi, xj, below ? *lo_[xi] : *hi_[xi]);
        }
    }

private:
    int new_slack(const std::vector<std::pair<int, Rational>>& coeffs) {
        int id = static_cast<int>(lo_.size());
        lo_.emplace_back();
        hi_.emplace_back();
        std::vector<Rational> row(id + 1);
        for (const auto& [v, k] : coeffs) row[v] = k;
        rows_.push_back(std::move(row));
        slack_rows_.push_back(id);
        return id;
    }

    void bound_var(int v, Rel rel, const Rational& bound, bool flipped) {
        auto set_lo = [&](DR d) { if (!lo_[v] || *lo_[v] < d) lo_[v] = d; };
        auto set_hi = [&](DR d) { if (!hi_[v] || d < *hi_[v]) hi_[v] = d; };
        switch (rel) {
            case Rel::EQ: set_lo({bound, 0}); set_hi({bound, 0}); break;
            case Rel::LE: flipped ? set_lo({bound, 0}) : set_hi({bound, 0}); break;
            case Rel::LT: flipped ? set_lo({bound, 1}) : set_hi({bound, -1}); break;
        }
    }

    // Called once all constraints are in: lays out values and row ownership.
    void finalize() {
        const int total = static_cast<int>(lo_.size());
        val_.assign(total, DR{0, 0});
        row_of_.assign(total, -1);
        for (std::size_t r = 0; r < rows_.size(); ++r) {
            rows_[r].resize(total);
            row_var_.push_back(slack_rows_[r]);
            row_of_[slack_rows_[r]] = static_cast<int>(r);
        }
    }

    void update(int xj, const DR& v) {
        Rational da = v.a - val_[xj].a, db = v.b - val_[xj].b;
        for (std::size_t r = 0; r < rows_.size(); ++r) {
            const Rational& c = rows_[r][xj];
            if (sgn(c) == 0) continue;
            val_[row_var_[r]].a += c * da;
            val_[row_var_[r]].b += c * db;
        }
        val_[xj] = v;
    }

    void pivot_and_update(int xi, int xj, const DR& v) {
        int r = row_of_[xi];
        const Rational aij = rows_[r][xj];
        DR theta{(v.a - val_[xi].a) / aij, (v.b - val_[xi].b) / aij};
        val_[xi] = v;
        val_[xj].a += theta.a;
        val_[xj].b += theta.b;
        for (std::size_t k = 0; k < rows_.size(); ++k) {
            if (static_cast<int>(k) == r) continue;
            const Rational& c = rows_[k][xj];
            if (sgn(c) == 0) continue;
            val_[row_var_[k]].a += c * theta.a;
            val_[row_var_[k]].b += c * theta.b;
        }
        pivot(r, xi, xj);
    }

    void pivot(int r, int xi, int xj) {
        auto& row = rows_[r];
        const Rational aij = row[xj];
        const int total = static_cast<int>(row.size());
        // xj = (xi - sum_{l != j} a_l x_l) / aij
        for (int l = 0; l < total; ++l) {
            if (l == xj || sgn(row[l]) == 0) continue;
            row[l] = -row[l] / aij;
        }
        row[xi] = 1 / aij;
        row[xj] = 0;
        for (std::size_t k = 0; k < rows_.size(); ++k) {
            if (static_cast<int>(k) == r) continue;
            auto& other = rows_[k];
            Rational c = other[xj];
            if (sgn(c) == 0) continue;
            other[xj] = 0;
            for (int l = 0; l < total; ++l) {
                if (sgn(row[l]) == 0) continue;
                other[l] += c * row[l];
            }
        }
        row_of_[xj] = r;
        row_of_[xi] = -1;
        row_var_[r] = xj;
    }

    Model model() const {
        // largest concrete delta keeping every bound satisfied
        Rational delta = 1;
        const int total = static_cast<int>(val_.size());
        auto tighten = [&](const DR& small, const DR& big) {
            // need small.a + small.b*d <= big.a + big.b*d
            if (small.a < big.a && small.b > big.b) {
                Rational cap = (big.a - small.a) / (small.b - big.b);
                if (cap < delta) delta = cap;
            }
        };
        for (int v = 0; v < total; ++v) {
            if (lo_[v]) tighten(*lo_[v], val_[v]);
            if (hi_[v]) tighten(val_[v], *hi_[v]);
        }
        Model m(n_);
        for (int v = 0; v < n_; ++v) m[v] = val_[v].a + val_[v].b * delta;
        return m;
    }

    int n_;
    bool trivially_unsat_ = false;
    std::vector<std::optional<DR>> lo_, hi_;
    std::vector<DR> val_;
    std::vector<int> row_of_;
    std::vector<int> row_var_;
    std::vector<int> slack_rows_;
    std::vector<std::vector<Rational>> rows_;

public:
    std::optional<Model> solve() {
        finalize();
        return run();
    }
};

}  // namespace

bool holds(const Constraint& c, const Model& model) {
    Rational lhs = 0;
    for (const auto& [v, k] : c.coeffs) lhs += k * model.at(v);
    return ground_holds(c.rel, lhs, c.rhs);
}

bool check_model(const LinearSystem& sys, const Model& model) {
    if (static_cast<int>(model.size()) != sys.num_vars()) return false;
    for (const auto& c : sys.constraints())
        if (!holds(c, model)) return false;
    return true;
}

std::optional<Model> solve(const LinearSystem& sys) {
    Simplex s(sys);
    auto m = s.solve();
    if (m && !check_model(sys, *m)) throw InternalError("simplex produced a model that fails the exact check");
    return m;
}

namespace {

std::string smt_rational(const Rational& q) {
    std::string num = Integer(abs(q.get_num())).get_str();
    std::string body = q.get_den() == 1 ? num + ".0" : "(/ " + num + ".0 " + q.get_den().get_str() + ".0)";
    return sgn(q) < 0 ? "(- " + body + ")" : body;
}

}  // namespace

std::string emit_smtlib(const LinearSystem& sys) {
    std::ostringstream out;
    out << "(set-logic QF_LRA)\n";
    for (int v = 0; v < sys.num_vars(); ++v) out << "(declare-fun x" << v << " () Real)\n";
    for (const auto& c : sys.constraints()) {
        std::string lhs;
        if (c.coeffs.empty()) {
            lhs = "0.0";
        } else {
            std::vector<std::string> terms;
            for (const auto& [v, k] : c.coeffs)
                terms.push_back(k == 1 ? "x" + std::to_string(v) : "(* " + smt_rational(k) + " x" + std::to_string(v) + ")");
            if (terms.size() == 1) {
                lhs = terms[0];
            } else {
                lhs = "(+";
                for (const auto& t : terms) lhs += " " + t;
                lhs += ")";
            }
        }
        const char* op = c.rel == Rel::LE ? "<=" : c.rel == Rel::LT ? "<" : "=";
        out << "(assert (" << op << " " << lhs << " " << smt_rational(c.rhs) << "))\n";
    }
    out << "(check-sat)\n";
    return out.str();
}

}  // namespace acvass
