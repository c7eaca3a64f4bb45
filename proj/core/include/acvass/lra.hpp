#pragma once

#include "acvass/rational.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace acvass {

enum class Rel { LE, LT, EQ };

// sum_i coeffs[i].second * x_{coeffs[i].first}  rel  rhs
struct Constraint {
    std::vector<std::pair<int, Rational>> coeffs;  // sorted by variable, no zeros
    Rel rel = Rel::LE;
    Rational rhs;
};

// Affine expression used while building systems.
struct LinExpr {
    std::map<int, Rational> terms;
    Rational constant;

    LinExpr() = default;
    LinExpr(const Rational& c) : constant(c) {}  // NOLINT implicit on purpose
    LinExpr(long c) : constant(c) {}            // NOLINT
    static LinExpr var(int v, const Rational& c = 1);

    LinExpr& operator+=(const LinExpr& o);
    LinExpr& operator-=(const LinExpr& o);
    LinExpr& operator*=(const Rational& c);
    bool is_constant() const { return terms.empty(); }
};
LinExpr operator+(LinExpr a, const LinExpr& b);
LinExpr operator-(LinExpr a, const LinExpr& b);
LinExpr operator*(const Rational& c, LinExpr a);

class LinearSystem {
public:
    int add_var(const std::string& name = "");
    int num_vars() const { return static_cast<int>(names_.size()); }
    const std::string& name(int v) const { return names_.at(v); }
    const std::vector<Constraint>& constraints() const { return cons_; }

    void add(std::vector<std::pair<int, Rational>> coeffs, Rel rel, const Rational& rhs);
    // lhs rel rhs, both affine
    void add(const LinExpr& lhs, Rel rel, const LinExpr& rhs);
    void add_ge(const LinExpr& lhs, const LinExpr& rhs) { add(rhs, Rel::LE, lhs); }
    void add_gt(const LinExpr& lhs, const LinExpr& rhs) { add(rhs, Rel::LT, lhs); }

private:
    std::vector<std::string> names_;
    std::vector<Constraint> cons_;
};

using Model = std::vector<Rational>;

// Exact satisfiability; Sat models always satisfy every constraint, strict ones included.
std::optional<Model> solve(const LinearSystem& sys);
bool check_model(const LinearSystem& sys, const Model& model);
bool holds(const Constraint& c, const Model& model);

// SMT-LIB 2 text, logic QF_LRA, variables declared in id order.
std::string emit_smtlib(const LinearSystem& sys);

// Fourier-Motzkin projection of one variable. The variable stays declared.
LinearSystem eliminate(const LinearSystem& sys, int var);
// Satisfiability by full Fourier-Motzkin elimination.
bool fm_satisfiable(const LinearSystem& sys);

}  // namespace acvass
