#pragma once

#include "acvass/rational.hpp"

#include <vector>

namespace acvass {

// Square integer matrix, row-major, 0-based (row, column) access.
class IntMatrix {
public:
    IntMatrix() = default;
    explicit IntMatrix(int n) : n_(n), a_(static_cast<std::size_t>(n) * n) {}
    IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

    int dim() const { return n_; }
    Integer& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * n_ + j]; }
    const Integer& operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * n_ + j]; }

    bool is_identity() const;
    bool operator==(const IntMatrix& o) const { return n_ == o.n_ && a_ == o.a_; }
    bool operator!=(const IntMatrix& o) const { return !(*this == o); }

    RatVector operator*(const RatVector& v) const;

private:
    int n_ = 0;
    std::vector<Integer> a_;
};

// sigma[j] is the image of j; both 0-based.
using Permutation = std::vector<int>;

bool is_bijection(const Permutation& sigma);
Permutation inverse(const Permutation& sigma);
// (a ∘ b)(j) = a(b(j))
Permutation compose(const Permutation& a, const Permutation& b);
Permutation identity_perm(int n);

IntMatrix identity(int n);
// Column convention: P(sigma(j), j) = 1, so P e_j = e_{sigma(j)}.
IntMatrix perm_matrix(const Permutation& sigma);
// Recovers sigma from a permutation matrix; throws if A is not one.
Permutation perm_of(const IntMatrix& a);
IntMatrix ext(const IntMatrix& a, int n);
// Places A on rows/columns offset .. offset+k-1 of an n x n identity.
IntMatrix apply(int n, const IntMatrix& a, int offset);
// renamed(A, sigma)(sigma(i), sigma(j)) = A(i, j); equals P A P^-1.
IntMatrix renamed(const IntMatrix& a, const Permutation& sigma);
IntMatrix product(const IntMatrix& a, const IntMatrix& b);
IntMatrix power(const IntMatrix& a, int e);
// Resets counter i (0-based): identity with a zero at (i, i).
IntMatrix reset_matrix(int n, int i);

std::string to_string(const IntMatrix& a);

}  // namespace acvass
