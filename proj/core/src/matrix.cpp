#include "acvass/matrix.hpp"

namespace acvass {

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows)
    : n_(static_cast<int>(rows.size())), a_(rows.size() * rows.size()) {
    int i = 0;
    for (const auto& row : rows) {
        if (static_cast<int>(row.size()) != n_) throw UsageError("matrix literal is not square");
        int j = 0;
        for (long x : row) (*this)(i, j++) = x;
        ++i;
    }
}

bool IntMatrix::is_identity() const {
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j)
            if ((*this)(i, j) != (i == j ? 1 : 0)) return false;
    return true;
}

RatVector IntMatrix::operator*(const RatVector& v) const {
    if (static_cast<int>(v.size()) != n_) throw UsageError("matrix-vector dimension mismatch");
    RatVector out(n_);
    for (int i = 0; i < n_; ++i) {
        Rational acc = 0;
        for (int j = 0; j < n_; ++j) {
            const Integer& c = (*this)(i, j);
            if (sgn(c) != 0 && sgn(v[j]) != 0) acc += c * v[j];
        }
        out[i] = acc;
    }
    return out;
}

bool is_bijection(const Permutation& sigma) {
    std::vector<bool> seen(sigma.size(), false);
    for (int x : sigma) {
        if (x < 0 || x >= static_cast<int>(sigma.size()) || seen[x]) return false;
        seen[x] = true;
    }
    return true;
}

Permutation inverse(const Permutation& sigma) {
    Permutation inv(sigma.size());
    for (std::size_t j = 0; j < sigma.size(); ++j) inv[sigma[j]] = static_cast<int>(j);
    return inv;
}

Permutation compose(const Permutation& a, const Permutation& b) {
    Permutation out(b.size());
    for (std::size_t j = 0; j < b.size(); ++j) out[j] = a[b[j]];
    return out;
}

Permutation identity_perm(int n) {
    Permutation p(n);
    for (int i = 0; i < n; ++i) p[i] = i;
    return p;
}

IntMatrix identity(int n) {
    IntMatrix m(n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

IntMatrix perm_matrix(const Permutation& sigma) {
    if (!is_bijection(sigma)) throw UsageError("not a permutation");
    int n = static_cast<int>(sigma.size());
    IntMatrix m(n);
    for (int j = 0; j < n; ++j) m(sigma[j], j) = 1;
    return m;
}

Permutation perm_of(const IntMatrix& a) {
    int n = a.dim();
    Permutation sigma(n, -1);
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            if (a(i, j) == 0) continue;
            if (a(i, j) != 1 || sigma[j] != -1) throw UsageError("matrix is not a permutation matrix");
            sigma[j] = i;
        }
        if (sigma[j] == -1) throw UsageError("matrix is not a permutation matrix");
    }
    if (!is_bijection(sigma)) throw UsageError("matrix is not a permutation matrix");
    return sigma;
}

IntMatrix ext(const IntMatrix& a, int n) {
    if (n < 0) throw UsageError("ext: negative extension");
    int k = a.dim();
    IntMatrix m(k + n);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) m(i, j) = a(i, j);
    for (int i = k; i < k + n; ++i) m(i, i) = 1;
    return m;
}

IntMatrix apply(int n, const IntMatrix& a, int offset) {
    int k = a.dim();
    if (k > n || offset < 0 || offset + k > n) throw UsageError("apply: block does not fit");
    IntMatrix m = identity(n);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) m(offset + i, offset + j) = a(i, j);
    return m;
}

IntMatrix renamed(const IntMatrix& a, const Permutation& sigma) {
    if (static_cast<int>(sigma.size()) != a.dim() || !is_bijection(sigma))
        throw UsageError("renamed: bad permutation");
    int n = a.dim();
    IntMatrix m(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(sigma[i], sigma[j]) = a(i, j);
    return m;
}

IntMatrix product(const IntMatrix& a, const IntMatrix& b) {
    if (a.dim() != b.dim()) throw UsageError("product: dimension mismatch");
    int n = a.dim();
    IntMatrix m(n);
    for (int i = 0; i < n; ++i)
        for (int l = 0; l < n; ++l) {
            if (sgn(a(i, l)) == 0) continue;
            for (int j = 0; j < n; ++j) m(i, j) += a(i, l) * b(l, j);
        }
    return m;
}

IntMatrix power(const IntMatrix& a, int e) {
    IntMatrix r = identity(a.dim());
    for (int i = 0; i < e; ++i) r = product(r, a);
    return r;
}

IntMatrix reset_matrix(int n, int i) {
    IntMatrix m = identity(n);
    m(i, i) = 0;
    return m;
}

std::string to_string(const IntMatrix& a) {
    std::string out = "[";
    for (int i = 0; i < a.dim(); ++i) {
        if (i) out += ",";
        out += "[";
        for (int j = 0; j < a.dim(); ++j) {
            if (j) out += ",";
            out += a(i, j).get_str();
        }
        out += "]";
    }
    return out + "]";
}

}  // namespace acvass
