#include "acvass/rational.hpp"

#include <cctype>

namespace acvass {

namespace {

bool valid_integer(const std::string& s) {
    std::size_t i = 0;
    if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

}  // namespace

Rational parse_rational(const std::string& text) {
    auto slash = text.find('/');
    std::string num = text.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : text.substr(slash + 1);
    if (!valid_integer(num) || !valid_integer(den) || den[0] == '-' || den[0] == '+')
        throw UsageError("malformed rational '" + text + "'");
    if (num[0] == '+') num = num.substr(1);
    Integer n(num), d(den);
    if (d == 0) throw UsageError("zero denominator in '" + text + "'");
    Rational q(n, d);
    q.canonicalize();
    return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }
std::string to_string(const Integer& z) { return z.get_str(); }

std::string to_string(const RatVector& v) {
    std::string out = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ", ";
        out += v[i].get_str();
    }
    return out + ")";
}

RatVector to_rational(const IntVector& v) {
    RatVector out;
    out.reserve(v.size());
    for (const auto& z : v) out.emplace_back(z);
    return out;
}

RatVector zeros(std::size_t n) { return RatVector(n, Rational(0)); }

bool is_zero(const RatVector& v) {
    for (const auto& q : v)
        if (sgn(q) != 0) return false;
    return true;
}

bool geq(const RatVector& a, const RatVector& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] < b[i]) return false;
    return true;
}

bool all_nonnegative(const RatVector& v) {
    for (const auto& q : v)
        if (sgn(q) < 0) return false;
    return true;
}

std::vector<int> support(const RatVector& v) {
    std::vector<int> out;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (sgn(v[i]) != 0) out.push_back(static_cast<int>(i));
    return out;
}

unsigned long support_mask(const RatVector& v) {
    unsigned long m = 0;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (sgn(v[i]) != 0) m |= 1UL << i;
    return m;
}

}  // namespace acvass
