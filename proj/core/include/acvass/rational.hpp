#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <vector>

namespace acvass {

using Integer = mpz_class;
using Rational = mpq_class;
using RatVector = std::vector<Rational>;
using IntVector = std::vector<Integer>;

// Thrown for malformed inputs and dimension mismatches.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Thrown when a solver is handed a machine outside its class.
struct ClassError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Thrown when a self-check (witness replay, model check) fails.
struct InternalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Accepts "n", "-n", "n/d"; result is canonical.
Rational parse_rational(const std::string& text);
std::string to_string(const Rational& q);
std::string to_string(const Integer& z);
std::string to_string(const RatVector& v);

RatVector to_rational(const IntVector& v);
RatVector zeros(std::size_t n);
bool is_zero(const RatVector& v);
bool geq(const RatVector& a, const RatVector& b);
bool all_nonnegative(const RatVector& v);
std::vector<int> support(const RatVector& v);
unsigned long support_mask(const RatVector& v);

}  // namespace acvass
