#pragma once

#include "acvass/cvass.hpp"
#include "acvass/machine.hpp"

#include <optional>
#include <vector>

namespace acvass {

// Throws ClassError unless every matrix is a permutation matrix.
void require_permutation(const Machine& m);

// Splits transitions carrying both a non-identity matrix and a non-zero
// delta into (p, A, 0, q') and (q', I, b, q). `chains` receives, for each
// original transition, the ids that simulate it.
Machine normalize(const Machine& m, std::vector<std::vector<int>>* chains = nullptr);

// Identity machine over pairs (state, accumulated permutation) reachable
// from (start, id). A state carrying Q stores Q^-1 v in place of v.
struct ProductMachine {
    Machine machine;
    std::vector<int> base;            // product state -> machine state
    std::vector<Permutation> perm;    // product state -> accumulated permutation
    std::vector<int> source;          // product transition -> machine transition
    int start = 0;
    int find(int state, const Permutation& p) const;  // -1 if not built
};

// `m` must be normalized.
ProductMachine build_product(const Machine& m, int start);

// Q^-1 v for the accumulated permutation of a product state.
RatVector to_product(const Permutation& q, const RatVector& v);

std::optional<FiringSequence> perm_reach(const Machine& m, const Config& from, const Config& to,
                                         const ReachOptions& opt = {});
std::optional<FiringSequence> perm_cover(const Machine& m, const Config& from, const Config& to,
                                         const ReachOptions& opt = {});

}  // namespace acvass
