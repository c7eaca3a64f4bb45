#pragma once

#include "acvass/machine.hpp"

#include <optional>

namespace acvass {

// A*u + alpha*b, no feasibility check.
RatVector affine_image(const Transition& t, const RatVector& u, const Rational& alpha);

// One step; nullopt when the state does not match or a component goes negative.
// Dimension mismatches and fractions outside (0,1] throw UsageError.
std::optional<Config> step(const Machine& m, const Config& cfg, const Rational& alpha, int t);

struct RunResult {
    bool ok = false;
    std::vector<Config> trace;  // trace[0] is the start; on failure, the prefix that succeeded
    int failed_step = -1;
};

RunResult run(const Machine& m, const Config& cfg, const FiringSequence& seq);

// Throws UsageError unless consecutive transitions chain through the state graph.
void check_chain(const Machine& m, const FiringSequence& seq);

// Closed form (A_l...A_1)u + sum_j (A_l...A_{j+1}) alpha_j b_j.
RatVector marking_eval(const Machine& m, const RatVector& u, const FiringSequence& seq);

FiringSequence rep_half(const FiringSequence& seq);
FiringSequence scale_seq(const Rational& beta, const FiringSequence& seq);

}  // namespace acvass
