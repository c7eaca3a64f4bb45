#pragma once

#include "acvass/cvass.hpp"
#include "acvass/machine.hpp"

#include <optional>
#include <vector>

namespace acvass {

// |X|-dimensional identity machine with deltas restricted to X (sorted).
Machine project(const Machine& m, const std::vector<int>& x);

// Certificate that p(start) covers p(covered).
struct CycleCoverCertificate {
    int anchor = 0;
    std::vector<int> x;               // counters kept exact; the rest are pumped
    std::vector<int> s;               // transition support
    std::vector<int> order;           // admissible order in the full machine
    std::vector<int> projected_fwd;   // admissible order in the projection
    std::vector<int> projected_bwd;   // same, reversed projection from supp(w)
    std::vector<Rational> flow;       // per transition of s, total fraction
    RatVector start;                  // u
    RatVector w;                      // projected end point; pumped counters hold 0
    RatVector covered;                // the covered vector, <= w on x
};

struct ChainStep {
    int transition = 0;
    Rational alpha;
};

// Distinct-state chain: cycles[i] at state p_i, steps[i] leads from
// cycles[i].covered to cycles[i+1].start.
struct CoverCertificate {
    std::vector<CycleCoverCertificate> cycles;
    std::vector<ChainStep> steps;
};

struct SelfLoopOptions {
    int max_support = 12;            // transitions per state considered for S
    LinearSystem* dump = nullptr;    // receives the last system solved
};

enum class CoverStatus { Yes, No, Budget };

struct SelfLoopResult {
    CoverStatus status = CoverStatus::No;
    std::optional<CoverCertificate> certificate;
};

// Requires every matrix to be a non-negative self-loop matrix.
void require_selfloop(const Machine& m);

std::optional<CycleCoverCertificate> cyclic_cover(const Machine& m, int p, const RatVector& u, const RatVector& v,
                                                  const SelfLoopOptions& opt = {});
SelfLoopResult selfloop_cover(const Machine& m, const Config& from, const Config& to,
                              const SelfLoopOptions& opt = {});

// Re-checks every combinatorial and arithmetic claim of a certificate.
bool check_certificate(const Machine& m, const Config& from, const Config& to, const CoverCertificate& c);

// pi/2 followed by n copies of pi/(2n), with n chosen so that every counter
// of `pumped` ends above k. `seq` must lead from `from` back to its state.
FiringSequence pump_sequence(const Machine& m, const Config& from, const FiringSequence& seq,
                             const std::vector<int>& pumped, const Rational& k);

}  // namespace acvass
