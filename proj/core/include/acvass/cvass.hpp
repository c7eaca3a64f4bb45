#pragma once

#include "acvass/lra.hpp"
#include "acvass/machine.hpp"
#include "acvass/statereach.hpp"

#include <optional>
#include <vector>

namespace acvass {

// supp^+_t = {x : b(x) > 0}
Mask supp_plus(const Transition& t);
// supp^p_t(x) = {y : (y != x and A(x,y) > 0) or (y = x and A(x,y) > 1)}
Mask supp_pump(const Transition& t, int x);

struct AdmissibilityQuery {
    int anchor = 0;
    Mask start_support = 0;
    std::vector<int> transitions;  // S, transition ids
    Mask pump = 0;                 // Y
    int end = 0;                   // anchor for cyclic queries
};

// Order of first occurrences of a run from the anchor to the end state that
// uses exactly S and pumps Y. Identity machines use the ordering conditions
// directly; other non-negative machines search the support abstraction.
std::optional<std::vector<int>> admissible(const Machine& m, const AdmissibilityQuery& q);
std::optional<std::vector<int>> admissible_ordered(const Machine& m, const AdmissibilityQuery& q);
std::optional<std::vector<int>> admissible_search(const Machine& m, const AdmissibilityQuery& q);
// The five ordering conditions for a given total order of S.
bool admissible_order_holds(const Machine& m, const AdmissibilityQuery& q, const std::vector<int>& order);

// A concrete run from anchor(u) realizing the order; replayed and checked.
// Requires non-negative self-loop matrices.
FiringSequence build_admissible_run(const Machine& m, const AdmissibilityQuery& q, const std::vector<int>& order,
                                    const RatVector& u);

struct ReachOptions {
    LinearSystem* dump = nullptr;  // receives the last system solved
};

// Reachability for machines whose matrices are all identity.
std::optional<FiringSequence> cvass_reach(const Machine& m, const Config& from, const Config& to,
                                          const ReachOptions& opt = {});
std::optional<FiringSequence> cvass_cover(const Machine& m, const Config& from, const Config& to,
                                          const ReachOptions& opt = {});

// Transitions of T lying on a closed walk of the support abstraction from
// (a, s). With `reversed`, transitions are walked backwards with negated deltas.
std::vector<int> open_transitions(const Machine& m, const std::vector<int>& t, int a, Mask s, bool reversed);

void require_identity(const Machine& m);

}  // namespace acvass
