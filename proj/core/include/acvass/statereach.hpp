#pragma once

#include "acvass/machine.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace acvass {

using Mask = unsigned long;  // counter sets, dimension <= 64

struct SupportNode {
    int state = 0;
    Mask supp = 0;
    bool operator==(const SupportNode& o) const { return state == o.state && supp == o.supp; }
};

struct AbstractStep {
    int transition = 0;
    SupportNode to;
};

struct AbstractPath {
    SupportNode start;
    std::vector<AbstractStep> steps;
};

// Throws ClassError unless every matrix is non-negative; UsageError if dim > 64.
void require_nonnegative(const Machine& m);

// {y : A(x,y) > 0}
Mask supp_minus(const Transition& t, int x);
bool abstract_edge(const Transition& t, Mask s, Mask s2);
// Largest S' with an edge from S, if any edge exists.
std::optional<Mask> max_successor(const Transition& t, Mask s);

std::optional<AbstractPath> solve_state_reach(const Machine& m, const Config& from, int q);
// Breadth-first search to any state accepted by the predicate.
std::optional<AbstractPath> solve_state_reach(const Machine& m, const Config& from,
                                              const std::function<bool(int)>& accept);

// Fractions following the completeness argument; the result is replayed and
// checked against the abstract supports.
FiringSequence concretize(const Machine& m, const Config& from, const AbstractPath& path);

std::vector<int> mask_to_set(Mask s);
Mask set_to_mask(const std::vector<int>& s);

}  // namespace acvass
