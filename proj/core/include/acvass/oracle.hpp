#pragma once

#include "acvass/lra.hpp"
#include "acvass/machine.hpp"
#include "acvass/zerotest.hpp"

#include <optional>
#include <vector>

namespace acvass {

struct Target {
    enum class Kind { ReachExact, Cover, ReachState };
    Kind kind = Kind::ReachState;
    int state = 0;
    RatVector values;  // unused for ReachState

    static Target reach(const Config& c) { return {Kind::ReachExact, c.state, c.values}; }
    static Target cover(const Config& c) { return {Kind::Cover, c.state, c.values}; }
    static Target state_only(int q) { return {Kind::ReachState, q, {}}; }
    bool met_by(const Config& c) const;
};

struct OracleAnswer {
    bool found = false;
    FiringSequence witness;  // set when found
    int bound = 0;           // max_len searched
    long paths_checked = 0;
};

struct ZOracleAnswer {
    bool found = false;
    ZSequence witness;
    int bound = 0;
    long paths_checked = 0;
};

// LRA system over alpha_1..alpha_k for a fixed transition path. If `dump` is
// given, the system is copied there.
std::optional<Model> seq_feasible(const Machine& m, const Config& from, const std::vector<int>& path,
                                  const Target& target, LinearSystem* dump = nullptr);

FiringSequence model_to_sequence(const std::vector<int>& path, const Model& model);

// Shortest-first, id-ordered bounded search for a witness.
OracleAnswer bounded_decide(const Machine& m, const Config& from, const Target& target, int max_len);

// Same for zero-test machines. Path items number additive transitions
// first, then zero-tests.
ZOracleAnswer bounded_decide_zerotest(const ZeroTestMachine& m, const Config& from, const Target& target,
                                      int max_len, bool one_bounded = false);

}  // namespace acvass
