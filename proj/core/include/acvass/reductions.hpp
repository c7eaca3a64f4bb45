#pragma once

#include "acvass/machine.hpp"
#include "acvass/zerotest.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace acvass {

// Where source counters live in a compiled machine.
struct CounterLayout {
    int dim = 0;                                  // target dimension
    std::vector<int> primary;                     // source counter -> target counter
    std::vector<int> complement;                  // empty, or source counter -> counter holding 1 - value
    std::vector<std::pair<int, Rational>> fixed;  // further counters with a prescribed value
    bool free_dummies = false;                    // remaining counters may hold anything on decode
};

// Image of a source vector: primaries, complements and fixed counters set,
// everything else zero.
RatVector encode(const CounterLayout& l, const RatVector& u);
// Inverse of encode on its image; nullopt for vectors outside it.
std::optional<RatVector> decode(const CounterLayout& l, const RatVector& v);

struct CompiledInstance {
    std::string kind;
    Machine machine;                          // affine target
    std::optional<ZeroTestMachine> zmachine;  // set when the target keeps zero-tests
    bool one_bounded = false;                 // target question is about 1-bounded runs
    std::vector<int> state_map;               // source state -> target state
    CounterLayout layout;
    // For each source item (additive transitions first, then tests) the
    // target transitions simulating it, in firing order.
    std::vector<std::vector<int>> transition_map;
    int source_additive = 0;  // number of additive source items
    std::optional<Config> from, to;
};

// Cover of `to` becomes reachability of sink(to.values): a bridge from
// to.state to a fresh sink plus one decrement loop per counter. Source
// transitions keep their ids.
struct CoverToReach {
    CompiledInstance inst;
    int sink = 0;
    int bridge = 0;  // transition id of the bridge
};
CoverToReach compile_cover_to_reach(const Machine& m, const Config& to);
// Drops the bridge and everything after it.
FiringSequence pull_back_cover(const CoverToReach& c, const FiringSequence& seq);

// Zero-test machine to 1-bounded zero-test machine with counters z, z~, st
// and states s_t, p_i, q_f. Works for both cover and reach questions.
CompiledInstance compile_zerotest_to_onebounded(const ZeroTestMachine& m, const Config& from, const Config& to);
// Forward image of a source run from `from` (ending at a configuration that
// reaches or covers `to`) as a 1-bounded target run from inst.from.
ZSequence translate_onebounded_witness(const CompiledInstance& inst, const ZeroTestMachine& m, const Config& from,
                                       const Config& to, const ZSequence& seq);

// 1-bounded zero-test machine to a reset machine with complementary counters.
CompiledInstance compile_onebounded_to_reset(const ZeroTestMachine& m, const Config& from, const Config& to);

// Splits every reset-machine transition so that it resets at most one
// counter and resets carry a zero delta.
Machine normalize_resets(const Machine& m, std::vector<std::vector<int>>* chains = nullptr);
// Reset machine to a machine over App(A, .) where A is non-negative with a
// zero row or zero column `j` (-1 picks the first zero row, else column).
CompiledInstance compile_reset_to_zero_row_col(const Machine& m, const IntMatrix& a, int j = -1,
                                               const std::optional<Config>& from = std::nullopt,
                                               const std::optional<Config>& to = std::nullopt);

// Zero-test machine to a machine over App(A, .) where A(i, j) < 0 for some i.
// `j` = -1 picks the first column with a negative entry.
CompiledInstance compile_zerotest_to_negative(const ZeroTestMachine& m, const IntMatrix& a, int j = -1,
                                              const std::optional<Config>& from = std::nullopt,
                                              const std::optional<Config>& to = std::nullopt);

// 1-bounded zero-test machine to a machine over App(A, .) where A is
// non-negative without zero columns and some column sums above 1.
CompiledInstance compile_onebounded_to_weighted(const ZeroTestMachine& m, const IntMatrix& a, int z = -1,
                                                const std::optional<Config>& from = std::nullopt,
                                                const std::optional<Config>& to = std::nullopt);

// Source run (zero-test or reset machine) replayed through the transition
// map: tests and resets fire with fraction 1, additive steps keep theirs.
FiringSequence translate_witness(const CompiledInstance& inst, const ZSequence& seq);
FiringSequence translate_witness(const CompiledInstance& inst, const FiringSequence& seq);

struct BooleanProgram {
    enum class Op { Test, Set };
    struct Transition {
        int from = 0, to = 0;
        Op op = Op::Test;
        int var = 0;
        int value = 0;
    };
    int vars = 0;
    std::vector<std::string> states;
    std::vector<Transition> transitions;

    int add_state(const std::string& name);
    int state(const std::string& name) const;
    void validate() const;
};

struct BPConfig {
    int state = 0;
    std::vector<int> bits;
};

// Breadth-first search over states x {0,1}^vars.
bool bp_solve(const BooleanProgram& bp, const BPConfig& from, int to_state);

struct CompiledBoolean {
    std::string kind;
    Machine machine;
    std::vector<int> state_map;
    std::vector<int> true_counter, false_counter;
    Config encode(const BPConfig& c) const;
    // nullopt unless the configuration is good.
    std::optional<BPConfig> decode(const Config& c) const;
};

CompiledBoolean compile_boolean_to_reset(const BooleanProgram& bp);
// `p` must be a non-identity permutation matrix.
CompiledBoolean compile_boolean_to_perm(const BooleanProgram& bp, const IntMatrix& p);

// Smallest n >= 1 with A^n = I for a permutation matrix.
int matrix_order(const IntMatrix& p);

}  // namespace acvass
