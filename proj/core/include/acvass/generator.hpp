#pragma once

#include "acvass/machine.hpp"
#include "acvass/reductions.hpp"
#include "acvass/zerotest.hpp"

#include <cstdint>
#include <random>
#include <string>

namespace acvass {

enum class Family { Identity, Permutation, Reset, SelfLoop, NonNegative, Arbitrary };

Family parse_family(const std::string& s);
std::string to_string(Family f);

struct GeneratorConfig {
    std::uint64_t seed = 1;
    int dim_min = 1, dim_max = 3;
    int states_min = 1, states_max = 3;
    int transitions_min = 1, transitions_max = 4;
    Family family = Family::Identity;
    int entry_max = 2;   // matrix entries in [0, entry_max] (or symmetric for arbitrary)
    int delta_min = -2, delta_max = 2;
    int value_den = 2;   // sample configuration values are k / value_den
    int value_max = 2;   // ... with k / value_den <= value_max
};

struct GeneratedInstance {
    Machine machine;
    Config from, to;
};

// Deterministic for a given configuration. Permutation machines use the
// identity and a single random permutation matrix.
GeneratedInstance generate(const GeneratorConfig& cfg);

// Same parameters drive a zero-test machine; tests make up about a third of
// the transitions.
struct GeneratedZeroTest {
    ZeroTestMachine machine;
    Config from, to;
};
GeneratedZeroTest generate_zerotest(const GeneratorConfig& cfg);

// Uses the state and transition ranges; dim_min/dim_max bound the variable
// count. Tests and sets are equally likely.
struct GeneratedBoolean {
    BooleanProgram program;
    BPConfig from;
    int to = 0;
};
GeneratedBoolean generate_boolean(const GeneratorConfig& cfg);

// Small helper around mt19937_64 with inclusive integer ranges.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}
    int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen_); }
    bool coin(int num = 1, int den = 2) { return uniform(0, den - 1) < num; }
    std::mt19937_64& engine() { return gen_; }

private:
    std::mt19937_64 gen_;
};

RatVector random_values(Rng& rng, int dim, int den, int max);

}  // namespace acvass
