#pragma once

#include "acvass/matrix.hpp"

#include <string>
#include <vector>

namespace acvass {

struct Transition {
    int id = 0;
    int from = 0;
    int to = 0;
    IntMatrix matrix;
    IntVector delta;
    bool identity = true;  // cached matrix.is_identity()
};

class Machine {
public:
    Machine() = default;
    explicit Machine(int dim) : dim_(dim) {}

    int dim() const { return dim_; }
    const std::vector<std::string>& states() const { return states_; }
    const std::vector<Transition>& transitions() const { return transitions_; }
    const Transition& transition(int id) const;
    int num_states() const { return static_cast<int>(states_.size()); }

    int add_state(const std::string& name);
    // Returns the index of a declared state; throws UsageError otherwise.
    int state(const std::string& name) const;
    int find_state(const std::string& name) const;  // -1 if absent
    // A fresh name derived from base, unique within the machine.
    std::string fresh_state_name(const std::string& base) const;

    int add_transition(int from, const IntMatrix& matrix, const IntVector& delta, int to);
    int add_transition(int from, const IntVector& delta, int to);  // identity matrix

    // Throws UsageError on any inconsistency.
    void validate() const;

    bool operator==(const Machine& o) const;

private:
    int dim_ = 0;
    std::vector<std::string> states_;
    std::vector<Transition> transitions_;
};

// A control state plus a non-negative rational vector.
struct Config {
    int state = 0;
    RatVector values;
    bool operator==(const Config& o) const { return state == o.state && values == o.values; }
};

// Rejects negative components.
Config make_config(int state, RatVector values);

struct FiringStep {
    Rational alpha;
    int transition = 0;
    bool operator==(const FiringStep& o) const { return alpha == o.alpha && transition == o.transition; }
};
using FiringSequence = std::vector<FiringStep>;

// Rejects fractions outside (0, 1].
void validate_sequence(const FiringSequence& seq);

IntVector unit(int n, int i, long value = 1);

}  // namespace acvass
