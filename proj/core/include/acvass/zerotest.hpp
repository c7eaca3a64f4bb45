#pragma once

#include "acvass/machine.hpp"

#include <optional>
#include <string>
#include <vector>

namespace acvass {

// Continuous VASS with zero-tests: additive transitions plus guards u(i) = 0.
struct ZeroTestMachine {
    struct Additive {
        int from = 0, to = 0;
        IntVector delta;
    };
    struct Test {
        int from = 0, to = 0;
        int counter = 0;
    };

    int dim = 0;
    std::vector<std::string> states;
    std::vector<Additive> transitions;
    std::vector<Test> tests;

    int state(const std::string& name) const;
    int add_state(const std::string& name);
    void validate() const;
};

struct ZStep {
    bool is_test = false;
    int index = 0;      // into transitions or tests
    Rational alpha;     // unused for tests
    bool operator==(const ZStep& o) const {
        return is_test == o.is_test && index == o.index && (is_test || alpha == o.alpha);
    }
};
using ZSequence = std::vector<ZStep>;

struct ZRunResult {
    bool ok = false;
    std::vector<Config> trace;
    int failed_step = -1;
};

// Replays a sequence; with one_bounded every visited value must be <= 1.
ZRunResult zrun(const ZeroTestMachine& m, const Config& cfg, const ZSequence& seq, bool one_bounded = false);

}  // namespace acvass
