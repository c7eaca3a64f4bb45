#include "acvass/machine.hpp"

namespace acvass {

const Transition& Machine::transition(int id) const {
    if (id < 0 || id >= static_cast<int>(transitions_.size()))
        throw UsageError("unknown transition id " + std::to_string(id));
    return transitions_[id];
}

int Machine::add_state(const std::string& name) {
    if (find_state(name) >= 0) throw UsageError("duplicate state '" + name + "'");
    states_.push_back(name);
    return static_cast<int>(states_.size()) - 1;
}

int Machine::find_state(const std::string& name) const {
    for (std::size_t i = 0; i < states_.size(); ++i)
        if (states_[i] == name) return static_cast<int>(i);
    return -1;
}

int Machine::state(const std::string& name) const {
    int s = find_state(name);
    if (s < 0) throw UsageError("unknown state '" + name + "'");
    return s;
}

std::string Machine::fresh_state_name(const std::string& base) const {
    if (find_state(base) < 0) return base;
    for (int k = 1;; ++k) {
        std::string cand = base + "#" + std::to_string(k);
        if (find_state(cand) < 0) return cand;
    }
}

int Machine::add_transition(int from, const IntMatrix& matrix, const IntVector& delta, int to) {
    if (matrix.dim() != dim_ || static_cast<int>(delta.size()) != dim_)
        throw UsageError("transition dimension does not match machine dimension");
    if (from < 0 || from >= num_states() || to < 0 || to >= num_states())
        throw UsageError("transition refers to an undeclared state");
    Transition t;
    t.id = static_cast<int>(transitions_.size());
    t.from = from;
    t.to = to;
    t.matrix = matrix;
    t.delta = delta;
    t.identity = matrix.is_identity();
    transitions_.push_back(std::move(t));
    return transitions_.back().id;
}

int Machine::add_transition(int from, const IntVector& delta, int to) {
    return add_transition(from, identity(dim_), delta, to);
}

void Machine::validate() const {
    if (dim_ < 0) throw UsageError("negative dimension");
    for (const auto& t : transitions_) {
        if (t.matrix.dim() != dim_ || static_cast<int>(t.delta.size()) != dim_)
            throw UsageError("transition " + std::to_string(t.id) + " has wrong dimension");
        if (t.from < 0 || t.from >= num_states() || t.to < 0 || t.to >= num_states())
            throw UsageError("transition " + std::to_string(t.id) + " refers to an undeclared state");
    }
}

bool Machine::operator==(const Machine& o) const {
    if (dim_ != o.dim_ || states_ != o.states_ || transitions_.size() != o.transitions_.size()) return false;
    for (std::size_t i = 0; i < transitions_.size(); ++i) {
        const auto& a = transitions_[i];
        const auto& b = o.transitions_[i];
        if (a.from != b.from || a.to != b.to || a.matrix != b.matrix || a.delta != b.delta) return false;
    }
    return true;
}

Config make_config(int state, RatVector values) {
    if (!all_nonnegative(values)) throw UsageError("configuration has a negative component");
    return Config{state, std::move(values)};
}

void validate_sequence(const FiringSequence& seq) {
    for (const auto& s : seq)
        if (sgn(s.alpha) <= 0 || s.alpha > 1) throw UsageError("fraction outside (0,1]: " + s.alpha.get_str());
}

IntVector unit(int n, int i, long value) {
    IntVector v(n, Integer(0));
    v[i] = value;
    return v;
}

}  // namespace acvass

#include "acvass/zerotest.hpp"

namespace acvass {

int ZeroTestMachine::state(const std::string& name) const {
    for (std::size_t i = 0; i < states.size(); ++i)
        if (states[i] == name) return static_cast<int>(i);
    throw UsageError("unknown state '" + name + "'");
}

int ZeroTestMachine::add_state(const std::string& name) {
    for (const auto& s : states)
        if (s == name) throw UsageError("duplicate state '" + name + "'");
    states.push_back(name);
    return static_cast<int>(states.size()) - 1;
}

void ZeroTestMachine::validate() const {
    const int q = static_cast<int>(states.size());
    for (const auto& t : transitions)
        if (t.from < 0 || t.from >= q || t.to < 0 || t.to >= q || static_cast<int>(t.delta.size()) != dim)
            throw UsageError("malformed zero-test machine transition");
    for (const auto& t : tests)
        if (t.from < 0 || t.from >= q || t.to < 0 || t.to >= q || t.counter < 0 || t.counter >= dim)
            throw UsageError("malformed zero-test");
}

ZRunResult zrun(const ZeroTestMachine& m, const Config& cfg, const ZSequence& seq, bool one_bounded) {
    if (static_cast<int>(cfg.values.size()) != m.dim) throw UsageError("configuration dimension mismatch");
    ZRunResult r;
    auto bounded = [&](const RatVector& v) {
        if (!one_bounded) return true;
        for (const auto& x : v)
            if (x > 1) return false;
        return true;
    };
    if (!bounded(cfg.values)) {
        r.failed_step = 0;
        return r;
    }
    r.trace.push_back(cfg);
    for (std::size_t i = 0; i < seq.size(); ++i) {
        const Config& cur = r.trace.back();
        const ZStep& s = seq[i];
        Config next;
        if (s.is_test) {
            const auto& t = m.tests.at(s.index);
            if (t.from != cur.state || sgn(cur.values[t.counter]) != 0) {
                r.failed_step = static_cast<int>(i);
                return r;
            }
            next = Config{t.to, cur.values};
        } else {
            const auto& t = m.transitions.at(s.index);
            if (sgn(s.alpha) <= 0 || s.alpha > 1) throw UsageError("fraction outside (0,1]");
            RatVector v = cur.values;
            for (int x = 0; x < m.dim; ++x) v[x] += s.alpha * t.delta[x];
            if (t.from != cur.state || !all_nonnegative(v)) {
                r.failed_step = static_cast<int>(i);
                return r;
            }
            next = Config{t.to, std::move(v)};
        }
        if (!bounded(next.values)) {
            r.failed_step = static_cast<int>(i);
            return r;
        }
        r.trace.push_back(std::move(next));
    }
    r.ok = true;
    return r;
}

}  // namespace acvass
