#include "acvass/io.hpp"

#include "json.hpp"

#include <fstream>
#include <sstream>

namespace acvass {

using json = nlohmann::ordered_json;

namespace {

json parse(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw UsageError(std::string("invalid JSON: ") + e.what());
    }
}

bool flat(const json& j) {
    if (!j.is_array()) return !j.is_object();
    for (const auto& x : j)
        if (x.is_object() || (x.is_array() && !flat(x))) return false;
    return true;
}

// Two-space indentation; arrays without objects stay on one line.
void print(std::string& out, const json& j, int indent) {
    if (flat(j)) {
        if (!j.is_array()) {
            out += j.dump();
            return;
        }
        out += "[";
        for (std::size_t i = 0; i < j.size(); ++i) {
            if (i) out += ", ";
            print(out, j[i], indent);
        }
        out += "]";
        return;
    }
    const std::string pad(indent + 2, ' ');
    const bool obj = j.is_object();
    if (j.empty()) {
        out += obj ? "{}" : "[]";
        return;
    }
    out += obj ? "{\n" : "[\n";
    bool first = true;
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += pad;
        if (obj) out += json(it.key()).dump() + ": ";
        print(out, *it, indent + 2);
    }
    out += "\n" + std::string(indent, ' ') + (obj ? "}" : "]");
}

std::string dump(const json& j) {
    std::string out;
    print(out, j, 0);
    return out + "\n";
}

[[noreturn]] void fail(const std::string& what) { throw UsageError(what); }

const json& field(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) fail(std::string("missing field '") + key + "'");
    return j.at(key);
}

int as_int(const json& j, const char* what) {
    if (!j.is_number_integer()) fail(std::string(what) + " must be an integer");
    return j.get<int>();
}

std::string as_string(const json& j, const char* what) {
    if (!j.is_string()) fail(std::string(what) + " must be a string");
    return j.get<std::string>();
}

Integer read_integer(const json& j) {
    if (j.is_number_integer()) return Integer(std::to_string(j.get<long long>()));
    if (j.is_string()) {
        Integer z;
        if (z.set_str(j.get<std::string>(), 10) != 0) fail("invalid integer '" + j.get<std::string>() + "'");
        return z;
    }
    fail("expected an integer");
}

json write_integer(const Integer& z) {
    if (z.fits_slong_p()) return z.get_si();
    return z.get_str();
}

Rational read_rational(const json& j) {
    if (j.is_number_integer()) return Rational(read_integer(j));
    if (j.is_string()) return parse_rational(j.get<std::string>());
    fail("expected a rational (string \"n/d\" or integer)");
}

json write_rational(const Rational& q) { return to_string(q); }

IntVector read_int_vector(const json& j, int dim) {
    if (!j.is_array() || static_cast<int>(j.size()) != dim) fail("vector must have " + std::to_string(dim) + " entries");
    IntVector v;
    for (const auto& x : j) v.push_back(read_integer(x));
    return v;
}

json write_int_vector(const IntVector& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(write_integer(x));
    return a;
}

json write_rat_vector(const RatVector& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(write_rational(x));
    return a;
}

json write_matrix(const IntMatrix& a) {
    if (a.is_identity()) return "identity";
    json rows = json::array();
    for (int i = 0; i < a.dim(); ++i) {
        json row = json::array();
        for (int j = 0; j < a.dim(); ++j) row.push_back(write_integer(a(i, j)));
        rows.push_back(row);
    }
    return rows;
}

IntMatrix read_matrix(const json& j, int dim) {
    if (j.is_string()) {
        if (j.get<std::string>() != "identity") fail("matrix must be \"identity\" or a list of rows");
        return identity(dim);
    }
    if (!j.is_array() || static_cast<int>(j.size()) != dim) fail("matrix must have " + std::to_string(dim) + " rows");
    IntMatrix a(dim);
    for (int i = 0; i < dim; ++i) {
        const json& row = j[i];
        if (!row.is_array() || static_cast<int>(row.size()) != dim) fail("matrix rows must have " + std::to_string(dim) + " entries");
        for (int k = 0; k < dim; ++k) a(i, k) = read_integer(row[k]);
    }
    return a;
}

std::vector<std::string> read_states(const json& j) {
    const json& s = field(j, "states");
    if (!s.is_array()) fail("'states' must be a list");
    std::vector<std::string> out;
    for (const auto& x : s) out.push_back(as_string(x, "state name"));
    return out;
}

int state_index(const std::vector<std::string>& states, const json& j) {
    std::string name = as_string(j, "state");
    for (std::size_t i = 0; i < states.size(); ++i)
        if (states[i] == name) return static_cast<int>(i);
    fail("unknown state '" + name + "'");
}

int read_dim(const json& j) {
    int d = as_int(field(j, "dimension"), "dimension");
    if (d < 0) fail("dimension must be non-negative");
    return d;
}

Machine machine_from(const json& j) {
    const int d = read_dim(j);
    Machine m(d);
    for (const auto& s : read_states(j)) m.add_state(s);
    const json& ts = field(j, "transitions");
    if (!ts.is_array()) fail("'transitions' must be a list");
    for (const auto& t : ts) {
        int from = state_index(m.states(), field(t, "from"));
        int to = state_index(m.states(), field(t, "to"));
        IntMatrix a = t.contains("matrix") ? read_matrix(t.at("matrix"), d) : identity(d);
        m.add_transition(from, a, read_int_vector(field(t, "delta"), d), to);
    }
    m.validate();
    return m;
}

json machine_json(const Machine& m) {
    json j;
    j["dimension"] = m.dim();
    j["states"] = m.states();
    json ts = json::array();
    for (const auto& t : m.transitions()) {
        json o;
        o["from"] = m.states()[t.from];
        o["matrix"] = write_matrix(t.matrix);
        o["delta"] = write_int_vector(t.delta);
        o["to"] = m.states()[t.to];
        ts.push_back(o);
    }
    j["transitions"] = ts;
    return j;
}

ZeroTestMachine zerotest_from(const json& j) {
    ZeroTestMachine m;
    m.dim = read_dim(j);
    for (const auto& s : read_states(j)) m.add_state(s);
    const json& ts = field(j, "transitions");
    if (!ts.is_array()) fail("'transitions' must be a list");
    for (const auto& t : ts)
        m.transitions.push_back(
            {state_index(m.states, field(t, "from")), state_index(m.states, field(t, "to")), read_int_vector(field(t, "delta"), m.dim)});
    if (j.contains("tests")) {
        const json& zs = j.at("tests");
        if (!zs.is_array()) fail("'tests' must be a list");
        for (const auto& t : zs)
            m.tests.push_back({state_index(m.states, field(t, "from")), state_index(m.states, field(t, "to")),
                               as_int(field(t, "counter"), "counter")});
    }
    m.validate();
    return m;
}

json zerotest_json(const ZeroTestMachine& m) {
    json j;
    j["dimension"] = m.dim;
    j["states"] = m.states;
    json ts = json::array();
    for (const auto& t : m.transitions) {
        json o;
        o["from"] = m.states[t.from];
        o["delta"] = write_int_vector(t.delta);
        o["to"] = m.states[t.to];
        ts.push_back(o);
    }
    j["transitions"] = ts;
    json zs = json::array();
    for (const auto& t : m.tests) {
        json o;
        o["from"] = m.states[t.from];
        o["counter"] = t.counter;
        o["to"] = m.states[t.to];
        zs.push_back(o);
    }
    j["tests"] = zs;
    return j;
}

BooleanProgram boolean_from(const json& j) {
    BooleanProgram bp;
    bp.vars = as_int(field(j, "variables"), "variables");
    for (const auto& s : read_states(j)) bp.add_state(s);
    const json& ts = field(j, "transitions");
    if (!ts.is_array()) fail("'transitions' must be a list");
    for (const auto& t : ts) {
        BooleanProgram::Transition tr;
        tr.from = state_index(bp.states, field(t, "from"));
        tr.to = state_index(bp.states, field(t, "to"));
        std::string op = as_string(field(t, "op"), "op");
        if (op == "test")
            tr.op = BooleanProgram::Op::Test;
        else if (op == "set")
            tr.op = BooleanProgram::Op::Set;
        else
            fail("op must be \"test\" or \"set\"");
        tr.var = as_int(field(t, "var"), "var");
        tr.value = as_int(field(t, "value"), "value");
        bp.transitions.push_back(tr);
    }
    bp.validate();
    return bp;
}

json boolean_json(const BooleanProgram& bp) {
    json j;
    j["variables"] = bp.vars;
    j["states"] = bp.states;
    json ts = json::array();
    for (const auto& t : bp.transitions) {
        json o;
        o["from"] = bp.states[t.from];
        o["op"] = t.op == BooleanProgram::Op::Test ? "test" : "set";
        o["var"] = t.var;
        o["value"] = t.value;
        o["to"] = bp.states[t.to];
        ts.push_back(o);
    }
    j["transitions"] = ts;
    return j;
}

json config_json(const std::vector<std::string>& states, const Config& c) {
    json j;
    j["state"] = states.at(c.state);
    j["values"] = write_rat_vector(c.values);
    return j;
}

json layout_json(const CounterLayout& l) {
    json j;
    j["dimension"] = l.dim;
    j["primary"] = l.primary;
    j["complement"] = l.complement;
    json f = json::array();
    for (const auto& [c, v] : l.fixed) f.push_back({{"counter", c}, {"value", write_rational(v)}});
    j["fixed"] = f;
    j["free_dummies"] = l.free_dummies;
    return j;
}

}  // namespace

Machine read_machine(const std::string& text) { return machine_from(parse(text)); }
std::string write_machine(const Machine& m) { return dump(machine_json(m)); }

Config read_config(const std::vector<std::string>& states, int dim, const std::string& text) {
    json j = parse(text);
    int s = state_index(states, field(j, "state"));
    const json& v = field(j, "values");
    if (!v.is_array() || static_cast<int>(v.size()) != dim) fail("configuration must have " + std::to_string(dim) + " values");
    RatVector vals;
    for (const auto& x : v) vals.push_back(read_rational(x));
    return make_config(s, vals);
}

std::string write_config(const std::vector<std::string>& states, const Config& c) {
    return dump(config_json(states, c));
}

FiringSequence read_sequence(const std::string& text) {
    json j = parse(text);
    if (!j.is_array()) fail("firing sequence must be a list");
    FiringSequence seq;
    for (const auto& s : j) seq.push_back({read_rational(field(s, "alpha")), as_int(field(s, "transition"), "transition")});
    validate_sequence(seq);
    return seq;
}

std::string write_sequence(const FiringSequence& seq) {
    json a = json::array();
    for (const auto& s : seq) a.push_back({{"alpha", write_rational(s.alpha)}, {"transition", s.transition}});
    return dump(a);
}

ZeroTestMachine read_zerotest(const std::string& text) { return zerotest_from(parse(text)); }
std::string write_zerotest(const ZeroTestMachine& m) { return dump(zerotest_json(m)); }

ZSequence read_zsequence(const std::string& text) {
    json j = parse(text);
    if (!j.is_array()) fail("sequence must be a list");
    ZSequence seq;
    for (const auto& s : j) {
        if (s.contains("test"))
            seq.push_back({true, as_int(s.at("test"), "test"), Rational(0)});
        else
            seq.push_back({false, as_int(field(s, "transition"), "transition"), read_rational(field(s, "alpha"))});
    }
    return seq;
}

std::string write_zsequence(const ZSequence& seq) {
    json a = json::array();
    for (const auto& s : seq) {
        if (s.is_test)
            a.push_back({{"test", s.index}});
        else
            a.push_back({{"alpha", write_rational(s.alpha)}, {"transition", s.index}});
    }
    return dump(a);
}

BooleanProgram read_boolean(const std::string& text) { return boolean_from(parse(text)); }
std::string write_boolean(const BooleanProgram& bp) { return dump(boolean_json(bp)); }

BPConfig read_bp_config(const BooleanProgram& bp, const std::string& text) {
    json j = parse(text);
    BPConfig c;
    c.state = state_index(bp.states, field(j, "state"));
    const json& b = field(j, "bits");
    if (!b.is_array() || static_cast<int>(b.size()) != bp.vars) fail("bits must have one entry per variable");
    for (const auto& x : b) {
        int v = as_int(x, "bit");
        if (v != 0 && v != 1) fail("bits must be 0 or 1");
        c.bits.push_back(v);
    }
    return c;
}

Instance read_instance(const std::string& text) {
    json j = parse(text);
    if (!j.is_object()) fail("instance must be a JSON object");
    Instance inst;
    const json* body = &j;
    if (j.contains("machine")) body = &j.at("machine");
    if (j.contains("from")) inst.from_json = j.at("from").dump();
    if (j.contains("to")) inst.to_json = j.at("to").dump();
    if (j.contains("program")) {
        inst.program = boolean_from(j.at("program"));
    } else if (body->contains("variables")) {
        inst.program = boolean_from(*body);
    } else if (body->contains("tests")) {
        inst.zmachine = zerotest_from(*body);
    } else {
        inst.machine = machine_from(*body);
    }
    return inst;
}

std::string write_instance(const Machine& m, const Config& from, const Config& to) {
    json j;
    j["machine"] = machine_json(m);
    j["from"] = config_json(m.states(), from);
    j["to"] = config_json(m.states(), to);
    return dump(j);
}

std::string write_instance(const ZeroTestMachine& m, const Config& from, const Config& to) {
    json j;
    j["machine"] = zerotest_json(m);
    j["from"] = config_json(m.states, from);
    j["to"] = config_json(m.states, to);
    return dump(j);
}

std::string write_certificate(const Machine& m, const CoverCertificate& c) {
    json cycles = json::array();
    for (const auto& cy : c.cycles) {
        json o;
        o["state"] = m.states().at(cy.anchor);
        o["exact_counters"] = cy.x;
        o["transitions"] = cy.s;
        o["order"] = cy.order;
        o["projected_forward_order"] = cy.projected_fwd;
        o["projected_backward_order"] = cy.projected_bwd;
        o["flow"] = write_rat_vector(cy.flow);
        o["start"] = write_rat_vector(cy.start);
        o["w"] = write_rat_vector(cy.w);
        o["covered"] = write_rat_vector(cy.covered);
        cycles.push_back(o);
    }
    json steps = json::array();
    for (const auto& s : c.steps) steps.push_back({{"alpha", write_rational(s.alpha)}, {"transition", s.transition}});
    json j;
    j["cycles"] = cycles;
    j["steps"] = steps;
    return dump(j);
}

std::string write_compiled(const CompiledInstance& c) {
    json j;
    j["kind"] = c.kind;
    j["one_bounded"] = c.one_bounded;
    const std::vector<std::string>& states = c.zmachine ? c.zmachine->states : c.machine.states();
    if (c.zmachine)
        j["machine"] = zerotest_json(*c.zmachine);
    else
        j["machine"] = machine_json(c.machine);
    if (c.from) j["from"] = config_json(states, *c.from);
    if (c.to) j["to"] = config_json(states, *c.to);
    j["state_map"] = c.state_map;
    j["layout"] = layout_json(c.layout);
    j["transition_map"] = c.transition_map;
    j["source_additive"] = c.source_additive;
    return dump(j);
}

std::string write_compiled(const CompiledBoolean& c) {
    json j;
    j["kind"] = c.kind;
    j["machine"] = machine_json(c.machine);
    j["state_map"] = c.state_map;
    j["true_counter"] = c.true_counter;
    j["false_counter"] = c.false_counter;
    return dump(j);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw UsageError("cannot write '" + path + "'");
    out << text;
    if (!out) throw UsageError("error writing '" + path + "'");
}

}  // namespace acvass
