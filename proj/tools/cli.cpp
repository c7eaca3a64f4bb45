#include "cli.hpp"

#include "acvass/classify.hpp"
#include "acvass/cvass.hpp"
#include "acvass/generator.hpp"
#include "acvass/io.hpp"
#include "acvass/oracle.hpp"
#include "acvass/permreach.hpp"
#include "acvass/reductions.hpp"
#include "acvass/selfloop.hpp"
#include "acvass/semantics.hpp"
#include "acvass/statereach.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <optional>
#include <ostream>
#include <sstream>

namespace acvass::cli {

namespace {

using json = nlohmann::ordered_json;

struct Options {
    std::string machine;
    std::string from, to, state;
    bool witness = false, certificate = false, force_oracle = false, one_bounded = false;
    std::string dump_system;
    int max_len = 8;
    std::string mode = "reach";
    // compile
    std::string name, in, out, matrix;
    int index = -1;
    // gen-random
    GeneratorConfig gen;
    std::string family = "identity", kind = "machine";
    // smt-export / simulate
    std::string path, seq;
};

// A flag value is inline JSON when it starts with '{' or '[', else a file.
std::string json_arg(const std::string& v) {
    auto pos = v.find_first_not_of(" \t\r\n");
    if (pos != std::string::npos && (v[pos] == '{' || v[pos] == '[')) return v;
    return read_file(v);
}

std::string pick(const std::string& flag, const std::string& fallback, const char* what) {
    if (!flag.empty()) return json_arg(flag);
    if (!fallback.empty()) return fallback;
    throw UsageError(std::string("missing ") + what + " configuration (--" + what + ")");
}

std::string show(const std::vector<std::string>& states, const Config& c) {
    return states.at(c.state) + " " + to_string(c.values);
}

struct Loaded {
    Instance inst;
    const Machine& machine() const {
        if (!inst.machine) throw UsageError("this command needs an affine machine, not a zero-test machine or program");
        return *inst.machine;
    }
};

Loaded load(const Options& o) { return Loaded{read_instance(read_file(o.machine))}; }

Config config_of(const Machine& m, const std::string& flag, const std::string& fallback, const char* what) {
    return read_config(m.states(), m.dim(), pick(flag, fallback, what));
}

ZeroTestMachine as_zerotest(const Instance& inst) {
    if (inst.zmachine) return *inst.zmachine;
    if (!inst.machine) throw UsageError("expected a zero-test machine");
    const Machine& m = *inst.machine;
    ZeroTestMachine z;
    z.dim = m.dim();
    z.states = m.states();
    for (const auto& t : m.transitions()) {
        if (!t.identity) throw UsageError("expected a zero-test machine (all matrices identity)");
        z.transitions.push_back({t.from, t.to, t.delta});
    }
    return z;
}

void dump_system(const Options& o, const LinearSystem& sys, std::ostream& err) {
    if (o.dump_system.empty()) return;
    write_file(o.dump_system, emit_smtlib(sys));
    err << "system written to " << o.dump_system << "\n";
}

Target target_of(const std::string& mode, const Config& to) {
    if (mode == "reach") return Target::reach(to);
    if (mode == "cover") return Target::cover(to);
    if (mode == "state") return Target::state_only(to.state);
    throw UsageError("mode must be reach, cover or state");
}

int state_named(const std::vector<std::string>& states, const std::string& name) {
    for (std::size_t i = 0; i < states.size(); ++i)
        if (states[i] == name) return static_cast<int>(i);
    throw UsageError("unknown state '" + name + "'");
}

int target_state(const std::vector<std::string>& states, const Options& o, const std::string& fallback) {
    if (!o.state.empty()) return state_named(states, o.state);
    json j = json::parse(pick(o.to, fallback, "to"), nullptr, false);
    if (j.is_discarded() || !j.is_object() || !j.contains("state") || !j["state"].is_string())
        throw UsageError("target needs a state name (--state or --to)");
    return state_named(states, j["state"].get<std::string>());
}

int report_oracle(const Options& o, const Machine& m, const Config& from, const Target& target, std::ostream& out,
                  std::ostream& err) {
    OracleAnswer a = bounded_decide(m, from, target, o.max_len);
    if (!a.found) {
        out << "unknown\n";
        out << "no witness within " << o.max_len << " steps (" << a.paths_checked << " paths)\n";
        return Unknown;
    }
    RunResult r = run(m, from, a.witness);
    if (!r.ok || !target.met_by(r.trace.back())) throw InternalError("oracle witness does not replay");
    out << "yes\n";
    out << "witness of length " << a.witness.size() << " ends at " << show(m.states(), r.trace.back()) << "\n";
    if (!o.dump_system.empty()) {
        LinearSystem sys;
        std::vector<int> path;
        for (const auto& s : a.witness) path.push_back(s.transition);
        seq_feasible(m, from, path, target, &sys);
        dump_system(o, sys, err);
    }
    if (o.witness) out << write_sequence(a.witness);
    return Yes;
}

int report_zoracle(const Options& o, const ZeroTestMachine& m, const Config& from, const Target& target,
                   std::ostream& out) {
    ZOracleAnswer a = bounded_decide_zerotest(m, from, target, o.max_len, o.one_bounded);
    if (!a.found) {
        out << "unknown\n";
        out << "no witness within " << o.max_len << " steps (" << a.paths_checked << " paths)\n";
        return Unknown;
    }
    ZRunResult r = zrun(m, from, a.witness, o.one_bounded);
    if (!r.ok || !target.met_by(r.trace.back())) throw InternalError("oracle witness does not replay");
    out << "yes\n";
    out << "witness of length " << a.witness.size() << " ends at " << show(m.states, r.trace.back()) << "\n";
    if (o.witness) out << write_zsequence(a.witness);
    return Yes;
}

void print_verdict(std::ostream& out, const char* problem, const ProblemVerdict& v) {
    out << problem << ": " << to_string(v.verdict) << " (" << v.tag << ")\n";
}

int cmd_classify(const Options& o, std::ostream& out) {
    Loaded l = load(o);
    const Machine& m = l.machine();
    MachineVerdict v = classify_machine(m);
    print_verdict(out, "reach", v.reach);
    print_verdict(out, "cover", v.cover);
    print_verdict(out, "state-reach", v.state_reach);
    return Yes;
}

int cmd_decide(const Options& o, bool cover, std::ostream& out, std::ostream& err) {
    Loaded l = load(o);
    const Machine& m = l.machine();
    Config from = config_of(m, o.from, l.inst.from_json, "from");
    Config to = config_of(m, o.to, l.inst.to_json, "to");
    Target target = cover ? Target::cover(to) : Target::reach(to);
    MachineVerdict mv = classify_machine(m);
    const ProblemVerdict& v = cover ? mv.cover : mv.reach;
    if (o.force_oracle) return report_oracle(o, m, from, target, out, err);
    if (v.verdict == Verdict::Undecidable) {
        out << "undecidable\n";
        print_verdict(out, cover ? "cover" : "reach", v);
        return Undecidable;
    }
    if (v.verdict == Verdict::Unknown) {
        out << "unknown\n";
        print_verdict(out, cover ? "cover" : "reach", v);
        return Unknown;
    }

    LinearSystem sys;
    MachineProfile mp = machine_profile(m);
    if (cover && !mp.all_permutation) {
        SelfLoopOptions opt;
        opt.dump = &sys;
        SelfLoopResult r = selfloop_cover(m, from, to, opt);
        dump_system(o, sys, err);
        if (r.status == CoverStatus::Budget) {
            out << "unknown\n";
            out << "search budget exceeded\n";
            return Unknown;
        }
        if (r.status == CoverStatus::No) {
            out << "no\n";
            return No;
        }
        if (!check_certificate(m, from, to, *r.certificate)) throw InternalError("certificate check failed");
        out << "yes\n";
        if (o.witness) err << "self-loop coverability reports a certificate; use --certificate\n";
        if (o.certificate) out << write_certificate(m, *r.certificate);
        return Yes;
    }

    ReachOptions opt;
    opt.dump = &sys;
    std::optional<FiringSequence> w;
    if (mp.all_identity)
        w = cover ? cvass_cover(m, from, to, opt) : cvass_reach(m, from, to, opt);
    else
        w = cover ? perm_cover(m, from, to, opt) : perm_reach(m, from, to, opt);
    dump_system(o, sys, err);
    if (!w) {
        out << "no\n";
        return No;
    }
    RunResult r = run(m, from, *w);
    if (!r.ok || !target.met_by(r.trace.back())) throw InternalError("witness does not replay");
    out << "yes\n";
    if (o.certificate) err << "this class reports a firing sequence; use --witness\n";
    if (o.witness) out << write_sequence(*w);
    return Yes;
}

int cmd_state_reach(const Options& o, std::ostream& out, std::ostream& err) {
    Loaded l = load(o);
    if (l.inst.program) {
        const BooleanProgram& bp = *l.inst.program;
        BPConfig from = read_bp_config(bp, pick(o.from, l.inst.from_json, "from"));
        int q = target_state(bp.states, o, l.inst.to_json);
        bool ok = bp_solve(bp, from, q);
        out << (ok ? "yes\n" : "no\n");
        return ok ? Yes : No;
    }
    if (l.inst.zmachine) {
        const ZeroTestMachine& m = *l.inst.zmachine;
        Config from = read_config(m.states, m.dim, pick(o.from, l.inst.from_json, "from"));
        int q = target_state(m.states, o, l.inst.to_json);
        return report_zoracle(o, m, from, Target::state_only(q), out);
    }
    const Machine& m = l.machine();
    Config from = config_of(m, o.from, l.inst.from_json, "from");
    int q = target_state(m.states(), o, l.inst.to_json);
    if (o.force_oracle) return report_oracle(o, m, from, Target::state_only(q), out, err);
    ProblemVerdict v = classify_machine(m).state_reach;
    if (v.verdict == Verdict::Undecidable) {
        out << "undecidable\n";
        print_verdict(out, "state-reach", v);
        return Undecidable;
    }
    if (!o.dump_system.empty()) err << "state reachability builds no linear system\n";
    auto path = solve_state_reach(m, from, q);
    if (!path) {
        out << "no\n";
        return No;
    }
    FiringSequence w = concretize(m, from, *path);
    RunResult r = run(m, from, w);
    if (!r.ok || r.trace.back().state != q) throw InternalError("witness does not replay");
    out << "yes\n";
    if (o.witness) out << write_sequence(w);
    return Yes;
}

int cmd_oracle(const Options& o, std::ostream& out, std::ostream& err) {
    if (o.max_len < 0) throw UsageError("--max-len must be non-negative");
    Loaded l = load(o);
    if (l.inst.zmachine || (o.one_bounded && l.inst.machine)) {
        ZeroTestMachine m = as_zerotest(l.inst);
        Config from = read_config(m.states, m.dim, pick(o.from, l.inst.from_json, "from"));
        Config to = read_config(m.states, m.dim, pick(o.to, l.inst.to_json, "to"));
        return report_zoracle(o, m, from, target_of(o.mode, to), out);
    }
    const Machine& m = l.machine();
    Config from = config_of(m, o.from, l.inst.from_json, "from");
    Config to = config_of(m, o.to, l.inst.to_json, "to");
    return report_oracle(o, m, from, target_of(o.mode, to), out, err);
}

IntMatrix parse_matrix(const std::string& text) {
    if (text.empty()) throw UsageError("this compiler needs --matrix");
    json j = json::parse(json_arg(text), nullptr, false);
    if (j.is_discarded() || !j.is_array() || j.empty()) throw UsageError("--matrix must be a list of rows");
    const int n = static_cast<int>(j.size());
    IntMatrix a(n);
    for (int i = 0; i < n; ++i) {
        if (!j[i].is_array() || static_cast<int>(j[i].size()) != n) throw UsageError("--matrix must be square");
        for (int k = 0; k < n; ++k) {
            if (j[i][k].is_number_integer())
                a(i, k) = Integer(std::to_string(j[i][k].get<long long>()));
            else if (j[i][k].is_string())
                a(i, k) = Integer(j[i][k].get<std::string>());
            else
                throw UsageError("--matrix entries must be integers");
        }
    }
    return a;
}

std::optional<Config> optional_config(const std::vector<std::string>& states, int dim, const std::string& flag,
                                      const std::string& fallback) {
    if (flag.empty() && fallback.empty()) return std::nullopt;
    return read_config(states, dim, flag.empty() ? fallback : json_arg(flag));
}

int cmd_compile(const Options& o, std::ostream& out) {
    Instance inst = read_instance(read_file(o.in));
    std::string text;
    std::string summary;
    auto describe = [](const Machine& m) {
        return std::to_string(m.num_states()) + " states, " + std::to_string(m.transitions().size()) +
               " transitions, dimension " + std::to_string(m.dim());
    };
    auto zdescribe = [](const ZeroTestMachine& m) {
        return std::to_string(m.states.size()) + " states, " + std::to_string(m.transitions.size()) +
               " transitions, " + std::to_string(m.tests.size()) + " zero-tests, dimension " + std::to_string(m.dim);
    };
    auto need_machine = [&]() -> const Machine& {
        if (!inst.machine) throw UsageError("this compiler needs an affine machine");
        return *inst.machine;
    };
    auto required = [](const std::optional<Config>& c, const char* what) {
        if (!c) throw UsageError(std::string("this compiler needs a '") + what + "' configuration");
        return *c;
    };
    auto zconfigs = [&](const ZeroTestMachine& z) {
        return std::pair{required(optional_config(z.states, z.dim, o.from, inst.from_json), "from"),
                         required(optional_config(z.states, z.dim, o.to, inst.to_json), "to")};
    };

    if (o.name == "cover-to-reach") {
        const Machine& m = need_machine();
        Config to = required(optional_config(m.states(), m.dim(), o.to, inst.to_json), "to");
        CoverToReach c = compile_cover_to_reach(m, to);
        if (auto from = optional_config(m.states(), m.dim(), o.from, inst.from_json)) c.inst.from = from;
        text = write_compiled(c.inst);
        summary = describe(c.inst.machine);
    } else if (o.name == "zerotest-to-onebounded") {
        ZeroTestMachine z = as_zerotest(inst);
        auto [from, to] = zconfigs(z);
        CompiledInstance c = compile_zerotest_to_onebounded(z, from, to);
        text = write_compiled(c);
        summary = zdescribe(*c.zmachine);
    } else if (o.name == "onebounded-to-reset") {
        ZeroTestMachine z = as_zerotest(inst);
        auto [from, to] = zconfigs(z);
        CompiledInstance c = compile_onebounded_to_reset(z, from, to);
        text = write_compiled(c);
        summary = describe(c.machine);
    } else if (o.name == "reset-to-zero-row-col") {
        const Machine& m = need_machine();
        CompiledInstance c =
            compile_reset_to_zero_row_col(m, parse_matrix(o.matrix), o.index,
                                          optional_config(m.states(), m.dim(), o.from, inst.from_json),
                                          optional_config(m.states(), m.dim(), o.to, inst.to_json));
        text = write_compiled(c);
        summary = describe(c.machine);
    } else if (o.name == "zerotest-to-negative") {
        ZeroTestMachine z = as_zerotest(inst);
        CompiledInstance c = compile_zerotest_to_negative(z, parse_matrix(o.matrix), o.index,
                                                          optional_config(z.states, z.dim, o.from, inst.from_json),
                                                          optional_config(z.states, z.dim, o.to, inst.to_json));
        text = write_compiled(c);
        summary = describe(c.machine);
    } else if (o.name == "onebounded-to-weighted") {
        ZeroTestMachine z = as_zerotest(inst);
        CompiledInstance c = compile_onebounded_to_weighted(z, parse_matrix(o.matrix), o.index,
                                                            optional_config(z.states, z.dim, o.from, inst.from_json),
                                                            optional_config(z.states, z.dim, o.to, inst.to_json));
        text = write_compiled(c);
        summary = describe(c.machine);
    } else if (o.name == "boolean-to-reset" || o.name == "boolean-to-perm") {
        if (!inst.program) throw UsageError("this compiler needs a Boolean program");
        CompiledBoolean c = o.name == "boolean-to-reset" ? compile_boolean_to_reset(*inst.program)
                                                         : compile_boolean_to_perm(*inst.program, parse_matrix(o.matrix));
        text = write_compiled(c);
        summary = describe(c.machine);
    } else {
        throw UsageError("unknown compiler '" + o.name + "'");
    }
    if (o.out.empty() || o.out == "-") {
        out << text;
    } else {
        write_file(o.out, text);
        out << o.name << ": " << summary << "\n";
    }
    return Yes;
}

int cmd_gen_random(Options o, std::ostream& out) {
    o.gen.family = parse_family(o.family);
    std::string text;
    if (o.kind == "machine") {
        GeneratedInstance g = generate(o.gen);
        text = write_instance(g.machine, g.from, g.to);
    } else if (o.kind == "zero-test") {
        GeneratedZeroTest g = generate_zerotest(o.gen);
        text = write_instance(g.machine, g.from, g.to);
    } else if (o.kind == "boolean") {
        GeneratedBoolean g = generate_boolean(o.gen);
        json j;
        j["program"] = json::parse(write_boolean(g.program));
        j["from"] = {{"state", g.program.states[g.from.state]}, {"bits", g.from.bits}};
        j["to"] = {{"state", g.program.states[g.to]}};
        text = j.dump(2) + "\n";
    } else {
        throw UsageError("--kind must be machine, zero-test or boolean");
    }
    if (o.out.empty() || o.out == "-")
        out << text;
    else
        write_file(o.out, text);
    return Yes;
}

std::vector<int> parse_path(const std::string& text) {
    std::vector<int> path;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        std::size_t used = 0;
        int v = -1;
        try {
            v = std::stoi(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != item.size() || v < 0) throw UsageError("--path must be a comma-separated list of transition ids");
        path.push_back(v);
    }
    return path;
}

int cmd_smt_export(const Options& o, std::ostream& out) {
    Loaded l = load(o);
    const Machine& m = l.machine();
    Config from = config_of(m, o.from, l.inst.from_json, "from");
    Config to = config_of(m, o.to, l.inst.to_json, "to");
    LinearSystem sys;
    if (!o.path.empty()) {
        seq_feasible(m, from, parse_path(o.path), target_of(o.mode, to), &sys);
        out << emit_smtlib(sys);
        return Yes;
    }
    if (o.mode == "state") throw UsageError("state reachability builds no linear system; give --path");
    MachineVerdict mv = classify_machine(m);
    const ProblemVerdict& v = o.mode == "cover" ? mv.cover : mv.reach;
    if (v.verdict == Verdict::Undecidable || v.verdict == Verdict::Unknown)
        throw UsageError("no solver for this class; give --path for a fixed transition sequence");
    MachineProfile mp = machine_profile(m);
    if (o.mode == "cover" && !mp.all_permutation) {
        SelfLoopOptions opt;
        opt.dump = &sys;
        selfloop_cover(m, from, to, opt);
    } else {
        ReachOptions opt;
        opt.dump = &sys;
        if (mp.all_identity)
            o.mode == "cover" ? (void)cvass_cover(m, from, to, opt) : (void)cvass_reach(m, from, to, opt);
        else
            o.mode == "cover" ? (void)perm_cover(m, from, to, opt) : (void)perm_reach(m, from, to, opt);
    }
    out << emit_smtlib(sys);
    return Yes;
}

int cmd_simulate(const Options& o, std::ostream& out) {
    Loaded l = load(o);
    if (l.inst.zmachine) {
        const ZeroTestMachine& m = *l.inst.zmachine;
        Config from = read_config(m.states, m.dim, pick(o.from, l.inst.from_json, "from"));
        ZSequence seq = read_zsequence(json_arg(o.seq));
        ZRunResult r = zrun(m, from, seq, o.one_bounded);
        out << "0: " << show(m.states, r.trace[0]) << "\n";
        for (std::size_t k = 1; k < r.trace.size(); ++k) {
            const ZStep& s = seq[k - 1];
            out << k << ": " << (s.is_test ? "test " : "t") << s.index;
            if (!s.is_test) out << " alpha " << s.alpha.get_str();
            out << " -> " << show(m.states, r.trace[k]) << "\n";
        }
        if (r.ok) return Yes;
        const ZStep& s = seq[r.failed_step];
        out << "step " << r.failed_step + 1 << " fails: " << (s.is_test ? "test " : "transition ") << s.index
            << " cannot fire from " << show(m.states, r.trace.back()) << "\n";
        return No;
    }
    const Machine& m = l.machine();
    Config from = config_of(m, o.from, l.inst.from_json, "from");
    FiringSequence seq = read_sequence(json_arg(o.seq));
    RunResult r = run(m, from, seq);
    out << "0: " << show(m.states(), r.trace[0]) << "\n";
    for (std::size_t k = 1; k < r.trace.size(); ++k)
        out << k << ": t" << seq[k - 1].transition << " alpha " << seq[k - 1].alpha.get_str() << " -> "
            << show(m.states(), r.trace[k]) << "\n";
    if (r.ok) return Yes;
    const FiringStep& s = seq[r.failed_step];
    out << "step " << r.failed_step + 1 << " fails: transition " << s.transition << " with alpha "
        << s.alpha.get_str() << " cannot fire from " << show(m.states(), r.trace.back()) << "\n";
    return No;
}

void add_configs(CLI::App* c, Options& o) {
    c->add_option("machine", o.machine, "machine or instance JSON file")->required();
    c->add_option("--from", o.from, "start configuration (JSON text or file)");
    c->add_option("--to", o.to, "target configuration (JSON text or file)");
}

void add_solver_flags(CLI::App* c, Options& o) {
    c->add_flag("--witness", o.witness, "print the firing sequence");
    c->add_flag("--certificate", o.certificate, "print the certificate");
    c->add_option("--dump-system", o.dump_system, "write the last linear system as SMT-LIB");
    c->add_flag("--force-oracle", o.force_oracle, "run the bounded oracle instead of a solver");
    c->add_option("--max-len", o.max_len, "oracle bound")->check(CLI::NonNegativeNumber);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Decision procedures for affine continuous VASS", "acvass"};
    app.require_subcommand(1);

    auto* classify = app.add_subcommand("classify", "print the decidability verdicts of a machine");
    classify->add_option("machine", o.machine, "machine JSON file")->required();

    auto* reach = app.add_subcommand("reach", "decide reachability");
    add_configs(reach, o);
    add_solver_flags(reach, o);
    auto* cover = app.add_subcommand("cover", "decide coverability");
    add_configs(cover, o);
    add_solver_flags(cover, o);
    auto* sreach = app.add_subcommand("state-reach", "decide state reachability");
    add_configs(sreach, o);
    add_solver_flags(sreach, o);
    sreach->add_option("--state", o.state, "target state name");
    sreach->add_flag("--one-bounded", o.one_bounded, "zero-test machines: only 1-bounded runs");

    auto* oracle = app.add_subcommand("oracle", "bounded witness search");
    add_configs(oracle, o);
    oracle->add_option("--mode", o.mode, "reach, cover or state")->check(CLI::IsMember({"reach", "cover", "state"}));
    oracle->add_option("--max-len", o.max_len, "longest path searched")->check(CLI::NonNegativeNumber);
    oracle->add_flag("--witness", o.witness, "print the witness");
    oracle->add_flag("--one-bounded", o.one_bounded, "only runs staying within [0, 1]");
    oracle->add_option("--dump-system", o.dump_system, "write the witness path system as SMT-LIB");

    auto* compile = app.add_subcommand("compile", "run a reduction");
    compile->add_option("name", o.name, "compiler name")->required();
    compile->add_option("--in", o.in, "source instance")->required();
    compile->add_option("--out", o.out, "output file (default: stdout)");
    compile->add_option("--from", o.from, "source start configuration");
    compile->add_option("--to", o.to, "source target configuration");
    compile->add_option("--matrix", o.matrix, "target matrix as JSON rows");
    compile->add_option("--index", o.index, "row, column or counter index in the matrix");

    auto* gen = app.add_subcommand("gen-random", "print a random instance");
    gen->add_option("--seed", o.gen.seed);
    gen->add_option("--family", o.family, "identity, permutation, reset, self-loop, non-negative, arbitrary");
    gen->add_option("--kind", o.kind, "machine, zero-test or boolean");
    gen->add_option("--dim-min", o.gen.dim_min);
    gen->add_option("--dim-max", o.gen.dim_max);
    gen->add_option("--states-min", o.gen.states_min);
    gen->add_option("--states-max", o.gen.states_max);
    gen->add_option("--transitions-min", o.gen.transitions_min);
    gen->add_option("--transitions-max", o.gen.transitions_max);
    gen->add_option("--entry-max", o.gen.entry_max);
    gen->add_option("--delta-min", o.gen.delta_min);
    gen->add_option("--delta-max", o.gen.delta_max);
    gen->add_option("--value-den", o.gen.value_den);
    gen->add_option("--value-max", o.gen.value_max);
    gen->add_option("--out", o.out, "output file (default: stdout)");

    auto* smt = app.add_subcommand("smt-export", "print a linear system as SMT-LIB");
    add_configs(smt, o);
    smt->add_option("--mode", o.mode, "reach, cover or state")->check(CLI::IsMember({"reach", "cover", "state"}));
    smt->add_option("--path", o.path, "comma-separated transition ids");

    auto* sim = app.add_subcommand("simulate", "replay a firing sequence");
    sim->add_option("machine", o.machine, "machine or instance JSON file")->required();
    sim->add_option("--from", o.from, "start configuration");
    sim->add_option("--seq", o.seq, "firing sequence (JSON text or file)")->required();
    sim->add_flag("--one-bounded", o.one_bounded, "zero-test machines: reject values above 1");

    std::vector<std::string> rev(args.rbegin(), args.rend());
    if (!rev.empty()) rev.pop_back();
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? Yes : Usage;
    }

    try {
        if (*classify) return cmd_classify(o, out);
        if (*reach) return cmd_decide(o, false, out, err);
        if (*cover) return cmd_decide(o, true, out, err);
        if (*sreach) return cmd_state_reach(o, out, err);
        if (*oracle) return cmd_oracle(o, out, err);
        if (*compile) return cmd_compile(o, out);
        if (*gen) return cmd_gen_random(o, out);
        if (*smt) return cmd_smt_export(o, out);
        if (*sim) return cmd_simulate(o, out);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return Usage;
    } catch (const ClassError& e) {
        err << "error: " << e.what() << "\n";
        return Usage;
    } catch (const InternalError& e) {
        err << "internal error: " << e.what() << "\n";
        return Internal;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return Internal;
    }
    return Usage;
}

}  // namespace acvass::cli
