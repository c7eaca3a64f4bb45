#pragma once

#include "acvass/machine.hpp"
#include "acvass/reductions.hpp"
#include "acvass/selfloop.hpp"
#include "acvass/zerotest.hpp"

#include <optional>
#include <string>
#include <vector>

namespace acvass {

// All readers throw UsageError on malformed input. Writers produce
// deterministic, two-space indented JSON followed by a newline.

Machine read_machine(const std::string& json);
std::string write_machine(const Machine& m);

// {"state": name, "values": ["1/2", "3", ...]}
Config read_config(const std::vector<std::string>& states, int dim, const std::string& json);
std::string write_config(const std::vector<std::string>& states, const Config& c);

// [{"alpha": "1/2", "transition": 0}, ...]
FiringSequence read_sequence(const std::string& json);
std::string write_sequence(const FiringSequence& seq);

ZeroTestMachine read_zerotest(const std::string& json);
std::string write_zerotest(const ZeroTestMachine& m);

// [{"transition": 0, "alpha": "1"} | {"test": 0}, ...]
ZSequence read_zsequence(const std::string& json);
std::string write_zsequence(const ZSequence& seq);

BooleanProgram read_boolean(const std::string& json);
std::string write_boolean(const BooleanProgram& bp);
// {"state": name, "bits": [0, 1, ...]}
BPConfig read_bp_config(const BooleanProgram& bp, const std::string& json);

// A machine (plain or zero-test) together with optional configurations:
// {"machine": {...}, "from": {...}, "to": {...}}, or a bare machine.
struct Instance {
    std::optional<Machine> machine;
    std::optional<ZeroTestMachine> zmachine;
    std::optional<BooleanProgram> program;
    std::string from_json, to_json;  // raw configuration objects, empty if absent
};
Instance read_instance(const std::string& json);
std::string write_instance(const Machine& m, const Config& from, const Config& to);
std::string write_instance(const ZeroTestMachine& m, const Config& from, const Config& to);

std::string write_certificate(const Machine& m, const CoverCertificate& c);
std::string write_compiled(const CompiledInstance& c);
std::string write_compiled(const CompiledBoolean& c);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

}  // namespace acvass
