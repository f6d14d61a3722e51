#pragma once

#include <string>
#include <variant>

#include "ipsim/machine.hpp"

namespace ipsim {

class ParseError : public std::runtime_error {
public:
    ParseError(int line, const std::string& msg)
        : std::runtime_error("line " + std::to_string(line) + ": " + msg), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

using ParsedMachine = std::variant<MachineSpec, KnfaSpec, TafaSpec>;

/// Parses the line-based machine format (see README for the grammar).
/// Deterministic; wildcard '*' scan fields expand against the declared
/// alphabets, with more specific entries taking precedence.
ParsedMachine parse_machine(const std::string& text);

/// Canonical text form: fixed header order, fully expanded transitions in a
/// deterministic sort. serialize_machine(parse_machine(s)) is a fixpoint.
std::string serialize_machine(const MachineSpec& spec);
std::string serialize_machine(const KnfaSpec& spec);
std::string serialize_machine(const TafaSpec& spec);
std::string serialize_machine(const ParsedMachine& m);

} // namespace ipsim
