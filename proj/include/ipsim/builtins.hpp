#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ipsim/multihead.hpp"
#include "ipsim/parse.hpp"

namespace ipsim {

struct BuiltinInfo {
    std::string name;
    std::string kind; // verifier | knfa | 2afa | multihead
    std::string description;
};

std::vector<BuiltinInfo> list_builtins();

/// Flat machines by name (verifier/knfa kinds); nullopt when unknown or not
/// expressible in the file format.
std::optional<ParsedMachine> builtin_machine(const std::string& name);

/// Multihead machines by name.
std::optional<MultiheadVerifier> builtin_multihead(const std::string& name);

/// The deterministic binary-counter machine for { 0^m 1^m }: counts the
/// zeros up, the ones down, and accepts on a clean final zero check. Keeps
/// the three low counter bits in its finite control and the higher bits on
/// the work tape from cell 2 up, with cell 0 marked and cell 1 kept blank so
/// carry and borrow walks can find their way back without extra symbols.
MachineSpec zeros_ones_counter_tm();

/// Two-head deterministic checker for { 0^m 1^m }.
MultiheadVerifier zeros_ones_multihead();

bool in_zeros_ones_language(const std::string& w);
bool in_firstlast_language(const std::string& w);

} // namespace ipsim
