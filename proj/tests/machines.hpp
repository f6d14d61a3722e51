#pragma once

// Small machines shared across the test suites.

#include <string>

#include "ipsim/parse.hpp"

namespace testmachines {

inline ipsim::MachineSpec verifier(const std::string& text) {
    return std::get<ipsim::MachineSpec>(ipsim::parse_machine(text));
}

inline ipsim::KnfaSpec knfa(const std::string& text) {
    return std::get<ipsim::KnfaSpec>(ipsim::parse_machine(text));
}

inline ipsim::TafaSpec tafa(const std::string& text) {
    return std::get<ipsim::TafaSpec>(ipsim::parse_machine(text));
}

/// One private coin: accept on 1, reject on 0.
inline ipsim::MachineSpec fair_coin() {
    return verifier(R"(kind verifier
states: q0 qa qr
accept: qa
reject: qr
initial: q0
input: 0 1
work: _
comm: _
pri: q0
pub:
com:
q0 * * * pri=0 -> qr _ 0 0
q0 * * * pri=1 -> qa _ 0 0
)");
}

/// Two sequential private coins: accept iff both come out 1.
inline ipsim::MachineSpec two_coins() {
    return verifier(R"(kind verifier
states: q0 q1 qa qr
accept: qa
reject: qr
initial: q0
input: 0 1
work: _
comm: _
pri: q0 q1
pub:
com:
q0 * * * pri=0 -> qr _ 0 0
q0 * * * pri=1 -> q1 _ 0 0
q1 * * * pri=0 -> qr _ 0 0
q1 * * * pri=1 -> qa _ 0 0
)");
}

/// Deterministic self-loop; never halts.
inline ipsim::MachineSpec self_loop() {
    return verifier(R"(kind verifier
states: q0 qa qr
accept: qa
reject: qr
initial: q0
input: 0 1
work: _
comm: _
pri:
pub:
com:
q0 * * * -> q0 _ 0 0
)");
}

/// Flips three public coins (communicating a blank each time), then accepts.
inline ipsim::MachineSpec three_pub_coins() {
    return verifier(R"(kind verifier
states: q0 q1 q2 qa qr
accept: qa
reject: qr
initial: q0
input: 0 1
work: _
comm: _
pri:
pub: q0 q1 q2
com: q0 q1 q2
q0 * * * pub=0 -> q1 _ _ 0 0
q0 * * * pub=1 -> q1 _ _ 0 0
q1 * * * pub=0 -> q2 _ _ 0 0
q1 * * * pub=1 -> q2 _ _ 0 0
q2 * * * pub=0 -> qa _ _ 0 0
q2 * * * pub=1 -> qa _ _ 0 0
)");
}

/// Walks right once, then rejects by walking past the right endmarker
/// (tests the endmarker rule), on any nonempty input; on the empty input the
/// first move already scans '>' and enters qa.
inline ipsim::MachineSpec walker() {
    return verifier(R"(kind verifier
states: q0 q1 qa qr
accept: qa
reject: qr
initial: q0
input: 0 1
work: _
comm: _
pri:
pub:
com:
q0 * * * -> q1 _ +1 0
q1 > * * -> qa _ 0 0
q1 * * * -> q1 _ +1 0
)");
}

/// Asks the prover once (writes blank), accepts iff the prover echoes "y".
inline ipsim::MachineSpec ask_once() {
    return verifier(R"(kind verifier
states: q0 q1 qa qr
accept: qa
reject: qr
initial: q0
input: 0 1
work: _
comm: _ y n
pri:
pub:
com: q0
q0 * * * -> q1 _ _ 0 0
q1 * * y -> qa _ 0 0
q1 * * * -> qr _ 0 0
)");
}

/// 2-head kNFA for { 0^m 1^m : m >= 0 }.
inline ipsim::KnfaSpec zeros_ones_knfa() {
    return knfa(R"(kind knfa
states: q0 q1 q1z q3 qacc qrej
initial: q0
input: 0 1
heads: 2
q0 < < -> q1 +1 0
q1 > < -> qacc 0 0
q1 0 < -> q1z +1 0
q1z 0 < -> q1z +1 0
q1z 1 < -> q3 0 +1
q3 1 0 -> q3 +1 +1
q3 > 1 -> qacc 0 0
)");
}

inline bool in_zeros_ones(const std::string& w) {
    size_t i = 0;
    while (i < w.size() && w[i] == '0') ++i;
    size_t zeros = i;
    while (i < w.size() && w[i] == '1') ++i;
    return i == w.size() && w.size() == 2 * zeros;
}

} // namespace testmachines
