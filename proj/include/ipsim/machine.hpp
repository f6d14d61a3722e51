#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "ipsim/bigint.hpp"

namespace ipsim {

using StateId = int;
using Sym = int;

// Input tape symbols: 0..|Sigma|-1 are alphabet letters, the two endmarkers
// get fixed negative ids so they survive alphabet edits by transformations.
inline constexpr Sym kLeftEnd = -1;   // spelled '<' in machine files
inline constexpr Sym kRightEnd = -2;  // spelled '>'

// Work/communication alphabets reserve id 0 for the blank symbol "_".
inline constexpr Sym kBlank = 0;

inline constexpr int kNoCoin = -1;

struct DeltaKey {
    StateId state = 0;
    Sym in_sym = 0;    // over Sigma + endmarkers
    Sym work_sym = 0;  // over Phi
    Sym comm_sym = 0;  // over Gamma
    int pri = kNoCoin; // 0/1 when present
    int pub = kNoCoin;

    bool operator==(const DeltaKey&) const = default;
};

struct DeltaKeyHash {
    std::size_t operator()(const DeltaKey& k) const {
        std::uint64_t h = 0xcbf29ce484222325ULL;
        auto mix = [&h](std::uint64_t v) {
            h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        };
        mix(static_cast<std::uint64_t>(k.state));
        mix(static_cast<std::uint64_t>(k.in_sym + 4));
        mix(static_cast<std::uint64_t>(k.work_sym));
        mix(static_cast<std::uint64_t>(k.comm_sym));
        mix(static_cast<std::uint64_t>(k.pri + 1));
        mix(static_cast<std::uint64_t>(k.pub + 1));
        return static_cast<std::size_t>(h);
    }
};

struct DeltaRhs {
    StateId next = 0;
    Sym work_write = kBlank;
    std::optional<Sym> comm_write; // present iff the source state communicates
    int d_in = 0;                  // in {-1, 0, +1}
    int d_work = 0;

    bool operator==(const DeltaRhs&) const = default;
};

/// The verifier 6-tuple (Q, Sigma, Phi, Gamma, delta, q0) plus the state-role
/// subsets Q_pri, Q_pub, Q_com and the designated halting states. delta is an
/// explicit finite table so transformations can rewrite it syntactically.
struct MachineSpec {
    std::vector<std::string> states;
    StateId initial = 0;
    StateId accept = 0;
    StateId reject = 0;

    std::vector<std::string> input_alphabet; // Sigma (endmarkers excluded)
    std::vector<std::string> work_alphabet;  // Phi, [0] is the blank "_"
    std::vector<std::string> comm_alphabet;  // Gamma, [0] is the blank "_"

    std::vector<std::uint8_t> pri, pub, com; // per-state role flags

    std::unordered_map<DeltaKey, DeltaRhs, DeltaKeyHash> delta;

    StateId add_state(const std::string& name);
    Sym add_work_symbol(const std::string& name);
    Sym add_comm_symbol(const std::string& name);
    Sym add_input_symbol(const std::string& name);

    StateId state_id(const std::string& name) const;          // -1 if absent
    Sym input_id(const std::string& name) const;              // endmarker-aware
    Sym work_id(const std::string& name) const;
    Sym comm_id(const std::string& name) const;

    const std::string& state_name(StateId q) const { return states.at(q); }
    std::string input_name(Sym s) const;
    const std::string& work_name(Sym s) const { return work_alphabet.at(s); }
    const std::string& comm_name(Sym s) const { return comm_alphabet.at(s); }

    bool is_halting(StateId q) const { return q == accept || q == reject; }
    bool flips_pri(StateId q) const { return pri[static_cast<size_t>(q)] != 0; }
    bool flips_pub(StateId q) const { return pub[static_cast<size_t>(q)] != 0; }
    bool communicates(StateId q) const { return com[static_cast<size_t>(q)] != 0; }

    /// All input symbols a head can scan, endmarkers included.
    std::vector<Sym> scan_symbols() const;
};

/// k-head nondeterministic finite automaton (Section kNFA 4-tuple).
struct KnfaSpec {
    std::vector<std::string> states;
    StateId initial = 0;
    StateId accept = 0;
    StateId reject = 0;
    std::vector<std::string> input_alphabet;
    int heads = 1;

    struct Move {
        StateId next;
        std::vector<int> dirs; // exactly `heads` entries
        bool operator==(const Move&) const = default;
    };
    // key: state then the k scanned symbols
    std::map<std::pair<StateId, std::vector<Sym>>, std::vector<Move>> delta;

    StateId state_id(const std::string& name) const;
    Sym input_id(const std::string& name) const;
    std::string input_name(Sym s) const;
};

/// Two-way alternating finite automaton with states partitioned into
/// existential, universal and the two halting states.
struct TafaSpec {
    std::vector<std::string> states;
    StateId initial = 0;
    StateId accept = 0;
    StateId reject = 0;
    std::vector<std::string> input_alphabet;
    std::vector<std::uint8_t> universal; // non-halting states: 1 = forall

    struct Move {
        StateId next;
        int dir;
        bool operator==(const Move&) const = default;
        auto operator<=>(const Move&) const = default;
    };
    std::map<std::pair<StateId, Sym>, std::vector<Move>> delta;

    StateId state_id(const std::string& name) const;
    Sym input_id(const std::string& name) const;
    std::string input_name(Sym s) const;
    bool is_halting(StateId q) const { return q == accept || q == reject; }
};

/// Verifier snapshot: state, work tape, communication cell, head positions.
/// The work tape is materialized lazily; trailing blanks are trimmed so that
/// structurally equal configurations compare equal.
struct Configuration {
    StateId state = 0;
    std::vector<Sym> work_tape;
    Sym comm_cell = kBlank;
    long input_pos = 0; // 0 .. n+1
    long work_pos = 0;

    Sym work_at(long pos) const {
        if (pos < 0 || static_cast<size_t>(pos) >= work_tape.size()) return kBlank;
        return work_tape[static_cast<size_t>(pos)];
    }
    void work_write(long pos, Sym s) {
        if (static_cast<size_t>(pos) >= work_tape.size()) {
            if (s == kBlank) return;
            work_tape.resize(static_cast<size_t>(pos) + 1, kBlank);
        }
        work_tape[static_cast<size_t>(pos)] = s;
        while (!work_tape.empty() && work_tape.back() == kBlank) work_tape.pop_back();
    }

    bool operator==(const Configuration&) const = default;
};

struct ConfigurationHash {
    std::size_t operator()(const Configuration& c) const;
};

struct Violation {
    std::string message;
};

class MachineError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Checks every MachineSpec invariant against the transition-function case
/// structure; returns the list of violations (empty = valid).
std::vector<Violation> validate(const MachineSpec& spec);

std::vector<Violation> validate_knfa(const KnfaSpec& spec);
std::vector<Violation> validate_tafa(const TafaSpec& spec);

/// Initial verifier configuration on input w: initial state, head on the left
/// endmarker, blank work tape and communication cell.
/// Throws MachineError if w contains a symbol outside Sigma.
Configuration initial_configuration(const MachineSpec& spec, const std::string& input);

/// Maps the characters of w to input-symbol ids (single-character alphabet
/// letters); throws MachineError on symbols outside Sigma.
std::vector<Sym> encode_input(const MachineSpec& spec, const std::string& input);

/// Exact number of configurations with n input cells and a work budget of s
/// cells: |Q| * (n+2) * (s+1) * |Phi|^s * |Gamma|.
BigInt count_configurations(const MachineSpec& spec, std::uint64_t n, std::uint64_t s);

/// True iff the spec never uses its work tape: every delta entry writes the
/// blank and keeps the work head in place. Such a machine declares work
/// budget 0 (a finite-state verifier).
bool is_constant_space(const MachineSpec& spec);

} // namespace ipsim
