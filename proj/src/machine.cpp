#include "ipsim/machine.hpp"

#include <algorithm>

namespace ipsim {

namespace {

int find_name(const std::vector<std::string>& names, const std::string& name) {
    auto it = std::find(names.begin(), names.end(), name);
    return it == names.end() ? -1 : static_cast<int>(it - names.begin());
}

} // namespace

StateId MachineSpec::add_state(const std::string& name) {
    int id = find_name(states, name);
    if (id >= 0) return id;
    states.push_back(name);
    pri.push_back(0);
    pub.push_back(0);
    com.push_back(0);
    return static_cast<StateId>(states.size() - 1);
}

Sym MachineSpec::add_work_symbol(const std::string& name) {
    int id = find_name(work_alphabet, name);
    if (id >= 0) return id;
    work_alphabet.push_back(name);
    return static_cast<Sym>(work_alphabet.size() - 1);
}

Sym MachineSpec::add_comm_symbol(const std::string& name) {
    int id = find_name(comm_alphabet, name);
    if (id >= 0) return id;
    comm_alphabet.push_back(name);
    return static_cast<Sym>(comm_alphabet.size() - 1);
}

Sym MachineSpec::add_input_symbol(const std::string& name) {
    if (name == "<" || name == ">")
        throw MachineError("endmarker spelling '" + name + "' cannot join the input alphabet");
    int id = find_name(input_alphabet, name);
    if (id >= 0) return id;
    input_alphabet.push_back(name);
    return static_cast<Sym>(input_alphabet.size() - 1);
}

StateId MachineSpec::state_id(const std::string& name) const {
    return find_name(states, name);
}

Sym MachineSpec::input_id(const std::string& name) const {
    if (name == "<") return kLeftEnd;
    if (name == ">") return kRightEnd;
    return find_name(input_alphabet, name);
}

Sym MachineSpec::work_id(const std::string& name) const {
    return find_name(work_alphabet, name);
}

Sym MachineSpec::comm_id(const std::string& name) const {
    return find_name(comm_alphabet, name);
}

std::string MachineSpec::input_name(Sym s) const {
    if (s == kLeftEnd) return "<";
    if (s == kRightEnd) return ">";
    return input_alphabet.at(static_cast<size_t>(s));
}

std::vector<Sym> MachineSpec::scan_symbols() const {
    std::vector<Sym> out;
    out.reserve(input_alphabet.size() + 2);
    for (size_t i = 0; i < input_alphabet.size(); ++i) out.push_back(static_cast<Sym>(i));
    out.push_back(kLeftEnd);
    out.push_back(kRightEnd);
    return out;
}

StateId KnfaSpec::state_id(const std::string& name) const { return find_name(states, name); }

Sym KnfaSpec::input_id(const std::string& name) const {
    if (name == "<") return kLeftEnd;
    if (name == ">") return kRightEnd;
    return find_name(input_alphabet, name);
}

std::string KnfaSpec::input_name(Sym s) const {
    if (s == kLeftEnd) return "<";
    if (s == kRightEnd) return ">";
    return input_alphabet.at(static_cast<size_t>(s));
}

StateId TafaSpec::state_id(const std::string& name) const { return find_name(states, name); }

Sym TafaSpec::input_id(const std::string& name) const {
    if (name == "<") return kLeftEnd;
    if (name == ">") return kRightEnd;
    return find_name(input_alphabet, name);
}

std::string TafaSpec::input_name(Sym s) const {
    if (s == kLeftEnd) return "<";
    if (s == kRightEnd) return ">";
    return input_alphabet.at(static_cast<size_t>(s));
}

std::size_t ConfigurationHash::operator()(const Configuration& c) const {
    std::uint64_t h = 0x100000001b3ULL;
    auto mix = [&h](std::uint64_t v) {
        h ^= v;
        h *= 0x100000001b3ULL;
        h ^= h >> 29;
    };
    mix(static_cast<std::uint64_t>(c.state));
    mix(static_cast<std::uint64_t>(c.comm_cell));
    mix(static_cast<std::uint64_t>(c.input_pos + 4));
    mix(static_cast<std::uint64_t>(c.work_pos + 4));
    for (Sym s : c.work_tape) mix(static_cast<std::uint64_t>(s + 1));
    return static_cast<std::size_t>(h);
}

namespace {

std::string table_case(const MachineSpec& m, StateId q) {
    std::string s = m.flips_pri(q) ? "Q_pri" : "~Q_pri";
    s += m.flips_pub(q) ? " & Q_pub" : " & ~Q_pub";
    s += m.communicates(q) ? " & Q_com" : " & ~Q_com";
    return s;
}

} // namespace

std::vector<Violation> validate(const MachineSpec& m) {
    std::vector<Violation> out;
    auto bad = [&out](std::string msg) { out.push_back({std::move(msg)}); };

    const auto nstates = m.states.size();
    if (m.pri.size() != nstates || m.pub.size() != nstates || m.com.size() != nstates) {
        bad("role flag vectors do not cover the state set");
        return out;
    }
    if (nstates == 0) {
        bad("empty state set");
        return out;
    }
    auto in_range = [&](StateId q) { return q >= 0 && static_cast<size_t>(q) < nstates; };
    if (!in_range(m.initial)) bad("initial state out of range");
    if (!in_range(m.accept)) bad("accept state out of range");
    if (!in_range(m.reject)) bad("reject state out of range");
    if (!out.empty()) return out;
    if (m.accept == m.reject) bad("accept and reject must be distinct states");

    if (m.work_alphabet.empty() || m.work_alphabet[0] != "_")
        bad("work alphabet must contain the blank '_' at id 0");
    if (m.comm_alphabet.empty() || m.comm_alphabet[0] != "_")
        bad("communication alphabet must contain the blank '_' at id 0");

    // Role constraints: Q_pub subset of Q_com; halting states flip no coins
    // and do not communicate.
    for (size_t q = 0; q < nstates; ++q) {
        auto id = static_cast<StateId>(q);
        if (m.flips_pub(id) && !m.communicates(id))
            bad("public state must communicate: " + m.states[q]);
        if (m.is_halting(id) && m.flips_pri(id))
            bad("halting state flips coins: " + m.states[q]);
        if (m.is_halting(id) && m.flips_pub(id))
            bad("halting state flips coins: " + m.states[q]);
        if (m.is_halting(id) && m.communicates(id))
            bad("halting state communicates: " + m.states[q]);
    }

    // Per-entry shape checks against the matching transition-function case.
    for (const auto& [key, rhs] : m.delta) {
        if (!in_range(key.state)) {
            bad("delta entry with out-of-range state id");
            continue;
        }
        const std::string& qn = m.states[static_cast<size_t>(key.state)];
        if (m.is_halting(key.state)) {
            bad("delta entry leaving halting state " + qn);
            continue;
        }
        if (key.in_sym != kLeftEnd && key.in_sym != kRightEnd &&
            (key.in_sym < 0 || static_cast<size_t>(key.in_sym) >= m.input_alphabet.size()))
            bad("delta entry of " + qn + " scans a symbol outside Sigma");
        if (key.work_sym < 0 || static_cast<size_t>(key.work_sym) >= m.work_alphabet.size())
            bad("delta entry of " + qn + " scans a symbol outside Phi");
        if (key.comm_sym < 0 || static_cast<size_t>(key.comm_sym) >= m.comm_alphabet.size())
            bad("delta entry of " + qn + " scans a symbol outside Gamma");

        const bool want_pri = m.flips_pri(key.state);
        const bool want_pub = m.flips_pub(key.state);
        const bool want_com = m.communicates(key.state);
        if (want_pri && key.pri == kNoCoin)
            bad("delta entry of " + qn + " missing the private-bit argument (case " +
                table_case(m, key.state) + ")");
        if (!want_pri && key.pri != kNoCoin)
            bad("delta entry of " + qn + " carries a private bit but the state is not in Q_pri");
        if (want_pub && key.pub == kNoCoin)
            bad("delta entry of " + qn + " missing the public-bit argument (case " +
                table_case(m, key.state) + ")");
        if (!want_pub && key.pub != kNoCoin)
            bad("delta entry of " + qn + " carries a public bit but the state is not in Q_pub");
        if (want_com && !rhs.comm_write)
            bad("delta entry of " + qn + " missing the communication write (case " +
                table_case(m, key.state) + ")");
        if (!want_com && rhs.comm_write)
            bad("delta entry of " + qn + " writes to the cell but the state is not in Q_com");

        if (!in_range(rhs.next)) bad("delta entry of " + qn + " enters an unknown state");
        if (rhs.work_write < 0 || static_cast<size_t>(rhs.work_write) >= m.work_alphabet.size())
            bad("delta entry of " + qn + " writes a symbol outside Phi");
        if (rhs.comm_write &&
            (*rhs.comm_write < 0 || static_cast<size_t>(*rhs.comm_write) >= m.comm_alphabet.size()))
            bad("delta entry of " + qn + " writes a symbol outside Gamma");
        if (rhs.d_in < -1 || rhs.d_in > 1 || rhs.d_work < -1 || rhs.d_work > 1)
            bad("delta entry of " + qn + " uses a head direction outside {-1,0,+1}");
    }

    // Totality over every argument tuple of the declared case shape.
    const auto scans = m.scan_symbols();
    for (size_t q = 0; q < nstates; ++q) {
        auto id = static_cast<StateId>(q);
        if (m.is_halting(id)) continue;
        const std::vector<int> pris = m.flips_pri(id) ? std::vector<int>{0, 1}
                                                      : std::vector<int>{kNoCoin};
        const std::vector<int> pubs = m.flips_pub(id) ? std::vector<int>{0, 1}
                                                      : std::vector<int>{kNoCoin};
        for (Sym in : scans)
            for (size_t w = 0; w < m.work_alphabet.size(); ++w)
                for (size_t g = 0; g < m.comm_alphabet.size(); ++g)
                    for (int bpri : pris)
                        for (int bpub : pubs) {
                            DeltaKey key{id, in, static_cast<Sym>(w), static_cast<Sym>(g),
                                         bpri, bpub};
                            if (!m.delta.count(key))
                                bad("delta is not total: no entry for (" + m.states[q] + ", " +
                                    m.input_name(in) + ", " + m.work_alphabet[w] + ", " +
                                    m.comm_alphabet[g] + ")");
                        }
    }
    return out;
}

std::vector<Violation> validate_knfa(const KnfaSpec& m) {
    std::vector<Violation> out;
    auto bad = [&out](std::string msg) { out.push_back({std::move(msg)}); };
    if (m.heads < 1) bad("head count must be at least 1");
    for (const auto& [key, moves] : m.delta) {
        if (key.first == m.accept || key.first == m.reject)
            bad("halting state has outgoing moves: " + m.states[static_cast<size_t>(key.first)]);
        if (key.second.size() != static_cast<size_t>(m.heads))
            bad("scan tuple arity differs from the head count");
        for (const auto& mv : moves)
            if (mv.dirs.size() != static_cast<size_t>(m.heads))
                bad("move tuple does not carry exactly k directions");
    }
    return out;
}

std::vector<Violation> validate_tafa(const TafaSpec& m) {
    std::vector<Violation> out;
    auto bad = [&out](std::string msg) { out.push_back({std::move(msg)}); };
    if (m.universal.size() != m.states.size())
        bad("existential/universal partition does not cover the state set");
    for (const auto& [key, moves] : m.delta) {
        (void)moves;
        if (key.first == m.accept || key.first == m.reject)
            bad("halting state has successors: " + m.states[static_cast<size_t>(key.first)]);
    }
    return out;
}

std::vector<Sym> encode_input(const MachineSpec& spec, const std::string& input) {
    std::vector<Sym> out;
    out.reserve(input.size());
    for (char ch : input) {
        Sym s = spec.input_id(std::string(1, ch));
        if (s < 0)
            throw MachineError(std::string("input symbol '") + ch + "' is not in Sigma");
        out.push_back(s);
    }
    return out;
}

Configuration initial_configuration(const MachineSpec& spec, const std::string& input) {
    encode_input(spec, input); // reject inputs outside Sigma*
    Configuration cfg;
    cfg.state = spec.initial;
    cfg.comm_cell = kBlank;
    cfg.input_pos = 0;
    cfg.work_pos = 0;
    return cfg;
}

BigInt count_configurations(const MachineSpec& spec, std::uint64_t n, std::uint64_t s) {
    BigInt count = static_cast<std::uint64_t>(spec.states.size());
    count *= BigInt(n + 2);
    count *= BigInt(s + 1);
    BigInt phi_pow = 1;
    for (std::uint64_t i = 0; i < s; ++i)
        phi_pow *= static_cast<std::uint64_t>(spec.work_alphabet.size());
    count *= phi_pow;
    count *= static_cast<std::uint64_t>(spec.comm_alphabet.size());
    return count;
}

bool is_constant_space(const MachineSpec& spec) {
    for (const auto& [key, rhs] : spec.delta) {
        (void)key;
        if (rhs.work_write != kBlank || rhs.d_work != 0) return false;
    }
    return true;
}

} // namespace ipsim
