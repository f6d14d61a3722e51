#include "ipsim/multihead.hpp"

#include <algorithm>

namespace ipsim {

StateId MultiheadVerifier::add_state(const std::string& name) {
    auto it = std::find(states.begin(), states.end(), name);
    if (it != states.end()) return static_cast<StateId>(it - states.begin());
    states.push_back(name);
    pub.push_back(0);
    com.push_back(0);
    return static_cast<StateId>(states.size() - 1);
}

StateId MultiheadVerifier::state_id(const std::string& name) const {
    auto it = std::find(states.begin(), states.end(), name);
    return it == states.end() ? -1 : static_cast<StateId>(it - states.begin());
}

Sym MultiheadVerifier::input_id(const std::string& name) const {
    if (name == "<") return kLeftEnd;
    if (name == ">") return kRightEnd;
    auto it = std::find(input_alphabet.begin(), input_alphabet.end(), name);
    return it == input_alphabet.end() ? -1 : static_cast<Sym>(it - input_alphabet.begin());
}

std::string MultiheadVerifier::input_name(Sym s) const {
    if (s == kLeftEnd) return "<";
    if (s == kRightEnd) return ">";
    return input_alphabet.at(static_cast<size_t>(s));
}

std::vector<Violation> validate_multihead(const MultiheadVerifier& m) {
    std::vector<Violation> out;
    auto bad = [&out](std::string msg) { out.push_back({std::move(msg)}); };
    if (m.heads < 1) bad("head count must be at least 1");
    if (m.pub.size() != m.states.size() || m.com.size() != m.states.size())
        bad("role flags do not cover the state set");
    else
        for (size_t q = 0; q < m.states.size(); ++q) {
            auto id = static_cast<StateId>(q);
            if (m.flips_pub(id) && !m.communicates(id))
                bad("public state must communicate: " + m.states[q]);
            if (m.is_halting(id) && (m.flips_pub(id) || m.communicates(id)))
                bad("halting state flips or communicates: " + m.states[q]);
        }
    for (const auto& [key, rhs] : m.delta) {
        if (key.scans.size() != static_cast<size_t>(m.heads) ||
            rhs.dirs.size() != static_cast<size_t>(m.heads))
            bad("entry arity differs from the head count");
        if (m.is_halting(key.state)) bad("halting state has outgoing moves");
        if ((key.pub != kNoCoin) != m.flips_pub(key.state))
            bad("coin argument does not match the role of " +
                m.states[static_cast<size_t>(key.state)]);
        if (rhs.comm_write.has_value() != m.communicates(key.state))
            bad("communication write does not match the role of " +
                m.states[static_cast<size_t>(key.state)]);
    }
    return out;
}

TrialOutcome run_multihead(const MultiheadVerifier& m, const std::string& input,
                           const ProverStrategy& prover, CoinSource coins,
                           std::uint64_t cutoff) {
    std::vector<Sym> w;
    for (char ch : input) {
        Sym s = m.input_id(std::string(1, ch));
        if (s < 0) throw MachineError(std::string("input symbol '") + ch + "' is not in Sigma");
        w.push_back(s);
    }
    const long last = static_cast<long>(w.size()) + 1;
    auto scan_at = [&](long pos) -> Sym {
        if (pos == 0) return kLeftEnd;
        if (pos == last) return kRightEnd;
        return w[static_cast<size_t>(pos - 1)];
    };

    TrialOutcome out;
    StateId q = m.initial;
    std::vector<long> pos(static_cast<size_t>(m.heads), 0);
    Sym cell = kBlank;
    Transcript transcript;

    while (out.steps < cutoff) {
        if (m.is_halting(q)) break;
        ++out.steps;
        MultiheadVerifier::Key key;
        key.state = q;
        for (int i = 0; i < m.heads; ++i)
            key.scans.push_back(scan_at(pos[static_cast<size_t>(i)]));
        key.comm = cell;
        if (m.flips_pub(q)) {
            key.pub = coins.flip();
            ++out.public_coins_used;
            transcript.push_back({EventKind::public_coin, "", key.pub, out.steps});
        }
        auto it = m.delta.find(key);
        if (it == m.delta.end()) {
            out.verdict = Verdict::reject; // undefined scan combination
            out.transcript = std::move(transcript);
            return out;
        }
        const auto& rhs = it->second;
        if (m.communicates(q)) {
            cell = *rhs.comm_write;
            transcript.push_back(
                {EventKind::verifier_write, m.comm_alphabet[static_cast<size_t>(cell)], 0,
                 out.steps});
            std::string answer = prover.respond(input, transcript);
            auto found = std::find(m.comm_alphabet.begin(), m.comm_alphabet.end(), answer);
            if (found == m.comm_alphabet.end())
                throw MachineError("prover wrote a symbol outside Gamma");
            cell = static_cast<Sym>(found - m.comm_alphabet.begin());
            transcript.push_back({EventKind::prover_write, answer, 0, out.steps});
        }
        bool off = false;
        for (int i = 0; i < m.heads; ++i) {
            pos[static_cast<size_t>(i)] += rhs.dirs[static_cast<size_t>(i)];
            if (pos[static_cast<size_t>(i)] < 0 || pos[static_cast<size_t>(i)] > last)
                off = true;
        }
        if (rhs.next == m.accept) {
            out.verdict = Verdict::accept;
            out.transcript = std::move(transcript);
            return out;
        }
        if (rhs.next == m.reject || off) {
            out.verdict = Verdict::reject;
            out.transcript = std::move(transcript);
            return out;
        }
        q = rhs.next;
    }
    if (m.is_halting(q)) {
        out.verdict = q == m.accept ? Verdict::accept : Verdict::reject;
    } else {
        out.verdict = Verdict::cutoff;
        out.steps = cutoff;
    }
    out.transcript = std::move(transcript);
    return out;
}

} // namespace ipsim
