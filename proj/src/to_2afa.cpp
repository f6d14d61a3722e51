#include "ipsim/transforms/to_2afa.hpp"

#include <map>

namespace ipsim {

namespace {

std::string seq_text(const CoinSequence& p) { return p.empty() ? "-" : p; }

} // namespace

To2afaCounts to_2afa_counts(const MachineSpec& v, int r) {
    To2afaCounts counts;
    std::uint64_t pub_states = 0;
    for (size_t q = 0; q < v.states.size(); ++q)
        if (v.flips_pub(static_cast<StateId>(q))) ++pub_states;
    for (const auto& set : enumerate_maj(r)) {
        const auto pref = prefixes_of(set);
        counts.main_states += v.states.size() * v.comm_alphabet.size() * pref.size();
        counts.flip_states += pub_states * v.comm_alphabet.size() * (pref.size() - 1);
    }
    return counts;
}

TafaSpec constpub_to_2afa(const MachineSpec& v, int r) {
    if (!is_constant_space(v))
        throw MachineError("the alternation construction wants a constant-space verifier");
    for (size_t q = 0; q < v.states.size(); ++q)
        if (v.flips_pri(static_cast<StateId>(q)))
            throw MachineError("the alternation construction wants no private coins");
    {
        auto viol = validate(v);
        if (!viol.empty())
            throw MachineError("source verifier invalid: " + viol.front().message);
    }

    const auto maj = enumerate_maj(r);
    TafaSpec m;
    m.input_alphabet = v.input_alphabet;

    auto add_state = [&m](const std::string& name, bool universal) {
        m.states.push_back(name);
        m.universal.push_back(universal ? 1 : 0);
        return static_cast<StateId>(m.states.size() - 1);
    };

    const StateId q0 = add_state("q0", false);
    m.initial = q0;

    // materialize the product sets
    struct MainKey {
        int set;
        StateId qv;
        Sym gamma;
        CoinSequence prefix;
        bool operator<(const MainKey& o) const {
            return std::tie(set, qv, gamma, prefix) < std::tie(o.set, o.qv, o.gamma, o.prefix);
        }
    };
    struct FlipKey {
        int set;
        StateId qv;
        Sym gamma;
        CoinSequence prefix;
        int bit;
        bool operator<(const FlipKey& o) const {
            return std::tie(set, qv, gamma, prefix, bit) <
                   std::tie(o.set, o.qv, o.gamma, o.prefix, o.bit);
        }
    };
    std::map<MainKey, StateId> mains;
    std::map<FlipKey, StateId> flips;

    std::vector<CoinSequenceSet> sets(maj.begin(), maj.end());
    std::vector<CoinSequenceSet> prefs, pprefs;
    for (const auto& s : sets) {
        prefs.push_back(prefixes_of(s));
        pprefs.push_back(proper_prefixes_of(s));
    }

    for (int si = 0; si < static_cast<int>(sets.size()); ++si) {
        for (size_t q = 0; q < v.states.size(); ++q)
            for (size_t g = 0; g < v.comm_alphabet.size(); ++g)
                for (const auto& p : prefs[static_cast<size_t>(si)]) {
                    const auto qv = static_cast<StateId>(q);
                    const bool universal =
                        v.flips_pub(qv) && pprefs[static_cast<size_t>(si)].count(p) > 0;
                    std::string name = "m" + std::to_string(si) + "." + v.states[q] + "." +
                                       v.comm_alphabet[g] + "." + seq_text(p);
                    mains[{si, qv, static_cast<Sym>(g), p}] = add_state(name, universal);
                }
        for (size_t q = 0; q < v.states.size(); ++q) {
            const auto qv = static_cast<StateId>(q);
            if (!v.flips_pub(qv)) continue;
            for (size_t g = 0; g < v.comm_alphabet.size(); ++g)
                for (const auto& pb : prefs[static_cast<size_t>(si)]) {
                    if (pb.empty()) continue; // (p, b) with p*b in prefix(S)
                    CoinSequence p = pb.substr(0, pb.size() - 1);
                    int bit = pb.back() - '0';
                    std::string name = "f" + std::to_string(si) + "." + v.states[q] + "." +
                                       v.comm_alphabet[g] + "." + seq_text(p) + "." +
                                       std::to_string(bit);
                    flips[{si, qv, static_cast<Sym>(g), p, bit}] = add_state(name, false);
                }
        }
    }

    const StateId qacc = add_state("qacc", false);
    const StateId qrej = add_state("qrej", false);
    m.accept = qacc;
    m.reject = qrej;

    auto scans = [&m]() {
        std::vector<Sym> out;
        for (size_t i = 0; i < m.input_alphabet.size(); ++i) out.push_back(static_cast<Sym>(i));
        out.push_back(kLeftEnd);
        out.push_back(kRightEnd);
        return out;
    }();

    // the one existential guess of the coin-sequence set
    for (int si = 0; si < static_cast<int>(sets.size()); ++si)
        m.delta[{q0, kLeftEnd}].push_back(
            {mains.at({si, v.initial, kBlank, CoinSequence()}), 0});

    for (const auto& [key, id] : mains) {
        const auto& [si, qv, gamma, prefix] = key;
        if (qv == v.accept) {
            for (Sym s : scans) m.delta[{id, s}].push_back({qacc, 0});
            continue;
        }
        if (qv == v.reject) {
            for (Sym s : scans) m.delta[{id, s}].push_back({qrej, 0});
            continue;
        }
        if (v.flips_pub(qv)) {
            if (!pprefs[static_cast<size_t>(si)].count(prefix))
                continue; // a member of S itself: the default rejects
            for (Sym s : scans)
                for (int bit = 0; bit <= 1; ++bit) {
                    CoinSequence ext = prefix + static_cast<char>('0' + bit);
                    if (!prefs[static_cast<size_t>(si)].count(ext)) continue;
                    m.delta[{id, s}].push_back(
                        {flips.at({si, qv, gamma, prefix, bit}), 0});
                }
            continue;
        }
        for (Sym s : scans) {
            auto it = v.delta.find(DeltaKey{qv, s, kBlank, gamma, kNoCoin, kNoCoin});
            if (it == v.delta.end()) continue;
            const DeltaRhs& rhs = it->second;
            if (v.communicates(qv)) {
                // the cell goes straight to the prover's existential choice
                for (size_t g2 = 0; g2 < v.comm_alphabet.size(); ++g2)
                    m.delta[{id, s}].push_back(
                        {mains.at({si, rhs.next, static_cast<Sym>(g2), prefix}), rhs.d_in});
            } else {
                m.delta[{id, s}].push_back({mains.at({si, rhs.next, gamma, prefix}), rhs.d_in});
            }
        }
    }

    for (const auto& [key, id] : flips) {
        const auto& [si, qv, gamma, prefix, bit] = key;
        for (Sym s : scans) {
            auto it = v.delta.find(DeltaKey{qv, s, kBlank, gamma, kNoCoin, bit});
            if (it == v.delta.end()) continue;
            const DeltaRhs& rhs = it->second;
            CoinSequence ext = prefix + static_cast<char>('0' + bit);
            for (size_t g2 = 0; g2 < v.comm_alphabet.size(); ++g2)
                m.delta[{id, s}].push_back(
                    {mains.at({si, rhs.next, static_cast<Sym>(g2), ext}), rhs.d_in});
        }
    }

    // every unspecified move rejects
    for (size_t q = 0; q < m.states.size(); ++q) {
        auto id = static_cast<StateId>(q);
        if (m.is_halting(id)) continue;
        for (Sym s : scans) {
            auto& moves = m.delta[{id, s}];
            if (moves.empty()) moves.push_back({qrej, 0});
        }
    }

    return m;
}

} // namespace ipsim
