#include "ipsim/transforms/privatize.hpp"

namespace ipsim {

std::optional<std::pair<std::string, int>> split_pair_symbol(const std::string& name) {
    auto bar = name.rfind('|');
    if (bar == std::string::npos || bar + 2 != name.size()) return std::nullopt;
    char b = name[bar + 1];
    if (b != '0' && b != '1') return std::nullopt;
    return std::make_pair(name.substr(0, bar), b - '0');
}

PrivatizeResult privatize_coins(const MachineSpec& v1) {
    for (const auto& g : v1.comm_alphabet)
        if (g.find('|') != std::string::npos)
            throw MachineError("privatize_coins: '|' is reserved in Gamma symbol names");

    PrivatizeResult out;
    MachineSpec& m = out.machine;

    m.states = v1.states;
    m.initial = v1.initial;
    m.accept = v1.accept;
    m.reject = v1.reject;
    m.input_alphabet = v1.input_alphabet;
    m.work_alphabet = v1.work_alphabet;

    // Gamma2 = Gamma1 followed by the (g, b) pairs, so Gamma1 keeps its ids.
    m.comm_alphabet = v1.comm_alphabet;
    out.pair_symbol.resize(v1.comm_alphabet.size());
    for (size_t g = 0; g < v1.comm_alphabet.size(); ++g)
        for (int b = 0; b <= 1; ++b)
            out.pair_symbol[g][static_cast<size_t>(b)] =
                m.add_comm_symbol(v1.comm_alphabet[g] + "|" + std::to_string(b));

    // role flags: no public states survive
    m.pri = v1.pri;
    m.pub.assign(v1.pub.size(), 0);
    m.com = v1.com;
    for (size_t q = 0; q < v1.states.size(); ++q) {
        auto id = static_cast<StateId>(q);
        if (!v1.flips_pub(id)) continue;
        if (v1.flips_pri(id)) {
            // split state: the first transition buffers the private outcome
            m.pri[q] = 1;
            m.com[q] = 0;
        } else {
            m.pri[q] = 1; // rebranded public-only flipper
            out.rebranded.push_back(id);
        }
    }

    // intermediate states (q, b) for the both-coins case
    std::vector<std::array<StateId, 2>> buffer_state(v1.states.size(), {-1, -1});
    for (size_t q = 0; q < v1.states.size(); ++q) {
        auto id = static_cast<StateId>(q);
        if (!(v1.flips_pub(id) && v1.flips_pri(id))) continue;
        for (int b = 0; b <= 1; ++b) {
            StateId s = m.add_state(v1.states[q] + "@" + std::to_string(b));
            m.pri[static_cast<size_t>(s)] = 1;
            m.pub[static_cast<size_t>(s)] = 0;
            m.com[static_cast<size_t>(s)] = 1;
            buffer_state[q][static_cast<size_t>(b)] = s;
            out.intermediates.push_back(s);
        }
    }

    const Sym gamma1_count = static_cast<Sym>(v1.comm_alphabet.size());

    for (const auto& [key, rhs] : v1.delta) {
        const StateId q = key.state;
        if (!v1.flips_pub(q)) {
            m.delta.emplace(key, rhs); // copied verbatim
            continue;
        }
        if (!v1.flips_pri(q)) {
            // public-only: the outcome rides along in the paired write
            DeltaKey k2{q, key.in_sym, key.work_sym, key.comm_sym, key.pub, kNoCoin};
            DeltaRhs r2 = rhs;
            r2.comm_write =
                out.pair_symbol[static_cast<size_t>(*rhs.comm_write)][static_cast<size_t>(key.pub)];
            m.delta.emplace(k2, r2);
        } else {
            // both coins: buffer the private outcome, then flip for the
            // public one and send the pair
            StateId buf = buffer_state[static_cast<size_t>(q)][static_cast<size_t>(key.pri)];
            DeltaKey k_first{q, key.in_sym, key.work_sym, key.comm_sym, key.pri, kNoCoin};
            DeltaRhs r_first{buf, key.work_sym, std::nullopt, 0, 0};
            m.delta.emplace(k_first, r_first); // same tuple for both pub values

            DeltaKey k_second{buf, key.in_sym, key.work_sym, key.comm_sym, key.pub, kNoCoin};
            DeltaRhs r_second = rhs;
            r_second.comm_write =
                out.pair_symbol[static_cast<size_t>(*rhs.comm_write)][static_cast<size_t>(key.pub)];
            m.delta.emplace(k_second, r_second);
        }
    }

    // reads of paired symbols (only an off-protocol prover produces them)
    // reject deterministically to keep delta total over the grown Gamma
    for (size_t q = 0; q < m.states.size(); ++q) {
        auto id = static_cast<StateId>(q);
        if (m.is_halting(id)) continue;
        const std::vector<int> pris =
            m.flips_pri(id) ? std::vector<int>{0, 1} : std::vector<int>{kNoCoin};
        for (Sym in : m.scan_symbols())
            for (size_t wsym = 0; wsym < m.work_alphabet.size(); ++wsym)
                for (Sym g = gamma1_count; g < static_cast<Sym>(m.comm_alphabet.size()); ++g)
                    for (int bpri : pris) {
                        DeltaKey k{id, in, static_cast<Sym>(wsym), g, bpri, kNoCoin};
                        DeltaRhs r{m.reject, static_cast<Sym>(wsym), std::nullopt, 0, 0};
                        if (m.communicates(id)) r.comm_write = kBlank;
                        m.delta.emplace(k, r);
                    }
    }

    return out;
}

std::string PrivatizedProverAdapter::respond(const std::string& input,
                                             const Transcript& t) const {
    Transcript unfolded;
    unfolded.reserve(t.size() + 4);
    for (const auto& e : t) {
        if (e.kind == EventKind::verifier_write) {
            if (auto pair = split_pair_symbol(e.symbol)) {
                unfolded.push_back({EventKind::public_coin, "", pair->second, e.step});
                unfolded.push_back({EventKind::verifier_write, pair->first, 0, e.step});
                continue;
            }
        }
        unfolded.push_back(e);
    }
    return inner_->respond(input, unfolded);
}

} // namespace ipsim
