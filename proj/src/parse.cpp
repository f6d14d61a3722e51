#include "ipsim/parse.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <tuple>

namespace ipsim {

namespace {

std::vector<std::string> tokenize(const std::string& line) {
    std::vector<std::string> toks;
    std::istringstream in(line);
    std::string t;
    while (in >> t) {
        if (t[0] == '#') break;
        toks.push_back(t);
    }
    return toks;
}

struct RawLine {
    int number;
    std::vector<std::string> tokens;
};

struct HeaderData {
    std::string kind;
    std::vector<std::string> states, input, work, comm;
    std::vector<std::string> pri, pub, com_states, exists, forall;
    std::string initial, accept, reject;
    int heads = 1;
    bool saw_heads = false;
    std::map<std::string, int> seen; // header name -> line
};

int direction(const std::string& tok, int line) {
    if (tok == "+1") return 1;
    if (tok == "-1") return -1;
    if (tok == "0") return 0;
    throw ParseError(line, "bad head direction '" + tok + "' (want -1, 0 or +1)");
}

std::string dir_text(int d) { return d > 0 ? "+1" : d < 0 ? "-1" : "0"; }

// Resolves the accept/reject designations: explicit header lines win,
// otherwise the conventional names qacc/qrej are looked up.
template <typename SpecT>
void resolve_halting(SpecT& spec, const HeaderData& h, int line) {
    auto pick = [&](const std::string& declared, const char* fallback,
                    const char* what) -> StateId {
        std::string name = declared.empty() ? fallback : declared;
        StateId q = spec.state_id(name);
        if (q < 0)
            throw ParseError(line, std::string(what) + " state '" + name +
                                       "' is not in the state list");
        return q;
    };
    spec.accept = pick(h.accept, "qacc", "accept");
    spec.reject = pick(h.reject, "qrej", "reject");
    if (spec.accept == spec.reject)
        throw ParseError(line, "accept and reject must be distinct states");
    if (h.initial.empty()) throw ParseError(line, "missing 'initial:' line");
    StateId q0 = spec.state_id(h.initial);
    if (q0 < 0) throw ParseError(line, "initial state '" + h.initial + "' is not declared");
    spec.initial = q0;
}

std::vector<Sym> expand_scan(const MachineSpec& m, const std::string& tok, int line) {
    if (tok == "*") return m.scan_symbols();
    Sym s = m.input_id(tok);
    if (s < 0 && tok != "<" && tok != ">")
        throw ParseError(line, "unknown input symbol '" + tok + "'");
    return {s};
}

std::vector<Sym> expand_work(const MachineSpec& m, const std::string& tok, int line) {
    if (tok == "*") {
        std::vector<Sym> all(m.work_alphabet.size());
        for (size_t i = 0; i < all.size(); ++i) all[i] = static_cast<Sym>(i);
        return all;
    }
    Sym s = m.work_id(tok);
    if (s < 0) throw ParseError(line, "unknown work symbol '" + tok + "'");
    return {s};
}

std::vector<Sym> expand_comm(const MachineSpec& m, const std::string& tok, int line) {
    if (tok == "*") {
        std::vector<Sym> all(m.comm_alphabet.size());
        for (size_t i = 0; i < all.size(); ++i) all[i] = static_cast<Sym>(i);
        return all;
    }
    Sym s = m.comm_id(tok);
    if (s < 0) throw ParseError(line, "unknown communication symbol '" + tok + "'");
    return {s};
}

MachineSpec build_verifier(const HeaderData& h, const std::vector<RawLine>& trans) {
    MachineSpec m;
    for (const auto& s : h.states) m.add_state(s);
    for (const auto& s : h.input) m.add_input_symbol(s);
    m.add_work_symbol("_");
    for (const auto& s : h.work)
        if (s != "_") m.add_work_symbol(s);
    m.add_comm_symbol("_");
    for (const auto& s : h.comm)
        if (s != "_") m.add_comm_symbol(s);

    auto flag_states = [&m](const std::vector<std::string>& names,
                            std::vector<std::uint8_t>& flags, const char* what) {
        for (const auto& n : names) {
            StateId q = m.state_id(n);
            if (q < 0) throw ParseError(0, std::string(what) + " line names unknown state '" + n + "'");
            flags[static_cast<size_t>(q)] = 1;
        }
    };
    flag_states(h.pri, m.pri, "pri:");
    flag_states(h.pub, m.pub, "pub:");
    flag_states(h.com_states, m.com, "com:");
    resolve_halting(m, h, 0);

    for (const auto& n : h.pub)
        if (!m.communicates(m.state_id(n)))
            throw ParseError(h.seen.count("pub") ? h.seen.at("pub") : 0,
                             "public state must communicate: " + n);

    // specificity = number of non-wildcard scan fields; explicit beats wildcard
    std::unordered_map<DeltaKey, std::pair<int, DeltaRhs>, DeltaKeyHash> table;

    for (const auto& raw : trans) {
        const auto& t = raw.tokens;
        const int ln = raw.number;
        auto arrow = std::find(t.begin(), t.end(), "->");
        if (arrow == t.end()) throw ParseError(ln, "transition line has no '->'");
        std::vector<std::string> lhs(t.begin(), arrow), rhs(arrow + 1, t.end());
        if (lhs.size() < 4) throw ParseError(ln, "transition needs state and 3 scanned symbols");

        StateId q = m.state_id(lhs[0]);
        if (q < 0) throw ParseError(ln, "unknown state '" + lhs[0] + "'");
        int pri_bit = kNoCoin, pub_bit = kNoCoin;
        int specificity = 0;
        for (size_t i = 4; i < lhs.size(); ++i) {
            if (lhs[i] == "pri=0" || lhs[i] == "pri=1")
                pri_bit = lhs[i].back() - '0';
            else if (lhs[i] == "pub=0" || lhs[i] == "pub=1")
                pub_bit = lhs[i].back() - '0';
            else
                throw ParseError(ln, "unexpected token '" + lhs[i] + "' before '->'");
        }

        const bool expects_comm = m.communicates(q);
        const size_t want_rhs = expects_comm ? 5u : 4u;
        if (rhs.size() != want_rhs)
            throw ParseError(ln, "expected " + std::to_string(want_rhs) +
                                     " fields after '->' for state '" + lhs[0] + "' (" +
                                     (expects_comm ? "communicating" : "non-communicating") +
                                     "), got " + std::to_string(rhs.size()));
        DeltaRhs value;
        StateId next = m.state_id(rhs[0]);
        if (next < 0) throw ParseError(ln, "unknown state '" + rhs[0] + "'");
        value.next = next;
        Sym ww = m.work_id(rhs[1]);
        if (ww < 0) throw ParseError(ln, "unknown work symbol '" + rhs[1] + "'");
        value.work_write = ww;
        size_t di_at = 2;
        if (expects_comm) {
            Sym cw = m.comm_id(rhs[2]);
            if (cw < 0) throw ParseError(ln, "unknown communication symbol '" + rhs[2] + "'");
            value.comm_write = cw;
            di_at = 3;
        }
        value.d_in = direction(rhs[di_at], ln);
        value.d_work = direction(rhs[di_at + 1], ln);

        for (const auto& tok : {lhs[1], lhs[2], lhs[3]})
            if (tok != "*") ++specificity;

        for (Sym in : expand_scan(m, lhs[1], ln))
            for (Sym w : expand_work(m, lhs[2], ln))
                for (Sym g : expand_comm(m, lhs[3], ln)) {
                    DeltaKey key{q, in, w, g, pri_bit, pub_bit};
                    auto it = table.find(key);
                    if (it == table.end()) {
                        table.emplace(key, std::make_pair(specificity, value));
                    } else if (specificity > it->second.first) {
                        it->second = {specificity, value};
                    } else if (specificity == it->second.first) {
                        throw ParseError(ln, "duplicate delta entry for (" + lhs[0] + ", " +
                                                 m.input_name(in) + ", " + m.work_name(w) +
                                                 ", " + m.comm_name(g) + ")");
                    }
                }
    }
    for (auto& [key, sv] : table) m.delta.emplace(key, sv.second);
    return m;
}

KnfaSpec build_knfa(const HeaderData& h, const std::vector<RawLine>& trans) {
    KnfaSpec m;
    m.states = h.states;
    for (const auto& s : h.input) {
        if (s == "<" || s == ">") throw ParseError(0, "endmarkers cannot join the input alphabet");
        if (std::find(m.input_alphabet.begin(), m.input_alphabet.end(), s) ==
            m.input_alphabet.end())
            m.input_alphabet.push_back(s);
    }
    if (!h.saw_heads) throw ParseError(0, "knfa needs a 'heads:' line");
    m.heads = h.heads;
    resolve_halting(m, h, 0);

    auto expand = [&m](const std::string& tok, int ln) -> std::vector<Sym> {
        if (tok == "*") {
            std::vector<Sym> all;
            for (size_t i = 0; i < m.input_alphabet.size(); ++i)
                all.push_back(static_cast<Sym>(i));
            all.push_back(kLeftEnd);
            all.push_back(kRightEnd);
            return all;
        }
        Sym s = m.input_id(tok);
        if (s < 0 && tok != "<" && tok != ">")
            throw ParseError(ln, "unknown input symbol '" + tok + "'");
        return {s};
    };

    for (const auto& raw : trans) {
        const auto& t = raw.tokens;
        const int ln = raw.number;
        auto arrow = std::find(t.begin(), t.end(), "->");
        if (arrow == t.end()) throw ParseError(ln, "transition line has no '->'");
        std::vector<std::string> lhs(t.begin(), arrow), rhs(arrow + 1, t.end());
        if (lhs.size() != 1 + static_cast<size_t>(m.heads))
            throw ParseError(ln, "expected state plus " + std::to_string(m.heads) +
                                     " scanned symbols");
        if (rhs.size() != 1 + static_cast<size_t>(m.heads))
            throw ParseError(ln, "expected state plus " + std::to_string(m.heads) +
                                     " directions after '->'");
        StateId q = m.state_id(lhs[0]);
        if (q < 0) throw ParseError(ln, "unknown state '" + lhs[0] + "'");
        StateId next = m.state_id(rhs[0]);
        if (next < 0) throw ParseError(ln, "unknown state '" + rhs[0] + "'");
        KnfaSpec::Move mv;
        mv.next = next;
        for (int i = 0; i < m.heads; ++i)
            mv.dirs.push_back(direction(rhs[1 + static_cast<size_t>(i)], ln));

        std::vector<std::vector<Sym>> scan_sets;
        for (int i = 0; i < m.heads; ++i)
            scan_sets.push_back(expand(lhs[1 + static_cast<size_t>(i)], ln));
        std::vector<size_t> idx(static_cast<size_t>(m.heads), 0);
        while (true) {
            std::vector<Sym> scans;
            for (int i = 0; i < m.heads; ++i)
                scans.push_back(scan_sets[static_cast<size_t>(i)][idx[static_cast<size_t>(i)]]);
            auto& moves = m.delta[{q, scans}];
            if (std::find(moves.begin(), moves.end(), mv) != moves.end())
                throw ParseError(ln, "duplicate transition for state '" + lhs[0] + "'");
            moves.push_back(mv);
            int carry = m.heads - 1;
            while (carry >= 0) {
                if (++idx[static_cast<size_t>(carry)] <
                    scan_sets[static_cast<size_t>(carry)].size())
                    break;
                idx[static_cast<size_t>(carry)] = 0;
                --carry;
            }
            if (carry < 0) break;
        }
    }
    return m;
}

TafaSpec build_tafa(const HeaderData& h, const std::vector<RawLine>& trans) {
    TafaSpec m;
    m.states = h.states;
    m.universal.assign(m.states.size(), 0);
    for (const auto& s : h.input) {
        if (s == "<" || s == ">") throw ParseError(0, "endmarkers cannot join the input alphabet");
        if (std::find(m.input_alphabet.begin(), m.input_alphabet.end(), s) ==
            m.input_alphabet.end())
            m.input_alphabet.push_back(s);
    }
    resolve_halting(m, h, 0);

    std::vector<int> marked(m.states.size(), 0);
    for (const auto& n : h.exists) {
        StateId q = m.state_id(n);
        if (q < 0) throw ParseError(0, "exists: line names unknown state '" + n + "'");
        ++marked[static_cast<size_t>(q)];
    }
    for (const auto& n : h.forall) {
        StateId q = m.state_id(n);
        if (q < 0) throw ParseError(0, "forall: line names unknown state '" + n + "'");
        m.universal[static_cast<size_t>(q)] = 1;
        ++marked[static_cast<size_t>(q)];
    }
    for (size_t q = 0; q < m.states.size(); ++q) {
        auto id = static_cast<StateId>(q);
        if (m.is_halting(id)) {
            if (marked[q]) throw ParseError(0, "halting state '" + m.states[q] +
                                                   "' cannot be existential or universal");
            continue;
        }
        if (marked[q] != 1)
            throw ParseError(0, "state '" + m.states[q] +
                                    "' must appear in exactly one of exists:/forall:");
    }

    for (const auto& raw : trans) {
        const auto& t = raw.tokens;
        const int ln = raw.number;
        auto arrow = std::find(t.begin(), t.end(), "->");
        if (arrow == t.end()) throw ParseError(ln, "transition line has no '->'");
        std::vector<std::string> lhs(t.begin(), arrow), rhs(arrow + 1, t.end());
        if (lhs.size() != 2 || rhs.size() != 2)
            throw ParseError(ln, "2afa transitions have the form 'q sym -> q' dir'");
        StateId q = m.state_id(lhs[0]);
        if (q < 0) throw ParseError(ln, "unknown state '" + lhs[0] + "'");
        StateId next = m.state_id(rhs[0]);
        if (next < 0) throw ParseError(ln, "unknown state '" + rhs[0] + "'");
        TafaSpec::Move mv{next, direction(rhs[1], ln)};

        std::vector<Sym> scans;
        if (lhs[1] == "*") {
            for (size_t i = 0; i < m.input_alphabet.size(); ++i)
                scans.push_back(static_cast<Sym>(i));
            scans.push_back(kLeftEnd);
            scans.push_back(kRightEnd);
        } else {
            Sym s = m.input_id(lhs[1]);
            if (s < 0 && lhs[1] != "<" && lhs[1] != ">")
                throw ParseError(ln, "unknown input symbol '" + lhs[1] + "'");
            scans.push_back(s);
        }
        for (Sym s : scans) {
            auto& moves = m.delta[{q, s}];
            if (std::find(moves.begin(), moves.end(), mv) != moves.end())
                throw ParseError(ln, "duplicate transition for state '" + lhs[0] + "'");
            moves.push_back(mv);
        }
    }
    return m;
}

} // namespace

ParsedMachine parse_machine(const std::string& text) {
    HeaderData h;
    std::vector<RawLine> trans;

    std::istringstream in(text);
    std::string line;
    int ln = 0;
    bool saw_transition = false;
    while (std::getline(in, line)) {
        ++ln;
        auto toks = tokenize(line);
        if (toks.empty()) continue;
        const bool is_transition =
            std::find(toks.begin(), toks.end(), "->") != toks.end();
        if (is_transition) {
            saw_transition = true;
            trans.push_back({ln, toks});
            continue;
        }
        if (saw_transition)
            throw ParseError(ln, "header line after the first transition");

        std::string key = toks[0];
        std::vector<std::string> rest(toks.begin() + 1, toks.end());
        if (key == "kind") {
            if (rest.size() != 1 || (rest[0] != "verifier" && rest[0] != "knfa" && rest[0] != "2afa"))
                throw ParseError(ln, "kind must be one of verifier, knfa, 2afa");
            h.kind = rest[0];
            continue;
        }
        if (key.empty() || key.back() != ':')
            throw ParseError(ln, "expected a 'name:' header line, got '" + key + "'");
        key.pop_back();
        if (h.seen.count(key)) throw ParseError(ln, "repeated header '" + key + ":'");
        h.seen[key] = ln;
        if (key == "states") h.states = rest;
        else if (key == "input") h.input = rest;
        else if (key == "work") h.work = rest;
        else if (key == "comm") h.comm = rest;
        else if (key == "pri") h.pri = rest;
        else if (key == "pub") h.pub = rest;
        else if (key == "com") h.com_states = rest;
        else if (key == "exists") h.exists = rest;
        else if (key == "forall") h.forall = rest;
        else if (key == "initial") {
            if (rest.size() != 1) throw ParseError(ln, "initial: wants exactly one state");
            h.initial = rest[0];
        } else if (key == "accept") {
            if (rest.size() != 1) throw ParseError(ln, "accept: wants exactly one state");
            h.accept = rest[0];
        } else if (key == "reject") {
            if (rest.size() != 1) throw ParseError(ln, "reject: wants exactly one state");
            h.reject = rest[0];
        } else if (key == "heads") {
            if (rest.size() != 1) throw ParseError(ln, "heads: wants exactly one integer");
            try {
                h.heads = std::stoi(rest[0]);
            } catch (...) {
                throw ParseError(ln, "heads: wants an integer");
            }
            h.saw_heads = true;
        } else {
            throw ParseError(ln, "unknown header '" + key + ":'");
        }
    }

    if (h.kind.empty()) throw ParseError(1, "missing 'kind' line");
    if (h.states.empty()) throw ParseError(1, "missing 'states:' line");

    try {
        if (h.kind == "verifier") return build_verifier(h, trans);
        if (h.kind == "knfa") return build_knfa(h, trans);
        return build_tafa(h, trans);
    } catch (const MachineError& e) {
        throw ParseError(0, e.what());
    }
}

namespace {

void emit_names(std::ostringstream& out, const char* label,
                const std::vector<std::string>& names) {
    out << label << ":";
    for (const auto& n : names) out << ' ' << n;
    out << '\n';
}

template <typename SpecT>
void emit_role(std::ostringstream& out, const char* label, const SpecT& m,
               const std::vector<std::uint8_t>& flags) {
    out << label << ":";
    for (size_t q = 0; q < m.states.size(); ++q)
        if (flags[q]) out << ' ' << m.states[q];
    out << '\n';
}

// Deterministic transition order: state id, then scanned symbols with the
// endmarkers after the alphabet, then coin bits.
int scan_rank(Sym s) { return s >= 0 ? s : (s == kLeftEnd ? 1'000'000 : 1'000'001); }

} // namespace

std::string serialize_machine(const MachineSpec& m) {
    std::ostringstream out;
    out << "kind verifier\n";
    emit_names(out, "states", m.states);
    out << "accept: " << m.states[static_cast<size_t>(m.accept)] << '\n';
    out << "reject: " << m.states[static_cast<size_t>(m.reject)] << '\n';
    out << "initial: " << m.states[static_cast<size_t>(m.initial)] << '\n';
    emit_names(out, "input", m.input_alphabet);
    emit_names(out, "work", m.work_alphabet);
    emit_names(out, "comm", m.comm_alphabet);
    emit_role(out, "pri", m, m.pri);
    emit_role(out, "pub", m, m.pub);
    emit_role(out, "com", m, m.com);

    std::vector<DeltaKey> keys;
    keys.reserve(m.delta.size());
    for (const auto& [k, v] : m.delta) {
        (void)v;
        keys.push_back(k);
    }
    std::sort(keys.begin(), keys.end(), [](const DeltaKey& a, const DeltaKey& b) {
        auto ta = std::tuple(a.state, scan_rank(a.in_sym), a.work_sym, a.comm_sym, a.pri, a.pub);
        auto tb = std::tuple(b.state, scan_rank(b.in_sym), b.work_sym, b.comm_sym, b.pri, b.pub);
        return ta < tb;
    });
    for (const auto& k : keys) {
        const auto& v = m.delta.at(k);
        out << m.states[static_cast<size_t>(k.state)] << ' ' << m.input_name(k.in_sym) << ' '
            << m.work_name(k.work_sym) << ' ' << m.comm_name(k.comm_sym);
        if (k.pri != kNoCoin) out << " pri=" << k.pri;
        if (k.pub != kNoCoin) out << " pub=" << k.pub;
        out << " -> " << m.states[static_cast<size_t>(v.next)] << ' '
            << m.work_name(v.work_write);
        if (v.comm_write) out << ' ' << m.comm_name(*v.comm_write);
        out << ' ' << dir_text(v.d_in) << ' ' << dir_text(v.d_work) << '\n';
    }
    return out.str();
}

std::string serialize_machine(const KnfaSpec& m) {
    std::ostringstream out;
    out << "kind knfa\n";
    emit_names(out, "states", m.states);
    out << "accept: " << m.states[static_cast<size_t>(m.accept)] << '\n';
    out << "reject: " << m.states[static_cast<size_t>(m.reject)] << '\n';
    out << "initial: " << m.states[static_cast<size_t>(m.initial)] << '\n';
    emit_names(out, "input", m.input_alphabet);
    out << "heads: " << m.heads << '\n';
    for (const auto& [key, moves] : m.delta) {
        std::vector<KnfaSpec::Move> sorted = moves;
        std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
            return std::tie(a.next, a.dirs) < std::tie(b.next, b.dirs);
        });
        for (const auto& mv : sorted) {
            out << m.states[static_cast<size_t>(key.first)];
            for (Sym s : key.second) out << ' ' << m.input_name(s);
            out << " -> " << m.states[static_cast<size_t>(mv.next)];
            for (int d : mv.dirs) out << ' ' << dir_text(d);
            out << '\n';
        }
    }
    return out.str();
}

std::string serialize_machine(const TafaSpec& m) {
    std::ostringstream out;
    out << "kind 2afa\n";
    emit_names(out, "states", m.states);
    out << "accept: " << m.states[static_cast<size_t>(m.accept)] << '\n';
    out << "reject: " << m.states[static_cast<size_t>(m.reject)] << '\n';
    out << "initial: " << m.states[static_cast<size_t>(m.initial)] << '\n';
    emit_names(out, "input", m.input_alphabet);
    std::ostringstream ex, fa;
    for (size_t q = 0; q < m.states.size(); ++q) {
        auto id = static_cast<StateId>(q);
        if (m.is_halting(id)) continue;
        (m.universal[q] ? fa : ex) << ' ' << m.states[q];
    }
    out << "exists:" << ex.str() << '\n';
    out << "forall:" << fa.str() << '\n';
    for (const auto& [key, moves] : m.delta) {
        std::vector<TafaSpec::Move> sorted = moves;
        std::sort(sorted.begin(), sorted.end());
        for (const auto& mv : sorted)
            out << m.states[static_cast<size_t>(key.first)] << ' ' << m.input_name(key.second)
                << " -> " << m.states[static_cast<size_t>(mv.next)] << ' ' << dir_text(mv.dir)
                << '\n';
    }
    return out.str();
}

std::string serialize_machine(const ParsedMachine& m) {
    return std::visit([](const auto& spec) { return serialize_machine(spec); }, m);
}

} // namespace ipsim
