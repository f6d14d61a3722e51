#include "ipsim/automata.hpp"

#include <deque>
#include <set>

namespace ipsim {

namespace {

std::vector<Sym> encode_over(const std::vector<std::string>& alphabet,
                             const std::string& input) {
    std::vector<Sym> out;
    out.reserve(input.size());
    for (char ch : input) {
        std::string tok(1, ch);
        Sym s = -1;
        for (size_t i = 0; i < alphabet.size(); ++i)
            if (alphabet[i] == tok) {
                s = static_cast<Sym>(i);
                break;
            }
        if (s < 0) throw MachineError(std::string("input symbol '") + ch + "' is not in Sigma");
        out.push_back(s);
    }
    return out;
}

Sym scan_at(const std::vector<Sym>& w, long pos) {
    if (pos == 0) return kLeftEnd;
    if (pos == static_cast<long>(w.size()) + 1) return kRightEnd;
    return w[static_cast<size_t>(pos - 1)];
}

} // namespace

bool knfa_accepts(const KnfaSpec& m, const std::string& input) {
    const auto w = encode_over(m.input_alphabet, input);
    const long last = static_cast<long>(w.size()) + 1;

    using Node = std::pair<StateId, std::vector<long>>;
    std::set<Node> seen;
    std::deque<Node> queue;
    Node start{m.initial, std::vector<long>(static_cast<size_t>(m.heads), 0)};
    seen.insert(start);
    queue.push_back(start);

    while (!queue.empty()) {
        auto [q, pos] = queue.front();
        queue.pop_front();
        if (q == m.accept) return true;
        if (q == m.reject) continue;

        std::vector<Sym> scans(static_cast<size_t>(m.heads));
        for (int i = 0; i < m.heads; ++i)
            scans[static_cast<size_t>(i)] = scan_at(w, pos[static_cast<size_t>(i)]);
        auto it = m.delta.find({q, scans});
        if (it == m.delta.end()) continue;
        for (const auto& mv : it->second) {
            std::vector<long> npos = pos;
            bool off = false;
            for (int i = 0; i < m.heads; ++i) {
                npos[static_cast<size_t>(i)] += mv.dirs[static_cast<size_t>(i)];
                if (npos[static_cast<size_t>(i)] < 0 || npos[static_cast<size_t>(i)] > last)
                    off = true;
            }
            if (off) continue;
            Node next{mv.next, std::move(npos)};
            if (seen.insert(next).second) queue.push_back(next);
        }
    }
    return false;
}

namespace {

struct TafaGraph {
    // node id = state * (n+2) + pos
    int width;
    std::vector<std::vector<int>> succ;

    int node(StateId q, long pos) const { return q * width + static_cast<int>(pos); }
};

TafaGraph tafa_graph(const TafaSpec& m, const std::vector<Sym>& w) {
    TafaGraph g;
    g.width = static_cast<int>(w.size()) + 2;
    g.succ.assign(m.states.size() * static_cast<size_t>(g.width), {});
    const long last = static_cast<long>(w.size()) + 1;
    for (size_t q = 0; q < m.states.size(); ++q) {
        auto id = static_cast<StateId>(q);
        if (m.is_halting(id)) continue;
        for (long pos = 0; pos <= last; ++pos) {
            auto it = m.delta.find({id, scan_at(w, pos)});
            if (it == m.delta.end()) continue;
            for (const auto& mv : it->second) {
                long npos = pos + mv.dir;
                if (npos < 0 || npos > last) continue;
                g.succ[static_cast<size_t>(g.node(id, pos))].push_back(g.node(mv.next, npos));
            }
        }
    }
    return g;
}

} // namespace

bool tafa_accepts(const TafaSpec& m, const std::string& input) {
    const auto w = encode_over(m.input_alphabet, input);
    const auto g = tafa_graph(m, w);
    const size_t nodes = g.succ.size();

    std::vector<std::vector<int>> pred(nodes);
    std::vector<int> pending(nodes, 0); // universal: successors not yet true
    std::vector<char> value(nodes, 0);
    std::deque<int> queue;

    for (size_t v = 0; v < nodes; ++v) {
        auto q = static_cast<StateId>(v / static_cast<size_t>(g.width));
        if (q == m.accept) {
            value[v] = 1;
            queue.push_back(static_cast<int>(v));
            continue;
        }
        if (q == m.reject) continue;
        for (int s : g.succ[v]) pred[static_cast<size_t>(s)].push_back(static_cast<int>(v));
        if (m.universal[static_cast<size_t>(q)]) {
            pending[v] = static_cast<int>(g.succ[v].size());
            if (pending[v] == 0) { // vacuous conjunction
                value[v] = 1;
                queue.push_back(static_cast<int>(v));
            }
        }
    }

    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        for (int p : pred[static_cast<size_t>(v)]) {
            if (value[static_cast<size_t>(p)]) continue;
            auto q = static_cast<StateId>(p / g.width);
            if (m.universal[static_cast<size_t>(q)]) {
                if (--pending[static_cast<size_t>(p)] > 0) continue;
            }
            value[static_cast<size_t>(p)] = 1;
            queue.push_back(p);
        }
    }
    return value[static_cast<size_t>(g.node(m.initial, 0))] != 0;
}

bool tafa_accepts_naive(const TafaSpec& m, const std::string& input) {
    const auto w = encode_over(m.input_alphabet, input);
    const auto g = tafa_graph(m, w);
    const size_t nodes = g.succ.size();

    std::vector<char> value(nodes, 0);
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t v = 0; v < nodes; ++v) {
            auto q = static_cast<StateId>(v / static_cast<size_t>(g.width));
            char want;
            if (q == m.accept) {
                want = 1;
            } else if (q == m.reject) {
                want = 0;
            } else if (m.universal[static_cast<size_t>(q)]) {
                want = 1;
                for (int s : g.succ[v])
                    if (!value[static_cast<size_t>(s)]) want = 0;
            } else {
                want = 0;
                for (int s : g.succ[v])
                    if (value[static_cast<size_t>(s)]) want = 1;
            }
            if (want && !value[v]) {
                value[v] = 1;
                changed = true;
            }
        }
    }
    return value[static_cast<size_t>(g.node(m.initial, 0))] != 0;
}

KnfaSpec tafa_as_knfa(const TafaSpec& m) {
    for (size_t q = 0; q < m.states.size(); ++q)
        if (!m.is_halting(static_cast<StateId>(q)) && m.universal[q])
            throw MachineError("2afa has universal states; not a 2nfa1");
    KnfaSpec out;
    out.states = m.states;
    out.initial = m.initial;
    out.accept = m.accept;
    out.reject = m.reject;
    out.input_alphabet = m.input_alphabet;
    out.heads = 1;
    for (const auto& [key, moves] : m.delta)
        for (const auto& mv : moves)
            out.delta[{key.first, {key.second}}].push_back({mv.next, {mv.dir}});
    return out;
}

} // namespace ipsim
