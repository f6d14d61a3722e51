#include "ipsim/transforms/analyze.hpp"

#include <functional>

namespace ipsim {

namespace {

struct Graph {
    const MachineSpec& m;
    long n;
    int width;  // n + 2
    int gamma_count;

    int node(StateId q, long pos, Sym g) const {
        return (q * width + static_cast<int>(pos)) * gamma_count + g;
    }
    StateId node_state(int v) const { return v / (width * gamma_count); }
    long node_pos(int v) const { return (v / gamma_count) % width; }
    Sym node_gamma(int v) const { return v % gamma_count; }

    // -1 encodes a halting edge (one final step, no successor node)
    std::vector<int> successors(int v, const std::vector<Sym>& w) const {
        const StateId q = node_state(v);
        const long pos = node_pos(v);
        const Sym g = node_gamma(v);
        std::vector<int> out;
        if (m.is_halting(q)) return out;
        Sym sigma = pos == 0 ? kLeftEnd
                             : (pos == n + 1 ? kRightEnd : w[static_cast<size_t>(pos - 1)]);
        const std::vector<int> pris =
            m.flips_pri(q) ? std::vector<int>{0, 1} : std::vector<int>{kNoCoin};
        const std::vector<int> pubs =
            m.flips_pub(q) ? std::vector<int>{0, 1} : std::vector<int>{kNoCoin};
        for (int bpri : pris)
            for (int bpub : pubs) {
                auto it = m.delta.find(DeltaKey{q, sigma, kBlank, g, bpri, bpub});
                if (it == m.delta.end())
                    throw MachineError("analyze_worst_case: delta not total (validate first)");
                const DeltaRhs& rhs = it->second;
                long npos = pos + rhs.d_in;
                if (m.is_halting(rhs.next) || npos < 0 || npos > n + 1) {
                    out.push_back(-1);
                    continue;
                }
                if (m.communicates(q)) {
                    // the verifier's own write is immediately overwritten
                    for (Sym resp = 0; resp < gamma_count; ++resp)
                        out.push_back(node(rhs.next, npos, resp));
                } else {
                    out.push_back(node(rhs.next, npos, g));
                }
            }
        return out;
    }
};

} // namespace

WorstCaseReport analyze_worst_case(const MachineSpec& v, std::uint64_t n, ProverModel model) {
    (void)model; // adversarial is the only model
    if (!is_constant_space(v))
        throw MachineError("analyze_worst_case wants a constant-space machine");

    WorstCaseReport report;
    const int sigma = static_cast<int>(v.input_alphabet.size());
    std::vector<Sym> w(n, 0);

    auto next_word = [&]() -> bool {
        for (size_t i = w.size(); i-- > 0;) {
            if (++w[i] < sigma) return true;
            w[i] = 0;
        }
        return false;
    };
    if (sigma == 0 && n > 0) return report; // no inputs of this length

    do {
        Graph g{v, static_cast<long>(n), static_cast<int>(n) + 2,
                static_cast<int>(v.comm_alphabet.size())};
        const int node_count = static_cast<int>(v.states.size()) * g.width * g.gamma_count;
        const int start = g.node(v.initial, 0, kBlank);

        // colors: 0 unvisited, 1 on stack, 2 done; longest[] is max steps to halt
        std::vector<char> color(static_cast<size_t>(node_count), 0);
        std::vector<std::uint64_t> longest(static_cast<size_t>(node_count), 0);
        std::vector<int> parent(static_cast<size_t>(node_count), -2);
        bool cyclic = false;
        int cycle_entry = -1;

        std::function<void(int)> dfs = [&](int u) {
            color[static_cast<size_t>(u)] = 1;
            std::uint64_t best = 0;
            for (int s : g.successors(u, w)) {
                if (s == -1) {
                    best = std::max<std::uint64_t>(best, 1);
                    continue;
                }
                if (cyclic) return;
                if (color[static_cast<size_t>(s)] == 1) {
                    cyclic = true;
                    cycle_entry = s;
                    parent[static_cast<size_t>(s)] = u; // close the loop
                    return;
                }
                if (color[static_cast<size_t>(s)] == 0) {
                    parent[static_cast<size_t>(s)] = u;
                    dfs(s);
                    if (cyclic) return;
                }
                best = std::max(best, 1 + longest[static_cast<size_t>(s)]);
            }
            longest[static_cast<size_t>(u)] = best;
            color[static_cast<size_t>(u)] = 2;
        };

        if (v.is_halting(v.initial)) continue; // zero steps on every input
        dfs(start);

        if (cyclic) {
            report.bounded = false;
            std::string input;
            for (Sym s : w) input += v.input_alphabet[static_cast<size_t>(s)];
            report.witness_input = input;
            // walk the parent chain from the re-entered node around the loop
            std::vector<int> loop{cycle_entry};
            for (int cur = parent[static_cast<size_t>(cycle_entry)]; cur != cycle_entry;
                 cur = parent[static_cast<size_t>(cur)])
                loop.push_back(cur);
            for (auto it = loop.rbegin(); it != loop.rend(); ++it) {
                Configuration cfg;
                cfg.state = g.node_state(*it);
                cfg.input_pos = g.node_pos(*it);
                cfg.comm_cell = g.node_gamma(*it);
                report.witness_cycle.push_back(cfg);
            }
            return report;
        }
        report.max_steps = std::max(report.max_steps, longest[static_cast<size_t>(start)]);
    } while (n > 0 && next_word());

    return report;
}

} // namespace ipsim
