#include "ipsim/exact.hpp"

#include <unordered_map>

namespace ipsim {

namespace {

struct Belief {
    Configuration cfg;
    Transcript transcript;
    std::uint64_t pri_used = 0;
    std::uint64_t pub_used = 0;

    bool operator==(const Belief& o) const {
        return cfg == o.cfg && transcript == o.transcript;
    }
};

struct BeliefHash {
    std::size_t operator()(const Belief& b) const {
        std::size_t h = ConfigurationHash{}(b.cfg);
        for (const auto& e : b.transcript) {
            h ^= std::hash<std::string>{}(e.symbol) + static_cast<size_t>(e.kind) * 131 +
                 static_cast<size_t>(e.bit) + 0x9e3779b9 + (h << 6) + (h >> 2);
        }
        return h;
    }
};

} // namespace

ExactResult exact_acceptance(const MachineSpec& spec, const ProverStrategy& prover,
                             const std::string& input, std::uint64_t cutoff,
                             const ExactOptions& options) {
    ExactResult result;
    std::unordered_map<Belief, BigRat, BeliefHash> alive;

    {
        Belief b;
        b.cfg = initial_configuration(spec, input);
        if (spec.is_halting(b.cfg.state)) {
            (b.cfg.state == spec.accept ? result.p_accept : result.p_reject) = 1;
            return result;
        }
        alive.emplace(std::move(b), BigRat(1));
    }

    const auto input_syms = encode_input(spec, input);
    for (std::uint64_t step = 0; step < cutoff && !alive.empty(); ++step) {
        std::unordered_map<Belief, BigRat, BeliefHash> next;
        next.reserve(alive.size() * 2);
        for (auto& [belief, mass] : alive) {
            const StateId q = belief.cfg.state;
            const bool has_pri = spec.flips_pri(q);
            const bool has_pub = spec.flips_pub(q);
            const std::vector<int> pris = has_pri ? std::vector<int>{0, 1}
                                                  : std::vector<int>{kNoCoin};
            const std::vector<int> pubs = has_pub ? std::vector<int>{0, 1}
                                                  : std::vector<int>{kNoCoin};
            BigRat split = mass / BigRat(static_cast<int>(pris.size() * pubs.size()));

            for (int bpri : pris)
                for (int bpub : pubs) {
                    RunState rs;
                    rs.input = input;
                    rs.input_syms = input_syms;
                    rs.cfg = belief.cfg;
                    rs.transcript = belief.transcript;
                    rs.steps = step;
                    rs.pri_used = belief.pri_used;
                    rs.pub_used = belief.pub_used;
                    auto verdict = verifier_step_with_bits(spec, rs, bpri, bpub, prover);
                    if (verdict == Verdict::accept) {
                        result.p_accept += split;
                    } else if (verdict == Verdict::reject) {
                        result.p_reject += split;
                    } else {
                        Belief nb;
                        nb.cfg = std::move(rs.cfg);
                        nb.transcript = std::move(rs.transcript);
                        nb.pri_used = rs.pri_used;
                        nb.pub_used = rs.pub_used;
                        next[std::move(nb)] += split;
                    }
                }
        }
        if (next.size() > options.max_support)
            throw BudgetError("exact_acceptance: belief support exceeded the budget (" +
                              std::to_string(next.size()) + " histories)");
        alive = std::move(next);
    }

    for (const auto& [belief, mass] : alive) {
        (void)belief;
        result.p_alive += mass;
    }
    return result;
}

} // namespace ipsim
