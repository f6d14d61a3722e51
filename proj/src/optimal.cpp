#include "ipsim/optimal.hpp"

#include <set>

namespace ipsim {

namespace {

// Answers from a partial assignment; records the histories it had to
// improvise on so the search can branch on them.
class ProbeProver : public ProverStrategy {
public:
    ProbeProver(const std::map<std::string, std::string>& assignment,
                std::set<std::string>& missing)
        : assignment_(assignment), missing_(missing) {}

    std::string name() const override { return "probe"; }
    std::string respond(const std::string&, const Transcript& t) const override {
        const std::string key = encode_transcript(t);
        auto it = assignment_.find(key);
        if (it != assignment_.end()) return it->second;
        missing_.insert(key);
        return "_";
    }

private:
    const std::map<std::string, std::string>& assignment_;
    std::set<std::string>& missing_;
};

struct Search {
    const MachineSpec& spec;
    const std::string& input;
    std::uint64_t horizon;
    const OptimalProverOptions& options;

    std::map<std::string, std::string> assignment;
    OptimalProverResult best;
    bool have_best = false;
    std::uint64_t evaluations = 0;

    // Returns the lexicographically smallest unassigned decision point hit
    // during evaluation, or the achieved value when none is missing.
    std::pair<std::optional<std::string>, BigRat> evaluate() {
        if (++evaluations > options.node_budget)
            throw BudgetError("optimal_bounded_prover: node budget exceeded");
        std::set<std::string> missing;
        ProbeProver probe(assignment, missing);
        ExactOptions eo;
        eo.max_support = options.max_support;
        auto r = exact_acceptance(spec, probe, input, horizon, eo);
        if (!missing.empty()) return {*missing.begin(), BigRat(0)};
        return {std::nullopt, r.p_accept};
    }

    void run() {
        auto [missing, value] = evaluate();
        if (!missing) {
            if (!have_best || value > best.value) {
                best.value = value;
                best.responses = assignment;
                have_best = true;
            }
            return;
        }
        for (const auto& symbol : spec.comm_alphabet) {
            assignment[*missing] = symbol;
            run();
        }
        assignment.erase(*missing);
    }
};

} // namespace

std::unique_ptr<ProverStrategy> OptimalProverResult::strategy() const {
    return std::make_unique<ScriptedProver>(responses, "_", "optimal");
}

OptimalProverResult optimal_bounded_prover(const MachineSpec& spec, const std::string& input,
                                           std::uint64_t horizon,
                                           const OptimalProverOptions& options) {
    Search search{spec, input, horizon, options, {}, {}, false, 0};
    search.run();
    search.best.evaluations = search.evaluations;
    return search.best;
}

} // namespace ipsim
